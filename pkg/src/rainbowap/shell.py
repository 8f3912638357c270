"""The spherical shell selection: keep the grid points whose squared norm
falls in [r^2 (1-eps)^2, r^2 (1+eps)^2], evaluated in exact integer
arithmetic, and expose the result as a membership bitmap over [n]."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import exp

import numpy as np

from . import _kernels
from .errors import ResourceError
from .grid import GridPoint, squared_norm, validate_point
from .params import Params

# bytes of working memory build_members may allocate (norms + membership)
DEFAULT_BUDGET_BYTES = 1 << 30


@lru_cache(maxsize=None)
def _window(C: int, d: int, eps_num: int, eps_den: int) -> tuple[int, int]:
    r2_num = d * (C - 1) * (2 * C - 1)
    r2_den = 6
    den = r2_den * eps_den * eps_den
    lo_num = r2_num * (eps_den - eps_num) ** 2
    hi_num = r2_num * (eps_den + eps_num) ** 2
    lo = -(-lo_num // den)  # ceil
    hi = hi_num // den  # floor
    return lo, hi


def shell_window(p: Params) -> tuple[int, int]:
    """Inclusive integer window [lo, hi] such that a point is in the shell
    iff its squared norm lies inside. Computed once per configuration with
    exact rational arithmetic, so membership never touches floats."""
    return _window(p.C, p.d, p.epsilon.numerator, p.epsilon.denominator)


def in_shell(x: GridPoint, p: Params) -> bool:
    validate_point(x, p)
    lo, hi = shell_window(p)
    return lo <= squared_norm(x) <= hi


def shortfall_bound(p: Params) -> float:
    """Proven upper bound on how many of the n values the shell may miss:
    2n * exp(-d * eps^2 / 18). Every built instance must satisfy
    n - |A| <= this."""
    eps = float(p.epsilon)
    return 2.0 * p.n * exp(-p.d * eps * eps / 18.0)


@dataclass
class MembershipSet:
    """Subset of [n] with O(1) queries.

    `member` is the working byte-per-value array (index 0 unused and zero);
    `bits` packs it 8 values per byte for compact storage."""

    n: int
    member: np.ndarray  # uint8, length n+1
    count: int = field(init=False)

    def __post_init__(self):
        self.count = int(self.member.sum())
        self._values: np.ndarray | None = None

    def __contains__(self, v: int) -> bool:
        return 0 < v <= self.n and bool(self.member[v])

    def __len__(self) -> int:
        return self.count

    def values(self) -> np.ndarray:
        """Sorted int64 array of the members."""
        if self._values is None:
            self._values = np.flatnonzero(self.member).astype(np.int64)
        return self._values

    @property
    def bits(self) -> np.ndarray:
        """Packed bitmap of length ceil(n/8); bit v-1 set iff v is a member."""
        return np.packbits(self.member[1:])

    @classmethod
    def from_values(cls, n: int, values) -> "MembershipSet":
        member = np.zeros(n + 1, dtype=np.uint8)
        arr = np.asarray(list(values), dtype=np.int64)
        if arr.size:
            if arr.min() < 1 or arr.max() > n:
                raise ValueError("member values must lie in [1, n]")
            member[arr] = 1
        return cls(n=n, member=member)


def build_members(p: Params, budget_bytes: int = DEFAULT_BUDGET_BYTES) -> MembershipSet:
    """Materialize the shell subset of [n] as a membership set.

    Streams v = 1..n through the digit-norm kernel and applies the exact
    window; O(n d) time. Refuses instances whose working arrays would
    exceed the budget."""
    need = 9 * (p.n + 1)  # int64 norms + uint8 membership
    if need > budget_bytes:
        raise ResourceError(
            f"n = {p.n} needs ~{need / 1e6:.0f} MB working memory, "
            f"budget is {budget_bytes / 1e6:.0f} MB"
        )
    lo, hi = shell_window(p)
    norms = _kernels.grid_norms(p.n, p.C, p.d)
    member = ((norms >= lo) & (norms <= hi)).astype(np.uint8)
    return MembershipSet(n=p.n, member=member)
