"""Carry-safe coordinate labels.

Two grid points with equal labels are guaranteed to have every progression
companion they might need (midpoints, reflections, and the rational
combinations required by longer progressions) inside the grid, so integer
progressions through them match grid-space progressions exactly.

A label has one residue component and one signed bucket component per
coordinate. For k = 3 the residue is the parity and buckets are doubling
windows [2^(j-1)-1, 2^j-1); for general k the residue is taken mod k! and
the windows grow by the ratio k/(k-1). Buckets index from the lower grid
edge on the low side (positive sign) and from the upper edge on the high
side (negative sign), which is what keeps reflections in range.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple

from .errors import ClosureError, ParamError
from .grid import GridPoint, validate_point
from .params import Params


class AuxColor(NamedTuple):
    parities: tuple
    buckets: tuple


def _bucket3(x: int, C: int) -> int:
    # window j holds 2^(j-1)-1 <= t < 2^j-1, i.e. j = bit_length(t+1)
    if 2 * x <= C:
        return (x + 1).bit_length()
    return -(C - x).bit_length()  # C-1-x+1 == C-x


def _bucket_general(x: int, C: int, k: int) -> int:
    if 2 * x <= C:
        t, sign = x, 1
    else:
        t, sign = C - 1 - x, -1
    # window j holds (k/(k-1))^(j-1) <= t+1 < (k/(k-1))^j, compared exactly
    # via k^j <= (t+1)(k-1)^j
    j = 1
    while k**j <= (t + 1) * (k - 1) ** j:
        j += 1
    return sign * j


def label3(x: GridPoint, p: Params) -> AuxColor:
    """Label for 3-term progressions: per-coordinate parity plus doubling bucket."""
    if p.k != 3:
        raise ParamError("label3 requires k = 3")
    validate_point(x, p)
    return AuxColor(
        parities=tuple(c & 1 for c in x),
        buckets=tuple(_bucket3(c, p.C) for c in x),
    )


def label_general(x: GridPoint, p: Params) -> AuxColor:
    """Label for progressions up to length k: residue mod k! plus ratio bucket."""
    validate_point(x, p)
    kf = math.factorial(p.k)
    return AuxColor(
        parities=tuple(c % kf for c in x),
        buckets=tuple(_bucket_general(c, p.C, p.k) for c in x),
    )


def aux_label(x: GridPoint, p: Params) -> AuxColor:
    return label3(x, p) if p.k == 3 else label_general(x, p)


@lru_cache(maxsize=None)
def coordinate_label_table(C: int, k: int) -> tuple[tuple, int]:
    """Per-coordinate canonical label indices.

    Returns (idx, radix): idx[t] is the index of coordinate value t's
    (residue, bucket) pair, and radix bounds all indices. Index 0 is the
    pair (residue 0, bucket +1).
    """
    residue_mod = 2 if k == 3 else math.factorial(k)
    if k == 3:
        buckets = [_bucket3(t, C) for t in range(C)]
    else:
        buckets = [_bucket_general(t, C, k) for t in range(C)]
    J = max(abs(b) for b in buckets)
    idx = []
    for t in range(C):
        a = (t & 1) if k == 3 else t % residue_mod
        b = buckets[t]
        part = (b - 1) if b > 0 else (J + (-b) - 1)
        idx.append(a * (2 * J) + part)
    return tuple(idx), residue_mod * 2 * J


def label_key(x: GridPoint, p: Params) -> int:
    """Injective mixed-radix packing of the label; equal keys iff equal labels.
    Python integers make the packing exact at any size."""
    validate_point(x, p)
    idx, radix = coordinate_label_table(p.C, p.k)
    key = 0
    for c in reversed(x):
        key = key * radix + idx[c]
    return key


def log_label_count(p: Params) -> float:
    """Natural log of the label-count upper bound."""
    if p.k == 3:
        return p.d * math.log(4 * math.log2(p.C))
    windows = math.ceil(math.log(p.C) / math.log(p.k / (p.k - 1)))
    return p.d * math.log(math.factorial(p.k) * 2 * windows)


@lru_cache(maxsize=None)
def companion_coefficients(k: int) -> tuple:
    """(p, q) pairs such that a pair sitting at positions i < j of some
    progression of length 3..k needs companion (p*x + (q-p)*y)/q in-grid.

    Derived from positions: companion at slot t of an l-term progression
    containing x at i and y at j has p = (j-i) - (t-i), q = j-i.
    """
    seen = set()
    for ell in range(3, k + 1):
        for i, j in combinations(range(ell), 2):
            q = j - i
            for t in range(ell):
                if t in (i, j):
                    continue
                seen.add((q - (t - i), q))
    return tuple(sorted(seen))


@lru_cache(maxsize=None)
def closure_violation(C: int, k: int) -> tuple | None:
    """Search for a same-label coordinate pair whose companion leaves the grid.

    Labels act componentwise, so closure in dimension d reduces to this
    one-dimensional check over all same-label value pairs. Returns None when
    closed, else a witness (u, v, p_num, q_den).
    """
    idx, _ = coordinate_label_table(C, k)
    groups: dict[int, list[int]] = {}
    for t in range(C):
        groups.setdefault(idx[t], []).append(t)
    coeffs = companion_coefficients(k)
    for members in groups.values():
        for u in members:
            for v in members:
                if u == v:
                    continue
                for p_num, q_den in coeffs:
                    num = p_num * u + (q_den - p_num) * v
                    if num % q_den or not 0 <= num // q_den <= C - 1:
                        return (u, v, p_num, q_den)
    return None


def ensure_closed(p: Params) -> None:
    """Refuse configurations whose labels are not companion-closed."""
    witness = closure_violation(p.C, p.k)
    if witness is not None:
        raise ClosureError(p.C, p.k, *witness)
