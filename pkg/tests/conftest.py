"""Shared independent oracles for the test suite.

These deliberately avoid the library's code paths: exact Fractions and
plain loops only, so they can arbitrate when the fast paths disagree.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import numpy as np
import pytest

from rainbowap import Params


def brute_shell_points(C: int, d: int, eps: Fraction) -> list[tuple]:
    """All grid points whose squared norm lies in the exact shell window."""
    r2 = Fraction(d * (C - 1) * (2 * C - 1), 6)
    lo = r2 * (1 - eps) ** 2
    hi = r2 * (1 + eps) ** 2
    return [
        x
        for x in product(range(C), repeat=d)
        if lo <= sum(c * c for c in x) <= hi
    ]


def brute_value(x: tuple, C: int) -> int:
    return 1 + sum(c * C**i for i, c in enumerate(x))


def brute_ap_scan(member: np.ndarray, colors: np.ndarray, ell: int):
    """Triple-loop enumeration of ell-term progressions inside the set.
    Returns (checked, violations as (start, delta) list in scan order)."""
    n = member.shape[0] - 1
    checked = 0
    viols = []
    for delta in range(1, (n - 1) // (ell - 1) + 1):
        for a in range(1, n - (ell - 1) * delta + 1):
            pts = [a + t * delta for t in range(ell)]
            if not all(member[v] for v in pts):
                continue
            checked += 1
            cols = [colors[v] for v in pts]
            if len(set(cols)) < ell:
                viols.append((a, delta))
    return checked, viols


def brute_has_conflict(a: int, b: int, members: set, n: int, k: int) -> bool:
    """Does some progression of length 3..k inside the member set contain
    both a and b? Enumerates (length, start, delta) directly."""
    for ell in range(3, k + 1):
        for delta in range(1, (n - 1) // (ell - 1) + 1):
            for start in range(1, n - (ell - 1) * delta + 1):
                pts = [start + t * delta for t in range(ell)]
                if a in pts and b in pts and all(v in members for v in pts):
                    return True
    return False


@pytest.fixture(scope="session")
def micro_params() -> Params:
    return Params.create(C=3, d=2, epsilon=Fraction(3, 10))


@pytest.fixture(scope="session")
def small_params() -> Params:
    return Params.create(C=10, d=3, epsilon=Fraction(1, 20))
