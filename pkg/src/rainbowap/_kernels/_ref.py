"""NumPy fallback kernels. Semantics match the compiled versions exactly;
equivalence is enforced by tests."""

from __future__ import annotations

import numpy as np


def grid_norms(n: int, C: int, d: int) -> np.ndarray:
    """Squared grid norm of the digit expansion of v-1 for every v in [1, n].
    Entry 0 is -1 so index 0 never tests as a member."""
    v = np.arange(n + 1, dtype=np.int64)
    rem = v - 1
    rem[0] = 0
    out = np.zeros(n + 1, dtype=np.int64)
    for _ in range(d):
        dig = rem % C
        out += dig * dig
        rem //= C
    out[0] = -1
    return out


def ap_scan(
    member: np.ndarray,
    colors: np.ndarray,
    values: np.ndarray,
    ell: int,
    d_start: int,
    d_stride: int,
    d_max: int,
    cap: int,
):
    """Enumerate ell-term progressions a, a+delta, ..., a+(ell-1)*delta with
    every member in the set, for delta = d_start, d_start+d_stride, ... <= d_max.

    Starts are drawn from `values` (the sorted member list), which skips
    non-members for free. Returns (progressions_checked, total_violations,
    violations) where violations is an int64 array of (start, delta) rows for
    the first `cap` progressions carrying a repeated color, in scan order.
    """
    n = member.shape[0] - 1
    checked = 0
    total = 0
    found: list[tuple[int, int]] = []
    for delta in range(d_start, d_max + 1, d_stride):
        last = n - (ell - 1) * delta
        cut = np.searchsorted(values, last, side="right")
        va = values[:cut]
        if va.size == 0:
            continue
        valid = member[va + delta] != 0
        for t in range(2, ell):
            valid &= member[va + t * delta] != 0
        hits = va[valid]
        checked += int(hits.size)
        if hits.size:
            cols = [colors[hits + t * delta] for t in range(ell)]
            dup = np.zeros(hits.shape, dtype=bool)
            for i in range(ell - 1):
                for j in range(i + 1, ell):
                    dup |= cols[i] == cols[j]
            bad = hits[dup]
            total += int(bad.size)
            if bad.size and len(found) < cap:
                for a in bad[: cap - len(found)]:
                    found.append((int(a), delta))
    viol = np.array(found, dtype=np.int64).reshape(len(found), 2)
    return checked, total, viol
