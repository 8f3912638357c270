# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled scan kernels: digit norms and the exhaustive progression scan.

The progression scan is the hot loop of the whole package; it runs over a
byte-per-value membership array with starts drawn from the sorted member
list, releasing the GIL so callers can shard the delta range across threads.
"""

import numpy as np

from libc.stdint cimport int64_t, uint8_t


def grid_norms(long long n, long long C, int d):
    """Squared grid norm of the digit expansion of v-1 for every v in [1, n].
    Entry 0 is -1 so index 0 never tests as a member."""
    out = np.empty(n + 1, dtype=np.int64)
    cdef int64_t[::1] o = out
    cdef long long v, rem, q, dig, s
    cdef int i
    o[0] = -1
    with nogil:
        for v in range(1, n + 1):
            rem = v - 1
            s = 0
            for i in range(d):
                q = rem / C
                dig = rem - q * C
                rem = q
                s += dig * dig
            o[v] = s
    return out


def ap_scan(const uint8_t[::1] member, const int64_t[::1] colors,
            const int64_t[::1] values, int ell,
            long long d_start, long long d_stride, long long d_max,
            long long cap):
    """Enumerate ell-term progressions a, a+delta, ..., a+(ell-1)*delta with
    every member in the set, for delta = d_start, d_start+d_stride, ... <= d_max.

    Starts are drawn from `values` (the sorted member list), which skips
    non-members for free. Returns (progressions_checked, total_violations,
    violations) where violations is an int64 array of (start, delta) rows for
    the first `cap` progressions carrying a repeated color, in scan order.
    """
    cdef long long n = member.shape[0] - 1
    cdef long long nv = values.shape[0]
    viol = np.empty((max(cap, 0), 2), dtype=np.int64)
    cdef int64_t[:, ::1] vbuf = viol
    cdef long long checked = 0, total = 0, stored = 0
    cdef long long delta, a, last, iv
    cdef int t, i, j, bad
    cdef int64_t ci
    if d_stride <= 0:
        raise ValueError("d_stride must be positive")
    with nogil:
        delta = d_start
        while delta <= d_max:
            last = n - (ell - 1) * delta
            for iv in range(nv):
                a = values[iv]
                if a > last:
                    break
                bad = 0
                for t in range(1, ell):
                    if member[a + t * delta] == 0:
                        bad = 1
                        break
                if bad:
                    continue
                checked += 1
                bad = 0
                for i in range(ell - 1):
                    ci = colors[a + i * delta]
                    for j in range(i + 1, ell):
                        if ci == colors[a + j * delta]:
                            bad = 1
                            break
                    if bad:
                        break
                if bad:
                    total += 1
                    if stored < cap:
                        vbuf[stored, 0] = a
                        vbuf[stored, 1] = delta
                        stored += 1
            delta += d_stride
    return checked, total, viol[:stored].copy()
