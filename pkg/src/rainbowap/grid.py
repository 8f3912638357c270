"""The digit grid {0,..,C-1}^d, its bijection with [n], and exact grid-point
arithmetic.

Coordinates are stored least-significant digit first, so the value map is a
plain base-C positional expansion shifted by one:

    value(x) = 1 + sum_i x[i] * C^i
"""

from __future__ import annotations

from .errors import ParamError, PointError
from .params import Params

GridPoint = tuple  # tuple[int, ...] with entries in [0, C-1]


def validate_point(x: GridPoint, p: Params) -> None:
    if len(x) != p.d:
        raise PointError(f"point has {len(x)} coordinates, expected {p.d}")
    for c in x:
        if not 0 <= c <= p.C - 1:
            raise PointError(f"coordinate {c} outside [0, {p.C - 1}]")


def point_to_value(x: GridPoint, p: Params) -> int:
    """Bijection from the grid onto [n] (1-based)."""
    validate_point(x, p)
    v = 0
    for c in reversed(x):
        v = v * p.C + c
    return v + 1


def value_to_point(v: int, p: Params) -> GridPoint:
    """Inverse of point_to_value: base-C digits of v-1, least significant first."""
    if not 1 <= v <= p.n:
        raise PointError(f"value {v} outside [1, {p.n}]")
    rem = v - 1
    coords = []
    for _ in range(p.d):
        rem, c = divmod(rem, p.C)
        coords.append(c)
    return tuple(coords)


def squared_norm(x: GridPoint) -> int:
    return sum(c * c for c in x)


def midpoint(x: GridPoint, y: GridPoint) -> GridPoint | None:
    """Componentwise (x+y)/2, or None when some coordinate sum is odd.
    The result always stays inside the grid when it exists."""
    if len(x) != len(y):
        raise PointError("dimension mismatch")
    out = []
    for a, b in zip(x, y):
        s = a + b
        if s & 1:
            return None
        out.append(s // 2)
    return tuple(out)


def reflect(x: GridPoint, y: GridPoint, p: Params) -> GridPoint | None:
    """Componentwise 2x - y, or None when any coordinate leaves [0, C-1]."""
    validate_point(x, p)
    validate_point(y, p)
    out = []
    for a, b in zip(x, y):
        c = 2 * a - b
        if not 0 <= c <= p.C - 1:
            return None
        out.append(c)
    return tuple(out)


def rational_combination(
    x: GridPoint, y: GridPoint, p_num: int, q_den: int, p: Params
) -> GridPoint | None:
    """(p_num*x + (q_den-p_num)*y) / q_den when every coordinate is an integer
    in range, else None. Generalizes midpoint (1,2) and reflect (2,1)."""
    if q_den == 0:
        raise ParamError("q_den must be nonzero")
    if q_den < 0:
        raise ParamError("q_den must be positive")
    validate_point(x, p)
    validate_point(y, p)
    out = []
    for a, b in zip(x, y):
        num = p_num * a + (q_den - p_num) * b
        if num % q_den:
            return None
        c = num // q_den
        if not 0 <= c <= p.C - 1:
            return None
        out.append(c)
    return tuple(out)
