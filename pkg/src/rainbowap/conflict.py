"""Per-class conflict graphs and their greedy coloring.

Two members of one label class conflict when they co-occur in some integer
progression of length 3..k that lies entirely inside the set A. The test
runs in the integer domain ([n], true progressions), not in grid space, so
it stays correct whether or not the label closure argument applies; closure
only justifies the distance-based pruning."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .grid import value_to_point
from .params import Params
from .shell import MembershipSet


def conflict_pair(a: int, b: int, A: MembershipSet, p: Params) -> bool:
    """True iff a and b both lie on some progression of length 3..k fully
    contained in A (inside [1, n]).

    For spacing q between the two positions (q must divide b-a), membership
    of the q-1 intermediate points already yields a progression of length
    q+1 >= 3 when q >= 2; adjacent positions (q = 1) additionally need one
    extension on either side."""
    if a == b:
        raise ValueError("conflict_pair needs two distinct values")
    if a > b:
        a, b = b, a
    n = A.n
    diff = b - a
    for q in range(1, p.k):
        if diff % q:
            continue
        step = diff // q
        if any(a + t * step not in A for t in range(1, q)):
            continue
        if q >= 2:
            return True
        if a - step >= 1 and a - step in A:
            return True
        if b + step <= n and b + step in A:
            return True
    return False


def pair_distance_bound(p: Params) -> float:
    """Grid-space Euclidean distance bound between any two members of a
    progression lying in the shell: 4 sqrt(eps) r for k = 3, 10 sqrt(eps) r
    for longer progressions."""
    coef = 4 if p.k == 3 else 10
    return coef * math.sqrt(float(p.epsilon)) * math.sqrt(float(p.r_squared))


def distance_bound_sq(p: Params) -> tuple[int, int]:
    """The same bound squared, as an exact fraction (num, den):
    coef^2 * eps * r^2."""
    coef = 4 if p.k == 3 else 10
    eps, r2 = p.epsilon, p.r_squared
    num = coef * coef * eps.numerator * r2.numerator
    den = eps.denominator * r2.denominator
    return num, den


def degree_log_bound(p: Params) -> float:
    """Natural log of the proven conflict-degree bound 2^d C^(16 eps d C^2)."""
    eps = float(p.epsilon)
    return p.d * math.log(2.0) + 16.0 * eps * p.d * p.C * p.C * math.log(p.C)


@dataclass
class ClassGraph:
    """Conflict graph of one label class."""

    members: list  # sorted values
    adjacency: dict  # value -> list of neighbor values
    max_degree: int = field(init=False)
    max_edge_dist_sq: int = field(default=0)  # largest grid distance^2 over edges
    num_edges: int = field(default=0)

    def __post_init__(self):
        self.max_degree = max((len(v) for v in self.adjacency.values()), default=0)


def build_class_graph(
    members, A: MembershipSet, p: Params, prune: bool = True
) -> ClassGraph:
    """Build the conflict graph on one class's members (all in A).

    With prune=True, pairs farther apart in grid space than the distance
    bound are skipped without probing; sound once the label closure check
    has passed. prune=False evaluates every pair and is the oracle mode."""
    members = sorted(members)
    coords = [value_to_point(v, p) for v in members]
    b_num, b_den = distance_bound_sq(p)
    adjacency: dict[int, list[int]] = {v: [] for v in members}
    max_d2 = 0
    edges = 0
    for i in range(len(members)):
        xi = coords[i]
        for j in range(i + 1, len(members)):
            d2 = sum((c1 - c2) ** 2 for c1, c2 in zip(xi, coords[j]))
            if prune and d2 * b_den > b_num:
                continue
            if conflict_pair(members[i], members[j], A, p):
                adjacency[members[i]].append(members[j])
                adjacency[members[j]].append(members[i])
                edges += 1
                if d2 > max_d2:
                    max_d2 = d2
    return ClassGraph(
        members=members, adjacency=adjacency, max_edge_dist_sq=max_d2, num_edges=edges
    )


def greedy_color(g: ClassGraph) -> dict:
    """Proper coloring with at most max_degree + 1 colors: members in
    increasing value order, each taking the smallest color unused by its
    already-colored neighbors."""
    color: dict[int, int] = {}
    for v in g.members:
        used = {color[u] for u in g.adjacency[v] if u in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return color
