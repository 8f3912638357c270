"""Graph on m^2 vertices (m blocks of m) whose edges split into few induced
matchings.

Vertices are (block, index) pairs; the same index names a different vertex
in every block. For blocks i < j, index x in block i and y in block j are
joined iff x + y lies in a rainbow-verified set A on [2m]; the edge's class
is keyed by (i, j, x - y, color of x + y). The rainbow property of the
source coloring is exactly what makes every class an induced matching."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import ParamError
from .rainbow import ColoredSet


@dataclass
class MatchingDecomposition:
    """Edge list plus class assignment, stored columnwise.

    Edges are rows (bi[e], x[e], bj[e], y[e]) with bi < bj, sorted by block
    pair then by (x, y); cls[e] is a dense 0-based class index assigned by
    first occurrence in that order."""

    m: int
    bi: np.ndarray
    x: np.ndarray
    bj: np.ndarray
    y: np.ndarray
    cls: np.ndarray
    num_classes: int = field(init=False)

    def __post_init__(self):
        self.num_classes = int(self.cls.max()) + 1 if self.cls.size else 0

    @property
    def num_edges(self) -> int:
        return int(self.bi.size)

    def edge_rows(self) -> np.ndarray:
        return np.stack([self.bi, self.x, self.bj, self.y, self.cls], axis=1)

    def class_keys(self, colored: ColoredSet) -> np.ndarray:
        """(i, j, x-y, color(x+y)) per edge, columnwise."""
        return np.stack(
            [self.bi, self.bj, self.x - self.y, colored.dense[self.x + self.y]],
            axis=1,
        )


def build_matchings(m: int, colored: ColoredSet) -> MatchingDecomposition:
    """Assemble the decomposition from a coloring of [2m]."""
    if m < 1:
        raise ParamError("m must be positive")
    if colored.params.n != 2 * m:
        raise ParamError(
            f"inner coloring covers [{colored.params.n}], need [2m] = [{2 * m}]"
        )
    member = colored.A.member
    dense = colored.dense

    # base edge pattern shared by every block pair: (x, y) with x + y in A
    xs, ys = np.nonzero(member[np.add.outer(np.arange(1, m + 1), np.arange(1, m + 1))])
    bx = (xs + 1).astype(np.int64)
    by = (ys + 1).astype(np.int64)
    e0 = bx.size
    base_rank = np.empty(e0, dtype=np.int64)
    seen: dict[tuple[int, int], int] = {}
    cols = dense[bx + by]
    for t in range(e0):
        pair = (int(bx[t] - by[t]), int(cols[t]))
        base_rank[t] = seen.setdefault(pair, len(seen))
    k_base = len(seen)

    pairs = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    pi = np.array([ij[0] for ij in pairs], dtype=np.int64)
    pj = np.array([ij[1] for ij in pairs], dtype=np.int64)
    npairs = len(pairs)

    return MatchingDecomposition(
        m=m,
        bi=np.repeat(pi, e0),
        x=np.tile(bx, npairs),
        bj=np.repeat(pj, e0),
        y=np.tile(by, npairs),
        cls=(np.arange(npairs, dtype=np.int64) * k_base).repeat(e0)
        + np.tile(base_rank, npairs),
    )


@dataclass
class MatchReport:
    classes_checked: int
    num_edges: int
    total_violations: int
    violations: list  # (kind, detail) pairs, capped
    elapsed_millis: float

    @property
    def ok(self) -> bool:
        return self.total_violations == 0


def _pack_keys(md: MatchingDecomposition, colored: ColoredSet) -> np.ndarray:
    """Injective int64 encoding of each edge's class key."""
    m = md.m
    span = 2 * m + 1
    colspan = int(colored.dense.max()) + 2
    packed = ((md.bi * (m + 1) + md.bj) * span + (md.x - md.y + m)) * colspan
    return packed + colored.dense[md.x + md.y] + 1


def verify_induced(
    md: MatchingDecomposition,
    colored: ColoredSet,
    *,
    cap: int = 100,
    check_complete: bool = False,
) -> MatchReport:
    """Check every class is an induced matching, recomputing edge existence
    from x + y membership rather than trusting the class assignment.

    Per class: (1) no two edges share a block-qualified endpoint; (2) for
    distinct class edges (x1,y1), (x2,y2) neither (x1,y2) nor (x2,y1) is an
    edge of the graph at all. Also checks that the class assignment and the
    recomputed keys induce the same partition, and that every listed edge
    actually exists. check_complete additionally requires the edge list to
    cover every edge the membership set generates."""
    t0 = time.perf_counter()
    m = md.m
    member = colored.A.member
    violations: list[tuple[str, str]] = []
    total = 0

    def record(kind: str, detail: str):
        nonlocal total
        total += 1
        if len(violations) < cap:
            violations.append((kind, detail))

    if colored.params.n != 2 * m:
        raise ParamError("coloring ground set does not match the decomposition")

    if md.num_edges == 0:
        return MatchReport(
            classes_checked=0,
            num_edges=0,
            total_violations=0,
            violations=[],
            elapsed_millis=(time.perf_counter() - t0) * 1000.0,
        )

    ok_range = (
        md.bi.min() >= 1
        and bool((md.bi < md.bj).all())
        and md.bj.max() <= m
        and md.x.min() >= 1
        and md.x.max() <= m
        and md.y.min() >= 1
        and md.y.max() <= m
    )
    if not ok_range:
        record("range", "edge endpoints or blocks out of range")
        return MatchReport(
            classes_checked=0,
            num_edges=md.num_edges,
            total_violations=total,
            violations=violations,
            elapsed_millis=(time.perf_counter() - t0) * 1000.0,
        )

    sums = md.x + md.y
    phantom = np.flatnonzero(member[sums] == 0)
    for e in phantom[:cap]:
        record("phantom-edge", f"edge ({md.bi[e]},{md.x[e]})-({md.bj[e]},{md.y[e]}) "
                               f"has sum {sums[e]} outside the set")
    if phantom.size > cap:
        total += int(phantom.size - cap)

    packed = _pack_keys(md, colored)
    # class assignment vs key partition must agree in both directions
    order = np.argsort(md.cls, kind="stable")
    cls_s = md.cls[order]
    key_s = packed[order]
    bounds = np.flatnonzero(np.diff(cls_s)) + 1
    starts = np.concatenate(([0], bounds))
    ends = np.concatenate((bounds, [cls_s.size]))
    kid = np.unique(packed, return_inverse=True)[1]
    if np.unique(kid).size != np.unique(kid * (md.cls.max() + 2) + md.cls).size:
        record("split-key", "edges with identical keys appear in different classes")

    classes_checked = 0
    for s, e in zip(starts, ends):
        classes_checked += 1
        if np.unique(key_s[s:e]).size != 1:
            record(
                "mixed-class",
                f"class {int(cls_s[s])} mixes edges with different keys",
            )
        if e - s == 1:
            continue
        rows = order[s:e]
        xs = md.x[rows]
        ys = md.y[rows]
        if np.unique(xs).size != xs.size or np.unique(ys).size != ys.size:
            record("shared-endpoint", f"class {int(cls_s[s])} repeats an endpoint")
        cross = member[xs[:, None] + ys[None, :]] != 0
        np.fill_diagonal(cross, False)
        if cross.any():
            a, b = np.argwhere(cross)[0]
            record(
                "cross-edge",
                f"class {int(cls_s[s])}: ({int(xs[a])},{int(ys[a])}) and "
                f"({int(xs[b])},{int(ys[b])}) admit the graph edge "
                f"x={int(xs[a])}, y={int(ys[b])} (sum {int(xs[a] + ys[b])})",
            )

    if check_complete:
        derived = build_matchings(m, colored)
        same = derived.num_edges == md.num_edges and np.array_equal(
            np.sort(_pack_edges(md)), np.sort(_pack_edges(derived))
        )
        if not same:
            record("incomplete", "edge list differs from the one the set generates")

    return MatchReport(
        classes_checked=classes_checked,
        num_edges=md.num_edges,
        total_violations=total,
        violations=violations,
        elapsed_millis=(time.perf_counter() - t0) * 1000.0,
    )


def _pack_edges(md: MatchingDecomposition) -> np.ndarray:
    m = md.m
    return ((md.bi * (m + 1) + md.bj) * (m + 1) + md.x) * (m + 1) + md.y


def edge_count_bound(m: int, missing: int) -> int:
    """Exact lower bound on the edge count given how many of [2m] the inner
    set misses: binom(m,2) * (m^2 - m*missing). May be negative (vacuous)."""
    return math.comb(m, 2) * (m * m - m * missing)


def class_count_bound(m: int, source_colors: int) -> int:
    """Upper bound on nonempty classes: block pairs times difference values
    times source colors."""
    return math.comb(m, 2) * (2 * m - 1) * source_colors


def loose_class_bound(m: int, measured_beta: float | None) -> float | None:
    """The coarser 4 n^(3/2 + beta/2) form with n = m^2, using measured beta."""
    if measured_beta is None:
        return None
    n = m * m
    return 4.0 * n ** (1.5 + measured_beta / 2.0)
