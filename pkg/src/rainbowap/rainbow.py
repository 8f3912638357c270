"""End-to-end construction and verification.

build() produces a large subset A of [n] together with a coloring under
which every integer progression of length 3..k inside A is rainbow: members
are grouped by their carry-safe label, each class's conflict graph is
greedy-colored, and the final color is the (label key, greedy index) pair.

verify_rainbow() is the independent check: it enumerates integer
progressions straight off the membership bytes and the color array, reusing
none of the grid or label machinery."""

from __future__ import annotations

import math
import os
import random
import threading
import time
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .conflict import build_class_graph, distance_bound_sq, greedy_color
from .errors import ParamError, ResourceError
from .labels import coordinate_label_table, ensure_closed
from .params import Params
from .shell import DEFAULT_BUDGET_BYTES, MembershipSet, build_members

DEFAULT_SAMPLE_SEED = 1729
_FULL_RANGE_LIMIT = 5000


@dataclass
class ColoredSet:
    """A built (or loaded) coloring of a subset of [n]."""

    params: Params
    A: MembershipSet
    dense: np.ndarray  # int64, length n+1; dense color per member, -1 outside A
    color_of: dict | None = None  # value -> (label key, greedy index); None if loaded
    num_colors: int = 0
    num_fclasses: int | None = None
    max_degree: int | None = None
    max_edge_dist_sq: int | None = None
    build_millis: float | None = None

    @property
    def size_A(self) -> int:
        return self.A.count

    @property
    def shortfall(self) -> int:
        return self.params.n - self.A.count

    @property
    def measured_alpha(self) -> float | None:
        """log_n of the shortfall; undefined when A is all of [n]."""
        if self.shortfall <= 0:
            return None
        return math.log(self.shortfall) / math.log(self.params.n)

    @property
    def measured_beta(self) -> float | None:
        """log_n of the color count; undefined for an empty coloring."""
        if self.num_colors <= 0:
            return None
        return math.log(self.num_colors) / math.log(self.params.n)

    def same_coloring(self, other: "ColoredSet") -> bool:
        return (
            (self.params.C, self.params.d, self.params.epsilon, self.params.k)
            == (other.params.C, other.params.d, other.params.epsilon, other.params.k)
            and np.array_equal(self.A.member, other.A.member)
            and np.array_equal(self.dense, other.dense)
        )


def build(
    p: Params,
    *,
    prune: bool = True,
    budget_bytes: int = DEFAULT_BUDGET_BYTES,
) -> ColoredSet:
    """Run the construction end to end. Deterministic for fixed Params.

    Refuses configurations whose labels fail the closure check, since the
    distance pruning and the proven bounds are only justified then."""
    t0 = time.perf_counter()
    ensure_closed(p)
    A = build_members(p, budget_bytes)
    values = A.values()

    # label key per member, vectorized through the per-coordinate tables
    idx_table, radix = coordinate_label_table(p.C, p.k)
    keys = _member_keys(values, p, idx_table, radix)

    classes: dict[int, list[int]] = {}
    for v, key in zip(values.tolist(), keys):
        classes.setdefault(key, []).append(v)

    color_of: dict[int, tuple[int, int]] = {}
    max_degree = 0
    max_d2 = 0
    num_colors = 0
    for key, members in classes.items():
        g = build_class_graph(members, A, p, prune=prune)
        coloring = greedy_color(g)
        for v in members:
            color_of[v] = (key, coloring[v])
        if g.max_degree > max_degree:
            max_degree = g.max_degree
        if g.max_edge_dist_sq > max_d2:
            max_d2 = g.max_edge_dist_sq
        num_colors += (max(coloring.values()) + 1) if coloring else 0

    # dense 0-based indices in first-occurrence order over ascending values
    dense = np.full(p.n + 1, -1, dtype=np.int64)
    seen: dict[tuple[int, int], int] = {}
    for v in values.tolist():
        pair = color_of[v]
        dense[v] = seen.setdefault(pair, len(seen))
    assert len(seen) == num_colors

    return ColoredSet(
        params=p,
        A=A,
        dense=dense,
        color_of=color_of,
        num_colors=num_colors,
        num_fclasses=len(classes),
        max_degree=max_degree,
        max_edge_dist_sq=max_d2,
        build_millis=(time.perf_counter() - t0) * 1000.0,
    )


def _member_keys(values: np.ndarray, p: Params, idx_table, radix: int) -> list:
    """Label keys for the given member values; int64-vectorized when the
    mixed radix fits, exact Python integers otherwise."""
    if values.size == 0:
        return []
    lut = np.asarray(idx_table, dtype=np.int64)
    rem = values - 1
    if radix**p.d < 2**62:
        keys = np.zeros(values.shape, dtype=np.int64)
        mult = 1
        for _ in range(p.d):
            keys += lut[rem % p.C] * mult
            rem = rem // p.C
            mult *= radix
        return keys.tolist()
    out = []
    for r in rem.tolist():
        key = 0
        mult = 1
        for _ in range(p.d):
            r, c = divmod(r, p.C)
            key += int(idx_table[c]) * mult
            mult *= radix
        out.append(key)
    return out


@dataclass
class VerifyReport:
    """Outcome of a rainbow verification pass."""

    mode: str  # "exhaustive" | "sampled"
    aps_checked: int
    total_violations: int
    violations: list  # [(members tuple, colors tuple)], capped
    elapsed_millis: float
    lengths: tuple
    seed: int | None = None
    backend: str = field(default_factory=lambda: _kernels.BACKEND)

    @property
    def ok(self) -> bool:
        return self.total_violations == 0


def verify_rainbow(
    cs: ColoredSet,
    mode: str = "exhaustive",
    sample_budget: int = 100_000,
    *,
    violation_cap: int = 100,
    threads: int | None = None,
    seed: int = DEFAULT_SAMPLE_SEED,
) -> VerifyReport:
    """Check that every progression of length 3..k inside A is rainbow.

    Exhaustive mode scans every (length, start, difference) triple whose
    members all lie in A; sampled mode draws that many random triples.
    Results are independent of the thread count."""
    p = cs.params
    n = p.n
    member = np.ascontiguousarray(cs.A.member, dtype=np.uint8)
    colors = np.ascontiguousarray(cs.dense, dtype=np.int64)
    values = cs.A.values()
    lengths = tuple(range(3, p.k + 1))
    t0 = time.perf_counter()

    if mode == "exhaustive":
        checked = 0
        total = 0
        triples: list[tuple[int, int, int]] = []  # (ell, delta, a)
        for ell in lengths:
            d_max = (n - 1) // (ell - 1)
            ch, tot, arr = _scan_sharded(
                member, colors, values, ell, d_max, violation_cap, threads
            )
            checked += ch
            total += tot
            triples.extend((ell, int(dl), int(a)) for a, dl in arr)
        triples.sort()
        witnesses = [
            _expand_witness(ell, a, dl, colors)
            for ell, dl, a in triples[:violation_cap]
        ]
        return VerifyReport(
            mode="exhaustive",
            aps_checked=checked,
            total_violations=total,
            violations=witnesses,
            elapsed_millis=(time.perf_counter() - t0) * 1000.0,
            lengths=lengths,
        )

    if mode != "sampled":
        raise ParamError(f"unknown verify mode {mode!r}")
    rng = random.Random(seed)
    checked = 0
    total = 0
    witnesses = []
    memb = cs.A.member
    for _ in range(sample_budget):
        ell = rng.randint(3, p.k)
        d_max = (n - 1) // (ell - 1)
        delta = rng.randint(1, d_max)
        a = rng.randint(1, n - (ell - 1) * delta)
        pts = [a + t * delta for t in range(ell)]
        if not all(memb[v] for v in pts):
            continue
        checked += 1
        cols = [int(colors[v]) for v in pts]
        if len(set(cols)) < ell:
            total += 1
            if len(witnesses) < violation_cap:
                witnesses.append((tuple(pts), tuple(cols)))
    return VerifyReport(
        mode="sampled",
        aps_checked=checked,
        total_violations=total,
        violations=witnesses,
        elapsed_millis=(time.perf_counter() - t0) * 1000.0,
        lengths=lengths,
        seed=seed,
    )


def _expand_witness(ell: int, a: int, delta: int, colors: np.ndarray):
    pts = tuple(a + t * delta for t in range(ell))
    return pts, tuple(int(colors[v]) for v in pts)


def _scan_sharded(member, colors, values, ell, d_max, cap, threads):
    """Shard the difference range round-robin across threads and merge.

    Each shard keeps its first `cap` violations in scan order, so the merged
    smallest `cap` equal the global smallest regardless of thread count."""
    if threads is None:
        threads = os.cpu_count() or 1
    threads = max(1, min(threads, 64))
    if threads == 1 or d_max < 4 * threads:
        return _kernels.ap_scan(member, colors, values, ell, 1, 1, d_max, cap)

    results: list = [None] * threads
    def run(t: int):
        results[t] = _kernels.ap_scan(
            member, colors, values, ell, t + 1, threads, d_max, cap
        )

    workers = [threading.Thread(target=run, args=(t,)) for t in range(threads)]
    for w in workers:
        w.start()
    for w in workers:
        w.join()
    checked = sum(r[0] for r in results)
    total = sum(r[1] for r in results)
    arrs = [r[2] for r in results if r[2].size]
    if not arrs:
        return checked, total, np.empty((0, 2), dtype=np.int64)
    merged = np.concatenate(arrs)
    order = np.lexsort((merged[:, 0], merged[:, 1]))  # by (delta, a)
    return checked, total, merged[order][:cap]


def full_range_lower_bound(n: int) -> int:
    """Certified lower bound on the colors needed to rainbow-color all of
    [n]: the values 1..ceil(n/2) conflict pairwise (for a < b the point
    2b - a <= n completes a 3-term progression), forming an explicit clique.
    Every pair is verified before the size is returned."""
    if n < 1:
        raise ParamError("n must be positive")
    if n > _FULL_RANGE_LIMIT:
        raise ResourceError(f"full-range oracle capped at n = {_FULL_RANGE_LIMIT}")
    h = (n + 1) // 2
    if h >= 2:
        a = np.arange(1, h + 1, dtype=np.int64)
        third = 2 * a[None, :] - a[:, None]  # entry (i, j) = 2a_j - a_i
        iu = np.triu_indices(h, k=1)  # i < j, i.e. a_i < a_j
        if not bool((third[iu] <= n).all()):
            raise AssertionError("clique certificate failed; construction bug")
    return h


def _full_range_neighbor_mask(v: int, n: int) -> np.ndarray:
    """Conflict mask against u = 1..v-1 when A is all of [n]: same parity
    (midpoint inside), or 2u >= v+1 (left extension), or u >= 2v-n (right
    extension)."""
    u = np.arange(1, v, dtype=np.int64)
    return ((u & 1) == (v & 1)) | (2 * u >= v + 1) | (u >= 2 * v - n)


def full_range_greedy_colors(n: int) -> int:
    """Colors used by the deterministic greedy coloring of the conflict
    graph on all of [n]."""
    if n < 1:
        raise ParamError("n must be positive")
    if n > _FULL_RANGE_LIMIT:
        raise ResourceError(f"full-range oracle capped at n = {_FULL_RANGE_LIMIT}")
    colors = np.zeros(n + 1, dtype=np.int64)
    used_count = 1
    for v in range(2, n + 1):
        mask = _full_range_neighbor_mask(v, n)
        used = colors[1:v][mask]
        present = np.zeros(used_count + 1, dtype=bool)
        present[used] = True
        c = int(np.argmin(present))
        colors[v] = c
        if c == used_count:
            used_count += 1
    return used_count
