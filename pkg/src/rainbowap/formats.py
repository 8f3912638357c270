"""Deterministic file formats.

Coloring (rainbow-v1): two header lines, then one `value<TAB>color` line per
member, values ascending, colors dense 0-based.

    #format rainbow-v1
    #params C=10 d=3 epsilon=1/20 k=3
    3	0
    ...

Decomposition (matchings-v1): `#format matchings-v1`, `#m 32`, then
space-separated `i x j y class_index` rows.

Stats files are single JSON objects whose keys match the sweep CSV columns.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import FormatError
from .matchings import MatchingDecomposition
from .params import Params, parse_epsilon
from .rainbow import ColoredSet
from .shell import MembershipSet

SWEEP_COLUMNS = (
    "C", "d", "epsilon", "k", "n", "size_A", "shortfall", "claim1_bound",
    "num_fclasses", "max_degree", "claim3_log_bound", "num_colors",
    "measured_alpha", "measured_beta", "verify_mode", "violations",
    "build_ms", "verify_ms",
)


def epsilon_str(eps: Fraction) -> str:
    return f"{eps.numerator}/{eps.denominator}" if eps.denominator != 1 else str(eps.numerator)


def write_coloring(path, cs: ColoredSet) -> None:
    p = cs.params
    lines = [
        "#format rainbow-v1",
        f"#params C={p.C} d={p.d} epsilon={epsilon_str(p.epsilon)} k={p.k}",
    ]
    values = cs.A.values()
    dense = cs.dense
    lines.extend(f"{int(v)}\t{int(dense[v])}" for v in values)
    Path(path).write_text("\n".join(lines) + "\n")


def read_coloring(path) -> ColoredSet:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    lines = text.splitlines()
    if len(lines) < 2 or lines[0] != "#format rainbow-v1":
        raise FormatError(f"{path}: missing rainbow-v1 header")
    if not lines[1].startswith("#params "):
        raise FormatError(f"{path}: missing #params line")
    fields = {}
    for token in lines[1][len("#params "):].split():
        if "=" not in token:
            raise FormatError(f"{path}: malformed #params token {token!r}")
        key, _, val = token.partition("=")
        fields[key] = val
    try:
        params = Params(
            C=int(fields["C"]),
            d=int(fields["d"]),
            epsilon=parse_epsilon(fields["epsilon"]),
            k=int(fields["k"]),
        )
    except (KeyError, ValueError) as exc:
        raise FormatError(f"{path}: bad #params line: {exc}") from None

    dense = np.full(params.n + 1, -1, dtype=np.int64)
    member = np.zeros(params.n + 1, dtype=np.uint8)
    prev = 0
    num_colors = 0
    for ln, line in enumerate(lines[2:], start=3):
        if not line:
            raise FormatError(f"{path}:{ln}: empty line")
        parts = line.split("\t")
        if len(parts) != 2:
            raise FormatError(f"{path}:{ln}: expected 'value<TAB>color'")
        try:
            v, c = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"{path}:{ln}: non-integer field") from None
        if not 1 <= v <= params.n:
            raise FormatError(f"{path}:{ln}: value {v} outside [1, {params.n}]")
        if v <= prev:
            raise FormatError(f"{path}:{ln}: values must be strictly ascending")
        if c < 0:
            raise FormatError(f"{path}:{ln}: negative color")
        prev = v
        member[v] = 1
        dense[v] = c
        num_colors = max(num_colors, c + 1)
    return ColoredSet(
        params=params,
        A=MembershipSet(n=params.n, member=member),
        dense=dense,
        color_of=None,
        num_colors=num_colors,
    )


def write_matchings(path, md: MatchingDecomposition) -> None:
    parts = [f"#format matchings-v1\n#m {md.m}\n"]
    rows = np.stack([md.bi, md.x, md.bj, md.y, md.cls], axis=1)
    parts.extend(" ".join(map(str, row)) + "\n" for row in rows.tolist())
    Path(path).write_text("".join(parts))


def read_matchings(path) -> MatchingDecomposition:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    lines = text.splitlines()
    if len(lines) < 2 or lines[0] != "#format matchings-v1":
        raise FormatError(f"{path}: missing matchings-v1 header")
    if not lines[1].startswith("#m "):
        raise FormatError(f"{path}: missing #m line")
    try:
        m = int(lines[1][3:])
    except ValueError:
        raise FormatError(f"{path}: bad #m line") from None
    if m < 1:
        raise FormatError(f"{path}: m must be positive")
    rows = []
    for ln, line in enumerate(lines[2:], start=3):
        parts = line.split()
        if len(parts) != 5:
            raise FormatError(f"{path}:{ln}: expected 'i x j y class_index'")
        try:
            i, x, j, y, cls = (int(t) for t in parts)
        except ValueError:
            raise FormatError(f"{path}:{ln}: non-integer field") from None
        if not (1 <= i < j <= m and 1 <= x <= m and 1 <= y <= m and cls >= 0):
            raise FormatError(f"{path}:{ln}: blocks or vertices out of range")
        rows.append([i, x, j, y, cls])
    arr = np.array(rows, dtype=np.int64).reshape(len(rows), 5)
    return MatchingDecomposition(
        m=m, bi=arr[:, 0], x=arr[:, 1], bj=arr[:, 2], y=arr[:, 3], cls=arr[:, 4]
    )


def stats_dict(
    cs: ColoredSet,
    verify_mode: str = "none",
    violations=None,
    build_ms=None,
    verify_ms=None,
) -> dict:
    """Stats with the sweep columns, recomputed from the colored set."""
    from .conflict import degree_log_bound
    from .shell import shortfall_bound

    p = cs.params
    return {
        "C": p.C,
        "d": p.d,
        "epsilon": epsilon_str(p.epsilon),
        "k": p.k,
        "n": p.n,
        "size_A": cs.size_A,
        "shortfall": cs.shortfall,
        "claim1_bound": shortfall_bound(p),
        "num_fclasses": cs.num_fclasses,
        "max_degree": cs.max_degree,
        "claim3_log_bound": degree_log_bound(p),
        "num_colors": cs.num_colors,
        "measured_alpha": cs.measured_alpha,
        "measured_beta": cs.measured_beta,
        "verify_mode": verify_mode,
        "violations": violations,
        "build_ms": build_ms,
        "verify_ms": verify_ms,
    }


def write_stats(path, stats: dict) -> None:
    Path(path).write_text(json.dumps(stats, indent=2) + "\n")
