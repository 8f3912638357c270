"""Command-line front end.

Subcommands: build, verify, sweep, matchings, lowerbound.
Exit codes: 0 success/verified, 1 verification failure, 2 usage or format
error, 3 resource refusal.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

from . import formats, matchings, rainbow
from .errors import FormatError, ParamError, ResourceError
from .params import Params, nearby_power_choices, parse_epsilon, power_decompositions
from .shell import DEFAULT_BUDGET_BYTES

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _params_from_args(args) -> Params:
    eps = parse_epsilon(args.epsilon) if args.epsilon is not None else None
    return Params.create(C=args.C, d=args.d, epsilon=eps, k=args.k)


def _budget(args) -> int:
    mb = getattr(args, "memory_budget_mb", None)
    return DEFAULT_BUDGET_BYTES if mb is None else int(mb) * (1 << 20)


def cmd_build(args) -> int:
    p = _params_from_args(args)
    cs = rainbow.build(p, prune=not args.no_prune, budget_bytes=_budget(args))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    formats.write_coloring(out / "coloring.tsv", cs)
    # timings go to stderr only, keeping the stats file byte-reproducible
    formats.write_stats(out / "stats.json", formats.stats_dict(cs))
    print(
        f"built n={p.n}: |A|={cs.size_A}, {cs.num_colors} colors over "
        f"{cs.num_fclasses} label classes, max degree {cs.max_degree} "
        f"({cs.build_millis:.0f} ms)",
        file=sys.stderr,
    )
    print(f"wrote {out / 'coloring.tsv'} and {out / 'stats.json'}")
    return EXIT_OK


def _print_rainbow_report(rep: rainbow.VerifyReport) -> None:
    print(
        f"mode={rep.mode} backend={rep.backend} checked={rep.aps_checked} "
        f"violations={rep.total_violations} ({rep.elapsed_millis:.0f} ms)"
    )
    for members, cols in rep.violations:
        print(f"violation: progression {members} has colors {cols}")


def cmd_verify(args) -> int:
    path = Path(args.input)
    try:
        head = path.open().readline().strip()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None

    if head == "#format rainbow-v1":
        cs = formats.read_coloring(path)
        rep = rainbow.verify_rainbow(
            cs,
            mode=args.mode,
            sample_budget=args.sample_budget,
            threads=args.threads,
            seed=args.seed,
        )
        _print_rainbow_report(rep)
        if args.report:
            payload = {
                "input": str(path),
                "mode": rep.mode,
                "aps_checked": rep.aps_checked,
                "total_violations": rep.total_violations,
                "violations": [
                    {"members": list(m), "colors": list(c)} for m, c in rep.violations
                ],
                "elapsed_millis": rep.elapsed_millis,
                "seed": rep.seed,
                "backend": rep.backend,
            }
            Path(args.report).write_text(json.dumps(payload, indent=2) + "\n")
        return EXIT_OK if rep.ok else EXIT_VIOLATIONS

    if head == "#format matchings-v1":
        if not args.coloring:
            raise ParamError(
                "verifying a decomposition needs --coloring with the rainbow "
                "file on [2m]"
            )
        md = formats.read_matchings(path)
        inner = formats.read_coloring(args.coloring)
        if inner.params.n != 2 * md.m:
            raise ParamError(
                f"coloring covers [{inner.params.n}] but the decomposition "
                f"needs [2m] = [{2 * md.m}]"
            )
        rep = matchings.verify_induced(md, inner, check_complete=True)
        print(
            f"classes={rep.classes_checked} edges={rep.num_edges} "
            f"violations={rep.total_violations} ({rep.elapsed_millis:.0f} ms)"
        )
        for kind, detail in rep.violations:
            print(f"violation[{kind}]: {detail}")
        if args.report:
            payload = {
                "input": str(path),
                "classes_checked": rep.classes_checked,
                "num_edges": rep.num_edges,
                "total_violations": rep.total_violations,
                "violations": [{"kind": k, "detail": d} for k, d in rep.violations],
                "elapsed_millis": rep.elapsed_millis,
            }
            Path(args.report).write_text(json.dumps(payload, indent=2) + "\n")
        return EXIT_OK if rep.ok else EXIT_VIOLATIONS

    raise FormatError(f"{path}: unrecognized format header {head!r}")


def cmd_sweep(args) -> int:
    Cs = [int(t) for t in args.C.split(",")]
    ds = [int(t) for t in args.d.split(",")]
    epss = args.epsilon.split(",")
    rows = []
    for C in Cs:
        for d in ds:
            for eps in epss:
                row = {key: "" for key in formats.SWEEP_COLUMNS}
                row.update({"C": C, "d": d, "epsilon": eps, "k": args.k})
                try:
                    p = Params.create(C=C, d=d, epsilon=parse_epsilon(eps), k=args.k)
                    t0 = time.perf_counter()
                    cs = rainbow.build(p, budget_bytes=_budget(args))
                    build_ms = int((time.perf_counter() - t0) * 1000)
                    rep = rainbow.verify_rainbow(
                        cs,
                        mode=args.mode,
                        sample_budget=args.sample_budget,
                        threads=args.threads,
                    )
                    stats = formats.stats_dict(
                        cs,
                        verify_mode=rep.mode,
                        violations=rep.total_violations,
                        build_ms=build_ms,
                        verify_ms=int(rep.elapsed_millis),
                    )
                    row.update(stats)
                    row["epsilon"] = formats.epsilon_str(p.epsilon)
                    row["status"] = "ok"
                except (ParamError, ResourceError, FormatError) as exc:
                    row["status"] = f"error: {exc}"
                rows.append(row)
                status = rows[-1]["status"]
                print(f"C={C} d={d} epsilon={eps} k={args.k}: {status}", file=sys.stderr)
    out = Path(args.out)
    with out.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(formats.SWEEP_COLUMNS) + ["status"])
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if v is None else v) for k, v in row.items()})
    print(f"wrote {out} ({len(rows)} rows)")
    return EXIT_OK


def cmd_matchings(args) -> int:
    m = args.m
    if m < 1:
        raise ParamError("m must be positive")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    if args.coloring:
        inner = formats.read_coloring(args.coloring)
        if inner.params.n != 2 * m:
            raise ParamError(
                f"coloring covers [{inner.params.n}], need [2m] = [{2 * m}]"
            )
    else:
        if args.C is not None and args.d is not None:
            C, d = args.C, args.d
            if C**d != 2 * m:
                raise ParamError(f"{C}^{d} = {C**d} != 2m = {2 * m}")
        else:
            choices = power_decompositions(2 * m)
            if not choices:
                near = ", ".join(
                    f"C={c} d={dd} (n={nn})" for c, dd, nn in nearby_power_choices(2 * m)
                )
                raise ParamError(
                    f"2m = {2 * m} is not a grid power C^d with C >= 3; "
                    f"pass --coloring, or pick m near one of: {near}"
                )
            C, d = choices[0]
        eps = parse_epsilon(args.epsilon) if args.epsilon is not None else None
        p = Params.create(C=C, d=d, epsilon=eps, k=args.k)
        inner = rainbow.build(p, budget_bytes=_budget(args))
        inner_rep = rainbow.verify_rainbow(inner, threads=args.threads)
        if not inner_rep.ok:
            _print_rainbow_report(inner_rep)
            return EXIT_VIOLATIONS
        formats.write_coloring(out / "inner_coloring.tsv", inner)

    md = matchings.build_matchings(m, inner)
    rep = matchings.verify_induced(md, inner)
    formats.write_matchings(out / "decomposition.tsv", md)

    missing = inner.shortfall
    stats = {
        "m": m,
        "n": m * m,
        "inner_n": inner.params.n,
        "inner_size_A": inner.size_A,
        "inner_missing": missing,
        "source_colors": inner.num_colors,
        "num_edges": md.num_edges,
        "edge_lower_bound": matchings.edge_count_bound(m, missing),
        "num_classes": md.num_classes,
        "class_bound": matchings.class_count_bound(m, inner.num_colors),
        "class_bound_loose": matchings.loose_class_bound(m, inner.measured_beta),
        "violations": rep.total_violations,
    }
    formats.write_stats(out / "matchings_stats.json", stats)
    print(
        f"m={m}: {md.num_edges} edges in {md.num_classes} classes "
        f"(>= {stats['edge_lower_bound']} edges required, "
        f"<= {stats['class_bound']} classes allowed), "
        f"violations={rep.total_violations}"
    )
    for kind, detail in rep.violations:
        print(f"violation[{kind}]: {detail}")
    print(f"wrote {out / 'decomposition.tsv'} and {out / 'matchings_stats.json'}")
    return EXIT_OK if rep.ok else EXIT_VIOLATIONS


def cmd_lowerbound(args) -> int:
    clique = rainbow.full_range_lower_bound(args.n)
    greedy = rainbow.full_range_greedy_colors(args.n)
    ok = greedy >= clique
    print(f"n={args.n} clique_lower_bound={clique} greedy_colors={greedy} ok={ok}")
    if args.json:
        Path(args.json).write_text(
            json.dumps(
                {"n": args.n, "clique_lower_bound": clique, "greedy_colors": greedy,
                 "ok": ok},
                indent=2,
            )
            + "\n"
        )
    return EXIT_OK if ok else EXIT_VIOLATIONS


def _add_common(sp, with_budget=True):
    sp.add_argument("--threads", type=int, default=None, help="worker threads")
    if with_budget:
        sp.add_argument("--memory-budget-mb", type=int, default=None)


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rainbowap",
        description="Rainbow-progression colorings and induced-matching "
        "decompositions with brute-force verification",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct and write a coloring")
    b.add_argument("--C", type=int, required=True)
    b.add_argument("--d", type=int, required=True)
    b.add_argument("--epsilon", default=None, help="shell half-width, e.g. 1/20 (default 1/C^3)")
    b.add_argument("--k", type=int, default=3)
    b.add_argument("--no-prune", action="store_true", help="evaluate all class pairs")
    b.add_argument("--out", default=".", help="output directory")
    _add_common(b)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="verify a coloring or decomposition file")
    v.add_argument("--input", required=True)
    v.add_argument("--coloring", default=None, help="rainbow file on [2m] (decompositions)")
    v.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    v.add_argument("--sample-budget", type=int, default=100_000)
    v.add_argument("--seed", type=int, default=rainbow.DEFAULT_SAMPLE_SEED)
    v.add_argument("--report", default=None, help="write a JSON report here")
    _add_common(v, with_budget=False)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="build+verify a parameter grid, write CSV")
    s.add_argument("--C", required=True, help="comma-separated list")
    s.add_argument("--d", required=True, help="comma-separated list")
    s.add_argument("--epsilon", required=True, help="comma-separated list")
    s.add_argument("--k", type=int, default=3)
    s.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    s.add_argument("--sample-budget", type=int, default=100_000)
    s.add_argument("--out", required=True)
    _add_common(s)
    s.set_defaults(func=cmd_sweep)

    mt = sub.add_parser("matchings", help="build and verify a matching decomposition")
    mt.add_argument("--m", type=int, required=True, help="block count; graph has m^2 vertices")
    mt.add_argument("--C", type=int, default=None)
    mt.add_argument("--d", type=int, default=None)
    mt.add_argument("--epsilon", default=None)
    mt.add_argument("--k", type=int, default=3)
    mt.add_argument("--coloring", default=None, help="precomputed rainbow file on [2m]")
    mt.add_argument("--out", default=".", help="output directory")
    _add_common(mt)
    mt.set_defaults(func=cmd_matchings)

    lb = sub.add_parser("lowerbound", help="full-range color lower bound oracle")
    lb.add_argument("--n", type=int, required=True)
    lb.add_argument("--json", default=None)
    lb.set_defaults(func=cmd_lowerbound)

    return ap


def main(argv=None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except (ParamError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
