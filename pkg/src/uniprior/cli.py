"""Command-line front end.

Subcommands: analyze, tree, bounds, oracle, census, simulate, verify.
Usage errors exit 2 (argparse); domain errors exit 1 and print
``error: <Name>: <message>``.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import census as census_mod
from . import channel as channel_mod
from .advantage import advantage_report
from .bounds import certify, lower_bounds
from .code import decode_paths, decoding_profile, encode, full_encode, profile_for_code
from .errors import UndecodableError, UnipriorError
from .graph import load_ifg
from .oracle import oracle_optimal
from .trees import resolve_algorithm


def _parse_sweep(spec: str) -> list[float]:
    """Parse 'start:stop:step' (inclusive endpoints, in dB)."""
    try:
        start, stop, step = (float(x) for x in spec.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start:stop:step, got {spec!r}")
    if step <= 0 or stop < start:
        raise argparse.ArgumentTypeError(f"bad sweep range {spec!r}")
    points = []
    value = start
    while value <= stop + 1e-9:
        points.append(round(value, 9))
        value += step
    return points


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uniprior",
        description="Spanning-tree index codes for single-uniprior broadcast problems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_alg=True):
        p.add_argument("input", help="IFG graph file")
        if with_alg:
            p.add_argument(
                "--alg",
                default="alg1",
                help="algorithm selector: star:<v> | alg1..alg5 | oracle",
            )
        p.add_argument(
            "--format", choices=("table", "json", "csv"), default="table"
        )

    p = sub.add_parser("analyze", help="per-vertex advantage table plus bounds")
    add_common(p, with_alg=False)

    p = sub.add_parser("tree", help="build a tree: code and decoding profile")
    add_common(p)
    p.add_argument(
        "--recursive",
        action="store_true",
        help="re-root nested components inside grafted ones (alg3 only)",
    )

    p = sub.add_parser("bounds", help="lower bounds, achieved T, certificate")
    add_common(p)

    p = sub.add_parser("oracle", help="exhaustive optimum over spanning trees")
    add_common(p, with_alg=False)

    p = sub.add_parser("census", help="isomorphism-class census and sweep")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("table", "csv"), default="table")
    p.add_argument(
        "--per-class-json",
        metavar="PATH",
        help="also dump every class record as JSON",
    )
    p.add_argument("--quiet", action="store_true", help="suppress progress lines")

    p = sub.add_parser("simulate", help="Monte Carlo error-rate sweep (CSV)")
    add_common(p)
    p.add_argument("--channel", choices=("bsc", "awgn", "rayleigh"), default="awgn")
    p.add_argument("--p", type=float, help="crossover probability (bsc)")
    p.add_argument(
        "--snr-db", type=_parse_sweep, help="Eb/N0 sweep start:stop:step in dB"
    )
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=1)

    p = sub.add_parser("verify", help="exhaustive decode check of the full pipeline")
    add_common(p)
    return parser


def _emit(data, fmt: str, table_lines) -> None:
    if fmt == "json":
        print(json.dumps(data, indent=2))
    else:
        for line in table_lines:
            print(line)


def _cmd_analyze(args) -> int:
    g = load_ifg(args.input)
    report = advantage_report(g)
    bounds = lower_bounds(g)
    data = {
        "advantage": [e.to_dict() for e in report],
        "bounds": bounds.to_dict(),
    }
    lines = ["vertex  deg  p  o  adv  mod_adv"]
    for e in report:
        b = e.base
        lines.append(
            f"{e.vertex:>6}  {b.degree:>3}  {b.p_value}  {b.o_value}"
            f"  {b.adv:>3}  {e.mod_adv:>7}"
        )
    lb2 = "-" if bounds.lb2 is None else bounds.lb2
    lines.append(
        f"|E|={bounds.e_total}  |E_U|={bounds.e_undirected}  d={bounds.d}"
        f"  LB1={bounds.lb1}  LB2={lb2}"
    )
    _emit(data, args.format, lines)
    return 0


def _cmd_tree(args) -> int:
    g = load_ifg(args.input)
    build = resolve_algorithm(args.alg, recursive=getattr(args, "recursive", False))
    tree = build(g)
    code = encode(tree)
    profile = decoding_profile(g, tree)
    data = {
        "n": g.n,
        "algorithm": args.alg,
        "tree": tree.to_dict(),
        "code": code.to_dict(),
        "profile": profile.to_dict(),
    }
    lines = [tree.to_text().rstrip("\n")]
    lines += [
        "transmissions: "
        + ", ".join(f"c_{k}=x_{t.i}+x_{t.j}" for k, t in enumerate(code.transmissions))
    ]
    lines += [
        f"total_tx={profile.total_tx}  l_max={profile.l_max}  t={profile.t_single}"
    ]
    _emit(data, args.format, lines)
    return 0


def _cmd_bounds(args) -> int:
    g = load_ifg(args.input)
    build = resolve_algorithm(args.alg)
    tree = build(g)
    profile = decoding_profile(g, tree)
    bounds = lower_bounds(g)
    cert = certify(g, tree, args.alg)
    data = {
        "bounds": bounds.to_dict(),
        "algorithm": args.alg,
        "total_tx": profile.total_tx,
        "certificate": cert.to_dict(),
    }
    lb2 = "-" if bounds.lb2 is None else str(bounds.lb2)
    lines = [
        "arcs  LB1  LB2  T  certificate",
        f"{bounds.e_total:>4}  {bounds.lb1:>3}  {lb2:>3}  {profile.total_tx}"
        f"  {cert.kind or 'none'}",
    ]
    _emit(data, args.format, lines)
    return 0


def _cmd_oracle(args) -> int:
    g = load_ifg(args.input)
    res = oracle_optimal(g)
    lines = [
        f"T*={res.optimal_total_tx}  trees_examined={res.trees_examined}"
        f"  feasible={res.feasible_count}",
        res.optimal_tree.to_text().rstrip("\n"),
    ]
    _emit(res.to_dict(), args.format, lines)
    return 0


def _cmd_census(args) -> int:
    progress = None if args.quiet else (lambda msg: print(msg, file=sys.stderr))
    records = census_mod.census(args.n, progress=progress)
    rows = census_mod.tightness_sweep(records)
    if args.per_class_json:
        with open(args.per_class_json, "w", encoding="utf-8") as fh:
            json.dump([r.to_dict() for r in records], fh, indent=1)
    print(f"{len(records)} classes")
    csv_text = census_mod.sweep_csv(args.n, rows)
    if args.format == "csv":
        sys.stdout.write(csv_text)
    else:
        print("arcs  classes  T_avg  LB1_avg  LB2")
        for r in rows:
            lb2 = "-" if r.lb2 is None else str(r.lb2)
            print(
                f"{r.arc_count:>4}  {r.class_count:>7}  {r.t_avg:>5.2f}"
                f"  {r.lb1_avg:>7.2f}  {lb2:>3}"
            )
    return 0


def _cmd_simulate(args) -> int:
    g = load_ifg(args.input)
    names = [a.strip() for a in args.alg.split(",") if a.strip()]
    codes = []
    for name in names:
        build = resolve_algorithm(name)
        codes.append((name, full_encode(g, build)))
    if args.channel == "bsc":
        if args.p is None:
            print("error: InvalidParameter: bsc needs --p", file=sys.stderr)
            return 1
        points = [args.p]
    else:
        points = args.snr_db or _parse_sweep("0:10:2")
    rows = channel_mod.sweep(g, codes, args.channel, points, args.trials, args.seed)
    sys.stdout.write(channel_mod.sweep_csv(rows))
    return 0


def _cmd_verify(args) -> int:
    from .code import verify_code

    g = load_ifg(args.input)
    build = resolve_algorithm(args.alg)
    code = full_encode(g, build)
    report = verify_code(g, code)
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        for c in report.checks:
            mark = "ok" if c.ok else "FAIL"
            print(f"[{mark}] R_{c.receiver} decodes x_{c.source}: {c.detail}")
        print(
            f"{'PASS' if report.ok else 'FAIL'}: {len(report.checks)} demands"
            f" x {report.vectors_checked} message vectors"
        )
    if not report.ok:
        raise UndecodableError("some demands failed exhaustive verification")
    return 0


_COMMANDS = {
    "analyze": _cmd_analyze,
    "tree": _cmd_tree,
    "bounds": _cmd_bounds,
    "oracle": _cmd_oracle,
    "census": _cmd_census,
    "simulate": _cmd_simulate,
    "verify": _cmd_verify,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except UnipriorError as err:
        print(f"error: {err.name}: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"error: IO: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
