"""Command-line entry point: ``arcspine verify|table|construct|chain-demo|inspect|export-dot``."""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

from . import formulas
from .constructions import example_chain, explicit_maximal
from .core import InvalidSpec, SurfaceSpec, classify_piece, fills_up, is_maximal, rank, validate
from .enumeration import (
    BudgetExceeded,
    ModModeUnavailable,
    VerificationError,
    a_infinity_ranks,
    enumerate_filling,
    enumerate_maximal,
    enumerate_maximal_naive,
    min_filling_rank_bruteforce,
    spine_dimension_bruteforce,
)
from .serialization import ParseError, export_dot, read_presentation, to_document, write_presentation

EXIT_OK, EXIT_MISMATCH, EXIT_BUDGET = 0, 1, 2


def _spec(args) -> SurfaceSpec:
    return SurfaceSpec(args.g, args.s, args.m)


def run_verify(spec: SurfaceSpec, mode="pmod", *, oracle=False, budget=None, threads=1) -> dict:
    """Brute-force every quantity and compare it with its closed form."""
    g, s, m = spec.g, spec.s, spec.m
    maximal = enumerate_maximal(spec, mode, budget=budget, threads=threads)
    poset = enumerate_filling(spec, mode, maximal=maximal)
    dim, witness = spine_dimension_bruteforce(spec, mode, poset=poset)
    min_rank = min_filling_rank_bruteforce(spec, mode, poset=poset)
    max_rank = max(poset.rank(c) for c in poset.nodes)
    ainf = a_infinity_ranks(spec, mode, maximal=maximal)
    bound = formulas.arc_complex_dim(g, s, m) - 2
    claimed = formulas.harer_claimed_dim(g, s, m)

    rows = [
        ("max rank", max_rank, formulas.arc_complex_dim(g, s, m)),
        ("min filling rank", min_rank, formulas.min_filling_rank(g, s, m)),
        ("spine dimension", dim, formulas.spine_dim(g, s, m)),
        ("chain witness length", witness.length, dim),
        ("claimed dim + [m<s]", claimed + (m < s), dim),
        ("max non-filling rank <= dim A - 2", max(ainf, default=bound), bound),
    ]
    checks = []
    for name, got, want in rows:
        ok = got <= want if name.startswith("max non-filling") else got == want
        checks.append({"check": name, "bruteforce": got, "expected": want, "ok": ok})
    if witness.problems():
        checks.append({"check": "witness chain", "bruteforce": 0, "expected": 0, "ok": False})
    if oracle:
        naive = enumerate_maximal_naive(spec, mode, budget=budget)
        same = set(naive) == set(maximal)
        checks.append({"check": "naive oracle classes", "bruteforce": len(naive), "expected": len(maximal), "ok": same})
    return {
        "spec": {"g": g, "s": s, "m": m},
        "mode": str(getattr(mode, "value", mode)),
        "maximal_classes": len(maximal),
        "filling_classes": len(poset.nodes),
        "non_filling_classes": len(ainf),
        "harer_claimed_dim": claimed,
        "checks": checks,
        "ok": all(c["ok"] for c in checks),
        "witness": witness,
    }


def cmd_verify(args) -> int:
    spec = _spec(args)
    try:
        result = run_verify(spec, args.mode, oracle=args.oracle, budget=args.budget, threads=args.threads)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except VerificationError as exc:
        print(f"MISMATCH: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    witness = result.pop("witness")
    if args.witness:
        Path(args.witness).write_text(
            json.dumps([to_document(sp) for sp in witness.systems], indent=2, sort_keys=True) + "\n"
        )
    if args.json:
        print(json.dumps(result, indent=2, sort_keys=True))
    else:
        print(f"surface {spec}, mode {result['mode']}")
        print(f"  maximal classes: {result['maximal_classes']}, filling classes: {result['filling_classes']}")
        print(f"  {'check':<34} {'brute':>6} {'formula':>8}")
        for c in result["checks"]:
            flag = "ok" if c["ok"] else "MISMATCH"
            print(f"  {c['check']:<34} {c['bruteforce']:>6} {c['expected']:>8}  {flag}")
        print(f"  Harer's stated dimension: {result['harer_claimed_dim']}")
    if not result["ok"]:
        print("MISMATCH between brute force and formulas", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def table_rows(gmax: int, smax: int) -> list[dict]:
    rows = []
    for g in range(gmax + 1):
        for s in range(1, smax + 1):
            for m in range(1, s + 1):
                try:
                    SurfaceSpec(g, s, m)
                except InvalidSpec:
                    continue
                spine = formulas.spine_dim(g, s, m)
                claimed = formulas.harer_claimed_dim(g, s, m)
                rows.append({
                    "g": g, "s": s, "m": m,
                    "arc_complex_dim": formulas.arc_complex_dim(g, s, m),
                    "min_filling_rank": formulas.min_filling_rank(g, s, m),
                    "spine_dim": spine,
                    "harer_claimed_dim": claimed,
                    "vcd_pmod": formulas.vcd_pmod(g, s),
                    "corrected": spine != claimed,
                })
    return rows


def format_table(rows: list[dict]) -> str:
    out = [f"{'g':>2} {'s':>2} {'m':>2} {'dimA':>5} {'rmin':>5} {'dimY':>5} {'Harer':>6} {'vcd':>4}"]
    for r in rows:
        claimed = f"{r['harer_claimed_dim']}{'*' if r['corrected'] else ''}"
        out.append(
            f"{r['g']:>2} {r['s']:>2} {r['m']:>2} {r['arc_complex_dim']:>5} {r['min_filling_rank']:>5} "
            f"{r['spine_dim']:>5} {claimed:>6} {r['vcd_pmod']:>4}"
        )
    out.append("* Harer's stated dimension differs from the spine dimension")
    return "\n".join(out)


def cmd_table(args) -> int:
    rows = table_rows(args.gmax, args.smax)
    print(json.dumps(rows, indent=2) if args.json else format_table(rows))
    return EXIT_OK


def cmd_construct(args) -> int:
    text = write_presentation(explicit_maximal(_spec(args)))
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_chain_demo(args) -> int:
    chain = example_chain(args.g)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for i, sp in enumerate(chain.systems):
        path = outdir / f"A_{i}.json"
        path.write_text(write_presentation(sp))
        print(f"{path}  rank {rank(sp)}  fills={fills_up(sp)}  maximal={is_maximal(sp)}")
    problems = chain.problems()
    for p in problems:
        print(f"problem: {p}", file=sys.stderr)
    return EXIT_MISMATCH if problems else EXIT_OK


def _read(path: str):
    return read_presentation(Path(path).read_text())


def cmd_inspect(args) -> int:
    try:
        sp = _read(args.file)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    report = validate(sp)
    print(f"surface {sp.spec}, {len(sp.arcs)} arcs (rank {rank(sp)}), {len(sp.pieces)} pieces")
    census = Counter(classify_piece(p).describe() for p in sp.pieces)
    for kind, count in sorted(census.items()):
        print(f"  {count} x {kind}")
    if not report.valid:
        print("INVALID")
        for f in report.failures:
            print(f"  [{f.check}] {f.detail}")
        return EXIT_MISMATCH
    print("valid")
    print(f"  fills up: {fills_up(sp)}")
    print(f"  maximal: {is_maximal(sp)}")
    return EXIT_OK


def cmd_export_dot(args) -> int:
    try:
        sp = _read(args.file)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    text = export_dot(sp)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arcspine", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def spec_args(p):
        p.add_argument("--g", type=int, required=True, help="genus")
        p.add_argument("--s", type=int, required=True, help="number of distinguished points")
        p.add_argument("--m", type=int, required=True, help="number of decorated points")

    p = sub.add_parser("verify", help="brute-force the spine dimension and compare with the formulas")
    spec_args(p)
    p.add_argument("--mode", choices=["pmod", "mod"], default="pmod")
    p.add_argument("--oracle", action="store_true", help="also run the naive enumerator")
    p.add_argument("--json", action="store_true")
    p.add_argument("--witness", metavar="FILE", help="write the longest chain as JSON")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--budget", type=int, default=None, help="arc-count cap (default: $ASL_BUDGET or 9)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="print the closed-form dimension table")
    p.add_argument("--gmax", type=int, default=2)
    p.add_argument("--smax", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("construct", help="write an explicit maximal system as JSON")
    spec_args(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("chain-demo", help="write the 4g-step filling chain for (g, 2, 1)")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--outdir", default=".")
    p.set_defaults(func=cmd_chain_demo)

    p = sub.add_parser("inspect", help="validate a presentation file and print its piece census")
    p.add_argument("file")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("export-dot", help="write the dual graph of a presentation in DOT")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidSpec, ModModeUnavailable, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
