"""Command-line interface: ``acembed <subcommand> ...``.

Exit codes: 0 true/success, 1 false, 2 error, 3 timeout.
"""

from __future__ import annotations

import argparse
import sys

from .bench import KINDS, GenError, GenSpec, rows_to_csv, run_bench, write_csv
from .engines import ENGINES, check
from .parse import ParseError, load_signature, parse_term
from .results import Budget, Outcome
from .search import one_step_successors, projections_for
from .meta import to_meta
from .terms import ClassTooLarge, EmbedGoal, enumerate_class, format_term, unflatten
from .theory import gen_emb_rules, gen_rogd_rules
from .whistle import Blow, WhistleState, WhistleTimeout, whistle_add

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR, EXIT_TIMEOUT = 0, 1, 2, 3


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _mix(text: str) -> dict[str, int]:
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        kind, _, count = part.partition("=")
        if kind not in KINDS or not count.isdigit():
            raise argparse.ArgumentTypeError(f"bad symbol mix entry {part!r}; use e.g. free=1,AC=1")
        out[kind] = int(count)
    return out


def _budget(ms: float | None) -> Budget | None:
    return None if ms is None else Budget(max_millis=ms)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="acembed", description="Homeomorphic embedding modulo A/C/AC axioms.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="decide t1 <| t2")
    c.add_argument("--module", required=True)
    c.add_argument("--engine", choices=ENGINES, default="sml")
    c.add_argument("--timeout-ms", type=float)
    c.add_argument("t1")
    c.add_argument("t2")

    g = sub.add_parser("gen", help="print a generated rewrite theory")
    g.add_argument("--module", required=True)
    g.add_argument("--kind", choices=("emb", "rogd"), required=True)

    k = sub.add_parser("class", help="list the equivalence class of a term")
    k.add_argument("--module", required=True)
    k.add_argument("--cap", type=int, default=100_000)
    k.add_argument("term")

    s = sub.add_parser("succ", help="one-step projection successors of a term")
    s.add_argument("--module", required=True)
    s.add_argument("term")

    b = sub.add_parser("bench", help="run engines on generated false goals")
    b.add_argument("--module", required=True)
    b.add_argument("--engines", default="ml,sml", help="comma-separated engine names")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--t1-depth", type=int, default=5)
    b.add_argument("--t2-depths", type=_int_list, default=(5,))
    b.add_argument("--goals", type=int, default=10, help="goals per T2 depth")
    b.add_argument("--mix", type=_mix, default=None, help="operators per kind, e.g. free=1,AC=1")
    b.add_argument("--timeout-ms", type=float, default=60_000)
    b.add_argument("--reps", type=int, default=10)
    b.add_argument("--csv", help="write the report here instead of stdout")

    w = sub.add_parser("whistle", help="read terms from stdin until one embeds an earlier one")
    w.add_argument("--module", required=True)
    w.add_argument("--engine", choices=ENGINES, default="sml")
    w.add_argument("--timeout-ms", type=float)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (ParseError, GenError, ClassTooLarge, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def _dispatch(args) -> int:
    sig = load_signature(args.module)
    if args.command == "check":
        goal = EmbedGoal(parse_term(args.t1, sig), parse_term(args.t2, sig), sig)
        verdict = check(goal, args.engine, _budget(args.timeout_ms))
        if verdict.outcome is Outcome.TIMEOUT:
            print("timeout")
            return EXIT_TIMEOUT
        print("true" if verdict.outcome is Outcome.TRUE else "false")
        return EXIT_TRUE if verdict.outcome is Outcome.TRUE else EXIT_FALSE

    if args.command == "gen":
        theory = gen_emb_rules(sig) if args.kind == "emb" else gen_rogd_rules(sig)
        sys.stdout.write(theory.format())
        return EXIT_TRUE

    if args.command == "class":
        members = enumerate_class(parse_term(args.term, sig), sig, args.cap)
        for m in sorted(members, key=format_term):
            print(format_term(m))
        print(f"count: {len(members)}")
        return EXIT_TRUE

    if args.command == "succ":
        ft = to_meta(parse_term(args.term, sig), sig)
        for nxt in sorted(one_step_successors(ft, projections_for(sig))):
            print(format_term(unflatten(nxt)))
        return EXIT_TRUE

    if args.command == "bench":
        engines = [e for e in (x.strip() for x in args.engines.split(",")) if e]
        unknown = [e for e in engines if e not in ENGINES]
        if unknown:
            raise ValueError(f"unknown engines: {', '.join(unknown)}")
        spec = GenSpec(args.seed, args.t1_depth, args.t2_depths, args.mix)
        rows = run_bench(sig, engines, spec, _budget(args.timeout_ms), args.goals, args.reps)
        if args.csv:
            write_csv(rows, args.csv)
        else:
            sys.stdout.write(rows_to_csv(rows))
        return EXIT_TRUE

    if args.command == "whistle":
        state = WhistleState(sig, args.engine, _budget(args.timeout_ms))
        for line in sys.stdin:
            line = line.strip()
            if not line:
                continue
            try:
                result, state = whistle_add(state, parse_term(line, sig))
            except WhistleTimeout as exc:
                print(f"timeout: {exc}", file=sys.stderr)
                return EXIT_TIMEOUT
            print(result, flush=True)
            if isinstance(result, Blow):
                return EXIT_TRUE
        return EXIT_TRUE

    raise ValueError(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
