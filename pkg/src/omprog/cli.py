"""Command line entry point: ``omprog <command> --in FILE ...``.

Exit codes: 0 when no violation was found, 1 on violations, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .core import OMError, OrientedMatroid, validate
from .extension import LexSpec, lex_extend, lex_specs, parse_lexspec
from .io import FORMATS, format_extension, load, parse_scenario, scenario_lexspec
from .lab.runner import GROUPS, run_lemmas
from .lab.theorems import verify_theorem1, verify_theorem2
from .program import Program, admissible_pairs, build_graph, euclid_records

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
THEOREM_SPEC_CAP = 500


class UsageError(Exception):
    pass


def _emit(payload, out: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _parse_pair(text: str, O: OrientedMatroid) -> tuple[int, int]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise UsageError(f"--pair expects 'g,f', got {text!r}")
    return O.position(parts[0]), O.position(parts[1])


def _specs(O: OrientedMatroid, lex: str | None, seed: int, cap: int, positive_only: bool) -> list[LexSpec]:
    if lex:
        return [parse_lexspec(lex, O)]
    return lex_specs(O, cap=cap, seed=seed, positive_only=positive_only)


def cmd_validate(O: OrientedMatroid, args) -> tuple[dict, int]:
    rep = validate(O)
    payload = dict(rep.to_dict(), n=O.n, rank=O.rank, cocircuit_pairs=len(O.cocircuits) // 2)
    return payload, EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_extend(O: OrientedMatroid, args) -> tuple[str, int]:
    if not args.lex:
        raise UsageError("extend needs --lex")
    res = lex_extend(O, parse_lexspec(args.lex, O))
    return format_extension(res), EXIT_OK


def cmd_euclid(O: OrientedMatroid, args) -> tuple[dict, int]:
    if bool(args.pair) == bool(args.all_pairs):
        raise UsageError("euclid needs exactly one of --pair g,f and --all-pairs")
    if args.pair:
        pairs = [_parse_pair(p, O) for p in args.pair]
        for g, f in pairs:
            Program(O, g, f)
    else:
        pairs = admissible_pairs(O)
    if args.dot:
        if len(pairs) != 1:
            raise UsageError("--dot needs a single --pair")
        g, f = pairs[0]
        Path(args.dot).write_text(build_graph(Program(O, g, f)).to_dot())
    records = euclid_records(O, pairs)
    ok = all(r["euclidean"] for r in records)
    return {"euclidean": ok, "records": records}, EXIT_OK if ok else EXIT_VIOLATION


def cmd_lemmas(O: OrientedMatroid, args) -> tuple[dict, int]:
    groups = list(GROUPS) if args.lemma in (None, "all") else [args.lemma]
    specs = [parse_lexspec(args.lex, O)] if args.lex else None
    rep = run_lemmas(O, groups, specs=specs, seed=args.seed, max_n=args.max_n)
    for reason, count in sorted(rep.skipped.items()):
        _warn(f"skipped {count}: {reason}")
    return rep.to_dict(), EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_theorems(O: OrientedMatroid, args) -> tuple[dict, int]:
    which = {"1": (1,), "2": (2,), "both": (1, 2)}[args.which]
    specs = _specs(O, args.lex, args.seed, THEOREM_SPEC_CAP, positive_only=False)
    reports = []
    ok = True
    for spec in specs:
        ext = lex_extend(O, spec, check=False)
        for t in which:
            rep = verify_theorem1(O, spec, ext) if t == 1 else verify_theorem2(O, spec, ext)
            for w in rep.warnings:
                _warn(f"theorem {t} {rep.spec}: {w}")
            ok = ok and rep.ok
            reports.append(rep.to_dict())
    return {"ok": ok, "reports": reports}, EXIT_OK if ok else EXIT_VIOLATION


COMMANDS = {
    "validate": cmd_validate,
    "extend": cmd_extend,
    "euclid": cmd_euclid,
    "lemmas": cmd_lemmas,
    "theorems": cmd_theorems,
}


def cmd_run(args) -> int:
    sc = parse_scenario(Path(args.scenario).read_text(), args.scenario)
    src = Path(sc.input)
    if not src.is_absolute():
        src = Path(args.scenario).parent / src
    O = load(src, sc.format)
    lex = sc.lex
    if lex is not None:
        scenario_lexspec(sc, O)
    ns = argparse.Namespace(
        lex=lex, pair=sc.pairs or None, all_pairs=not sc.pairs, dot=sc.dot,
        seed=sc.seed, max_n=8, lemma="all", which="both",
    )
    payload, code = {}, EXIT_OK
    for check in sc.checks:
        out, c = COMMANDS[check](O, ns)
        payload[check] = out
        code = max(code, c)
    _emit(payload, sc.out)
    return code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="omprog", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--in", dest="input", required=True, help="input file")
        p.add_argument("--format", choices=FORMATS, help="input format (default: from the header)")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("validate", help="check the cocircuit axioms")
    common(p)
    p = sub.add_parser("extend", help="write a lexicographic extension")
    common(p)
    p.add_argument("--lex", help='lexicographic spec, e.g. "[1+,2-]"')
    p = sub.add_parser("euclid", help="look for directed cycles in programs")
    common(p)
    p.add_argument("--pair", action="append", help="program as g,f (repeatable)")
    p.add_argument("--all-pairs", action="store_true")
    p.add_argument("--dot", help="DOT file for the graph of a single --pair")
    p = sub.add_parser("lemmas", help="run lemma scanners")
    common(p)
    p.add_argument("--lex")
    p.add_argument("--lemma", choices=GROUPS + ("all",), default="all")
    p.add_argument("--max-n", type=int, default=8, help="exhaustive up to this ground set size")
    p = sub.add_parser("theorems", help="verify the extension theorems")
    common(p)
    p.add_argument("--lex")
    p.add_argument("--which", choices=("1", "2", "both"), default="both")
    p = sub.add_parser("run", help="run a scenario file")
    p.add_argument("scenario")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return cmd_run(args)
        O = load(args.input, args.format)
        payload, code = COMMANDS[args.command](O, args)
    except (UsageError, OMError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if isinstance(payload, str):
        if args.out:
            Path(args.out).write_text(payload)
        else:
            sys.stdout.write(payload)
    else:
        _emit(payload, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
