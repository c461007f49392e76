"""Command-line frontend.

    pdlogic query FILE --semantics S --mode M --formula PHI [--fastpath ...]
    pdlogic extensions FILE [--semantics S]
    pdlogic classify FILE
    pdlogic gen NAME [INPUT]
    pdlogic selftest [--size N]

Exit codes: 0 success, 2 parse/usage error, 3 class mismatch on a forced
fast path, 4 size bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .errors import (
    BoundExceededError,
    ClassMismatchError,
    FormulaSyntaxError,
    PdlError,
)
from .formulas import format_formula, parse_formula
from .solvers import classify_objective
from .theory import DefaultTheory, PriorityOrder, parse_theory, serialize_theory
from .classify import classify_theory, known_complexity
from .reiter import Extension, enumerate_extensions
from .staged import bh_enumerate, brewka_enumerate
from .lexico import lex_enumerate
from .fastpaths import FASTPATHS, dispatch
from .reductions import (
    CnfInstance,
    QbfInstance,
    gen_b_normal_unary,
    gen_cautious_horn,
    gen_cautious_pfn,
    gen_cautious_pfou,
    gen_lex_max_qbf,
    gen_lex_nu_partial,
    max_2qbf_oracle,
    sat_oracle,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CLASS = 3
EXIT_BOUND = 4

GENERATORS = {
    "cautious-horn": (gen_cautious_horn, "cnf"),
    "cautious-pfn": (gen_cautious_pfn, "cnf"),
    "cautious-pfou": (gen_cautious_pfou, "cnf"),
    "b-normal-unary": (gen_b_normal_unary, "cnf"),
    "lex-nu-partial": (gen_lex_nu_partial, "cnf"),
    "lex-max-qbf": (gen_lex_max_qbf, "qbf"),
}


def _load_theory(path: str) -> tuple[DefaultTheory, PriorityOrder]:
    with open(path, encoding="utf-8") as fh:
        return parse_theory(fh.read())


def _extension_json(e: Extension) -> dict:
    return {"generating": sorted(e.generating),
            "basis": [format_formula(f) for f in e.basis]}


def _result_json(exts: Sequence[Extension], semantics: str,
                 query: str | None, answer: bool | None) -> str:
    payload = {
        "extensions": [_extension_json(e)
                       for e in sorted(exts, key=Extension.sort_key)],
        "semantics": semantics,
        "query": query,
        "answer": answer,
    }
    return json.dumps(payload, indent=2, sort_keys=True)


def _preferred(thy: DefaultTheory, pri: PriorityOrder,
               semantics: str) -> list[Extension]:
    if semantics == "reiter":
        return enumerate_extensions(thy)
    if semantics == "bh":
        return bh_enumerate(thy, pri)
    if semantics == "brewka":
        return brewka_enumerate(thy, pri)
    return lex_enumerate(thy, pri)


def cmd_query(args: argparse.Namespace) -> int:
    thy, pri = _load_theory(args.file)
    phi = parse_formula(args.formula)
    if args.mode == "brave" and args.semantics != "reiter":
        print("error: brave reasoning is defined for reiter semantics only",
              file=sys.stderr)
        return EXIT_PARSE
    answer, path = dispatch(thy, pri, phi, args.semantics, args.mode,
                            args.fastpath)
    print("YES" if answer else "NO")
    print(f"path: {path}")
    if args.witness:
        exts = _preferred(thy, pri, args.semantics)
        keep = [e for e in exts if e.contains(phi) == answer] or exts
        print(_result_json(keep, args.semantics, args.formula, answer))
    return EXIT_OK


def cmd_extensions(args: argparse.Namespace) -> int:
    thy, pri = _load_theory(args.file)
    exts = _preferred(thy, pri, args.semantics)
    print(_result_json(exts, args.semantics, None, None))
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    thy, _ = _load_theory(args.file)
    cls = classify_theory(thy)
    row = f"row {cls.row} ({cls.row_name})" if cls.row else "general"
    print(f"default class: {row}")
    print(f"objective class: {cls.objective}")
    flags = []
    if cls.normal:
        flags.append("normal")
    if cls.prerequisite_free:
        flags.append("prerequisite-free")
    if cls.ordered is not None:
        flags.append("ordered" if cls.ordered else "not ordered")
    print("flags: " + (", ".join(flags) if flags else "none"))
    table = known_complexity(cls)
    if table:
        print("known complexity of cautious reasoning:")
        for key, value in table.items():
            print(f"  {key}: {value}")
    else:
        print("known complexity of cautious reasoning: not covered "
              "(general formulas)")
    return EXIT_OK


def _read_input(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_gen(args: argparse.Namespace) -> int:
    make, kind = GENERATORS[args.reduction]
    text = _read_input(args.input)
    lines: list[str] = []
    if kind == "cnf":
        instance = CnfInstance.from_dimacs(text)
        verdict = "satisfiable" if sat_oracle(instance) else "unsatisfiable"
        lines.append(f"# reduction: {args.reduction}")
        for clause in instance.clauses:
            lines.append("# clause: " + " ".join(str(l) for l in sorted(clause)))
        lines.append(f"# oracle: {verdict}")
        lines.append(f"# expected: false is {'not ' if verdict == 'satisfiable' else ''}"
                     "a cautious consequence under the reduction's semantics")
        out = make(instance)
    else:
        matrix = parse_formula(text.strip())
        n = 0
        from .formulas import free_variables
        for v in free_variables(matrix):
            n = max(n, int(v.split("_")[1]))
        instance = QbfInstance(n, matrix)
        vec = max_2qbf_oracle(instance)
        lines.append(f"# reduction: {args.reduction}")
        lines.append(f"# matrix: {format_formula(matrix)}")
        lines.append(f"# oracle lex-max outer assignment: {vec}")
        out = make(instance)
    if isinstance(out, tuple):
        thy, pri = out
        if not isinstance(pri, PriorityOrder):
            pri = PriorityOrder.total(pri)
    else:
        thy, pri = out, PriorityOrder.empty()
    body = serialize_theory(thy, pri)
    print("\n".join(lines))
    print(body, end="")
    return EXIT_OK


def cmd_selftest(args: argparse.Namespace) -> int:
    from . import selfcheck

    if args.size == 0:
        print("size 0: nothing to run")
        return EXIT_OK
    per_path = max(1, args.size * 10)
    n_random = max(1, args.size * 2)
    family = 4 if args.size >= 100 else (3 if args.size >= 10 else 2)
    results = selfcheck.run_all(per_path=per_path, n_random=n_random,
                                family_defaults=family)
    ok = True
    for r in results:
        print(r.line())
        for f in r.failures:
            print(f"    {f}")
        ok = ok and r.ok
    return EXIT_OK if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdlogic",
        description="Prioritized default logic: query, enumerate, classify, "
                    "generate reduction instances, self-test.")
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("query", help="decide a consequence query")
    q.add_argument("file")
    q.add_argument("--semantics", choices=("reiter", "brewka", "bh", "lex"),
                   default="reiter")
    q.add_argument("--mode", choices=("cautious", "brave"), default="cautious")
    q.add_argument("--formula", required=True)
    q.add_argument("--fastpath", choices=("auto", "off") + FASTPATHS,
                   default="auto")
    q.add_argument("--witness", action="store_true",
                   help="print witness extensions as JSON")
    q.set_defaults(fn=cmd_query)

    e = sub.add_parser("extensions", help="enumerate (preferred) extensions")
    e.add_argument("file")
    e.add_argument("--semantics", choices=("reiter", "brewka", "bh", "lex"),
                   default="reiter")
    e.set_defaults(fn=cmd_extensions)

    c = sub.add_parser("classify", help="report the theory's syntactic class")
    c.add_argument("file")
    c.set_defaults(fn=cmd_classify)

    g = sub.add_parser("gen", help="compile a CNF/QBF instance to a theory")
    g.add_argument("reduction", choices=sorted(GENERATORS))
    g.add_argument("input", nargs="?", default=None,
                   help="DIMACS file for CNF reductions, formula file for "
                        "lex-max-qbf; '-' or absent reads stdin")
    g.set_defaults(fn=cmd_gen)

    s = sub.add_parser("selftest", help="run the acceptance property suites")
    s.add_argument("--size", type=int, default=100,
                   help="work factor: random checks scale with it (default "
                        "100 = full acceptance sizes)")
    s.set_defaults(fn=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except FormulaSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ClassMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CLASS
    except BoundExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (PdlError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
