"""Command-line interface.

Exit codes: 0 positive answer, 1 negative answer, 2 inconclusive,
3 usage error, 4 bad input data, 5 a search cap was hit.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import generators as gen
from .core import Podwa, evaluate, observe
from .engine import EngineConfig, Verdict, equivalent
from .errors import CapExceeded, InconclusiveEngine, PodwaError
from .fitting import check_sample, fit_prefix_tree, fit_single_state
from .formats import (
    format_word,
    parse,
    parse_dimacs,
    parse_graph,
    parse_sample,
    serialize,
    serialize_sample,
    split_word,
    to_dot,
)
from .omin import MergeSearchConfig, omin_by_merging
from .transforms import complement, minimize_exact, scale

EXIT_YES, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE, EXIT_DATA, EXIT_CAP = range(6)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_podwa(path) -> Podwa:
    obj = parse(_read(path))
    if not isinstance(obj, Podwa):
        raise UsageError(f"{path}: expected a podwa document")
    return obj


def _emit_automaton(obj, args, out):
    out.write(to_dot(obj) if args.dot else serialize(obj))


def _cmd_eval(args, out):
    p = parse(_read(args.file))
    a = p.automaton if isinstance(p, Podwa) else p
    out.write(f"{evaluate(a, split_word(args.word, a.alphabet))}\n")
    return EXIT_YES


def _cmd_observe(args, out):
    p = _load_podwa(args.file)
    out.write(f"{observe(p, split_word(args.word, p.alphabet))}\n")
    return EXIT_YES


def _cmd_equiv(args, out):
    p1, p2 = _load_podwa(args.a), _load_podwa(args.b)
    cfg = EngineConfig(bf_len=args.bf_len, max_paths=args.max_paths, max_cycles=args.max_cycles)
    t0 = time.perf_counter()
    v = equivalent(p1, p2, cfg)
    elapsed = time.perf_counter() - t0
    if args.json:
        w = v.witness
        doc = {
            "verdict": v.verdict.value,
            "witness": None if w is None else format_word(w.word, p1.alphabet),
            "values": None if w is None else [w.value1, w.value2],
            "indices": None if w is None else [w.index1, w.index2],
            "timings": {"total_seconds": round(elapsed, 6)},
            "queries": [{"query": q, "status": s} for q, s in v.diagnostics],
        }
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(v.verdict.value + "\n")
        if v.witness is not None:
            out.write(v.witness.line(p1.alphabet) + "\n")
        if v.verdict is Verdict.INCONCLUSIVE:
            for q, s in v.diagnostics:
                out.write(f"query {q}: {s}\n")
    return {Verdict.EQUIVALENT: EXIT_YES, Verdict.NOT_EQUIVALENT: EXIT_NO,
            Verdict.INCONCLUSIVE: EXIT_UNKNOWN}[v.verdict]


def _cmd_complement(args, out):
    _emit_automaton(complement(_load_podwa(args.file)), args, out)
    return EXIT_YES


def _cmd_scale(args, out):
    _emit_automaton(scale(_load_podwa(args.file), args.alpha, args.beta), args, out)
    return EXIT_YES


def _cmd_min_exact(args, out):
    obj = parse(_read(args.file))
    if isinstance(obj, Podwa):
        obj = Podwa(minimize_exact(obj.automaton)[0], obj.scheme)
    else:
        obj = minimize_exact(obj)[0]
    _emit_automaton(obj, args, out)
    return EXIT_YES


def _cmd_omin(args, out):
    p = _load_podwa(args.file)
    cfg = MergeSearchConfig(
        k=args.k,
        weight_bound=args.weight_bound,
        max_partitions=args.max_partitions,
        max_assignments=args.max_assignments,
    )
    found = omin_by_merging(p, cfg)
    if found is None:
        out.write("NONE\n")
        return EXIT_NO
    _emit_automaton(Podwa(found, p.scheme), args, out)
    return EXIT_YES


def _cmd_fit(args, out):
    sample = parse_sample(_read(args.sample))
    if args.single_state:
        p = fit_single_state(sample, args.bound, args.max_assignments)
        if p is None:
            out.write("NONE\n")
            return EXIT_NO
    else:
        p = fit_prefix_tree(sample)
    _emit_automaton(p, args, out)
    return EXIT_YES


def _cmd_check(args, out):
    p = _load_podwa(args.file)
    sample = parse_sample(_read(args.sample))
    problems = check_sample(p, sample)
    if not problems:
        out.write("CONSISTENT\n")
        return EXIT_YES
    out.write("INCONSISTENT\n")
    for v in problems:
        word = format_word(v.word, sample.alphabet)
        if v.rule == "DirectContradiction":
            out.write(f"contradiction {word} indices={','.join(map(str, v.expected))}\n")
        else:
            out.write(f"violation {word} expected={v.expected} actual={v.actual}\n")
    return EXIT_NO


def _pick(pair, which):
    return pair[which - 1]


def _cmd_gen(args, out):
    kind = args.kind
    rest = args.params
    need = {"ccount": 0, "fig2": 0, "l-union": 0, "lambda-n": 1, "lambda-n-min": 1,
            "subset-sum": 2, "coloring": 1, "recolor": 2, "sat-sample": 1, "random": 0}
    if len(rest) != need[kind]:
        raise UsageError(f"gen {kind} takes {need[kind]} positional argument(s)")
    if kind == "ccount":
        obj = gen.example_ccount()
    elif kind == "fig2":
        obj = _pick(gen.fig2_pair(), args.which)
    elif kind == "l-union":
        obj = _pick(gen.l_union_components(), args.which)
    elif kind == "lambda-n":
        obj = gen.lambda_n(_int(rest[0]))
    elif kind == "lambda-n-min":
        obj = gen.lambda_n_minimal(_int(rest[0]))
    elif kind == "subset-sum":
        values = [_int(v) for v in rest[0].split(",") if v]
        obj = _pick(gen.subset_sum_pair(values, _int(rest[1])), args.which)
    elif kind == "coloring":
        obj = gen.coloring_automaton(parse_graph(_read(rest[0])))
    elif kind == "recolor":
        coloring = {}
        for item in rest[1].split(","):
            v, sep, c = item.partition("=")
            if not sep:
                raise UsageError("colouring must look like u=1,v=2,...")
            coloring[v] = _int(c)
        obj = Podwa(gen.recolor_weights(parse_graph(_read(rest[0])), coloring), gen.BINARY)
    elif kind == "sat-sample":
        out.write(serialize_sample(gen.sat_sample(parse_dimacs(_read(rest[0])))))
        return EXIT_YES
    else:
        cuts = tuple(_int(c) for c in args.cuts.split(",")) if args.cuts else (1,)
        obj = gen.random_podwa(args.seed, args.states, args.letters, args.max_weight, cuts)
    _emit_automaton(obj, args, out)
    return EXIT_YES


def _int(text):
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"expected an integer, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="podwa", description="Weighted automata under interval observation.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("eval", _cmd_eval, "value of a word")
    p.add_argument("file")
    p.add_argument("--word", required=True)

    p = add("observe", _cmd_observe, "interval index of a word")
    p.add_argument("file")
    p.add_argument("--word", required=True)

    p = add("equiv", _cmd_equiv, "decide observational equivalence")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--bf-len", type=int, default=8)
    p.add_argument("--max-paths", type=int, default=20_000)
    p.add_argument("--max-cycles", type=int, default=20_000)
    p.add_argument("--json", action="store_true")

    for name, func, text in (("complement", _cmd_complement, "binary complement"),
                             ("min-exact", _cmd_min_exact, "exact minimisation")):
        p = add(name, func, text)
        p.add_argument("file")
        p.add_argument("--dot", action="store_true")

    p = add("scale", _cmd_scale, "map values v to alpha*v+beta")
    p.add_argument("file")
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--dot", action="store_true")

    p = add("omin-merge", _cmd_omin, "smallest merged automaton with the same observations")
    p.add_argument("file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--weight-bound", type=int)
    p.add_argument("--max-partitions", type=int, default=200_000)
    p.add_argument("--max-assignments", type=int, default=10_000)
    p.add_argument("--dot", action="store_true")

    p = add("fit-sample", _cmd_fit, "build a PODWA consistent with a sample")
    p.add_argument("sample")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--single-state", action="store_true")
    mode.add_argument("--tree", action="store_true")
    p.add_argument("--bound", type=int, default=1)
    p.add_argument("--max-assignments", type=int, default=10**7)
    p.add_argument("--dot", action="store_true")

    p = add("check-sample", _cmd_check, "check a PODWA against a sample")
    p.add_argument("file")
    p.add_argument("sample")

    p = add("gen", _cmd_gen, "generate an instance")
    p.add_argument("kind", choices=["ccount", "l-union", "lambda-n", "lambda-n-min", "fig2",
                                    "subset-sum", "coloring", "recolor", "sat-sample", "random"])
    p.add_argument("params", nargs="*")
    p.add_argument("--which", type=int, choices=(1, 2), default=1,
                   help="member of a generated pair")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--states", type=int, default=3)
    p.add_argument("--letters", type=int, default=2)
    p.add_argument("--max-weight", type=int, default=2)
    p.add_argument("--cuts", default="")
    p.add_argument("--dot", action="store_true")
    return parser


def run_cli(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        try:
            args = build_parser().parse_args(argv)
        except SystemExit as exc:  # --help
            return int(exc.code or 0)
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except InconclusiveEngine as exc:
        err.write(f"error: {exc}\n")
        return EXIT_UNKNOWN
    except CapExceeded as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CAP
    except (PodwaError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DATA


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
