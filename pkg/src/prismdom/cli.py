"""prismdom command line.

Exit codes: 0 success / claim holds, 1 counterexample, 2 preconditions unmet,
3 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .graph import (FAMILIES, GraphError, format_edge_list, generate_family, read_edge_list)
from .prism import PermutationError, build_prism, parse_permutation, read_permutation
from .solver import (OracleCapError, Proportion, ProportionError, coverage_profile,
                     min_dominating_set, min_p_dominating_set)
from .sweep import CapError, Mode, exhaustive_cap, sweep
from . import verify as V

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_UNMET, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _graph_args(p: argparse.ArgumentParser, positional: bool = True) -> None:
    if positional:
        p.add_argument("graph", nargs="?", help="edge-list file")
    else:
        p.add_argument("--graph", help="edge-list file")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--density", default=None, help="edge probability a/b for random graphs")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--one-indexed", action="store_true", help="vertices are labelled 1..n in input and output")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="fully structured output")


def _mode_args(p: argparse.ArgumentParser, all_flag: str) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument(all_flag, dest="all", action="store_true", help="every permutation")
    g.add_argument("--sample", type=int, help="this many seeded permutations (identity first)")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="prismdom", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="write a graph family as an edge list")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--density", default=None)
    p.add_argument("--out", "-o")
    _common(p)

    p = sub.add_parser("gamma", help="domination or p-domination number")
    _graph_args(p)
    p.add_argument("-p", dest="p")
    _common(p)

    p = sub.add_parser("profile", help="coverage profile, one 'k c[k]' line per k")
    _graph_args(p)
    _common(p)

    p = sub.add_parser("prism", help="write the prism graph")
    _graph_args(p)
    p.add_argument("--pi", default="identity", help="'identity', a permutation file, cycles '(2 3 4)', or an image line")
    p.add_argument("--out", "-o")
    _common(p)

    p = sub.add_parser("sweep", help="gamma_p over the prisms of a graph")
    _graph_args(p)
    p.add_argument("-p", dest="p", required=True)
    _mode_args(p, "--all")
    _common(p)

    p = sub.add_parser("verify", help="check one claim on an instance")
    p.add_argument("--prop", required=True,
                   choices=["1", "2", "3", "4", "5", "6", "7", "remark", "gu"])
    _graph_args(p, positional=False)
    p.add_argument("--pi", help="check a single permutation")
    p.add_argument("--m", help="vertex list M, e.g. '0,3'")
    _mode_args(p, "--all-pi")
    _common(p)

    p = sub.add_parser("find-t", help="run the T construction for a paired max-degree set")
    _graph_args(p)
    p.add_argument("--m", required=True)
    p.add_argument("--pi", default="identity")
    _common(p)
    return ap


# -- helpers -----------------------------------------------------------------------

def _load_graph(args):
    path = getattr(args, "graph", None)
    if path:
        return read_edge_list(path, args.one_indexed), f"file:{path}"
    if not args.family or args.n is None:
        raise UsageError("give an edge-list file or --family with --n")
    density = args.density
    if args.family == "random" and density is None:
        raise UsageError("random graphs need --density")
    return generate_family(args.family, args.n, seed=args.seed, density=density), \
        f"{args.family}(n={args.n})"


def _load_pi(text: str, n: int, one_indexed: bool):
    if os.path.isfile(text):
        return read_permutation(text, n, one_indexed)
    return parse_permutation(text, n, one_indexed)


def _vertex_list(text: str, one_indexed: bool) -> list[int]:
    shift = 1 if one_indexed else 0
    try:
        return [int(tok) - shift for tok in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"bad vertex list {text!r}") from None


def _fmt_set(vertices, one_indexed: bool) -> str:
    shift = 1 if one_indexed else 0
    return "{" + ", ".join(str(v + shift) for v in sorted(vertices)) + "}"


def _mode(args, n: int) -> Mode:
    if args.sample is not None:
        return Mode.sampled(args.sample, args.seed)
    if args.all:
        return Mode.exhaustive()
    return Mode.default_for(n)


def _run_config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("func",)}
    cfg["exhaustive_cap"] = exhaustive_cap()
    cfg["oracle_cap"] = 16
    return cfg


def _emit(obj, out=None) -> None:
    print(json.dumps(obj, indent=2, sort_keys=False), file=out or sys.stdout)


# -- commands ---------------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.family == "random" and args.density is None:
        raise UsageError("random graphs need --density")
    g = generate_family(args.family, args.n, seed=args.seed, density=args.density)
    text = format_edge_list(g, args.one_indexed)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"{g.n} {g.m}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_gamma(args) -> int:
    g, source = _load_graph(args)
    if args.p is None:
        value, wit = min_dominating_set(g)
        name = "gamma"
    else:
        value, wit = min_p_dominating_set(g, Proportion.parse(args.p))
        name = "gamma_p"
    if args.json:
        shift = 1 if args.one_indexed else 0
        _emit({name: value, "p": args.p, "witness": sorted(v + shift for v in wit), "source": source})
    else:
        print(f"{name} = {value}")
        print(f"witness = {_fmt_set(wit, args.one_indexed)}")
    return EXIT_OK


def cmd_profile(args) -> int:
    g, source = _load_graph(args)
    prof = coverage_profile(g)
    if args.json:
        _emit({"n": g.n, "profile": list(prof.c), "source": source})
    else:
        sys.stdout.write(prof.format())
    return EXIT_OK


def cmd_prism(args) -> int:
    g, _ = _load_graph(args)
    pi = _load_pi(args.pi, g.n, args.one_indexed)
    pr = build_prism(g, pi)
    text = format_edge_list(pr.combined, args.one_indexed)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    elif not args.json:
        sys.stdout.write(text)
    if args.json:
        _emit({"n": pr.combined.n, "m": pr.combined.m, "pi": pi.format_line(args.one_indexed)})
    elif args.out:
        print(f"{pr.combined.n} {pr.combined.m}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    g, source = _load_graph(args)
    mode = _mode(args, g.n)
    if mode.is_exhaustive and g.n > exhaustive_cap():
        raise CapError(f"n={g.n} exceeds the exhaustive cap {exhaustive_cap()}; use --sample N "
                       "or raise PRISMDOM_CAP")
    result = sweep(g, Proportion.parse(args.p), mode, jobs=args.jobs)
    out = result.to_dict(args.one_indexed)
    out["source"] = source
    out["run_config"] = _run_config(args)
    _emit(out)
    return EXIT_OK


_SINGLE_PI = {
    "2": ("prop2", V.verify_prop2),
    "4": ("prop4", V.verify_prop4),
    "5": ("prop5", V.verify_prop5),
    "remark": ("remark", V.verify_remark),
    "gu": ("gu-bound", V.verify_gu_bound),
}


def cmd_verify(args) -> int:
    claim = args.prop
    if claim == "3":
        if args.family not in ("path", "cycle") or args.n is None:
            raise UsageError("prop 3 needs --family path|cycle and --n")
        n = args.n
        report = V.verify_prop3(args.family, n, _mode(args, n), jobs=args.jobs)
    else:
        g, _ = _load_graph(args)
        pi = _load_pi(args.pi, g.n, args.one_indexed) if args.pi else None
        mode = _mode(args, g.n)
        if claim == "1":
            if pi is not None:
                raise UsageError("prop 1 quantifies over every pi; use --all-pi or --sample")
            report = V.verify_prop1(g, mode, jobs=args.jobs)
        elif claim in ("6", "7"):
            if not args.m:
                raise UsageError(f"prop {claim} needs --m")
            m = _vertex_list(args.m, args.one_indexed)
            if claim == "6":
                report = V.verify_prop6(g, m, mode, jobs=args.jobs)
            elif pi is not None:
                report = V.verify_prop7(g, m, pi)
            else:
                report = V.over_permutations("prop7", lambda q: V.verify_prop7(g, m, q), g, mode)
        else:
            name, fn = _SINGLE_PI[claim]
            report = fn(g, pi) if pi is not None else V.over_permutations(name, lambda q: fn(g, q), g, mode)
    out = report.to_dict(args.one_indexed)
    out["run_config"] = _run_config(args)
    _emit(out)
    return {V.Verdict.HOLDS: EXIT_OK, V.Verdict.COUNTEREXAMPLE: EXIT_COUNTEREXAMPLE,
            V.Verdict.UNMET: EXIT_UNMET}[report.verdict]


def cmd_find_t(args) -> int:
    g, _ = _load_graph(args)
    pi = _load_pi(args.pi, g.n, args.one_indexed)
    m = _vertex_list(args.m, args.one_indexed)
    try:
        pairing = V.check_prop7_preconditions(g, m)
    except V.Prop7PreconditionError as exc:
        print(f"preconditions unmet: {exc}", file=sys.stderr)
        return EXIT_UNMET
    try:
        t = V.find_T(g, pairing, pi)
    except V.Prop7CaseError as exc:
        print(f"preconditions unmet: {exc}", file=sys.stderr)
        return EXIT_UNMET
    except V.FindTError as exc:
        print(f"construction failed: {exc}; partial T = {_fmt_set(exc.partial, args.one_indexed)}",
              file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    shift = 1 if args.one_indexed else 0
    if args.json:
        _emit({"T": sorted(v + shift for v in t), "case": V.prop7_case(pairing, pi),
               "pairs": [[a + shift, b + shift] for a, b in pairing.pairs]})
    else:
        print(f"T = {_fmt_set(t, args.one_indexed)}")
    return EXIT_OK


COMMANDS = {"gen": cmd_gen, "gamma": cmd_gamma, "profile": cmd_profile, "prism": cmd_prism,
            "sweep": cmd_sweep, "verify": cmd_verify, "find-t": cmd_find_t}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, GraphError, PermutationError, ProportionError, CapError, OracleCapError,
            OSError) as exc:
        print(f"prismdom {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
