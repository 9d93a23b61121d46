"""Command-line entry point.

Exit codes: 0 success, 1 domain-level "no" or invalid input, 2 internal
invariant violation (including a failing ``verify``), 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from collections import Counter
from pathlib import Path
from typing import Any, Sequence

from . import oracle
from .core import RootSystem, ScoreVector, Tournament, score
from .embed import embed
from .errors import CoxTourError, InvalidScoreError, InvariantViolation
from .generators import build_interchange_graph, count_generators, degree, find_generators
from .jsonio import parse_score, tournament_from_json, tournament_to_json
from .landau import check_score_sequence, construct
from .verify import run_verify

EXIT_OK, EXIT_NO, EXIT_INTERNAL, EXIT_USAGE = 0, 1, 2, 64


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Treats ``-3/2`` as a positional number and exits 64 on usage errors."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


def _emit(obj: Any) -> None:
    print(json.dumps(obj))


def _system(args) -> RootSystem:
    return RootSystem(args.family.upper(), args.n)


def _score_arg(args, system: RootSystem) -> ScoreVector:
    try:
        s = parse_score(args.s)
    except CoxTourError as exc:
        raise InvalidScoreError("lattice", str(exc)) from None
    if s.n != system.n:
        raise InvalidScoreError("length", f"{system} needs {system.n} score entries, got {s.n}")
    return s


def _load_tournament(arg: str) -> Tournament:
    if arg.lstrip().startswith("{"):
        text = arg
    elif arg == "-":
        text = sys.stdin.read()
    else:
        text = Path(arg).read_text()
    return tournament_from_json(json.loads(text))


def _invalid(system: RootSystem, s: ScoreVector) -> int:
    verdict = check_score_sequence(system, s)
    _emit(verdict.to_json())
    print(f"{s} is not a {system} score sequence: {verdict.reason}", file=sys.stderr)
    return EXIT_NO


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> int:
    system = _system(args)
    verdict = check_score_sequence(system, _score_arg(args, system))
    _emit(verdict.to_json())
    return EXIT_OK if verdict.valid else EXIT_NO


def cmd_construct(args) -> int:
    system = _system(args)
    s = _score_arg(args, system)
    if not check_score_sequence(system, s).valid:
        return _invalid(system, s)
    t, trace = construct(system, s)
    out = tournament_to_json(t, include_score=True)
    if args.trace:
        out["trace"] = trace.to_json()
    _emit(out)
    return EXIT_OK


def cmd_score(args) -> int:
    t = _load_tournament(args.tournament)
    _emit({"family": t.system.family.value, "n": t.system.n, "score": score(t).to_strings()})
    return EXIT_OK


def cmd_count(args) -> int:
    t = _load_tournament(args.tournament)
    out = count_generators(t).to_json()
    out["byLabel"] = dict(sorted(Counter(g.label for g in find_generators(t)).items()))
    _emit(out)
    return EXIT_OK


def cmd_degree(args) -> int:
    system = _system(args)
    s = _score_arg(args, system)
    if not check_score_sequence(system, s).valid:
        return _invalid(system, s)
    _emit({"degree": degree(system, s)})
    return EXIT_OK


def cmd_neighbors(args) -> int:
    from .core import reverse

    t = _load_tournament(args.tournament)
    items = []
    for g in find_generators(t):
        nb = reverse(t, g.support)
        items.append({"bits": nb.bits, "multiplicity": g.weight, "kind": g.kind.value, "label": g.label})
    _emit({"family": t.system.family.value, "n": t.system.n, "bits": t.bits,
           "degree": sum(item["multiplicity"] for item in items), "neighbors": items})
    return EXIT_OK


def cmd_graph(args) -> int:
    system = _system(args)
    s = _score_arg(args, system)
    if not check_score_sequence(system, s).valid:
        return _invalid(system, s)
    graph = build_interchange_graph(system, s, force=args.force)
    if args.format == "dot":
        print(graph.to_dot())
    else:
        out = graph.to_json()
        out["degree"] = degree(system, s)
        out["regular"] = graph.is_regular(out["degree"])
        out["connected"] = graph.is_connected()
        _emit(out)
    return EXIT_OK


def cmd_embed(args) -> int:
    _emit(embed(_load_tournament(args.tournament)).to_json())
    return EXIT_OK


def cmd_enumerate(args) -> int:
    system = _system(args)
    oracle.check_guard(system, args.force)
    if args.scores_only:
        for s, codes in sorted(oracle.fibers(system, force=args.force).items(), key=lambda kv: kv[0].doubled):
            _emit({"score": s.to_strings(), "count": int(codes.size)})
        return EXIT_OK
    for t in oracle.enumerate_tournaments(system, prefix=args.prefix, force=args.force):
        _emit({"bits": t.bits, "score": score(t).to_strings()})
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_verify(force=args.force, jobs=args.jobs)
    for r in report.results:
        print(r.line(), file=sys.stderr)
    _emit(report.to_json())
    return EXIT_OK if report.ok else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="coxtour", description="Coxeter tournament score sequences and interchange graphs")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def scored(name: str, help: str):
        p = sub.add_parser(name, help=help)
        p.add_argument("family", choices=["A", "B", "C", "D", "a", "b", "c", "d"])
        p.add_argument("n", type=int)
        p.add_argument("s", nargs="+", help="score entries such as 3, -2, 1/2, -3/2")
        return p

    def with_tournament(name: str, help: str):
        p = sub.add_parser(name, help=help)
        p.add_argument("tournament", help="path to tournament JSON, '-' for stdin, or inline JSON")
        return p

    scored("check", "decide whether s is a score sequence").set_defaults(func=cmd_check)
    p = scored("construct", "build a tournament with score s")
    p.add_argument("--trace", action="store_true", help="include intermediate construction stages")
    p.set_defaults(func=cmd_construct)
    with_tournament("score", "score sequence of a tournament").set_defaults(func=cmd_score)
    with_tournament("count", "count neutral generator copies").set_defaults(func=cmd_count)
    scored("degree", "interchange-graph degree for score s").set_defaults(func=cmd_degree)
    with_tournament("neighbors", "interchange-graph neighbors of a tournament").set_defaults(func=cmd_neighbors)
    p = scored("graph", "build the interchange graph of a score fiber")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--force", action="store_true", help="lift the enumeration guard")
    p.set_defaults(func=cmd_graph)
    with_tournament("embed", "embed a B/C/D tournament as a classical tournament").set_defaults(func=cmd_embed)
    p = sub.add_parser("enumerate", help="list every tournament (JSON lines)")
    p.add_argument("family", choices=["A", "B", "C", "D", "a", "b", "c", "d"])
    p.add_argument("n", type=int)
    p.add_argument("--scores-only", action="store_true", help="emit each distinct score with its fiber size")
    p.add_argument("--prefix", default="", help="restrict to bitstrings with this prefix")
    p.add_argument("--force", action="store_true", help="lift the enumeration guard")
    p.set_defaults(func=cmd_enumerate)
    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--force", action="store_true", help="also run the D5 exhaustive checks")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"coxtour: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"coxtour: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except InvalidScoreError as exc:
        _emit({"valid": False, "reason": exc.reason})
        print(f"coxtour: {exc}", file=sys.stderr)
        return EXIT_NO
    except (CoxTourError, OSError, ValueError, KeyError) as exc:
        print(f"coxtour: {exc}", file=sys.stderr)
        return EXIT_NO


def main() -> None:
    sys.exit(run())
