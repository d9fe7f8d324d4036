"""Command-line interface.

Exit status: 0 success, 1 a checked property failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import groups as grp
from .core import SemiAutomaton
from .families import FamilySpec, automaton_corpus, cerny, curated_group, group_corpus, random_automaton
from .gamma1 import Certificate, completely_reachable_certificate, gamma1, is_strongly_connected
from .io import ParseError, parse_automaton, parse_group, serialize_automaton, serialize_group
from .pairs import has_max_syn_sc
from .power import StateSpaceTooLarge, analyze, is_completely_reachable_exact, max_syn_sc, syn_state_complexity
from .verify import Limits, verify_theorems


class InputError(Exception):
    pass


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    return str(value)


def _emit(fields: dict, fmt: str, out):
    if fmt == "record":
        out.write(json.dumps(fields, sort_keys=False, separators=(",", ":")) + "\n")
    else:
        for key, value in fields.items():
            if isinstance(value, list):
                value = " ".join(map(str, value))
            out.write(f"{key}: {_fmt(value)}\n")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None


def _load_automaton(path: str) -> SemiAutomaton:
    try:
        return parse_automaton(_read(path))
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_group(args) -> grp.PermGroup:
    if args.family:
        try:
            return curated_group(FamilySpec.parse(args.family))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    if not args.file:
        raise InputError("give a .grp file or --family")
    try:
        return parse_group(_read(args.file))
    except ParseError as exc:
        raise InputError(f"{args.file}: {exc}") from None


def cmd_analyze(args, out) -> int:
    for path in args.files:
        a = _load_automaton(path)
        report = analyze(a, args.limit_n)
        word = report.shortest_word
        fields = {
            "file": path,
            "states": a.n,
            "letters": a.alphabet_size,
            "synchronizing": report.synchronizing,
            "shortest_word": None if word is None else a.spell(word),
            "shortest_length": None if word is None else len(word),
            "completely_reachable": report.completely_reachable,
            "reachable_subset_count": report.reachable_subset_count,
            "sc_syn": report.sc_syn,
            "sc_max": max_syn_sc(a.n),
        }
        _emit(fields, args.format, out)
    return 0


def cmd_max_sc(args, out) -> int:
    a = _load_automaton(args.file)
    if args.exact:
        answer = syn_state_complexity(a, args.limit_n) == max_syn_sc(a.n)
        certificate = "exact"
    else:
        answer = has_max_syn_sc(a)
        if completely_reachable_certificate(a) is Certificate.PROVEN:
            certificate = "gamma1"
        elif a.n <= args.limit_n and is_completely_reachable_exact(a, args.limit_n):
            certificate = "exact"
        else:
            certificate = "none"
    fields = {"max_sc": answer, "method": "exact" if args.exact else "poly", "certificate": certificate}
    if args.format == "record":
        _emit(fields, "record", out)
    else:
        out.write(_fmt(answer) + "\n")
        out.write(f"certificate: {certificate}\n")
    return 0


def cmd_gamma1(args, out) -> int:
    a = _load_automaton(args.file)
    g = gamma1(a)
    if args.format == "record":
        _emit({"n": g.n, "edges": [list(e) for e in g.sorted_edges()],
               "strongly_connected": is_strongly_connected(g)}, "record", out)
    else:
        out.write(g.to_dot())
    return 0


def _orbit_text(orbits) -> list[str]:
    lines = []
    for block in orbits.blocks:
        members = sorted(tuple(sorted(s)) for s in block)
        lines.append(" ".join("{" + ",".join(map(str, m)) + "}" for m in members))
    return lines


def cmd_group(args, out) -> int:
    g = _load_group(args)
    fields: dict = {"degree": g.degree}
    failed = False
    if args.transitive:
        fields["transitive"] = grp.is_transitive(g)
    if args.k_homogeneous is not None:
        fields[f"{args.k_homogeneous}-homogeneous"] = grp.is_k_homogeneous(g, args.k_homogeneous)
    if args.k_transitive is not None:
        fields[f"{args.k_transitive}-transitive"] = grp.is_k_transitive(g, args.k_transitive)
    if args.primitive:
        if args.primitive in ("blocks", "both"):
            fields["primitive_blocks"] = grp.is_primitive_blocks(g)
        if args.primitive in ("reach", "both"):
            witness = grp.imprimitivity_witness(g, args.limit_n)
            fields["primitive_reach"] = witness is None
            if witness is not None:
                f, missing = witness
                fields["witness_f"] = list(f.images)
                fields["witness_unreachable"] = sorted(missing)
        if args.primitive == "both":
            failed = fields["primitive_blocks"] != fields["primitive_reach"]
    if args.sync_maximal:
        fields["sync_maximal"] = grp.is_sync_maximal(g, limit=min(args.limit_n, args.sync_max_limit))
    if args.k_reachable is not None:
        fields[f"{args.k_reachable}-reachable"] = grp.is_k_reachable(g, args.k_reachable)
    if args.orbits is not None:
        orbits = grp.orbits_on_k_sets(g, args.orbits)
        fields[f"orbits_on_{args.orbits}_sets"] = len(orbits)
        if args.format == "record":
            fields["orbits"] = [sorted(sorted(s) for s in b) for b in orbits.blocks]
        else:
            _emit(fields, "text", out)
            for i, line in enumerate(_orbit_text(orbits)):
                out.write(f"orbit {i}: {line}\n")
            return 1 if failed else 0
    _emit(fields, args.format, out)
    return 1 if failed else 0


def cmd_search(args, out) -> int:
    """Look for a primitive group that is not sync-maximal among the curated ones."""
    found = 0
    for g in group_corpus(args.max_degree):
        if not grp.is_primitive_blocks(g):
            continue
        f = grp.sync_maximal_failure(g, limit=args.max_degree)
        if f is None:
            out.write(f"{g.name}: primitive, sync-maximal\n")
        else:
            found += 1
            out.write(f"{g.name}: primitive, NOT sync-maximal, f = {' '.join(map(str, f.images))}\n")
    out.write(f"counterexamples: {found}\n")
    return 0


def cmd_generate(args, out) -> int:
    target = Path(args.out)
    target.mkdir(parents=True, exist_ok=True)
    written = []

    def write(name: str, text: str):
        path = target / name
        path.write_text(text, encoding="utf-8")
        written.append(path)

    if args.corpus:
        for name, a in automaton_corpus():
            write(f"{name}.aut", serialize_automaton(a))
        for g in group_corpus():
            label = g.name.replace("(", "-").rstrip(")")
            write(f"{label}.grp", serialize_group(g))
    for spec_text in args.family or []:
        try:
            spec = FamilySpec.parse(spec_text)
            if spec.name == "cerny":
                write(f"{spec.label}.aut", serialize_automaton(cerny(spec.n)))
            else:
                write(f"{spec.label}.grp", serialize_group(curated_group(spec)))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    if args.random:
        rng = random.Random(args.seed)
        width = len(str(args.random - 1))
        for i in range(args.random):
            n = rng.randint(2, args.max_states)
            a = random_automaton(rng, n, rng.randint(1, 3))
            write(f"random-{i:0{width}d}.aut", serialize_automaton(a))
    for path in written:
        out.write(f"wrote {path}\n")
    return 0


def cmd_verify(args, out) -> int:
    limits = Limits(exhaustive_n=args.limit_n)
    try:
        report = verify_theorems(args.corpus, limits, seed=args.seed, jobs=args.jobs)
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from None
    out.write(report.render())
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    def global_flags(suppress: bool) -> argparse.ArgumentParser:
        # subcommands repeat the flags without defaults so they do not
        # overwrite values given before the subcommand name
        p = argparse.ArgumentParser(add_help=False)
        default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        p.add_argument("--limit-n", type=int, default=default(20), help="largest n for exhaustive subset searches")
        p.add_argument("--seed", type=int, default=default(0), help="seed for randomized corpora and sampling")
        p.add_argument("--format", choices=("text", "record", "dot"), default=default("text"))
        return p

    common = global_flags(True)
    parser = argparse.ArgumentParser(prog="syncperm", parents=[global_flags(False)],
                                     description="Synchronizing automata and primitive permutation groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="synchronization report for .aut files")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("max-sc", parents=[common], help="is sc(Syn) maximal?")
    p.add_argument("file")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--poly", action="store_true", help="2-set distinguishability (default)")
    mode.add_argument("--exact", action="store_true", help="minimize the power automaton")
    p.set_defaults(func=cmd_max_sc)

    p = sub.add_parser("gamma1", parents=[common], help="emit the rank n-1 graph as DOT")
    p.add_argument("file")
    p.set_defaults(func=cmd_gamma1)

    p = sub.add_parser("group", parents=[common], help="permutation group properties")
    p.add_argument("file", nargs="?")
    p.add_argument("--family", help="curated group, e.g. cyclic:5, symmetric4, agl15")
    p.add_argument("--transitive", action="store_true")
    p.add_argument("--k-homogeneous", type=int, metavar="K")
    p.add_argument("--k-transitive", type=int, metavar="K")
    p.add_argument("--primitive", nargs="?", const="both", choices=("blocks", "reach", "both"))
    p.add_argument("--sync-maximal", action="store_true")
    p.add_argument("--sync-max-limit", type=int, default=grp.SYNC_MAX_LIMIT)
    p.add_argument("--k-reachable", type=int, metavar="K")
    p.add_argument("--orbits", type=int, metavar="K")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("search-counterexample", parents=[common],
                       help="test curated primitive groups for sync-maximality")
    p.add_argument("--max-degree", type=int, default=6)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("generate", parents=[common], help="write .aut/.grp files")
    p.add_argument("--out", required=True)
    p.add_argument("--corpus", action="store_true", help="the curated corpus")
    p.add_argument("--family", action="append", help="e.g. cerny:5 or cyclic:4 (repeatable)")
    p.add_argument("--random", type=int, default=0, metavar="COUNT", help="random automata")
    p.add_argument("--max-states", type=int, default=5)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify-theorems", parents=[common], help="run all cross-checks on a corpus")
    p.add_argument("corpus")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args, out)
    except (InputError, StateSpaceTooLarge) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
