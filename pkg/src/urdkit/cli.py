"""Command-line interface.

Subcommands: construct (build a witness decomposition and write it as a
document), metamorph (apply a class transformation to selected classes of
a document), verify (check a document, optionally against a profile),
spectrum (emit the admissible or exhaustively decided profile table as
TSV), and search (find a matching+triangle system).

Exit codes: 0 ok/feasible, 1 verification failure or infeasible/
nonexistent, 2 usage or input-format error, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .constructions import KnownNonexistentError, matching_triangle_system
from .io import UrdParseError, parse_urd, serialize_urd
from .metamorphosis import (
    MetamorphosisError,
    meta_cycles_conjecture,
    meta_matching_c4,
    meta_three_c4,
    meta_two_c4,
    meta_two_k3,
)
from .model import FAMILIES, Decomposition, Profile, UrdError
from .search import SearchBudget, SearchTimeoutError
from .spectrum import (
    InadmissibleProfileError,
    admissible_k2p3k3,
    admissible_k2p4c4,
    admissible_p4c4,
    construct,
    exhaustive_spectrum,
)
from .verifier import verify

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_USAGE = 2
EXIT_TIMEOUT = 3


def _budget(args) -> SearchBudget:
    limit = getattr(args, "budget", None)
    seed = getattr(args, "seed", 0)
    return SearchBudget(time_limit=limit if limit is not None else 60.0, seed=seed)


def _parse_counts(text: str, family: str) -> tuple[int, ...]:
    parts = text.replace(",", " ").split()
    if not all(p.lstrip("-").isdigit() for p in parts):
        raise UrdParseError(f"bad profile {text!r}", 0)
    counts = tuple(int(p) for p in parts)
    if len(counts) != len(FAMILIES[family]):
        raise UrdParseError(
            f"family {family} needs {len(FAMILIES[family])} counts, got {len(counts)}", 0)
    return counts


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _read_document(path: str):
    return parse_urd(Path(path).read_text(encoding="utf-8"))


def _cmd_construct(args) -> int:
    counts = _parse_counts(args.profile, args.family)
    profile = Profile(args.family, counts)
    d = construct(args.v, profile, budget=_budget(args))
    _write_output(serialize_urd(d, family=args.family, profile=profile), args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    doc = _read_document(args.infile)
    expected = None
    if args.profile is not None:
        family = args.family or (doc.family if doc.family != "raw" else None)
        if family is None:
            print("verify: --profile needs a family (document is raw; pass --family)",
                  file=sys.stderr)
            return EXIT_USAGE
        expected = Profile(family, _parse_counts(args.profile, family))
    elif doc.profile is not None:
        expected = doc.profile
    report = verify(doc.decomposition, expected)
    print(report.render())
    return EXIT_OK if report.ok else EXIT_INFEASIBLE


def _cmd_metamorph(args) -> int:
    mode = args.mode[0]
    doc = _read_document(args.infile)
    classes = list(doc.decomposition.classes)
    try:
        indices = [int(t) for t in args.classes.split(",")]
    except ValueError:
        print(f"metamorph: bad --classes {args.classes!r}", file=sys.stderr)
        return EXIT_USAGE
    if any(i < 0 or i >= len(classes) for i in indices) or len(set(indices)) != len(indices):
        print(f"metamorph: class indices out of range or repeated", file=sys.stderr)
        return EXIT_USAGE
    selected = [classes[i] for i in indices]
    rest = [c for i, c in enumerate(classes) if i not in set(indices)]

    expect = {"two-c4": 2, "matching-c4": 2, "three-c4": 3, "two-k3": 2}
    if mode == "cycles-k":
        if len(args.mode) != 2 or not args.mode[1].isdigit():
            print("metamorph: --mode cycles-k needs k, e.g. --mode cycles-k 5",
                  file=sys.stderr)
            return EXIT_USAGE
        k = int(args.mode[1])
        if len(selected) != k - 1:
            print(f"metamorph: cycles-k {k} needs {k - 1} classes", file=sys.stderr)
            return EXIT_USAGE
        outcome = meta_cycles_conjecture(k, tuple(selected), budget=_budget(args))
        print(f"cycles-{k}: {outcome.status}")
        if outcome.status == "timeout":
            return EXIT_TIMEOUT
        if outcome.status == "exhausted":
            return EXIT_INFEASIBLE
        produced = list(outcome.classes)
    elif mode in expect:
        if len(selected) != expect[mode]:
            print(f"metamorph: mode {mode} needs {expect[mode]} classes", file=sys.stderr)
            return EXIT_USAGE
        if mode == "two-c4":
            produced = list(meta_two_c4(*selected))
        elif mode == "matching-c4":
            produced = list(meta_matching_c4(*selected))
        elif mode == "three-c4":
            produced = list(meta_three_c4(*selected))
        else:
            produced = list(meta_two_k3(*selected, budget=_budget(args)))
    else:
        print(f"metamorph: unknown mode {mode!r}", file=sys.stderr)
        return EXIT_USAGE
    out = Decomposition(doc.decomposition.v, tuple(rest + produced))
    _write_output(serialize_urd(out), args.out)
    return EXIT_OK


def _spectrum_rows(args):
    """(counts, feasible, witness) rows plus an exit code."""
    fam = args.family
    v = args.v
    code = EXIT_OK
    rows = []
    witnesses = {}
    if args.exhaustive:
        result = exhaustive_spectrum(v, fam, budget=_budget(args))
        if result.diagnostic:
            print(f"# {result.diagnostic}", file=sys.stderr)
        decided = sorted(result.feasible | result.infeasible | result.undecided)
        for tup in decided:
            status = ("yes" if tup in result.feasible
                      else "no" if tup in result.infeasible else "unknown")
            rows.append((tup, status))
        witnesses = result.witnesses
        if not result.complete:
            code = EXIT_TIMEOUT
        if args.complex:
            rows = [(t, s) for t, s in rows if all(c > 0 for c in t)]
    else:
        complex_only = not args.all
        if fam == "k2p3k3":
            adm = admissible_k2p3k3(v, complex_only)
        elif fam == "k2p4c4":
            adm = admissible_k2p4c4(v, complex_only)
        else:
            adm = admissible_p4c4(v)
        if adm.diagnostic:
            print(f"# {adm.diagnostic}", file=sys.stderr)
        rows = [(tup, "yes") for tup in sorted(adm.tuples)]
        if not complex_only:
            from .spectrum import _EXCLUSIONS
            for tup in sorted(_EXCLUSIONS.get((fam, v), ())):
                rows.append((tup, "no"))
            rows.sort()
    return rows, witnesses, code


def _cmd_spectrum(args) -> int:
    rows, witnesses, code = _spectrum_rows(args)
    fam = args.family
    print("v\tfamily\tm\tp\tc/t\tfeasible\twitness_file")
    for tup, status in rows:
        counts = (0,) + tup if fam == "p4c4" else tup
        witness_file = "-"
        if args.witness_dir and status == "yes" and tup in witnesses:
            path = Path(args.witness_dir)
            path.mkdir(parents=True, exist_ok=True)
            witness_file = str(path / f"urd_{args.v}_{fam}_{'_'.join(map(str, tup))}.urd")
            profile = Profile(fam, tup)
            Path(witness_file).write_text(
                serialize_urd(witnesses[tup], family=fam, profile=profile),
                encoding="utf-8")
        print(f"{args.v}\t{fam}\t{counts[0]}\t{counts[1]}\t{counts[2] if len(counts) > 2 else counts[-1]}"
              f"\t{status}\t{witness_file}")
    return code


def _cmd_search(args) -> int:
    if not args.matching_triangles:
        print("search: only --matching-triangles systems are supported", file=sys.stderr)
        return EXIT_USAGE
    matchings, triangles = matching_triangle_system(args.v, args.m, budget=_budget(args))
    d = Decomposition(args.v, tuple(matchings + triangles))
    profile = Profile("k2p3k3", (args.m, 0, len(triangles)))
    _write_output(serialize_urd(d, family="k2p3k3", profile=profile), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="urd",
        description="Construct, transform, and verify uniformly resolvable "
                    "decompositions of complete graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a witness decomposition")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--v", required=True, type=int)
    p.add_argument("--profile", required=True, metavar='"m p c"')
    p.add_argument("--out", default=None)
    p.add_argument("--budget", type=float, default=None, help="seconds")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("metamorph", help="transform selected classes of a document")
    p.add_argument("--mode", required=True, nargs="+",
                   help="two-c4 | matching-c4 | three-c4 | two-k3 | cycles-k K")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--classes", required=True, help="comma-separated class indices")
    p.add_argument("--out", default=None)
    p.add_argument("--budget", type=float, default=None, help="seconds")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_metamorph)

    p = sub.add_parser("verify", help="check a document")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--profile", default=None, metavar='"m p c"')
    p.add_argument("--family", default=None, choices=sorted(FAMILIES))
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("spectrum", help="emit the profile table as TSV")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--v", required=True, type=int)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true",
                       help="include profiles with zero counts")
    group.add_argument("--complex", action="store_true",
                       help="only all-positive profiles (default)")
    p.add_argument("--exhaustive", action="store_true",
                   help="decide feasibility by exhaustive search (v <= 12)")
    p.add_argument("--witness-dir", default=None)
    p.add_argument("--budget", type=float, default=None, help="seconds")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("search", help="search for a matching+triangle system")
    p.add_argument("--matching-triangles", action="store_true")
    p.add_argument("--v", required=True, type=int)
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--out", default=None)
    p.add_argument("--budget", type=float, default=None, help="seconds")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (KnownNonexistentError, InadmissibleProfileError, MetamorphosisError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except SearchTimeoutError as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT
    except (UrdParseError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UrdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
