"""Command-line front end.

Exit status: 0 success, 1 domain error (infeasible tuple, failed
verification, non-fold germ), 2 usage error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from .enumeration import count_classes, enumerate_classes
from .errors import (
    CapacityError,
    ClassificationError,
    GermSyntaxError,
    InfeasibleTupleError,
    NonFoldError,
    NotAGermError,
    NumericalError,
    VerificationError,
)
from .feasibility import abs_degree, cusp_parity, is_feasible
from .realization import RealizationSpec, min_samples, realization_marks, sample_realization, verify_realization
from .recognition import RecognitionConfig, germ_ast, germ_equiv, parse_germ
from .tuples import (
    AstTuple,
    HashTuple,
    ast_from_hash,
    canonical_ast,
    canonical_runs,
    equivalent,
    hash_from_ast,
)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _parse_tuple(text: str) -> AstTuple | HashTuple:
    """A word over {s,p} or a comma-separated hash tuple."""
    text = text.strip()
    try:
        if text and set(text) <= {"s", "p"}:
            return AstTuple.parse(text)
        return HashTuple.parse(text)
    except ValueError as exc:
        raise UsageError(f"cannot read tuple {text!r}: {exc}") from exc


def _parse_hash(text: str) -> HashTuple:
    t = _parse_tuple(text)
    if isinstance(t, AstTuple):
        return hash_from_ast(t)
    return t


def _require_feasible(h: HashTuple) -> None:
    if not is_feasible(h).feasible:
        raise InfeasibleTupleError(f"{h} is not feasible")


def _as_ast(t: AstTuple | HashTuple) -> AstTuple:
    return t if isinstance(t, AstTuple) else ast_from_hash(t)


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _config(args) -> RecognitionConfig:
    return RecognitionConfig(eps0=args.eps0, precision=args.precision, seed=args.seed)


def cmd_canon(args, out) -> int:
    t = _parse_tuple(args.tuple)
    if isinstance(t, HashTuple):
        runs = canonical_runs(t.runs)
        text = ",".join(map(str, runs))
        payload = {"input": args.tuple, "canonical": list(runs)}
    else:
        text = canonical_ast(t).word
        payload = {"input": args.tuple, "canonical": text}
    print(_dump(payload) if args.json else text, file=out)
    return EXIT_OK


def cmd_equiv(args, out) -> int:
    a, b = _as_ast(_parse_tuple(args.a)), _as_ast(_parse_tuple(args.b))
    result = equivalent(a, b)
    if args.json:
        print(_dump({"equivalent": result, "a": canonical_ast(a).word, "b": canonical_ast(b).word}), file=out)
    else:
        print("true" if result else "false", file=out)
    return EXIT_OK


def cmd_feasible(args, out) -> int:
    h = _parse_hash(args.tuple)
    report = is_feasible(h)
    if args.json:
        print(_dump(report.as_dict()), file=out)
    elif report.feasible:
        print(f"feasible, type ({report.type_n},{report.type_m})", file=out)
    else:
        failed = [
            name
            for name, ok in (
                ("even length", report.n_even),
                ("alternating sum", report.cond_altsum_ok),
                ("complete residue system", report.cond_crs_ok),
            )
            if not ok
        ]
        print("infeasible: fails " + ", ".join(failed), file=out)
    return EXIT_OK if report.feasible else EXIT_DOMAIN


def _check_type_args(n: int, m: int) -> None:
    if n <= 0 or m < 0:
        raise UsageError("need n > 0 and m >= 0")


def cmd_enumerate(args, out) -> int:
    _check_type_args(args.n, args.m)
    listing = enumerate_classes(args.n, args.m, force=args.force, jobs=args.jobs)
    if args.json:
        print(_dump(listing.as_dict()), file=out)
    elif args.csv:
        writer = csv.writer(out, lineterminator="\n")
        for c in listing.classes:
            writer.writerow(c)
    else:
        print(f"type ({args.n},{args.m}): {listing.count} classes", file=out)
        for c in listing.classes:
            print("  " + ",".join(map(str, c)), file=out)
    return EXIT_OK


def cmd_count(args, out) -> int:
    _check_type_args(args.n, args.m)
    count = count_classes(args.n, args.m, force=args.force, jobs=args.jobs)
    print(_dump({"n": args.n, "m": args.m, "count": count}) if args.json else count, file=out)
    return EXIT_OK


def cmd_degree(args, out) -> int:
    h = _parse_hash(args.tuple)
    _require_feasible(h)
    deg = int(abs_degree(h))
    print(_dump({"hash": list(h.runs), "abs_deg": deg}) if args.json else deg, file=out)
    return EXIT_OK


def cmd_cusp_parity(args, out) -> int:
    h = _parse_hash(args.tuple)
    parity = cusp_parity(h)
    print(_dump({"hash": list(h.runs), "cusp_parity": parity}) if args.json else parity, file=out)
    return EXIT_OK


def cmd_realize(args, out) -> int:
    h = _parse_hash(args.tuple)
    spec = RealizationSpec.from_hash(h)
    count = args.samples if args.samples is not None else min_samples(spec)
    if args.csv:
        sampled = sample_realization(spec, count)
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["t", "fA"])
        for t, v in sampled.rows():
            writer.writerow([repr(t), repr(v)])
        return EXIT_OK
    if count < min_samples(spec):
        raise UsageError(f"need at least {min_samples(spec)} samples, got {count}")
    try:
        word = verify_realization(spec, count)
        verified, message = True, None
    except VerificationError as exc:
        word, verified, message = None, False, str(exc)
    marks = realization_marks(spec, count)
    report = {
        "hash": list(h.runs),
        "canonical": list(canonical_runs(h.runs)),
        "samples": count,
        "extracted": word.word if word is not None else marks.word().word,
        "winding": marks.winding,
        "abs_deg": int(abs_degree(h)),
        "verified": verified,
    }
    if args.json:
        print(_dump(report), file=out)
    else:
        status = "verified" if verified else f"MISMATCH: {message}"
        print(f"{h}: extracted {report['extracted']}, winding {marks.winding}, {status}", file=out)
    return EXIT_OK if verified else EXIT_DOMAIN


def cmd_recognize(args, out) -> int:
    report = germ_ast(parse_germ(args.f1, args.f2), _config(args))
    if args.json:
        print(_dump(report.to_json_dict()), file=out)
    else:
        text = f"{report.ast.word}"
        if report.hash is not None:
            text += f"  hash {report.hash}  type ({report.n},{report.m})  |deg| {report.abs_deg}"
            text += f"  cusp parity {report.cusp_parity}"
        else:
            text += f"  regular type, {report.abs_deg} preimages"
        text += f"  (eps {report.epsilon_used:g})"
        print(text, file=out)
    return EXIT_OK


def cmd_germ_equiv(args, out) -> int:
    config = _config(args)
    result = germ_equiv(parse_germ(args.f1, args.f2), parse_germ(args.g1, args.g2), config)
    if args.json:
        print(_dump(result.to_json_dict()), file=out)
    else:
        text = "true" if result.equivalent else "false"
        text += f"  ({result.first.ast.word} vs {result.second.ast.word})"
        if not result.within_hypothesis:
            text += "  [regular-type germ: preimage counts compared only]"
        print(text, file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circlegerm",
        description="Classify stable circle maps and plane-to-plane map germs by associated tuples.",
    )
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, func, help_text, *, json_flag=True):
        p = sub.add_parser(name, help=help_text, description=help_text)
        if json_flag:
            p.add_argument("--json", action="store_true", help="emit one line of JSON")
        p.set_defaults(func=func)
        return p

    tuple_help = "word over {s,p} (e.g. pssp) or hash tuple (e.g. 1,2,1,0)"
    p = verb("canon", cmd_canon, "canonical representative of a tuple class")
    p.add_argument("tuple", help=tuple_help)
    p = verb("equiv", cmd_equiv, "are two tuples in the same class")
    p.add_argument("a", help=tuple_help)
    p.add_argument("b", help=tuple_help)
    p = verb("feasible", cmd_feasible, "check the feasibility conditions of a hash tuple")
    p.add_argument("tuple", help=tuple_help)

    for name, func, text in (
        ("enumerate", cmd_enumerate, "list the feasible classes of type (n, m)"),
        ("count", cmd_count, "count the feasible classes of type (n, m)"),
    ):
        p = verb(name, func, text)
        p.add_argument("n", type=int)
        p.add_argument("m", type=int)
        p.add_argument("--force", action="store_true", help="ignore the search-size bound")
        p.add_argument("--jobs", type=int, default=1, help="worker processes")
        if name == "enumerate":
            p.add_argument("--csv", action="store_true", help="one class per line")

    p = verb("degree", cmd_degree, "absolute degree of a feasible tuple")
    p.add_argument("tuple", help=tuple_help)
    p = verb("cusp-parity", cmd_cusp_parity, "cusp-count parity of a stable perturbation")
    p.add_argument("tuple", help=tuple_help)

    p = verb("realize", cmd_realize, "sample and verify the explicit realization of a feasible tuple")
    p.add_argument("tuple", help=tuple_help)
    p.add_argument("--samples", type=int, default=None, help="number of sample points")
    p.add_argument("--csv", action="store_true", help="emit samples t,fA(t) instead of the report")

    for name, func, text, names in (
        ("recognize", cmd_recognize, "associated tuple class of a polynomial germ", ("f1", "f2")),
        ("germ-equiv", cmd_germ_equiv, "topological equivalence of two polynomial germs", ("f1", "f2", "g1", "g2")),
    ):
        p = verb(name, func, text)
        for arg in names:
            p.add_argument(arg, help="polynomial in x, y")
        p.add_argument("--eps0", type=_fraction, default=Fraction(1, 16), help="first level (default 1/16)")
        p.add_argument("--precision", default="long", help="double, long or mpNN (default long)")
        p.add_argument("--seed", type=int, default=0, help="seed for reference-angle re-picks")
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if getattr(args, "json", False) and getattr(args, "csv", False):
        print("error: --json and --csv are exclusive", file=err)
        return EXIT_USAGE
    if getattr(args, "precision", "long") not in ("double", "long") and not (
        args.precision.startswith("mp") and args.precision[2:].isdigit()
    ):
        print(f"error: unknown precision {args.precision!r}", file=err)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except CapacityError as exc:
        print(f"error: {str(exc).replace('force=True', '--force')}", file=err)
        return EXIT_USAGE
    except (UsageError, GermSyntaxError, NotAGermError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_NUMERIC
    except (InfeasibleTupleError, VerificationError, NonFoldError, ClassificationError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


def main_entry() -> None:
    try:
        code = main()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed the pipe (e.g. `| head`); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main_entry()
