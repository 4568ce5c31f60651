"""Command-line front end: census, classify, count, guess, elliptic, serve.

Exit codes: 0 success, 1 usage or parse error, 2 internal failure,
3 numeric tolerance failure.
"""
import argparse
import contextlib
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from catalog_ops import CatalogOperations
from catalog_store import CatalogStore
from errors import ConventionError, ParseError, ToleranceFailure, WalkError
from settings import get_settings
from walk_model import StepSet, kernel_of

logger = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise ParseError(message)


def _steps(text: str) -> StepSet:
    return StepSet.parse(text)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"not a rational number: {text!r}") from e


def cmd_census(args: argparse.Namespace) -> int:
    # with --json, stdout carries only the catalog; status lines go to stderr
    status = contextlib.redirect_stdout(sys.stderr) if args.json else contextlib.nullcontext()
    with status:
        catalog = CatalogStore.build(n_max=args.nmax)
        broken = [r for r in catalog.models if r.order_H.finite and not r.norm_ok]
        if broken:
            raise ConventionError(f"norm differs from 1 for {', '.join(r.steps for r in broken)}")
        CatalogStore.save(args.out)
        for line in CatalogOperations(catalog).summary()["lines"]:
            print(line)
    if args.json:
        print(catalog.model_dump_json(indent=2))
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    from classifier import closed_form_checks, classify, orbit_data
    from group_engine import delta_substitution, eta_map, xi_map

    S = args.steps
    record = classify(S, args.nmax)
    if args.json:
        print(record.model_dump_json(indent=2))
        return 0
    kernel = kernel_of(S)
    print(f"steps        {S}  (mask {S.mask})")
    print(f"kernel       {kernel.K.as_expr()}")
    print(f"c            {kernel.c.as_expr()}")
    print(f"c~           {kernel.c_tilde.as_expr()}")
    try:
        print(f"xi           {xi_map(S)}")
        print(f"eta          {eta_map(S)}")
        print(f"delta map    {delta_substitution(S)}")
    except WalkError as e:
        print(f"✗ generators: {e}")
    print(f"order W      {record.order_W}")
    print(f"order H      {record.order_H}")
    if record.order_H.finite and record.note is None:
        od = orbit_data(S, args.nmax)
        print(f"f            {od.f}")
        print(f"psi          {od.psi}")
        print(f"N(f)         {od.norm}")
        print(f"orbit sum    {od.orbit_sum_raw}")
        print(f"  on curve   {od.orbit_sum_on_curve}")
        print(f"orbit sum~   {od.orbit_sum_tilde_raw}")
        print(f"  on curve   {od.orbit_sum_tilde_on_curve}")
        for tag, ok in closed_form_checks(S, od):
            print(f"{'✓' if ok else '✗'} {tag}")
    if record.note:
        print(f"note         {record.note}")
    print(f"verdict      {record.nature.value}")
    return 0


def cmd_count(args: argparse.Namespace) -> int:
    from series_lab import count_walks, export_series, export_tsv, specialize

    box = count_walks(args.steps, args.kmax)
    if args.series:
        text = export_series(specialize(box, args.x, args.y))
    else:
        text = export_tsv(box)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"✓ Counts written to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_guess(args: argparse.Namespace) -> int:
    from series_lab import excursions, guess_algebraic, guess_recurrence

    series = excursions(args.steps, args.terms)
    if args.kind == "algebraic":
        relation = guess_algebraic(series, args.degT, args.degZ)
        label = "algebraic relation"
    else:
        relation = guess_recurrence(series, args.order, args.degree)
        label = "recurrence"
    if relation is None:
        print(f"✗ no {label} at the given bounds")
        return 0
    print(f"✓ {label} found, validated on held-back terms")
    print(relation)
    return 0


def cmd_elliptic(args: argparse.Namespace) -> int:
    from elliptic import verify_model

    report = verify_model(args.steps, args.z0, args.prec)
    out = Path(args.out or get_settings().elliptic_report_path)
    out.write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")
    if args.json:
        print(report.model_dump_json(indent=2))
    for name, value in report.residuals.items():
        print(f"{name:<12} {value:>12}  (tolerance {report.tolerances[name]})")
    if not report.passed:
        raise ToleranceFailure(f"{args.steps}: residual above tolerance, see {out}")
    print(f"✓ All elliptic checks passed, report written to {out}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("main:app", host=args.host, port=args.port)
    return 0


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="walks", description="Classify small-step quarter-plane walks")
    parser.add_argument("--verbose", "-v", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    census = sub.add_parser("census", help="classify all canonical models and write the catalog")
    census.add_argument("--nmax", type=int, default=None)
    census.add_argument("--out", default=None)
    census.add_argument("--json", action="store_true")
    census.set_defaults(handler=cmd_census)

    classify = sub.add_parser("classify", help="report on one step set")
    classify.add_argument("--steps", type=_steps, required=True)
    classify.add_argument("--nmax", type=int, default=None)
    classify.add_argument("--json", action="store_true")
    classify.set_defaults(handler=cmd_classify)

    count = sub.add_parser("count", help="count quadrant walks")
    count.add_argument("--steps", type=_steps, required=True)
    count.add_argument("--kmax", type=int, default=None)
    count.add_argument("--series", action="store_true", help="emit F(x, y, z) at --x, --y instead of the TSV")
    count.add_argument("--x", type=_fraction, default=Fraction(1))
    count.add_argument("--y", type=_fraction, default=Fraction(1))
    count.add_argument("--out", default=None)
    count.set_defaults(handler=cmd_count)

    guess = sub.add_parser("guess", help="guess a relation for the excursion series")
    guess.add_argument("--steps", type=_steps, required=True)
    guess.add_argument("--kind", choices=("algebraic", "recurrence"), default="recurrence")
    guess.add_argument("--terms", type=int, default=60)
    guess.add_argument("--degT", type=int, default=3)
    guess.add_argument("--degZ", type=int, default=8)
    guess.add_argument("--order", type=int, default=2)
    guess.add_argument("--degree", type=int, default=2)
    guess.set_defaults(handler=cmd_guess)

    elliptic = sub.add_parser("elliptic", help="numeric self-checks of the uniformization")
    elliptic.add_argument("--steps", type=_steps, required=True)
    elliptic.add_argument("--z0", type=_fraction, default=None)
    elliptic.add_argument("--prec", type=int, default=None)
    elliptic.add_argument("--out", default=None)
    elliptic.add_argument("--json", action="store_true")
    elliptic.set_defaults(handler=cmd_elliptic)

    serve = sub.add_parser("serve", help="serve the catalog over HTTP")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(handler=cmd_serve)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
        if getattr(args, "z0", None) is not None and not 0 < args.z0 < Fraction(1, args.steps.size):
            raise ParseError(f"z0 must lie in (0, 1/{args.steps.size})")
        return args.handler(args)
    except ParseError as e:
        print(f"✗ {e}")
        return 1
    except ToleranceFailure as e:
        print(f"✗ {e}")
        return 3
    except (WalkError, AssertionError) as e:
        print(f"✗ {type(e).__name__}: {e}")
        return 2
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 0


if __name__ == "__main__":
    sys.exit(main())
