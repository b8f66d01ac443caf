"""Typer application: one subcommand per verifier plus ``sum`` and ``selftest``."""

from __future__ import annotations

import json
import logging
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Iterator, Optional, Sequence

import click
import mpmath
import typer

from ..core.config import RunConfig, get_run_config
from ..core.exceptions import PreconditionError
from ..main import setup_logging
from ..models.params import Kind, Params, SamplePolicy, parse_rational
from ..models.report import VerificationReport, all_passed
from ..services.dedekind_sums import (
    apostol_reciprocity,
    apostol_sum,
    dedekind_cotangent_sum,
    fukuhara_instance,
    r2_identity,
    r2_reciprocity,
    zagier_reciprocity,
)
from ..services.identity_engine import LAURENT_ORDERS, Corruption, get_identity_engine, sample_points
from .reporting import digits_for, emit_report, print_summary
from .selftest import run_selftest

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="reciplab",
    help="Verify product-to-sum identities for cotangent/cosecant derivatives and the reciprocity laws they imply.",
    add_completion=False,
    no_args_is_help=True,
)


class SumKind(str, Enum):
    apostol = "apostol"
    dedekind = "dedekind"


def _config(ctx: typer.Context) -> RunConfig:
    return ctx.obj["config"]


@contextmanager
def _preconditions() -> Iterator[None]:
    """Caller errors become exit 2 with a one-line diagnostic."""
    try:
        yield
    except PreconditionError as e:
        typer.echo(f"error: {type(e).__name__}: {e}", err=True)
        raise typer.Exit(2)


def _finish(ctx: typer.Context, reports: VerificationReport | list[VerificationReport]) -> None:
    cfg = _config(ctx)
    batch = reports if isinstance(reports, list) else [reports]
    typer.echo(emit_report(reports, cfg))
    if ctx.obj["verbose"]:
        print_summary(batch)
    raise typer.Exit(0 if all_passed(batch) else 1)


def _params(a: str, m: Optional[str], w: Optional[str], j: Optional[str]) -> Params:
    return Params.from_strings(a, m, w, j)


@app.callback()
def main(
    ctx: typer.Context,
    precision: Optional[int] = typer.Option(None, "--precision", help="Working precision in bits."),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for sample points and families."),
    samples: Optional[int] = typer.Option(None, "--samples", help="Sample points per identity check."),
    tolerance_exponent: Optional[int] = typer.Option(
        None, "--tolerance-exponent", help="Pass when the relative error is at most 2^-k."
    ),
    output: Optional[Path] = typer.Option(None, "--output", help="Also write the JSON report here."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="INFO logging and a summary table."),
) -> None:
    setup_logging(verbose)
    try:
        cfg = get_run_config().with_overrides(
            precision_bits=precision,
            seed=seed,
            samples=samples,
            tolerance_exponent=tolerance_exponent,
            output_path=output,
        )
    except ValueError as e:
        # pydantic ValidationError is a ValueError
        raise typer.BadParameter(str(e).splitlines()[-1] if str(e) else "invalid run configuration")
    ctx.obj = {"config": cfg, "verbose": verbose}


@app.command("verify-identity")
def verify_identity(
    ctx: typer.Context,
    a: str = typer.Option(..., "--a", help="Comma list of positive integers."),
    m: Optional[str] = typer.Option(None, "--m", help="Comma list of orders (default all 1)."),
    w: Optional[str] = typer.Option(None, "--w", help="Comma list of shifts as num/den in [0, 1)."),
    j: Optional[str] = typer.Option(None, "--j", help="Cotangent count, cosecant count (default r,0)."),
    flip_sign: Optional[int] = typer.Option(None, "--flip-sign", help="Negative control: flip one index's sign."),
    drop_full_subset: bool = typer.Option(False, "--drop-full-subset", help="Negative control: drop the full subset."),
) -> None:
    """Compare the product with its partial fraction expansion at sampled points."""
    cfg = _config(ctx)
    with _preconditions():
        p = _params(a, m, w, j)
        engine = get_identity_engine(cfg.precision_bits, cfg.tolerance_bits)
        corruption = Corruption(flip_index=flip_sign, drop_full_subset=drop_full_subset)
        report = engine.verify_identity(p, SamplePolicy(count=cfg.samples, seed=cfg.seed), corruption)
    _finish(ctx, report)


@app.command()
def reciprocity(
    ctx: typer.Context,
    a: str = typer.Option(..., "--a"),
    m: Optional[str] = typer.Option(None, "--m"),
    w: Optional[str] = typer.Option(None, "--w"),
    j: Optional[str] = typer.Option(None, "--j"),
    node_form: bool = typer.Option(False, "--node-form", help="Also check the multiplicity-free node sum."),
    origin: bool = typer.Option(False, "--origin", help="Also check the origin coefficients against M_n (w = 0)."),
) -> None:
    """Sum of residues of the expansion against its closed form."""
    cfg = _config(ctx)
    with _preconditions():
        p = _params(a, m, w, j)
        engine = get_identity_engine(cfg.precision_bits, cfg.tolerance_bits)
        reports = [engine.verify_reciprocity_sum(p)]
        if node_form:
            reports.append(engine.multiplicity_free_reciprocity(p))
        if origin:
            reports.append(engine.w_zero_expansion_check(p))
    _finish(ctx, reports if len(reports) > 1 else reports[0])


@app.command("w-zero")
def w_zero(
    ctx: typer.Context,
    a: str = typer.Option(..., "--a", help="Pairwise coprime comma list."),
    m: Optional[str] = typer.Option(None, "--m"),
    j: Optional[str] = typer.Option(None, "--j"),
) -> None:
    """Origin coefficients of the expansion against M_n, all shifts zero."""
    cfg = _config(ctx)
    with _preconditions():
        p = _params(a, m, None, j)
        report = get_identity_engine(cfg.precision_bits, cfg.tolerance_bits).w_zero_expansion_check(p)
    _finish(ctx, report)


@app.command()
def laurent(
    ctx: typer.Context,
    a: str = typer.Option(..., "--a"),
    m: Optional[str] = typer.Option(None, "--m"),
    w: Optional[str] = typer.Option(None, "--w"),
    j: Optional[str] = typer.Option(None, "--j"),
    z0: str = typer.Option("0", "--z0", help="Rational center in [0, 1), as num/den."),
    mu: Optional[int] = typer.Option(None, "--mu", help="Single order (default 0..3)."),
    oracle: bool = typer.Option(True, "--oracle/--no-oracle", help="Compare with contour extraction."),
) -> None:
    """Laurent coefficients at z0 from both sides of the identity."""
    cfg = _config(ctx)
    with _preconditions():
        p = _params(a, m, w, j)
        engine = get_identity_engine(cfg.precision_bits, cfg.tolerance_bits)
        orders = (mu,) if mu is not None else LAURENT_ORDERS
        report = engine.verify_laurent_reciprocity(p, parse_rational(z0), orders, with_oracle=oracle)
    _finish(ctx, report)


@app.command()
def zagier(
    ctx: typer.Context,
    a: str = typer.Option(..., "--a", help="Pairwise coprime comma list."),
    kind: str = typer.Option("I", "--kind", help="I for cotangents, II for cosecants."),
) -> None:
    """Zagier's reciprocity for cotangent or cosecant sums."""
    cfg = _config(ctx)
    with _preconditions():
        values = Params.from_strings(a).a
        r = len(values)
        j = (r, 0) if Kind.parse(kind) is Kind.I else (0, r)
        report = zagier_reciprocity(values, j, cfg.precision_bits, cfg.tolerance_bits)
    _finish(ctx, report)


@app.command()
def apostol(
    ctx: typer.Context,
    k: int = typer.Option(..., "--k"),
    p: int = typer.Option(..., "--p"),
    q: int = typer.Option(..., "--q"),
) -> None:
    """Dedekind-Apostol reciprocity for s_(2k+1)."""
    cfg = _config(ctx)
    with _preconditions():
        report = apostol_reciprocity(k, p, q, cfg.precision_bits, cfg.tolerance_bits)
    _finish(ctx, report)


@app.command()
def fukuhara(
    ctx: typer.Context,
    case: int = typer.Option(..., "--case", min=0, max=4),
    p: int = typer.Option(..., "--p"),
    q: int = typer.Option(..., "--q"),
    z: str = typer.Option("0.37+0.21j", "--z", help="Complex point, e.g. 0.37+0.21j."),
) -> None:
    """Fukuhara's product formulas, directly and through the identity engine."""
    cfg = _config(ctx)
    with _preconditions():
        with mpmath.workprec(cfg.precision_bits):
            point = _complex(z)
        report = fukuhara_instance(case, p, q, point, cfg.precision_bits, cfg.tolerance_bits)
    _finish(ctx, report)


@app.command()
def r2(
    ctx: typer.Context,
    a1: int = typer.Option(..., "--a1"),
    a2: int = typer.Option(..., "--a2"),
    w1: str = typer.Option("0", "--w1"),
    w2: str = typer.Option("0", "--w2"),
    k1: str = typer.Option("I", "--k1"),
    k2: str = typer.Option("I", "--k2"),
    j: Optional[str] = typer.Option(None, "--J", help="Expected parity; rejected when it contradicts the case rule."),
    residues: bool = typer.Option(False, "--residues", help="Also check that the simple-pole weights sum to zero."),
) -> None:
    """Two-factor identity with its Bezout-centered double pole."""
    cfg = _config(ctx)
    with _preconditions():
        args = (a1, a2, parse_rational(w1), parse_rational(w2), Kind.parse(k1), Kind.parse(k2))
        expected = Kind.parse(j) if j is not None else None
        policy = SamplePolicy(count=cfg.samples, seed=cfg.seed)
        reports = [r2_identity(*args, points=sample_points(policy), J=expected, prec=cfg.precision_bits,
                               tolerance_bits=cfg.tolerance_bits)]
        if residues:
            reports.append(r2_reciprocity(*args, prec=cfg.precision_bits, tolerance_bits=cfg.tolerance_bits))
    _finish(ctx, reports if len(reports) > 1 else reports[0])


@app.command("sum")
def sum_command(
    ctx: typer.Context,
    kind: SumKind = typer.Option(..., "--kind"),
    n: int = typer.Option(1, "--n", help="Order N of s_N (apostol)."),
    p: int = typer.Option(1, "--p"),
    q: int = typer.Option(1, "--q"),
    a0: int = typer.Option(1, "--a0", help="Modulus (dedekind)."),
    a: Optional[str] = typer.Option(None, "--a"),
    m: Optional[str] = typer.Option(None, "--m"),
    w: Optional[str] = typer.Option(None, "--w"),
    j: Optional[str] = typer.Option(None, "--j"),
    w0: str = typer.Option("0", "--w0"),
    m0: int = typer.Option(1, "--m0"),
) -> None:
    """Evaluate s_N(q; p) or a raw Dedekind cotangent/cosecant sum."""
    cfg = _config(ctx)
    with _preconditions():
        if kind is SumKind.apostol:
            value = apostol_sum(n, q, p, cfg.precision_bits)
            inputs: dict[str, object] = {"N": n, "p": p, "q": q}
        else:
            if a is None:
                raise typer.BadParameter("--a is required for --kind dedekind")
            params = Params.from_strings(a, m, w, j)
            value = dedekind_cotangent_sum(a0, params.a, params.m, params.w, params.j, parse_rational(w0), m0,
                                           cfg.precision_bits)
            inputs = {"a0": a0, "params": params.to_dict(), "w0": w0, "m0": m0}
    digits = digits_for(cfg.precision_bits)
    with mpmath.workprec(cfg.precision_bits):
        document = {
            "sum": kind.value,
            "inputs": inputs,
            "precision_bits": cfg.precision_bits,
            "value": [mpmath.nstr(value.real, digits), mpmath.nstr(value.imag, digits)],
        }
    text = json.dumps(document, indent=2)
    if cfg.output_path is not None:
        cfg.output_path.write_text(text + "\n", encoding="utf-8")
    typer.echo(text)


@app.command()
def selftest(
    ctx: typer.Context,
    quick: bool = typer.Option(False, "--quick", help="Smaller families for a smoke run."),
) -> None:
    """Run the whole acceptance suite."""
    cfg = _config(ctx)
    with _preconditions():
        reports = run_selftest(cfg, quick=quick)
    typer.echo(emit_report(reports, cfg))
    print_summary(reports, title="selftest")
    raise typer.Exit(0 if all_passed(reports) else 1)


def _complex(text: str) -> mpmath.mpc:
    try:
        return mpmath.mpc(mpmath.mpmathify(text.replace(" ", "")))
    except (ValueError, TypeError) as e:
        raise typer.BadParameter(f"not a complex number: {text!r}") from e


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the application and return its exit code instead of exiting."""
    try:
        result = app(args=list(argv) if argv is not None else None, prog_name="reciplab", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.exceptions.Abort:
        return 1
    return result if isinstance(result, int) else 0
