"""Command-line workbench: `python -m cli <command> ...`.

Exit codes: 0 when every check passes, 1 on any FAIL line, 2 on usage or domain errors.
"""
from __future__ import annotations

import functools
import json
import logging
import sys
from typing import Optional

import click
from pydantic import BaseModel

from arithmetic import ConfigurationError, GammaInt, gamma_add, gamma_mul, ring_suite
from bundle import ModuleVector, act
from config import DEFAULT_WINDOW, LOG_LEVEL, configure_logging
from field import DomainError
from langtype import IntPoly, check_cyclic_axioms, lang_check
from pairing import PairingSortError, PairingUndefinedError, check_pairing_axioms
from qalgebra import Generator
from schemas import ArithResult, Report
from syntax import ExpressionError, evaluate_text, pair_texts, parse_point, render, to_eval_result
from torus import TransferMap, check_psi, default_structure, verify_transfer, verify_transport

logger = logging.getLogger(__name__)

USER_ERRORS = (
    DomainError,
    ExpressionError,
    PairingSortError,
    PairingUndefinedError,
    ConfigurationError,
)

window_option = click.option(
    "--window",
    type=click.IntRange(min=1),
    default=DEFAULT_WINDOW,
    show_default=True,
    help="Exponent window [-B, B] to check.",
)
json_option = click.option("--json", "as_json", is_flag=True, help="Print JSON instead of text.")


def handle_errors(fn):
    """Turn domain and expression errors into `error: ...` on stderr and exit code 2."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except USER_ERRORS as e:
            logger.debug("command failed", exc_info=True)
            click.echo(f"error: {e}", err=True)
            sys.exit(2)

    return wrapper


def emit(model: BaseModel, text: str, as_json: bool) -> None:
    click.echo(model.model_dump_json(indent=2) if as_json else text)


def emit_report(report: Report, as_json: bool) -> None:
    emit(report, report.render(), as_json)
    sys.exit(report.exit_code)


@click.group()
@click.option("--log-level", default=LOG_LEVEL, show_default=True, help="Logging level for stderr.")
def cli(log_level: str) -> None:
    """Exact workbench for the quantum 2-torus."""
    configure_logging(log_level.upper())


@cli.command("eval")
@click.argument("expr")
@json_option
@handle_errors
def eval_command(expr: str, as_json: bool) -> None:
    """Evaluate a scalar, algebra, point or pairing expression."""
    value = evaluate_text(expr)
    emit(to_eval_result(value), render(value), as_json)


@cli.command("act")
@click.argument("generator", type=click.Choice([g.value for g in Generator]))
@click.argument("point")
@json_option
@handle_errors
def act_command(generator: str, point: str, as_json: bool) -> None:
    """Apply one generator to a point."""
    result = ModuleVector.from_point(act(Generator(generator), parse_point(point)))
    emit(to_eval_result(result), render(result), as_json)


@cli.command("pair")
@click.argument("left")
@click.argument("right")
@json_option
@handle_errors
def pair_command(left: str, right: str, as_json: bool) -> None:
    """Pair two Gamma-bundle points of opposite sorts."""
    value = pair_texts(left, right)
    emit(to_eval_result(value), render(value), as_json)


@cli.group("arith")
def arith() -> None:
    """Integer arithmetic inside Gamma."""


@arith.command("add")
@click.argument("a", type=int)
@click.argument("b", type=int)
@json_option
@handle_errors
def arith_add(a: int, b: int, as_json: bool) -> None:
    result = gamma_add(GammaInt(a), GammaInt(b))
    emit(ArithResult(exponent=result.n, text=str(result)), str(result), as_json)


@arith.command("mul")
@click.argument("a", type=int)
@click.argument("b", type=int)
@json_option
@handle_errors
def arith_mul(a: int, b: int, as_json: bool) -> None:
    """Multiply through the pairing of label-shifted base vectors."""
    result = gamma_mul(GammaInt(a), GammaInt(b))
    emit(ArithResult(exponent=result.n, text=str(result)), str(result), as_json)


@arith.command("suite")
@window_option
@json_option
@handle_errors
def arith_suite(window: int, as_json: bool) -> None:
    emit_report(ring_suite(window), as_json)


@cli.command("transfer-check")
@click.option("--s", "s", type=int, required=True, help="u0 = q^s ug")
@click.option("--t", "t", type=int, required=True, help="v0 = q^t vg")
@window_option
@json_option
@handle_errors
def transfer_check(s: int, t: int, window: int, as_json: bool) -> None:
    """Check that changing representatives is an isomorphism."""
    emit_report(verify_transfer(TransferMap(s, t), window), as_json)


@cli.command("transport-check")
@window_option
@json_option
@handle_errors
def transport_check(window: int, as_json: bool) -> None:
    """Check that renaming the base symbols commutes with the actions and the pairing."""
    emit_report(verify_transport(window), as_json)


@cli.command("psi-check")
@window_option
@click.option("--reduct", is_flag=True, help="Check the structure without its pairing.")
@json_option
@handle_errors
def psi_check(window: int, reduct: bool, as_json: bool) -> None:
    """Clause-by-clause check of the default structure."""
    emit_report(check_psi(default_structure(window), reduct=reduct), as_json)


@cli.command("axioms")
@window_option
@json_option
@handle_errors
def axioms(window: int, as_json: bool) -> None:
    """Verify the pairing postulates on the window."""
    emit_report(check_pairing_axioms(window), as_json)


@cli.command("lang-type")
@click.option("--poly", required=True, help='Polynomial in x1..xn, e.g. "x1*x2 - 1".')
@click.option("--arity", type=click.IntRange(min=1), required=True)
@window_option
@click.option("--cyclic", is_flag=True, help="Also check the cyclic-group axioms on the window.")
@json_option
@handle_errors
def lang_type(poly: str, arity: int, window: int, cyclic: bool, as_json: bool) -> None:
    """Gamma-points of f = 0, their cosets and the bound N_f."""
    result = lang_check(IntPoly.parse(poly, arity), window)
    cyclic_report: Optional[Report] = check_cyclic_axioms(window) if cyclic else None
    if as_json:
        payload = {"lang_type": result.model_dump()}
        if cyclic_report is not None:
            payload["cyclic"] = cyclic_report.model_dump()
        click.echo(json.dumps(payload, indent=2))
    else:
        click.echo(result.render())
        if cyclic_report is not None:
            click.echo(cyclic_report.render())
    passed = result.passed and (cyclic_report is None or cyclic_report.passed)
    sys.exit(0 if passed else 1)


if __name__ == "__main__":
    cli()
