"""Command-line front end.

Every successful command prints one JSON record on stdout::

    {"command": ..., "inputs": {...}, "outputs": {...}, "version": ..., "elapsed_ms": ...}

Table commands accept ``--format csv`` and then write the table as CSV to
stdout and the record to stderr.  Exit codes: 0 ok, 2 input error,
3 tolerance failure.

Usage:
    lutform params --xxz-delta 0.5 --length 100
    lutform formfactor --branch right --particles 2,1 --holes 0,-1 --exponent -0.5
    lutform sumrule --exponent -0.5 --max-m 25
    lutform correlator --operator spin --xxz-delta 0 --length 100 --prefactors c.json
    lutform oracle --suite determinant --seed 1
"""

from __future__ import annotations

import csv
import functools
import io
import json
import math
import sys
import time
from typing import Any

import click

from . import __version__
from .errors import LutformError
from .excitations import Branch, ParticleHoleState, enumerate_states
from .formfactor import formfactor
from .oracle import QuadratureConfig, determinant_suite, enumeration_suite, quadrature_suite
from .params import (KleinSector, LuttingerParameters, OperatorKind, OperatorSpec,
                     exponents_for_operator, params_from_coupling, params_from_xxz)
from .series import (PrefactorSet, asymptotic_correlator, density_correlator_reconstruct,
                     spin_correlator_reconstruct, sumrule_lhs, sumrule_rhs)

__all__ = ["cli", "main"]

EXIT_INPUT = 2
EXIT_TOLERANCE = 3

OPERATOR_CHOICES = {
    "spin": OperatorKind.SPIN_LOWERING,
    "bose": OperatorKind.BOSE_FIELD,
    "density": OperatorKind.DENSITY,
    "fermi-right": OperatorKind.FERMI_FIELD_RIGHT,
    "fermi-left": OperatorKind.FERMI_FIELD_LEFT,
}


def _clean(value: Any) -> Any:
    """Make a payload strict-JSON safe (non-finite floats become null)."""
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, complex):
        return {"re": _clean(value.real), "im": _clean(value.imag)}
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def _dumps(payload: Any) -> str:
    return json.dumps(_clean(payload), allow_nan=False)


class _Run:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.start = time.perf_counter()

    def emit(self, outputs: dict, table: list[dict] | None = None, fmt: str = "json") -> None:
        record = {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": outputs,
            "version": __version__,
            "elapsed_ms": (time.perf_counter() - self.start) * 1e3,
        }
        if fmt == "csv" and table is not None:
            buf = io.StringIO()
            writer = csv.DictWriter(buf, fieldnames=list(table[0]) if table else [],
                                    lineterminator="\n")
            writer.writeheader()
            for row in table:
                writer.writerow({k: ("" if v is None else v) for k, v in _clean(row).items()})
            sys.stdout.write(buf.getvalue())
            click.echo(_dumps(record), err=True)
        else:
            if table is not None:
                record["outputs"] = {**outputs, "table": table}
            click.echo(_dumps(record))


def _guard(fn):
    """Map library input errors to exit code 2."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (LutformError, ValueError, KeyError, OSError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT)

    return wrapper


def _int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def model_options(fn):
    for decorator in reversed([
        click.option("--xxz-delta", type=float, default=None, help="XXZ anisotropy, |delta| < 1."),
        click.option("--coupling", type=float, default=None, help="Density coupling lambda, |lambda| < 1."),
        click.option("--xi", type=float, default=None, help="Luttinger parameter given directly."),
        click.option("--length", type=float, default=1.0, show_default=True, help="Chain length L."),
        click.option("--velocity", type=float, default=1.0, show_default=True,
                     help="Sound velocity for --xxz-delta / --xi."),
    ]):
        fn = decorator(fn)
    return fn


def _model(xxz_delta, coupling, xi, length, velocity, damping=0.0, allow_xi=True):
    given = [name for name, v in (("--xxz-delta", xxz_delta), ("--coupling", coupling),
                                  ("--xi", xi if allow_xi else None)) if v is not None]
    if len(given) != 1:
        allowed = "--xxz-delta, --coupling" + (", --xi" if allow_xi else "")
        raise ValueError(f"give exactly one of {allowed} (got {len(given)})")
    if xxz_delta is not None:
        return params_from_xxz(xxz_delta, length, velocity, damping)
    if coupling is not None:
        return params_from_coupling(coupling, length, damping)
    return LuttingerParameters(xi, velocity, length, damping)


def _params_record(p: LuttingerParameters) -> dict:
    return {"xi": p.xi, "u": p.u, "length": p.length, "damping": p.damping}


def _exponent_table(xi: float) -> list[dict]:
    rows = []
    for name, kind in OPERATOR_CHOICES.items():
        sectors = list(KleinSector) if kind.is_fermi else [None]
        for sector in sectors:
            pair = exponents_for_operator(OperatorSpec(kind), xi, sector)
            rows.append({"operator": name, "klein_sector": sector.value if sector else None,
                         "a": pair.a, "c": pair.c})
    return rows


@click.group()
@click.version_option(__version__, prog_name="lutform")
def cli():
    """Particle-hole formfactors and sum rules of Luttinger liquids."""


@cli.command("params")
@model_options
@click.option("--damping", type=float, default=0.0, show_default=True)
@_guard
def cmd_params(xxz_delta, coupling, xi, length, velocity, damping):
    """Luttinger parameters and the exponent table of every operator."""
    run = _Run("params", {"xxz_delta": xxz_delta, "coupling": coupling, "length": length,
                          "velocity": velocity, "damping": damping})
    p = _model(xxz_delta, coupling, None, length, velocity, damping, allow_xi=False)
    run.emit({"parameters": _params_record(p), "exponents": _exponent_table(p.xi)})


@cli.command("formfactor")
@click.option("--branch", type=click.Choice([b.value for b in Branch]), default="right",
              show_default=True)
@click.option("--particles", default="", help="Comma-separated particle momenta, e.g. 2,1.")
@click.option("--holes", default="", help="Comma-separated hole momenta, e.g. 0,-1.")
@click.option("--exponent", type=float, default=None, help="Exponent a (right) or c (left).")
@click.option("--operator", type=click.Choice(list(OPERATOR_CHOICES)), default=None)
@click.option("--klein-sector", type=click.Choice([s.value for s in KleinSector]), default=None)
@model_options
@_guard
def cmd_formfactor(branch, particles, holes, exponent, operator, klein_sector,
                   xxz_delta, coupling, xi, length, velocity):
    """Formfactor of one particle-hole state."""
    run = _Run("formfactor", {"branch": branch, "particles": particles, "holes": holes,
                              "exponent": exponent, "operator": operator,
                              "klein_sector": klein_sector, "xxz_delta": xxz_delta,
                              "coupling": coupling, "xi": xi})
    state = ParticleHoleState(Branch(branch), _int_list(particles), _int_list(holes))
    if (exponent is None) == (operator is None):
        raise ValueError("give exactly one of --exponent or --operator")
    if operator is not None:
        p = _model(xxz_delta, coupling, xi, length, velocity)
        pair = exponents_for_operator(OperatorSpec(OPERATOR_CHOICES[operator]), p.xi, klein_sector)
        exponent = pair.a if state.branch is Branch.RIGHT else pair.c
    f = formfactor(state, exponent)
    run.emit({"state": state.to_record(), "exponent": exponent, "F": f.value,
              "F_squared": f.squared, "sign": f.sign,
              "log_abs_F": f.log_magnitude if f.sign else None})


@cli.command("sumrule")
@click.option("--exponent", type=float, required=True)
@click.option("--max-m", type=click.IntRange(min=0), default=10, show_default=True)
@click.option("--branch", type=click.Choice(["right", "left", "both"]), default="right",
              show_default=True)
@click.option("--tolerance", type=float, default=1e-10, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json",
              show_default=True)
@_guard
def cmd_sumrule(exponent, max_m, branch, tolerance, fmt):
    """Compare sum of |F|^2 at each momentum with its Pochhammer coefficient."""
    run = _Run("sumrule", {"exponent": exponent, "max_m": max_m, "branch": branch,
                           "tolerance": tolerance})
    branches = list(Branch) if branch == "both" else [Branch(branch)]
    rows = []
    for b in branches:
        for m in range(max_m + 1):
            lhs = sumrule_lhs(exponent, m, b)
            rhs = sumrule_rhs(exponent, m)
            err = abs(lhs - rhs) / rhs if rhs else abs(lhs)
            rows.append({"branch": b.value, "m": m, "states": len(enumerate_states(b, m)),
                         "lhs": lhs, "rhs": rhs, "rel_error": err})
    worst = max(r["rel_error"] for r in rows)
    passed = worst <= tolerance
    run.emit({"max_rel_error": worst, "passed": passed}, rows, fmt)
    click.echo(f"sum rule a={exponent}: max rel error {worst:.3e} "
               f"({'PASS' if passed else 'FAIL'})", err=True)
    if not passed:
        sys.exit(EXIT_TOLERANCE)


@cli.command("correlator")
@click.option("--operator", type=click.Choice(list(OPERATOR_CHOICES)), default="spin",
              show_default=True)
@click.option("--x-over-L", "x_over_l", default="0.25,0.3333333333333333,0.5", show_default=True,
              help="Comma-separated positions x/L in (0, 1).")
@click.option("--damping", type=float, default=0.1, show_default=True)
@click.option("--cutoff", type=click.IntRange(min=0), default=30, show_default=True)
@click.option("--prefactors", "prefactor_file", type=click.Path(dir_okay=False), required=True,
              help='JSON file {"operator", "p_F", "rho0", "values": {"0": C0, ...}}.')
@click.option("--lattice", is_flag=True, help="Apply (-1)^x at integer x (spin only).")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json",
              show_default=True)
@model_options
@_guard
def cmd_correlator(operator, x_over_l, damping, cutoff, prefactor_file, lattice, fmt,
                   xxz_delta, coupling, xi, length, velocity):
    """Correlator from the formfactor series vs closed form and asymptotics."""
    run = _Run("correlator", {"operator": operator, "x_over_L": x_over_l, "damping": damping,
                              "cutoff": cutoff, "prefactors": prefactor_file,
                              "lattice": lattice, "xxz_delta": xxz_delta,
                              "coupling": coupling, "xi": xi, "length": length})
    p = _model(xxz_delta, coupling, xi, length, velocity, damping)
    prefactors = PrefactorSet.load(prefactor_file)
    spec = OperatorSpec(OPERATOR_CHOICES[operator])
    rows = []
    for frac in _float_list(x_over_l):
        if not 0 < frac < 1:
            raise ValueError(f"x/L must lie in (0, 1), got {frac}")
        x = frac * p.length
        row = {"x_over_L": frac, "x": x,
               "asymptotic": asymptotic_correlator(spec, prefactors, x, p)}
        result = None
        if spec.kind in (OperatorKind.SPIN_LOWERING, OperatorKind.BOSE_FIELD):
            result = spin_correlator_reconstruct(p, prefactors, x, damping, cutoff,
                                                 lattice=lattice)
        elif spec.kind is OperatorKind.DENSITY:
            result = density_correlator_reconstruct(p, prefactors, x, damping, cutoff)
        if result is not None:
            row.update(series=result.partial_sum.real, target=result.target.real,
                       abs_error=result.abs_error, rel_error=result.rel_error,
                       tail_bound=result.tail_bound, within_bound=result.within_tail_bound,
                       extrapolated=result.extrapolated.real,
                       extrapolated_rel_error=result.extrapolated_rel_error)
        else:
            row.update(series=None, target=None, abs_error=None, rel_error=None,
                       tail_bound=None, within_bound=None, extrapolated=None,
                       extrapolated_rel_error=None)
        rows.append(row)
    failed = [r for r in rows if r["within_bound"] is False]
    run.emit({"parameters": _params_record(p), "passed": not failed}, rows, fmt)
    if failed:
        click.echo(f"{len(failed)} position(s) outside the tail bound", err=True)
        sys.exit(EXIT_TOLERANCE)


@cli.command("oracle")
@click.option("--suite", type=click.Choice(["quadrature", "determinant", "enumeration"]),
              required=True)
@click.option("--seed", type=int, default=0, show_default=True,
              help="RNG seed for the determinant suite.")
@click.option("--count", type=click.IntRange(min=1), default=1000, show_default=True)
@click.option("--tolerance", type=float, default=None,
              help="Override the suite tolerance (1e-7 quadrature, 1e-11 determinant).")
@_guard
def cmd_oracle(suite, seed, count, tolerance):
    """Run an independent cross-check suite."""
    run = _Run("oracle", {"suite": suite, "seed": seed, "count": count, "tolerance": tolerance})
    if suite == "quadrature":
        cases = quadrature_suite(tol=tolerance or 1e-7, cfg=QuadratureConfig())
    elif suite == "determinant":
        cases = determinant_suite(seed, count, tol=tolerance or 1e-11)
    else:
        cases = enumeration_suite()
    for case in cases:
        click.echo(f"{'PASS' if case['passed'] else 'FAIL'} {case['case']}", err=True)
    n_failed = sum(not c["passed"] for c in cases)
    run.emit({"cases": cases, "n_cases": len(cases), "n_failed": n_failed,
              "passed": n_failed == 0})
    if n_failed:
        sys.exit(EXIT_TOLERANCE)


def main(argv=None):
    cli.main(args=argv, prog_name="lutform")


if __name__ == "__main__":
    main()
