"""Command-line interface.

One executable with a subcommand per operation family: concrete norms
(`norm`), optimal sequence functionals (`xu`, `xl`, `phin`), decomposability
machinery (`ds`, `estimate`, `indices`, `fs`, `mult`), interpolation
(`kfun`, `rs-test`, `orbit`), and the harness (`verify`, `report`).

Inputs are JSON, inline or `@file`; results print as canonical JSON.  Exit
codes: 0 on success (all checks passing for `verify`), 1 on a failed check,
2 on usage errors.
"""

from __future__ import annotations

import importlib.resources
import json
import math
import sys

import click
import jsonschema
import numpy as np

from .config import RunConfig
from .errors import SeqlatError
from .decomp import (
    decomposability_constant,
    estimate_constant,
    estimate_product_infimum,
    grobler_dodds,
    multiplicator_check,
)
from .interpolation import CoupleSpec, k_curve, k_functional, k_ratio_test, orbit_operator
from .norms import function_norm, seq_norm
from .optimal import (
    OptimConfig,
    disjoint_infimum,
    lower_sequence_norm,
    upper_sequence_norm,
)
from .rearrangement import StepFunction
from .report import canonical_json, emit_report, plot_kcurve, write_csv
from .spaces import LatticeSpec
from .verify import run_verification_suite


def _load_json(text: str):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return json.load(fh)
    return json.loads(text)


def _schema(name: str):
    ref = importlib.resources.files("seqlat") / "schemas" / f"{name}.schema.json"
    return json.loads(ref.read_text())


def _validated(text: str, schema_name: str):
    obj = _load_json(text)
    try:
        jsonschema.validate(obj, _schema(schema_name))
    except jsonschema.ValidationError as exc:
        raise click.UsageError(f"invalid {schema_name}: {exc.message}")
    return obj


def _spec(text: str) -> LatticeSpec:
    return LatticeSpec.from_json(_validated(text, "lattice_spec"))


def _couple(text: str) -> CoupleSpec:
    return CoupleSpec.from_json(_validated(text, "couple_spec"))


def _vector(text: str) -> np.ndarray:
    obj = _load_json(text)
    if not isinstance(obj, list):
        raise click.UsageError("expected a JSON list of numbers")
    return np.asarray(obj, dtype=float)


def _element(text: str):
    """Step-function object or plain vector, by payload shape."""
    obj = _load_json(text)
    if isinstance(obj, dict):
        jsonschema.validate(obj, _schema("step_function"))
        return StepFunction.from_json(obj)
    return np.asarray(obj, dtype=float)


def _pnum(value: str) -> float:
    if value.lower() in ("inf", "infinity"):
        return math.inf
    return float(value)


def _emit(payload, out=None):
    text = canonical_json(payload)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _optim(cap, starts, seed, max_parts) -> OptimConfig:
    return OptimConfig(n_cap=cap, starts=starts, seed=seed, max_parts=max_parts)


class _Group(click.Group):
    """Map library errors to clean CLI failures instead of tracebacks."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except SeqlatError as exc:
            raise click.ClickException(str(exc))


@click.group(cls=_Group)
def main():
    """Desk-scale numerics for Banach sequence lattices."""


@main.command()
@click.option("--spec", "spec_text", required=True, help="lattice spec JSON")
@click.option("--out", default=None, help="write JSON here instead of stdout")
@click.argument("element")
def norm(spec_text, out, element):
    """Norm of ELEMENT (JSON vector, or step-function object) in the host."""
    spec = _spec(spec_text)
    x = _element(element)
    value = function_norm(x, spec) if isinstance(x, StepFunction) else seq_norm(x, spec)
    _emit({"spec": spec.to_json(), "value": value}, out)


def _functional_command(fn, name, doc):
    @main.command(name=name, help=doc)
    @click.option("--spec", "spec_text", required=True, help="lattice spec JSON")
    @click.option("--cap", default=8, show_default=True, help="dimension cap for optimization hosts")
    @click.option("--starts", default=16, show_default=True)
    @click.option("--seed", default=0, show_default=True)
    @click.option("--max-parts", default=3, show_default=True)
    @click.option("--out", default=None)
    @click.argument("vector")
    def cmd(spec_text, cap, starts, seed, max_parts, out, vector):
        spec = _spec(spec_text)
        a = _vector(vector)
        res = fn(a, spec, _optim(cap, starts, seed, max_parts))
        _emit({"spec": spec.to_json(), "vector": a.tolist(), **res.to_json()}, out)

    return cmd


_functional_command(
    upper_sequence_norm, "xu",
    "Optimal upper functional: sup over disjoint unit families.")
_functional_command(
    lower_sequence_norm, "xl",
    "Optimal lower functional: decomposition infimum of disjoint infima.")
_functional_command(
    disjoint_infimum, "phin",
    "Disjoint infimum: inf over disjoint unit families.")


@main.command()
@click.option("--x-spec", required=True, help="domain-side lattice spec JSON")
@click.option("--y-spec", required=True, help="target-side lattice spec JSON")
@click.option("--s", "s_text", required=True, help="summability exponent, number or 'inf'")
@click.option("--n-max", default=6, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--samples", default=8, show_default=True, help="random draws per candidate set")
@click.option("--csv", "csv_path", default=None, help="write the (n, constant) growth table here")
@click.option("--out", default=None)
def ds(x_spec, y_spec, s_text, n_max, seed, samples, csv_path, out):
    """Empirical relative s-decomposability constant of a host pair."""
    rep = decomposability_constant(
        _spec(x_spec), _spec(y_spec), _pnum(s_text),
        n_max=n_max, seed=seed, extra_samples=samples,
    )
    if csv_path:
        write_csv(["n", "constant"], rep.per_n, csv_path)
    _emit(rep.to_json(), out)


@main.command()
@click.option("--spec", "spec_text", required=True)
@click.option("--p", "p_text", required=True, help="estimate exponent, number or 'inf'")
@click.option("--direction", type=click.Choice(["upper", "lower"]), required=True)
@click.option("--n-max", default=16, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--samples", default=8, show_default=True, help="random draws per candidate set")
@click.option("--csv", "csv_path", default=None, help="write the (n, constant) growth table here")
@click.option("--out", default=None)
def estimate(spec_text, p_text, direction, n_max, seed, samples, csv_path, out):
    """Empirical upper/lower p-estimate constant of one host."""
    rep = estimate_constant(_spec(spec_text), _pnum(p_text), direction,
                            n_max=n_max, seed=seed, extra_samples=samples)
    if csv_path:
        write_csv(["n", "constant"], rep.per_n, csv_path)
    _emit(rep.to_json(), out)


@main.command()
@click.option("--spec", "spec_text", required=True)
@click.option("--out", default=None)
def indices(spec_text, out):
    """Upper/lower estimate indices of one host."""
    _emit(grobler_dodds(_spec(spec_text)).to_json(), out)


@main.command()
@click.option("--x-spec", required=True)
@click.option("--y-spec", required=True)
@click.option("--s", "s_text", required=True)
@click.option("--n-max", default=8, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", default=None)
def fs(x_spec, y_spec, s_text, n_max, seed, out):
    """Infimum of estimate-constant products on the exponent constraint line."""
    rep = estimate_product_infimum(
        _spec(x_spec), _spec(y_spec), _pnum(s_text), n_max=n_max, seed=seed,
    )
    _emit(rep, out)


@main.command()
@click.option("--x-spec", required=True)
@click.option("--y-spec", required=True)
@click.option("--s", "s_text", required=True)
@click.option("--samples", default=20, show_default=True)
@click.option("--n", default=5, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", default=None)
def mult(x_spec, y_spec, s_text, samples, n, seed, out):
    """Sample the coordinate-multiplier inequality between the functionals."""
    rep = multiplicator_check(
        _spec(x_spec), _spec(y_spec), _pnum(s_text),
        samples=samples, n=n, seed=seed,
    )
    _emit(rep, out)


@main.command()
@click.option("--couple", "couple_text", required=True, help="couple spec JSON")
@click.option("--t", "t_text", default=None, help="single parameter value")
@click.option("--t-min", default=1e-3, show_default=True)
@click.option("--t-max", default=1e3, show_default=True)
@click.option("--points", default=61, show_default=True)
@click.option("--csv", "csv_path", default=None, help="write the curve as CSV here")
@click.option("--plot", "plot_path", default=None, help="render the curve as SVG here")
@click.option("--out", default=None)
@click.argument("element")
def kfun(couple_text, t_text, t_min, t_max, points, csv_path, plot_path, out, element):
    """K-functional of ELEMENT: one value with --t, else a log-spaced curve."""
    couple = _couple(couple_text)
    x = _element(element)
    if couple.kind == "l1_linf" and not isinstance(x, StepFunction):
        raise click.UsageError("the l1_linf couple takes a step-function element")
    if t_text is not None:
        _emit({"t": float(t_text), "value": k_functional(float(t_text), x, couple)}, out)
        return
    curve = k_curve(x, couple, t_min=t_min, t_max=t_max, points=points)
    payload = curve.to_json()
    payload["shape"] = curve.check_shape()
    if csv_path:
        write_csv(["t", "value"], list(zip(payload["ts"], payload["values"])), csv_path)
    if plot_path:
        plot_kcurve(payload, plot_path)
    _emit(payload, out)


@main.command("rs-test")
@click.option("--cx", required=True, help="couple spec JSON for the domain element")
@click.option("--cy", required=True, help="couple spec JSON for the target element")
@click.option("--s", "s_text", required=True)
@click.option("--t-min", default=1e-6, show_default=True)
@click.option("--t-max", default=1e6, show_default=True)
@click.option("--points", default=97, show_default=True)
@click.option("--out", default=None)
@click.argument("x_element")
@click.argument("y_element")
def rs_test(cx, cy, s_text, t_min, t_max, points, out, x_element, y_element):
    """Summability test for the ratio of the two K-functionals."""
    ccx, ccy = _couple(cx), _couple(cy)
    x = _element(x_element)
    y = _element(y_element)
    rep = k_ratio_test(x, y, ccx, ccy, _pnum(s_text),
                       t_min=t_min, t_max=t_max, points=points)
    _emit(rep, out)


@main.command()
@click.option("--out", default=None)
@click.argument("x_vector")
@click.argument("y_vector")
def orbit(out, x_vector, y_vector):
    """Construct T with Tx = y, contractive on both endpoint norms."""
    x = _vector(x_vector)
    y = _vector(y_vector)
    T = orbit_operator(x, y)
    _emit({"matrix": [list(map(float, row)) for row in T],
           "shape": list(T.shape)}, out)


@main.command()
@click.option("--seed", default=0, show_default=True)
@click.option("--select", default=None, help="comma-separated check ids")
@click.option("--config", "config_path", default=None, help="RunConfig JSON path")
@click.option("--json", "json_path", default=None, help="write the suite result here")
@click.option("--quiet", is_flag=True, default=False)
def verify(seed, select, config_path, json_path, quiet):
    """Run the verification suite; nonzero exit on any failing check."""
    cfg = RunConfig.load(config_path)
    cfg.seed = seed
    selection = [s.strip() for s in select.split(",")] if select else None
    try:
        result = run_verification_suite(cfg, selection)
    except KeyError as exc:
        raise click.UsageError(str(exc))
    if not quiet:
        for c in result.checks:
            click.echo(f"{c.status.upper():12s} {c.id}")
        counts = result.counts
        click.echo(f"# pass={counts['pass']} fail={counts['fail']} "
                   f"inconclusive={counts['inconclusive']}")
    text = canonical_json(result.to_json())
    if json_path:
        with open(json_path, "w") as fh:
            fh.write(text)
    elif quiet:
        click.echo(text, nl=False)
    sys.exit(result.exit_code)


@main.command()
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "svg"]),
              default="csv", show_default=True)
@click.option("--out", required=True, help="output path without extension")
@click.argument("results")
def report(fmt, out, results):
    """Re-emit a stored result JSON as JSON/CSV, with SVG figures for curves."""
    obj = _load_json(results if results.startswith("@") else "@" + results)
    written = emit_report(obj, fmt, out)
    for path in written:
        click.echo(path)


if __name__ == "__main__":
    main()
