"""
CLI interface for the curvalpha curvature toolkit
"""

import json
import logging
import sys
from fractions import Fraction
from typing import Any, List, NoReturn, Optional

import click

from .alpha import find_alpha0
from .config import Settings, load_settings
from .core import (
    Beta,
    ConfigurationError,
    CurvatureError,
    DegeneratePlaneError,
    ReportValidationError,
    TorusGeometry,
    WaveVector,
    as_fraction,
)
from .curvature import arnold_cos_cos, cos_cos_bracket, sectional_cos_cos_normalized
from .polynomial import render, sign
from .report import alpha0_report, fingerprint, scan_csv, scan_jsonl, sweep_csv
from .survey import ScanEngine, summarize, sweep
from .verification import run_verification

EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3


class WaveVectorParam(click.ParamType):
    name = "a,b"

    def convert(self, value: Any, param: Optional[click.Parameter], ctx: Optional[click.Context]) -> WaveVector:
        if isinstance(value, WaveVector):
            return value
        try:
            return WaveVector.parse(value)
        except (TypeError, ValueError) as e:
            self.fail(str(e), param, ctx)


class RationalParam(click.ParamType):
    name = "rational"

    def convert(self, value: Any, param: Optional[click.Parameter], ctx: Optional[click.Context]) -> Fraction:
        if isinstance(value, Fraction):
            return value
        try:
            return as_fraction(str(value).strip())
        except (TypeError, ValueError) as e:
            self.fail(str(e), param, ctx)


class EpsListParam(click.ParamType):
    name = "a,b;c,d"

    def convert(self, value: Any, param: Optional[click.Parameter], ctx: Optional[click.Context]) -> List[WaveVector]:
        if isinstance(value, list):
            return value
        parts = str(value).split(";")
        if any(not p.strip() for p in parts):
            self.fail(f"empty entry in eps list {value!r}", param, ctx)
        try:
            vectors = [WaveVector.parse(p) for p in parts]
        except ValueError as e:
            self.fail(str(e), param, ctx)
        if any(v.is_zero for v in vectors):
            self.fail("eps directions must be nonzero", param, ctx)
        return vectors


WAVE_VECTOR = WaveVectorParam()
RATIONAL = RationalParam()
EPS_LIST = EpsListParam()


def _abort(message: str, code: int) -> NoReturn:
    click.echo(f"❌ Error: {message}", err=True)
    sys.exit(code)


def _settings(ctx: click.Context) -> Settings:
    return ctx.obj["settings"]


def _fmt(value: Fraction, exact: bool, digits: int) -> str:
    return str(value) if exact else render(value, digits)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", newline="") as f:
            f.write(text)
    else:
        click.echo(text, nl=False)


@click.group()
@click.version_option(version="1.0.0")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), help="YAML settings file")
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for debug output")
@click.pass_context
def main(ctx: click.Context, config_path: Optional[str], verbose: int):
    """curvalpha - exact sectional curvature of the H^1 metric on the torus"""
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )
    try:
        settings = load_settings(config_path)
    except ConfigurationError as e:
        _abort(str(e), EXIT_USAGE)
    ctx.ensure_object(dict)
    ctx.obj["settings"] = settings


@main.command()
@click.option("--k", "k", type=WAVE_VECTOR, required=True, help="First wave vector")
@click.option("--l", "l", type=WAVE_VECTOR, required=True, help="Second wave vector")
@click.option("--alpha", type=RATIONAL, default="0", show_default=True, help="alpha, rational or decimal")
@click.option("--area", type=RATIONAL, default=None, help="Torus area S")
@click.option("--exact", is_flag=True, help="Print exact rationals")
@click.pass_context
def curvature(ctx: click.Context, k: WaveVector, l: WaveVector, alpha: Fraction, area: Optional[Fraction], exact: bool):
    """Sectional curvature of the cos(k,x)/cos(l,x) plane"""
    settings = _settings(ctx)
    digits = settings.alpha_digits
    try:
        geom = TorusGeometry(area if area is not None else settings.area_fraction)
        beta = Beta.from_alpha(alpha)
        result = sectional_cos_cos_normalized(k, l, beta, geom)
        click.echo(f"raw: {_fmt(result.raw, exact, digits)}")
        click.echo(f"normalized: {_fmt(result.normalized, exact, digits)}")
        click.echo(f"bracket_sign: {sign(cos_cos_bracket(k, l, beta))}")
        if beta.value == 0:
            click.echo(f"arnold_l2: {_fmt(arnold_cos_cos(k, l, geom), exact, digits)}")
    except DegeneratePlaneError as e:
        _abort(str(e), EXIT_DEGENERATE)
    except (CurvatureError, ValueError, TypeError) as e:
        _abort(str(e), EXIT_USAGE)


@main.command("sweep")
@click.option("--k", "k", type=WAVE_VECTOR, required=True, help="First wave vector")
@click.option("--l", "l", type=WAVE_VECTOR, required=True, help="Second wave vector")
@click.option("--alpha-min", type=RATIONAL, default="0", show_default=True)
@click.option("--alpha-max", type=RATIONAL, default="1", show_default=True)
@click.option("--steps", type=int, default=200, show_default=True, help="Grid points, at least 2")
@click.option("--area", type=RATIONAL, default=None, help="Torus area S")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None, help="Write CSV here")
@click.pass_context
def sweep_command(
    ctx: click.Context,
    k: WaveVector,
    l: WaveVector,
    alpha_min: Fraction,
    alpha_max: Fraction,
    steps: int,
    area: Optional[Fraction],
    out: Optional[str],
):
    """Curvature along a rational alpha grid, as CSV"""
    settings = _settings(ctx)
    try:
        geom = TorusGeometry(area if area is not None else settings.area_fraction)
        rows = sweep(k, l, alpha_min, alpha_max, steps, geom)
    except DegeneratePlaneError as e:
        _abort(str(e), EXIT_DEGENERATE)
    except (CurvatureError, ValueError, TypeError) as e:
        _abort(str(e), EXIT_USAGE)
    _emit(sweep_csv(rows, settings.alpha_digits), out)


@main.command()
@click.option("--k", "k", type=WAVE_VECTOR, required=True, help="First wave vector")
@click.option("--l", "l", type=WAVE_VECTOR, required=True, help="Second wave vector")
@click.option("--cap", type=RATIONAL, default=None, help="Compare alpha0 against this bound (default 1)")
@click.pass_context
def alpha0(ctx: click.Context, k: WaveVector, l: WaveVector, cap: Optional[Fraction]):
    """Threshold alpha0 beyond which the curvature stays positive, as JSON"""
    settings = _settings(ctx)
    cap = cap if cap is not None else settings.alpha_cap_fraction
    if cap <= 0:
        _abort(f"cap must be positive, got {cap}", EXIT_USAGE)
    try:
        result = find_alpha0(k, l, tolerance=settings.beta_tolerance, digits=settings.alpha_digits)
        report = alpha0_report(result, cap, settings.alpha_digits)
    except DegeneratePlaneError as e:
        _abort(str(e), EXIT_DEGENERATE)
    except ReportValidationError as e:
        _abort(str(e), EXIT_FAILURE)
    except (CurvatureError, ValueError) as e:
        _abort(str(e), EXIT_USAGE)
    click.echo(json.dumps(report, indent=2))


@main.command()
@click.option("--kmin", type=int, default=1, show_default=True, help="Lower bound on k components")
@click.option("--kmax", type=int, default=20, show_default=True, help="Upper bound on k components")
@click.option("--eps", "eps_list", type=EPS_LIST, default="1,0;0,1;1,1", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["jsonl", "csv"]), default="jsonl", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None, help="Write records here")
@click.option("--cap", type=RATIONAL, default=None, help="alpha0 bound for the summary (default 1)")
@click.option("--threads", type=int, default=None, help="Worker threads (overrides CURVALPHA_THREADS)")
@click.pass_context
def scan(
    ctx: click.Context,
    kmin: int,
    kmax: int,
    eps_list: List[WaveVector],
    fmt: str,
    out: Optional[str],
    cap: Optional[Fraction],
    threads: Optional[int],
):
    """Threshold search over a box of wave vectors, l = k + eps"""
    settings = _settings(ctx)
    cap = cap if cap is not None else settings.alpha_cap_fraction
    try:
        engine = ScanEngine(
            threads=threads if threads is not None else settings.threads,
            tolerance=settings.beta_tolerance,
            digits=settings.alpha_digits,
            alpha_cap=cap,
        )
        records = engine.run(kmin, kmax, eps_list)
        text = scan_csv(records) if fmt == "csv" else scan_jsonl(records)
    except ReportValidationError as e:
        _abort(str(e), EXIT_FAILURE)
    except (CurvatureError, ValueError) as e:
        _abort(str(e), EXIT_USAGE)

    summary = json.dumps({"summary": summarize(records).to_dict(fingerprint(text))})
    if fmt == "csv":
        _emit(text, out)
        click.echo(summary, err=True)
    else:
        _emit(text + summary + "\n", out)


@main.command()
@click.option("--seed", type=int, default=None, help="Random seed (default 0)")
@click.option("--cases", type=int, default=None, help="Cases per check (default 200)")
@click.option("--component-bound", type=int, default=None, help="Bound on random components (default 12)")
@click.pass_context
def verify(ctx: click.Context, seed: Optional[int], cases: Optional[int], component_bound: Optional[int]):
    """Run the exact invariant suite"""
    settings = _settings(ctx)
    seed = settings.seed if seed is None else seed
    cases = settings.cases if cases is None else cases
    bound = settings.component_bound if component_bound is None else component_bound
    if cases < 1:
        raise click.BadParameter("no cases", param_hint="--cases")
    if bound < 1:
        raise click.BadParameter("must be positive", param_hint="--component-bound")

    report = run_verification(seed=seed, cases=cases, component_bound=bound)
    lines = [f"Running {len(report.checks)} checks, seed {seed}, {cases} cases each..."]
    for check in report.checks:
        if check.passed:
            lines.append(f"✅ {check.name} ({check.cases} cases)")
        else:
            lines.append(f"❌ {check.name}: {check.failure}")
    lines.append(f"route ratio (r-sum / closed form): {report.constant('route ratio')}")
    lines.append(f"kappa (normalized / L2 oracle at alpha = 0): {report.constant('l2 constant')}")
    printed = report.printed_formula
    lines.append(
        f"printed curvature coefficient: agrees with r_coeff in {printed.agreements}/{printed.cases} cases, "
        f"constant ratio: {printed.constant_ratio if printed.constant_ratio is not None else 'none'}, "
        f"sign flips: {printed.sign_flips}"
    )
    expansion = report.expansion
    lines.append(f"leading eps^2 terms for k={expansion.k}, eps={expansion.eps}:")
    lines.append("  b_n  computed (|eps|^2, (k,eps)^2)  printed  match")
    for match in expansion.match_report:
        computed = f"({match.computed[0]}, {match.computed[1]})"
        claimed = f"({match.claimed[0]}, {match.claimed[1]})"
        lines.append(f"  b{match.index}   {computed:<30} {claimed:<12} {'yes' if match.matches else 'no'}")
    text = "\n".join(lines) + "\n"
    click.echo(text, nl=False)
    click.echo(f"fingerprint: {fingerprint(text)}")

    passed = sum(1 for check in report.checks if check.passed)
    click.echo(f"Results: {passed}/{len(report.checks)} checks passed")
    if not report.passed:
        sys.exit(EXIT_FAILURE)


if __name__ == "__main__":
    main()
