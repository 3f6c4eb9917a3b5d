import logging
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional

import click
import typer
from pydantic import BaseModel, ConfigDict, ValidationError

from configs import MomentParams, PointConfig, moment_config
from constants import crossing_service, file_manager, search_service, verification_service
from crossing import sets_cross
from exact_core import parse_rational
from exceptions import HypercrossError, ParameterError
from gale import gale_moment_2d, gale_moment_d3, gale_transform
from moment import bound_table
from separations import enumerate_separations

logger = logging.getLogger("hypercross")

app = typer.Typer(help="Exact crossing pairs of hyperedges, Gale diagrams and moment-curve bounds.", add_completion=False)


class Command(str, Enum):
    GEN_MOMENT = "gen-moment"
    GALE = "gale"
    SEPARATIONS = "separations"
    CROSS = "cross"
    COUNT = "count"
    BOUNDS = "bounds"
    VERIFY = "verify"
    SEARCH_MIN = "search-min"
    SEARCH_MAX = "search-max"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


class RunSpec(BaseModel):
    """One CLI invocation; equal specs produce byte-identical output."""

    model_config = ConfigDict(frozen=True)

    command: Command
    parameters: Dict[str, str] = {}

    def to_argv(self) -> List[str]:
        argv = [self.command.value]
        for key, value in sorted(self.parameters.items()):
            flag = f"--{key.replace('_', '-')}"
            argv += [flag] if value == "" else [flag, value]
        return argv

    @classmethod
    def from_context(cls, ctx: click.Context) -> "RunSpec":
        parameters = {}
        for param in ctx.command.params:
            value = ctx.params.get(param.name)
            if value is None or value is False:
                continue
            key = param.opts[0].lstrip("-").replace("-", "_")
            parameters[key] = "" if value is True else str(value.value if isinstance(value, Enum) else value)
        return cls(command=Command(ctx.info_name), parameters=parameters)


@contextmanager
def _exit_codes():
    ctx = click.get_current_context(silent=True)
    if ctx is not None and ctx.info_name in {c.value for c in Command}:
        logger.debug(f"▶️ {' '.join(RunSpec.from_context(ctx).to_argv())}")
    try:
        yield
    except HypercrossError as e:
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(code=e.exit_code)
    except ValidationError as e:
        typer.echo(f"error: {e.errors()[0]['msg']}", err=True)
        raise typer.Exit(code=2)


def _parse_ts(text: str):
    try:
        return tuple(parse_rational(part) for part in text.split(","))
    except ValueError as e:
        raise ParameterError(f"--ts: {e}") from e


def _parse_indices(text: str, n: int) -> List[int]:
    try:
        indices = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ParameterError(f"vertex lists look like 1,2,3, got {text!r}") from e
    if any(not 1 <= i <= n for i in indices):
        raise ParameterError(f"vertex indices must lie in 1..{n}, got {text}")
    return [i - 1 for i in indices]


def _moment_params(dim: Optional[int], n: Optional[int], ts: Optional[str]) -> MomentParams:
    if dim is None:
        raise ParameterError("--dim is required without --input")
    if ts is not None:
        return MomentParams(dim=dim, ts=_parse_ts(ts))
    if n is None:
        raise ParameterError("give --n or --ts for a moment-curve configuration")
    return MomentParams.integers(dim, n)


def _config(input_path: Optional[Path], dim: Optional[int], n: Optional[int], ts: Optional[str]) -> PointConfig:
    if input_path is not None:
        return file_manager.load_config(input_path)
    return moment_config(_moment_params(dim, n, ts))


def _emit(text: str, out: Optional[Path]) -> None:
    text = file_manager.write(text, out)
    if text is not None:
        typer.echo(text, nl=False)


InputOpt = typer.Option(None, "--input", help="PointConfig JSON file")
DimOpt = typer.Option(None, "--dim", help="ambient dimension d")
NOpt = typer.Option(None, "--n", help="number of moment-curve points t = 1..n")
TsOpt = typer.Option(None, "--ts", help="moment parameters as a,b,c (p/q allowed)")
OutOpt = typer.Option(None, "--out", help="write to PATH instead of stdout")
FormatOpt = typer.Option(OutputFormat.JSON, "--format")


@app.command("gen-moment")
def gen_moment(
    dim: int = typer.Option(..., "--dim"),
    n: Optional[int] = NOpt,
    ts: Optional[str] = TsOpt,
    out: Optional[Path] = OutOpt,
):
    """Points (t, t^2, ..., t^d) on the moment curve."""
    with _exit_codes():
        config = moment_config(_moment_params(dim, n, ts))
        _emit(file_manager.render_json({"dim": config.dim, "points": [[str(x) for x in p] for p in config.points]}), out)


@app.command("gale")
def gale(
    input_path: Optional[Path] = InputOpt,
    dim: Optional[int] = DimOpt,
    n: Optional[int] = NOpt,
    ts: Optional[str] = TsOpt,
    closed_form: bool = typer.Option(False, "--closed-form", help="moment points only: use the explicit d+3 / 2d basis"),
    out: Optional[Path] = OutOpt,
):
    """Gale diagram of a configuration: one vector per point, from the null space of M(P)."""
    with _exit_codes():
        if closed_form:
            if input_path is not None:
                raise ParameterError("--closed-form applies to moment-curve parameters, not --input")
            params = _moment_params(dim, n, ts)
            diagram = gale_moment_d3(params) if len(params.ts) == params.dim + 3 else gale_moment_2d(params)
        else:
            diagram = gale_transform(_config(input_path, dim, n, ts))
        payload = {"m": diagram.m, "k": diagram.k, "vectors": [[str(x) for x in v] for v in diagram.vectors]}
        _emit(file_manager.render_json(payload), out)


@app.command("separations")
def separations(
    input_path: Optional[Path] = InputOpt,
    dim: Optional[int] = DimOpt,
    n: Optional[int] = NOpt,
    ts: Optional[str] = TsOpt,
    output_format: OutputFormat = FormatOpt,
    out: Optional[Path] = OutOpt,
):
    """Linear separations of a planar (m = d+3) Gale diagram."""
    with _exit_codes():
        found = enumerate_separations(gale_transform(_config(input_path, dim, n, ts)))
        if output_format is OutputFormat.CSV:
            _emit(file_manager.render_csv(file_manager.separations_frame(found)), out)
        else:
            payload = {
                "count": len(found),
                "proper": sum(1 for s in found if s.is_proper),
                "separations": [s.to_external() for s in found],
            }
            _emit(file_manager.render_json(payload), out)


@app.command("cross")
def cross(
    left: str = typer.Option(..., "--left", help="1-based vertices, e.g. 1,3,5"),
    right: str = typer.Option(..., "--right"),
    input_path: Optional[Path] = InputOpt,
    dim: Optional[int] = DimOpt,
    n: Optional[int] = NOpt,
    ts: Optional[str] = TsOpt,
    out: Optional[Path] = OutOpt,
):
    """Do the two simplices cross (relative interiors meet)?"""
    with _exit_codes():
        config = _config(input_path, dim, n, ts)
        u, v = _parse_indices(left, config.n), _parse_indices(right, config.n)
        result = sets_cross(config, u, v)
        payload = {"left": [i + 1 for i in u], "right": [i + 1 for i in v], "cross": result}
        _emit(file_manager.render_json(payload), out)


@app.command("count")
def count(
    input_path: Optional[Path] = InputOpt,
    dim: Optional[int] = DimOpt,
    n: Optional[int] = NOpt,
    ts: Optional[str] = TsOpt,
    witnesses: bool = typer.Option(False, "--witnesses", help="list every crossing pair"),
    workers: Optional[int] = typer.Option(None, "--workers"),
    output_format: OutputFormat = FormatOpt,
    out: Optional[Path] = OutOpt,
):
    """Number of crossing pairs of d-vertex hyperedges."""
    with _exit_codes():
        config = _config(input_path, dim, n, ts)
        report = crossing_service.count(config, keep_witnesses=witnesses, workers=workers)
        if output_format is OutputFormat.CSV:
            _emit(file_manager.render_csv(file_manager.report_frame(report)), out)
        else:
            _emit(file_manager.render_json(report.to_external()), out)


@app.command("bounds")
def bounds(
    d_max: int = typer.Option(..., "--d-max"),
    d_min: int = typer.Option(2, "--d-min"),
    output_format: OutputFormat = FormatOpt,
    out: Optional[Path] = OutOpt,
):
    """Table of c_d^m and the lower and upper bounds per dimension."""
    with _exit_codes():
        rows = bound_table(d_max, d_min=d_min)
        if output_format is OutputFormat.CSV:
            _emit(file_manager.render_csv(file_manager.bounds_frame(rows)), out)
        else:
            _emit(file_manager.render_json([row.model_dump() for row in rows]), out)


@app.command("verify")
def verify(
    d_min: int = typer.Option(2, "--d-min"),
    d_max: int = typer.Option(4, "--d-max"),
    trials: int = typer.Option(25, "--trials"),
    seed: int = typer.Option(42, "--seed"),
    input_path: Optional[Path] = InputOpt,
    out: Optional[Path] = OutOpt,
):
    """Run every consistency check; exit 1 names the failing ones, exit 3 flags degenerate input."""
    with _exit_codes():
        config = file_manager.load_config(input_path) if input_path is not None else None
        report = verification_service.verify(d_min=d_min, d_max=d_max, trials=trials, seed=seed, input_config=config)
        _emit(report.model_dump_json(indent=2) + "\n", out)
    if not report.passed:
        typer.echo(f"failed checks: {', '.join(report.failed_checks)}", err=True)
        raise typer.Exit(code=report.exit_code)


def _search(dim: int, n: int, trials: int, seed: int, objective: str, convex: bool, output_format: OutputFormat, out: Optional[Path]):
    with _exit_codes():
        result = search_service.search(dim, n, trials, seed, objective=objective, convex=convex)
        if output_format is OutputFormat.CSV:
            _emit(file_manager.render_csv(file_manager.search_frame(result)), out)
        else:
            _emit(file_manager.render_json(result.to_external()), out)


@app.command("search-min")
def search_min(
    dim: int = typer.Option(..., "--dim"),
    n: int = typer.Option(..., "--n"),
    trials: int = typer.Option(500, "--trials"),
    seed: int = typer.Option(0, "--seed"),
    output_format: OutputFormat = FormatOpt,
    out: Optional[Path] = OutOpt,
):
    """Seeded random search for a configuration with few crossing pairs."""
    _search(dim, n, trials, seed, "min", False, output_format, out)


@app.command("search-max")
def search_max(
    dim: int = typer.Option(3, "--dim"),
    n: int = typer.Option(6, "--n"),
    trials: int = typer.Option(100, "--trials"),
    seed: int = typer.Option(0, "--seed"),
    convex: bool = typer.Option(False, "--convex", help="sample points in convex position (d = 3 only)"),
    output_format: OutputFormat = FormatOpt,
    out: Optional[Path] = OutOpt,
):
    """Seeded random search for a configuration with many crossing pairs."""
    _search(dim, n, trials, seed, "max", convex, output_format, out)


if __name__ == "__main__":
    app()
