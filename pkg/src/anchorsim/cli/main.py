# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
"""
Command line entry point.

Every subcommand builds an ExperimentConfig from its flags and hands it to
``ensemble.run``. Usage errors exit with code 2; failures of an operation exit
with code 1 after printing ``error=<ErrorClass> reason=<message>`` on stderr.
"""
import functools
from typing import Any, Dict, Optional

import click
import yaml
from pydantic import ValidationError

from anchorsim import config as settings
from anchorsim import logger
from anchorsim.cli.ensemble import run
from anchorsim.cli.errors import InvalidCombinationError
from anchorsim.cli.schemas import ExperimentConfig, PercolationSettings
from anchorsim.errors import AnchorsimError

log = logger.get_logger(__name__)

FAMILIES = ["lattice", "tree", "rooted", "binary-rooted", "lamplighter"]


def _one_line(error: Exception) -> str:
    return " ".join(str(error).split())


def family_spec(
    family: Optional[str], d: Optional[int], b: Optional[int], group: Optional[str]
) -> Dict[str, Any]:
    """Oracle spec for the ``--family`` flags (empty when no family is given)."""
    if family is None:
        return {}
    if family in ("lattice", "lamplighter") and d is None:
        raise click.UsageError(f"--family {family} needs --d")
    if family in ("tree", "rooted") and b is None:
        raise click.UsageError(f"--family {family} needs --b")
    if family == "lattice":
        return {"family": "lattice", "d": d}
    if family in ("tree", "rooted"):
        return {"family": family, "b": b}
    if family == "lamplighter":
        return {"family": "lamplighter", "base": {"family": "lattice", "d": d}, "group": group}
    return {"family": family}


def family_options(default: Optional[str] = None):
    def decorator(f):
        @click.option(
            "--family",
            type=click.Choice(FAMILIES),
            default=default,
            show_default=True,
            help="Graph family.",
        )
        @click.option("--d", type=click.IntRange(min=1), help="Lattice dimension (Z^d base).")
        @click.option("--b", type=click.IntRange(min=1), help="Branching number of the tree.")
        @click.option(
            "--F",
            "group",
            default="z2",
            show_default=True,
            help="Lamp group: z<k> or a group table file.",
        )
        @functools.wraps(f)
        def wrapper(*args, family, d, b, group, **kwargs):
            return f(*args, family_spec=family_spec(family, d, b, group), **kwargs)

        return wrapper

    return decorator


def output_options(f):
    """``--seed``, ``--out`` and ``--format`` after the subcommand override the global ones."""

    @click.option("--seed", "sub_seed", type=click.IntRange(0, 2**64 - 1), help="Master seed.")
    @click.option("--out", "sub_out", help="Output path, '-' for stdout.")
    @click.option("--format", "sub_fmt", type=click.Choice(["json", "csv"]))
    @functools.wraps(f)
    def wrapper(*args, sub_seed, sub_out, sub_fmt, **kwargs):
        obj = click.get_current_context().obj
        for key, value in (("seed", sub_seed), ("out", sub_out), ("format", sub_fmt)):
            if value is not None:
                obj[key] = value
        return f(*args, **kwargs)

    return wrapper


_boundary_mode = click.option(
    "--mode", type=click.Choice(["edge", "vertex"]), default="edge", show_default=True
)
_percolation_mode = click.option(
    "--mode", type=click.Choice(["bond", "site"]), default="bond", show_default=True
)


def _execute(ctx: click.Context, subcommand: str, **fields) -> None:
    obj = ctx.obj
    try:
        experiment = ExperimentConfig(
            subcommand=subcommand, seed=obj["seed"], format=obj["format"], out=obj["out"], **fields
        )
    except ValidationError as e:
        raise click.UsageError(_one_line(e))
    _dispatch(ctx, experiment)


def _dispatch(ctx: click.Context, experiment: ExperimentConfig) -> None:
    try:
        run(experiment, ctx.obj["workers"])
    except InvalidCombinationError as e:
        raise click.UsageError(_one_line(e))
    except AnchorsimError as e:
        click.echo(f"error={type(e).__name__} reason={_one_line(e)}", err=True)
        ctx.exit(1)
    except (ValidationError, ValueError) as e:
        raise click.UsageError(_one_line(e))
    except OSError as e:
        click.echo(f"error={type(e).__name__} reason={_one_line(e)}", err=True)
        ctx.exit(1)


@click.group()
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)
@click.option("--out", default="-", show_default=True, help="Output path, '-' for stdout.")
@click.option(
    "--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True
)
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--debug/--no-debug", default=settings.DEBUG)
@click.option("--log-file", type=click.Path(dir_okay=False), default=settings.LOG_FILE)
@click.pass_context
def cli(ctx, seed, out, fmt, workers, debug, log_file):
    """Simulation and enumeration experiments on anchored expansion and percolation."""
    logger.setup_logger(is_debug=debug, file_name=log_file)
    ctx.obj = {"seed": seed, "out": out, "format": fmt, "workers": workers}


@cli.command()
@family_options()
@click.option("--max-size", type=int, required=True, help="Largest connected set size.")
@_boundary_mode
@click.option("--radius", type=int, help="Ball radius (default: max size).")
@output_options
@click.pass_context
def expansion(ctx, family_spec, max_size, mode, radius):
    """Exact f(k) and anchored tail iota_n of connected sets containing the basepoint."""
    params = {"max_size": max_size, "mode": mode, "radius": radius}
    _execute(ctx, "expansion", family=family_spec, params=params)


@cli.command()
@family_options()
@click.option("--max-boundary", type=int, required=True)
@click.option("--max-size", type=int, help="Largest set size (default: max boundary).")
@_boundary_mode
@click.option("--radius", type=int)
@click.option("--check-psi", type=float, help="Compare the counts with psi(h)^n for this h.")
@output_options
@click.pass_context
def animals(ctx, family_spec, max_boundary, max_size, mode, radius, check_psi):
    """Count connected sets containing the basepoint by boundary size."""
    params = {
        "max_boundary": max_boundary,
        "max_size": max_size,
        "mode": mode,
        "radius": radius,
        "check_psi": check_psi,
    }
    _execute(ctx, "animals", family=family_spec, params=params)


@cli.command()
@family_options()
@click.option("--p", "p_grid", type=float, multiple=True, required=True, help="Repeatable.")
@_percolation_mode
@click.option("--trials", type=int, default=1000, show_default=True)
@click.option("--budget", type=int, default=100_000, show_default=True)
@click.option("--histogram", is_flag=True, help="Closed-boundary histogram (bond mode, one p).")
@click.option("--min-count", type=int, default=50, show_default=True)
@output_options
@click.pass_context
def percolate(ctx, family_spec, p_grid, mode, trials, budget, histogram, min_count):
    """Survival frequencies of the cluster exploration, or its boundary histogram."""
    params = {
        "p_grid": list(p_grid),
        "trials": trials,
        "budget": budget,
        "histogram": histogram,
        "min_count": min_count,
    }
    percolation = PercolationSettings(mode=mode)
    _execute(ctx, "percolate", family=family_spec, percolation=percolation, params=params)


@cli.command()
@family_options(default="lamplighter")
@click.option("--p", type=float, help="Percolation parameter; omit for the simple random walk.")
@_percolation_mode
@click.option("--steps", type=int, required=True)
@click.option("--trials", type=int, default=50, show_default=True)
@click.option("--checkpoints", type=click.Choice(["geometric"]), default="geometric")
@click.option("--exit", "exit_ladder", type=int, multiple=True, help="Exit distance N.")
@click.option("--step-cap", type=int, help="Step cap of exit trials.")
@output_options
@click.pass_context
def walk(ctx, family_spec, p, mode, steps, trials, checkpoints, exit_ladder, step_cap):
    """Delayed random walk on the percolation cluster: distance and range statistics."""
    params = {
        "steps": steps,
        "trials": trials,
        "checkpoints": checkpoints,
        "exit_ladder": list(exit_ladder),
        "step_cap": step_cap,
    }
    try:
        percolation = PercolationSettings(p=p, mode=mode)
    except ValidationError as e:
        raise click.UsageError(_one_line(e))
    _execute(ctx, "walk", family=family_spec, percolation=percolation, params=params)


@cli.command()
@click.option("--probs", required=True, help='Offspring law p_0,p_1,..., e.g. "0.25,0,0.75".')
@click.option("--trials", type=int, default=10_000, show_default=True)
@click.option("--max-vertices", type=int, default=1000, show_default=True)
@click.option("--min-count", type=int, default=50, show_default=True)
@output_options
@click.pass_context
def gw(ctx, probs, trials, max_vertices, min_count):
    """Extinction probability, backbone decomposition and conditioned size tail."""
    params = {
        "probs": probs,
        "trials": trials,
        "max_vertices": max_vertices,
        "min_count": min_count,
    }
    _execute(ctx, "gw", params=params)


@cli.command()
@family_options(default="binary-rooted")
@click.option(
    "--law", type=click.Choice(["geometric", "powerlaw", "constant"]), default="geometric"
)
@click.option("--success", type=float, default=0.5, show_default=True)
@click.option("--exponent", type=float, default=2.0, show_default=True)
@click.option("--cap", type=int, default=1000, show_default=True)
@click.option("--length", type=int, default=1, show_default=True)
@click.option("--seeds", type=int, default=100, show_default=True, help="Number of stretches.")
@click.option("--max-size", type=int, default=14, show_default=True)
@_boundary_mode
@click.option(
    "--indexing",
    type=click.Choice(["base", "stretched"]),
    default="base",
    show_default=True,
    help="Count set sizes in original or in stretched vertices.",
)
@output_options
@click.pass_context
def stretch(
    ctx, family_spec, law, success, exponent, cap, length, seeds, max_size, mode, indexing
):
    """Expansion profile averaged over random stretches of the base graph."""
    laws = {
        "geometric": {"kind": "geometric", "success": success},
        "powerlaw": {"kind": "powerlaw", "exponent": exponent, "cap": cap},
        "constant": {"kind": "constant", "length": length},
    }
    params = {
        "law": laws[law],
        "seeds": seeds,
        "max_size": max_size,
        "mode": mode,
        "indexing": indexing,
    }
    _execute(ctx, "stretch", family=family_spec, params=params)


@cli.command()
@click.option("--d", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--F", "group", default="z2", show_default=True)
@click.option("--radius", type=int, default=8, show_default=True)
@output_options
@click.pass_context
def dist(ctx, d, group, radius):
    """Lamplighter distance bounds (and the d = 1 closed form) against BFS distances."""
    spec = family_spec("lamplighter", d, None, group)
    _execute(ctx, "dist", family=spec, params={"radius": radius})


@cli.command()
@click.option("--h", "h_values", type=float, multiple=True, required=True, help="Repeatable.")
@click.option("--chernoff", is_flag=True, help="Also check the binomial Chernoff bound.")
@click.option("--n-max", type=int, default=200, show_default=True)
@output_options
@click.pass_context
def thresholds(ctx, h_values, chernoff, n_max):
    """Psi(h) and the percolation thresholds implied by an expansion constant h."""
    params = {"h": list(h_values), "chernoff": chernoff, "n_max": n_max}
    _execute(ctx, "thresholds", params=params)


@cli.command(name="run")
@click.argument("config_file", type=click.Path(exists=True, dir_okay=False))
@output_options
@click.pass_context
def run_config(ctx, config_file):
    """Run an experiment described by a YAML file; global flags fill missing keys."""
    with open(config_file) as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise click.UsageError(f"{config_file} does not hold a mapping")
    obj = ctx.obj
    data = {"seed": obj["seed"], "format": obj["format"], "out": obj["out"], **data}
    try:
        experiment = ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise click.UsageError(_one_line(e))
    _dispatch(ctx, experiment)


if __name__ == "__main__":
    cli()
