# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
"""
Dispatch of an ExperimentConfig to the module operations.

Each handler returns a ``Results`` table. Trial seeds are derived from the
master seed by trial index inside the operations, so the tables do not
depend on the worker count.
"""
from collections import defaultdict
from typing import Any, Callable, Dict, Optional

from anchorsim import logger
from anchorsim.cli.errors import InvalidCombinationError
from anchorsim.cli.output import write_artifact
from anchorsim.cli.schemas import (
    PARAMS,
    AnimalsParams,
    DistParams,
    ExpansionParams,
    ExperimentConfig,
    GWParams,
    PercolateParams,
    Results,
    StretchParams,
    ThresholdsParams,
    WalkParams,
)
from anchorsim.common.oracle_factory import create_oracle
from anchorsim.common.prf import derive_seed
from anchorsim.expansion.core.enumeration import (
    animal_counts,
    expansion_profile,
    stretch_profile_experiment,
)
from anchorsim.expansion.core.formulas import chernoff_check, psi, psi_bound_check, thresholds
from anchorsim.graph.adapters.lamplighter.oracle import GraphOracle as LamplighterOracle
from anchorsim.graph.core.common import ball
from anchorsim.graph.core.schemas import StretchDescriptor
from anchorsim.gw.core.offspring import backbone_decompose, extinction_probability
from anchorsim.gw.core.sampling import conditioned_finite_size_tail, extinction_frequency
from anchorsim.gw.core.schemas import OffspringDistribution
from anchorsim.percolation.core.exploration import (
    boundary_tail_histogram,
    estimate_threshold,
    fit_boundary_tail,
    survival_curve,
)
from anchorsim.percolation.core.schemas import PercolationConfig, PercolationMode
from anchorsim.percolation.errors import PercolationError
from anchorsim.walks.core.metric import (
    has_exact_metric,
    lamplighter_distance_bounds,
    lamplighter_distance_d1,
)
from anchorsim.walks.core.simulation import exit_before_return, speed_estimate

log = logger.get_logger(__name__)

_STRETCH_DOMAIN = b"stretch"
_WALK_COLUMNS = [
    "n",
    "mean_lower",
    "lower_ci",
    "mean_upper",
    "upper_ci",
    "mean_exact",
    "exact_ci",
    "ci",
    "range_mean",
    "lamps_mean",
    "regeneration_mean",
]


def _oracle(config: ExperimentConfig):
    if not config.family:
        raise InvalidCombinationError(f"'{config.subcommand}' needs a graph family")
    return create_oracle(config.family)


def _mode(config: ExperimentConfig) -> PercolationMode:
    if config.percolation is None:
        return PercolationMode.BOND
    return config.percolation.mode


def _expansion(config: ExperimentConfig, params: ExpansionParams, workers: int) -> Results:
    oracle = _oracle(config)
    region = ball(oracle, oracle.basepoint, params.radius or params.max_size)
    profile = expansion_profile(region, None, params.max_size, params.mode, workers)
    rows = [
        {
            "k": k,
            "set_count": profile.set_counts[k],
            "min_boundary": profile.min_boundary[k],
            "f_k": profile.ratio[k],
            "iota_n": profile.iota_tail[k],
        }
        for k in sorted(profile.min_boundary)
    ]
    return Results(
        columns=["k", "set_count", "min_boundary", "f_k", "iota_n"],
        rows=rows,
        summary={"region_vertices": len(region)},
    )


def _animals(config: ExperimentConfig, params: AnimalsParams, workers: int) -> Results:
    oracle = _oracle(config)
    max_size = params.max_size or params.max_boundary
    region = ball(oracle, oracle.basepoint, params.radius or max_size)
    counts = animal_counts(region, None, params.max_boundary, params.mode, max_size, workers)
    summary: Dict[str, Any] = {
        "complete_through": counts.complete_through,
        "unbounded": counts.unbounded,
    }
    check = None
    if params.check_psi is not None:
        check = psi_bound_check(counts, params.check_psi)
        summary.update(
            h=params.check_psi,
            psi=psi(params.check_psi),
            n0=check.n0,
            all_hold=all(check.verdicts.values()),
        )
    rows = []
    for n, c in counts.counts.items():
        row = {"n": n, "count": c, "bound_psi_h_pow_n": None, "holds": None}
        if check is not None:
            row["bound_psi_h_pow_n"] = psi(params.check_psi) ** n
            row["holds"] = check.verdicts.get(n)
        rows.append(row)
    columns = ["n", "count", "bound_psi_h_pow_n", "holds"]
    return Results(columns=columns, rows=rows, summary=summary)


def _percolate(config: ExperimentConfig, params: PercolateParams, workers: int) -> Results:
    oracle = _oracle(config)
    mode = _mode(config)
    if params.histogram:
        if mode != PercolationMode.BOND:
            raise InvalidCombinationError("The boundary histogram is defined for bond mode only")
        if len(params.p_grid) != 1:
            raise InvalidCombinationError("The boundary histogram takes exactly one p")
        histogram = boundary_tail_histogram(
            oracle, params.p_grid[0], params.trials, params.budget, config.seed, workers=workers
        )
        summary: Dict[str, Any] = {
            "trials": histogram.trials,
            "survived": histogram.survived,
            "slope": None,
            "slope_ci": None,
        }
        try:
            fit = fit_boundary_tail(histogram, params.min_count)
            summary.update(slope=fit.slope, slope_ci=[fit.ci_low, fit.ci_high])
        except PercolationError:
            log.info("Too few boundary sizes above the count threshold for a slope fit")
        freqs = histogram.frequencies()
        rows = [
            {"n": n, "count": c, "frequency": freqs[n]} for n, c in histogram.counts.items()
        ]
        return Results(columns=["n", "count", "frequency"], rows=rows, summary=summary)

    curve = survival_curve(
        oracle, params.p_grid, params.trials, params.budget, config.seed, mode, workers=workers
    )
    threshold = None
    try:
        threshold = estimate_threshold(curve)
    except PercolationError:
        log.info("Survival curve does not bracket the onset, no threshold estimate")
    columns = ["p", "trials", "survived", "frequency", "ci", "mean_finite_size"]
    return Results(
        columns=columns,
        rows=[point.model_dump(mode="json") for point in curve.points],
        summary={"mode": mode.value, "budget": params.budget, "threshold": threshold},
    )


def _walk(config: ExperimentConfig, params: WalkParams, workers: int) -> Results:
    oracle = _oracle(config)
    cfg: Optional[PercolationConfig] = None
    if config.percolation is not None and config.percolation.p is not None:
        cfg = PercolationConfig(p=config.percolation.p, mode=config.percolation.mode)
    estimate = speed_estimate(
        oracle, params.steps, params.trials, config.seed, cfg, workers=workers
    )
    rows = [
        {
            "n": pt.n,
            "mean_lower": pt.lower_mean,
            "lower_ci": pt.lower_ci,
            "mean_upper": pt.upper_mean,
            "upper_ci": pt.upper_ci,
            "mean_exact": pt.exact_mean,
            "exact_ci": pt.exact_ci,
            # interval of the exact mean when the closed form exists, else of the lower bound
            "ci": pt.exact_ci if pt.exact_mean is not None else pt.lower_ci,
            "range_mean": pt.range_mean,
            "lamps_mean": pt.lamps_mean,
            "regeneration_mean": pt.regeneration_mean,
        }
        for pt in estimate.points
    ]
    exits = [
        exit_before_return(
            oracle, cfg, N, params.trials, params.step_cap, config.seed, workers
        ).model_dump(mode="json")
        for N in params.exit_ladder
    ]
    return Results(
        columns=_WALK_COLUMNS,
        rows=rows,
        summary={"resampled_trials": estimate.resampled_trials, "exits": exits},
    )


def _gw(config: ExperimentConfig, params: GWParams, workers: int) -> Results:
    dist = OffspringDistribution.parse(params.probs)
    q = extinction_probability(dist)
    summary: Dict[str, Any] = {
        "mean": dist.mean,
        "q": q,
        "backbone_law": None,
        "bush_law": None,
        "open_children_law": None,
        "size_tail_slope": None,
        "size_tail_slope_ci": None,
    }
    estimate = extinction_frequency(dist, params.trials, config.seed, params.max_vertices)
    summary["extinction_frequency"] = estimate.model_dump(mode="json")
    rows = []
    if dist.supercritical:
        decomposition = backbone_decompose(dist)
        summary.update(
            backbone_law=decomposition.backbone_law,
            bush_law=decomposition.bush_law,
            open_children_law=decomposition.open_children_law,
        )
        if decomposition.bush_law is not None:
            tail = conditioned_finite_size_tail(dist, params.trials, config.seed, params.min_count)
            rows = [{"size": s, "tail": t} for s, t in zip(tail.sizes, tail.tail)]
            summary.update(
                size_tail_slope=tail.slope,
                size_tail_slope_ci=list(tail.slope_ci) if tail.slope_ci else None,
            )
    return Results(columns=["size", "tail"], rows=rows, summary=summary)


def _stretch(config: ExperimentConfig, params: StretchParams, workers: int) -> Results:
    base = dict(config.family) if config.family else {"family": "binary-rooted"}
    law = StretchDescriptor.model_validate({"law": params.law}).law.model_dump(mode="json")
    seeds = [derive_seed(config.seed, i, _STRETCH_DOMAIN) for i in range(params.seeds)]
    profile = stretch_profile_experiment(
        base, law, seeds, params.max_size, params.mode, workers, params.indexing
    )
    rows = [
        {"k": k, "mean_f_k": profile.mean_ratio[k], "mean_iota_n": profile.mean_iota_tail[k]}
        for k in range(1, params.max_size + 1)
    ]
    return Results(
        columns=["k", "mean_f_k", "mean_iota_n"],
        rows=rows,
        summary={"law": law, "seeds": profile.seeds, "indexing": profile.indexing.value},
    )


def _dist(config: ExperimentConfig, params: DistParams, workers: int) -> Results:
    oracle = _oracle(config)
    if not isinstance(oracle, LamplighterOracle):
        raise InvalidCombinationError("'dist' needs the lamplighter family")
    region = ball(oracle, oracle.basepoint, params.radius)
    exact_available = has_exact_metric(oracle)
    columns = [
        "distance", "vertices", "sandwich_violations", "max_upper_gap", "formula_mismatches"
    ]
    groups: Dict[int, Dict[str, int]] = defaultdict(lambda: dict.fromkeys(columns[1:], 0))
    for v, d in zip(region.vertices, region.distance):
        lower, upper = lamplighter_distance_bounds(v, oracle)
        row = groups[d]
        row["vertices"] += 1
        row["sandwich_violations"] += int(not lower <= d <= upper)
        row["max_upper_gap"] = max(row["max_upper_gap"], upper - d)
        if exact_available:
            row["formula_mismatches"] += int(lamplighter_distance_d1(v) != d)
    rows = [{"distance": d, **groups[d]} for d in sorted(groups)]
    summary = {
        "vertices": len(region),
        "sandwich_holds": all(r["sandwich_violations"] == 0 for r in rows),
        "formula_matches": (
            all(r["formula_mismatches"] == 0 for r in rows) if exact_available else None
        ),
    }
    return Results(columns=columns, rows=rows, summary=summary)


def _thresholds(config: ExperimentConfig, params: ThresholdsParams, workers: int) -> Results:
    rows = [{"psi": psi(h), **thresholds(h).model_dump(mode="json")} for h in params.h]
    summary: Dict[str, Any] = {}
    if params.chernoff:
        check = chernoff_check(params.n_max, params.p_grid, params.alpha_fractions)
        summary["chernoff"] = {
            "cases": check.cases,
            "violations": len(check.violations),
            "worst_ratio": check.worst_ratio,
            "holds": check.holds,
        }
    columns = ["h", "psi", "pc_bound", "thm11_threshold", "appendix_threshold"]
    return Results(columns=columns, rows=rows, summary=summary)


_handlers: Dict[str, Callable[[ExperimentConfig, Any, int], Results]] = {
    "expansion": _expansion,
    "animals": _animals,
    "percolate": _percolate,
    "walk": _walk,
    "gw": _gw,
    "stretch": _stretch,
    "dist": _dist,
    "thresholds": _thresholds,
}


def ensemble(config: ExperimentConfig, workers: int = 1) -> Results:
    """Run the experiment described by ``config``; the result is the same for any worker count."""
    if workers < 1:
        raise ValueError("Worker count must be >= 1, got {}".format(workers))
    params = PARAMS[config.subcommand].model_validate(config.params)
    log.debug(f"Running '{config.subcommand}' with seed {config.seed} on {workers} workers")
    return _handlers[config.subcommand](config, params, workers)


def run(config: ExperimentConfig, workers: int = 1) -> int:
    """Run ``config`` and write its artifact. Errors propagate to the caller."""
    results = ensemble(config, workers)
    write_artifact(config, results)
    log.info(f"'{config.subcommand}' done: {len(results.rows)} rows written to {config.out}")
    return 0
