# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
"""
Trajectories of the simple and the delayed random walk and the statistics
computed from independent trials.

Lamplighter walks keep the lamp configuration in a mutable map together with
the XOR digest of its entries, so a step costs O(1) regardless of how many
lamps are lit; the percolation tokens they compute are the ones the oracle
would produce for the same vertices.
"""
import math
from typing import Any, List, Optional, Sequence, Tuple

from anchorsim import config, logger
from anchorsim.common.parallel import run_trials
from anchorsim.common.prf import derive_seed
from anchorsim.common.stats import linear_fit, mean_ci, proportion_ci
from anchorsim.graph.adapters.lamplighter.oracle import GraphOracle as LamplighterOracle
from anchorsim.graph.core import encoding
from anchorsim.graph.core.base_graph_oracle import BaseGraphOracle
from anchorsim.graph.core.schemas import LampState
from anchorsim.percolation.core.configuration import token_open
from anchorsim.percolation.core.exploration import explore
from anchorsim.percolation.core.schemas import PercolationConfig, PercolationMode
from anchorsim.walks.core.metric import (
    has_exact_metric,
    join_size,
    lamplighter_distance_d1,
    range_bound,
)
from anchorsim.walks.core.rng import ChoiceStream
from anchorsim.walks.core.schemas import (
    Checkpoint,
    ExitEstimate,
    ReturnCurve,
    SpeedEstimate,
    SpeedPoint,
    WalkTrace,
)
from anchorsim.walks.core.steps import delayed_choice, srw_step
from anchorsim.walks.errors import NotInClusterError, WalkError

log = logger.get_logger(__name__)


def geometric_checkpoints(steps: int, first: int = 100) -> List[int]:
    """Times round(first * 10^(k/2)) below ``steps``, followed by ``steps`` itself."""
    if steps < 0:
        raise WalkError("Step count must be >= 0, got {}".format(steps))
    points = []
    k = 0
    while True:
        n = int(round(first * 10 ** (k / 2)))
        if n >= steps:
            break
        points.append(n)
        k += 1
    points.append(steps)
    return points


class _Walker:
    """Bookkeeping shared by every walker: range, returns and regeneration indicators."""

    def __init__(self, cfg: Optional[PercolationConfig]):
        self.cfg = cfg
        self.time = 0
        self.moves = 0
        self.returns = 0
        self.origin = self.marker
        self.first_visit = {self.marker: 0}
        self.regenerations = 0
        self._candidates = {}

    def _record(self, moved: bool, marker_moved: bool, lamp_changed: bool):
        self.time += 1
        t = self.time
        x = self.marker
        if moved:
            self.moves += 1
        if marker_moved:
            self.first_visit.setdefault(x, t)
            if x == self.origin:
                self.returns += 1
        k = self._candidates.get(x)
        if k is not None and k < t:
            del self._candidates[x]
            self.regenerations -= 1
        if lamp_changed and self.first_visit[x] == t - 1:
            self._candidates[x] = t
            self.regenerations += 1

    @property
    def range_size(self) -> int:
        return len(self.first_visit)


class _VertexWalker(_Walker):
    def __init__(self, oracle: BaseGraphOracle, cfg: Optional[PercolationConfig], start: Any):
        self.oracle = oracle
        self.marker = start
        super().__init__(cfg)

    def step(self, stream: ChoiceStream):
        if self.cfg is None:
            self.marker = srw_step(self.oracle, stream, self.marker)
            self._record(True, True, False)
            return
        self.marker, _, moved = delayed_choice(self.oracle, self.cfg, stream, self.marker)
        self._record(moved, moved, False)

    def marker_norm(self) -> int:
        return self.oracle.norm(self.marker)

    def snapshot(self) -> Checkpoint:
        norm = self.marker_norm()
        return Checkpoint(
            n=self.time,
            marker_norm=norm,
            range_size=self.range_size,
            lower=norm,
            upper=norm,
            exact=norm,
            range_bound=range_bound(norm, self.range_size, 0),
            at_start=self.marker == self.origin,
            returns=self.returns,
            moves=self.moves,
        )


class _LampWalker(_Walker):
    def __init__(
        self, oracle: LamplighterOracle, cfg: Optional[PercolationConfig], start: LampState
    ):
        self.oracle = oracle
        self.base = oracle.base
        self.group = oracle.group
        self.marker = start.marker
        self.lamps = dict(start.lamps)
        self.digest = oracle.digest(start)
        self.lamp_cost = oracle.lamp_cost(start)
        self.exact = has_exact_metric(oracle)
        super().__init__(cfg)

    def state(self) -> LampState:
        return LampState(self.marker, frozenset(self.lamps.items()))

    def _hash(self, site_key: bytes, value: int) -> int:
        return encoding.lamp_hash(site_key, value) if value else 0

    def _move_open(self, target: Any) -> bool:
        if self.cfg.mode == PercolationMode.BOND:
            token = encoding.move_token(
                self.oracle.site_key(self.marker), self.oracle.site_key(target), self.digest
            )
        else:
            token = encoding.lamp_vertex_token(self.oracle.site_key(target), self.digest)
        return token_open(self.cfg, token)

    def _flip_open(self, a: int, b: int) -> bool:
        key = self.oracle.site_key(self.marker)
        without = self.digest ^ self._hash(key, a)
        if self.cfg.mode == PercolationMode.BOND:
            token = encoding.flip_token(key, a, b, without)
        else:
            token = encoding.lamp_vertex_token(key, without ^ self._hash(key, b))
        return token_open(self.cfg, token)

    def step(self, stream: ChoiceStream):
        nbrs = self.base.neighbors(self.marker)
        degree = len(nbrs) + self.group.degree
        if self.cfg is None:
            i = stream.choice(degree)
        else:
            i = stream.choice(degree + 1)
            if i == degree:
                self._record(False, False, False)
                return

        if i < len(nbrs):
            target = nbrs[i]
            if self.cfg is not None and not self._move_open(target):
                self._record(False, False, False)
                return
            self.marker = target
            self._record(True, True, False)
            return

        a = self.lamps.get(self.marker, 0)
        b = self.group.mul(a, self.group.generators[i - len(nbrs)])
        if self.cfg is not None and not self._flip_open(a, b):
            self._record(False, False, False)
            return
        key = self.oracle.site_key(self.marker)
        self.digest ^= self._hash(key, a) ^ self._hash(key, b)
        self.lamp_cost += self.group.norm(b) - self.group.norm(a)
        if b:
            self.lamps[self.marker] = b
        else:
            del self.lamps[self.marker]
        self._record(True, False, True)

    def marker_norm(self) -> int:
        return self.base.norm(self.marker)

    def snapshot(self) -> Checkpoint:
        norm = self.marker_norm()
        tree = join_size(self.base, [self.marker, *self.lamps])
        return Checkpoint(
            n=self.time,
            marker_norm=norm,
            range_size=self.range_size,
            lamp_count=len(self.lamps),
            lamp_cost=self.lamp_cost,
            lower=norm + self.lamp_cost,
            upper=norm + 2 * (tree - 1) + self.lamp_cost,
            exact=lamplighter_distance_d1(self.state()) if self.exact else None,
            range_bound=range_bound(norm, self.range_size, self.lamp_cost),
            at_start=self.marker == self.origin,
            returns=self.returns,
            regenerations=self.regenerations,
            moves=self.moves,
        )


def _walker(oracle: BaseGraphOracle, cfg: Optional[PercolationConfig], start: Any = None):
    start = oracle.basepoint if start is None else start
    if isinstance(oracle, LamplighterOracle):
        return _LampWalker(oracle, cfg, start)
    return _VertexWalker(oracle, cfg, start)


def in_infinite_cluster(
    oracle: BaseGraphOracle, cfg: PercolationConfig, start: Any = None, budget: int = None
) -> bool:
    """True when the open cluster of ``start`` outgrows ``budget`` vertices."""
    budget = budget or config.CLUSTER_GROWTH_BUDGET
    return not explore(oracle, cfg, start, budget).finite


def simulate_walk(
    oracle: BaseGraphOracle,
    steps: int,
    seed: int,
    cfg: Optional[PercolationConfig] = None,
    checkpoints: Optional[Sequence[int]] = None,
    check_start: bool = True,
) -> WalkTrace:
    """
    Run the simple random walk (``cfg`` None) or the delayed walk on the open
    subgraph of ``cfg`` from the basepoint, recording observables at each
    checkpoint time.
    """
    checkpoints = sorted(set(geometric_checkpoints(steps) if checkpoints is None else checkpoints))
    if checkpoints and (checkpoints[0] < 0 or checkpoints[-1] > steps):
        raise WalkError("Checkpoints must lie in [0, {}], got {}".format(steps, checkpoints))
    if cfg is not None and check_start and not in_infinite_cluster(oracle, cfg):
        err_msg = "Basepoint lies in a finite open cluster (p={}, seed={})".format(cfg.p, cfg.seed)
        log.debug(err_msg)
        raise NotInClusterError(err_msg)

    walker = _walker(oracle, cfg)
    stream = ChoiceStream(seed)
    records = []
    for n in checkpoints:
        while walker.time < n:
            walker.step(stream)
        records.append(walker.snapshot())
    return WalkTrace(
        steps=steps,
        seed=seed,
        delayed=cfg is not None,
        p=cfg.p if cfg else None,
        mode=cfg.mode if cfg else None,
        checkpoints=records,
    )


def regeneration_indicators(markers: Sequence[Any], lamp_changed: Sequence[bool]) -> List[int]:
    """
    zeta(k) for k = 1..n from marker positions m_0..m_n and lamp-change flags
    (``lamp_changed[k-1]`` for step k): 1 when step k changes the lamp at a
    site never occupied at times 0..k-2 nor at times k+1..n.
    """
    n = len(markers) - 1
    first, last = {}, {}
    for t, x in enumerate(markers):
        first.setdefault(x, t)
        last[x] = t
    out = []
    for k in range(1, n + 1):
        x = markers[k]
        out.append(int(bool(lamp_changed[k - 1]) and first[x] >= k - 1 and last[x] <= k))
    return out


def regeneration_count(trace: WalkTrace) -> int:
    return trace.final.regenerations


def _resolve_trial(
    oracle: BaseGraphOracle, cfg: Optional[PercolationConfig], trial_seed: int
) -> Tuple[Optional[PercolationConfig], int, int]:
    """
    Configuration and walk seed of one trial; configurations whose basepoint
    cluster is finite are resampled with fresh seeds. Returns the resample count.
    """
    for attempt in range(config.MAX_START_RESAMPLES + 1):
        seed = derive_seed(trial_seed, attempt, b"start")
        walk_seed = derive_seed(seed, 0, b"walk")
        if cfg is None:
            return None, walk_seed, attempt
        trial_cfg = cfg.with_seed(derive_seed(seed, 0, b"omega"))
        if in_infinite_cluster(oracle, trial_cfg):
            return trial_cfg, walk_seed, attempt
    err_msg = "No start in a large cluster after {} resamples (p={})".format(
        config.MAX_START_RESAMPLES, cfg.p
    )
    log.error(err_msg)
    raise NotInClusterError(err_msg)


def _speed_trial(payload) -> Tuple[List[Checkpoint], int]:
    oracle, cfg, steps, checkpoints, trial_seed = payload
    trial_cfg, walk_seed, resamples = _resolve_trial(oracle, cfg, trial_seed)
    trace = simulate_walk(oracle, steps, walk_seed, trial_cfg, checkpoints, check_start=False)
    return trace.checkpoints, resamples


def speed_estimate(
    oracle: BaseGraphOracle,
    steps: int,
    trials: int,
    master_seed: int = 0,
    cfg: Optional[PercolationConfig] = None,
    checkpoints: Optional[Sequence[int]] = None,
    workers: int = 1,
) -> SpeedEstimate:
    """Distance statistics divided by n, averaged over independent trials."""
    checkpoints = sorted(set(geometric_checkpoints(steps) if checkpoints is None else checkpoints))
    payloads = [
        (oracle, cfg, steps, checkpoints, derive_seed(master_seed, i)) for i in range(trials)
    ]
    results = run_trials(_speed_trial, payloads, workers)
    resampled = sum(r for _, r in results)
    points = []
    for j, n in enumerate(checkpoints):
        if n == 0 or not results:
            continue
        rows = [records[j] for records, _ in results]
        lower_mean, lower_ci = mean_ci([r.lower / n for r in rows])
        upper_mean, upper_ci = mean_ci([r.upper / n for r in rows])
        exact_mean = exact_ci = None
        if all(r.exact is not None for r in rows):
            exact_mean, exact_ci = mean_ci([r.exact / n for r in rows])
        points.append(
            SpeedPoint(
                n=n,
                lower_mean=lower_mean,
                lower_ci=lower_ci,
                upper_mean=upper_mean,
                upper_ci=upper_ci,
                exact_mean=exact_mean,
                exact_ci=exact_ci,
                range_mean=mean_ci([r.range_size for r in rows])[0],
                lamps_mean=mean_ci([r.lamp_count for r in rows])[0],
                regeneration_mean=mean_ci([r.regenerations / n for r in rows])[0],
            )
        )
    if resampled:
        log.info(f"{resampled} percolation configurations resampled over {trials} trials")
    return SpeedEstimate(steps=steps, trials=trials, resampled_trials=resampled, points=points)


_EXIT, _RETURN, _UNDECIDED = "exit", "return", "undecided"


def _exit_trial(payload) -> str:
    oracle, cfg, N, step_cap, trial_seed = payload
    trial_cfg, walk_seed, _ = _resolve_trial(oracle, cfg, trial_seed)
    walker = _walker(oracle, trial_cfg)
    stream = ChoiceStream(walk_seed)
    returns = 0
    marker = walker.marker
    for _ in range(step_cap):
        walker.step(stream)
        if walker.marker == marker:
            continue
        marker = walker.marker
        if walker.marker_norm() >= N:
            return _EXIT
        if walker.returns > returns:
            return _RETURN
    return _UNDECIDED


def exit_before_return(
    oracle: BaseGraphOracle,
    cfg: Optional[PercolationConfig],
    N: int,
    trials: int,
    step_cap: int = None,
    master_seed: int = 0,
    workers: int = 1,
) -> ExitEstimate:
    """
    Fraction of trials in which the marker reaches distance N from its start
    before coming back to it; trials hitting ``step_cap`` are undecided.
    """
    if N < 1:
        raise WalkError("Exit distance N must be >= 1, got {}".format(N))
    step_cap = step_cap or config.WALK_STEP_CAP
    payloads = [(oracle, cfg, N, step_cap, derive_seed(master_seed, i)) for i in range(trials)]
    outcomes = run_trials(_exit_trial, payloads, workers)
    exits = outcomes.count(_EXIT)
    undecided = outcomes.count(_UNDECIDED)
    if trials and undecided / trials > 0.01:
        log.warning(f"{undecided} of {trials} exit trials hit the step cap {step_cap}")
    probability, ci = proportion_ci(exits, trials)
    return ExitEstimate(
        N=N,
        trials=trials,
        exits=exits,
        returns=outcomes.count(_RETURN),
        undecided=undecided,
        probability=probability if trials else 0.0,
        ci=ci,
        step_cap=step_cap,
    )


def _return_trial(payload) -> List[bool]:
    oracle, n_max, trial_seed = payload
    stream = ChoiceStream(trial_seed)
    start = oracle.basepoint
    v = start
    hits = [True]
    for n in range(1, n_max + 1):
        v = srw_step(oracle, stream, v)
        if n % 2 == 0:
            hits.append(v == start)
    return hits


def return_probability(
    oracle: BaseGraphOracle, n_max: int, trials: int, master_seed: int = 0, workers: int = 1
) -> ReturnCurve:
    """
    Empirical P[X_n = o] of the simple random walk at even n <= n_max, and the
    coefficient C of the fit log P = a - C n^(1/3).
    """
    times = list(range(0, n_max + 1, 2))
    payloads = [(oracle, n_max, derive_seed(master_seed, i)) for i in range(trials)]
    results = run_trials(_return_trial, payloads, workers)
    freqs = [sum(r[j] for r in results) / trials if trials else 0.0 for j in range(len(times))]

    coefficient = coefficient_ci = None
    fit_points = [(n, f) for n, f in zip(times, freqs) if n > 0 and f > 0]
    if len(fit_points) >= 3:
        xs = [n ** (1 / 3) for n, _ in fit_points]
        fit = linear_fit(xs, [math.log(f) for _, f in fit_points])
        coefficient, coefficient_ci = -fit.slope, (-fit.ci_high, -fit.ci_low)
    return ReturnCurve(
        times=times,
        frequencies=freqs,
        trials=trials,
        coefficient=coefficient,
        coefficient_ci=coefficient_ci,
    )
