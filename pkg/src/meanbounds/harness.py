"""Seeded randomized verification suites with replayable failure records.

Trial i derives its generator from ``seed XOR i``, so any slice of the
trial range produces exactly the per-trial results of a full serial run;
reports from disjoint slices merge associatively via :func:`merge_reports`.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import bounds as bnd
from . import convex as cvx
from . import operators as ops
from . import scalar as sc
from .quadrature import QuadratureError

DEFAULT_FUNCTIONS = ("exp", "neg-log", "square", "quartic", "xlogx")

_U64 = (1 << 64) - 1

# oriented draws keep |b - a| at or above this
MIN_GAP = 1e-6

# reference values for the max-weight bound difference at f = exp, v = 1/4:
# ((a, b), expected difference, allowed absolute deviation)
REFERENCE_DIFFS = (
    ((4.0, 1.0), 4.35403, 5e-4),
    ((8.0, 1.0), -30.7996, 5e-3),
)

OPERATOR_GRID_POINTS = 10_000
OPERATOR_GRID_RANGE = (1e-4, 1e4)
OPERATOR_GRID_WEIGHTS = tuple(np.round(np.arange(0.01, 1.00, 0.01), 2))


def _positive_range(name, rng):
    lo, hi = (float(rng[0]), float(rng[1]))
    if not (0.0 < lo <= hi and np.isfinite(hi)):
        raise ValueError(f"{name} must be a nonempty positive interval, got {rng}")
    return lo, hi


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 42
    trials: int = 10_000
    a_range: tuple[float, float] = (0.1, 10.0)
    b_range: tuple[float, float] = (0.1, 10.0)
    v_range: tuple[float, float] = (0.01, 0.99)
    functions: tuple[str, ...] = DEFAULT_FUNCTIONS
    tol: float = 1e-9
    op_tol: float = 1e-10
    dims: tuple[int, ...] = (2, 3, 5, 8)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not 0 <= int(self.seed) <= _U64:
            raise ValueError("seed must fit in 64 unsigned bits")
        _positive_range("a_range", self.a_range)
        _positive_range("b_range", self.b_range)
        v_lo, v_hi = self.v_range
        if not (0.0 < v_lo <= v_hi < 1.0):
            raise ValueError(f"v_range must sit inside (0, 1), got {self.v_range}")
        for name in self.functions:
            cvx.get_builtin(name)
        if not self.functions:
            raise ValueError("functions must be nonempty")
        if any(d < 1 for d in self.dims) or not self.dims:
            raise ValueError("dims must be positive")


@dataclass
class SuiteReport:
    suite: str
    seed: int
    trials: int
    failures: list = field(default_factory=list)
    min_slacks: dict = field(default_factory=dict)
    wall_ms: float | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self, include_timing: bool = False) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "failures": self.failures,
            "min_slacks": self.min_slacks,
            "wall_ms": self.wall_ms if include_timing else None,
        }

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2)


def merge_reports(first: SuiteReport, second: SuiteReport) -> SuiteReport:
    if first.suite != second.suite or first.seed != second.seed:
        raise ValueError("reports stem from different suites or seeds")
    slacks = dict(first.min_slacks)
    for key, val in second.min_slacks.items():
        slacks[key] = min(slacks[key], val) if key in slacks else val
    return SuiteReport(
        first.suite,
        first.seed,
        first.trials + second.trials,
        first.failures + second.failures,
        slacks,
        None,
    )


class _Collector:
    def __init__(self):
        self.min_slacks: dict[str, float] = {}
        self.failures: list[dict] = []

    def note(self, key: str, value: float):
        value = float(value)
        if key not in self.min_slacks or value < self.min_slacks[key]:
            self.min_slacks[key] = value

    def fail(self, trial: int, check: str, inputs: dict, **extra):
        record = {"trial": trial, "check": check, "inputs": inputs}
        record.update(extra)
        self.failures.append(record)

    def chain(self, key: str, report, trial: int, inputs: dict):
        for idx, slack in enumerate(report.slacks, start=1):
            self.note(f"{key}.{idx}", slack)
        if not report.passed:
            self.fail(trial, key, inputs, slacks=list(report.slacks))

    def gap(self, key: str, report, trial: int, inputs: dict):
        self.note(f"{key}.lower", report.slack_lower())
        self.note(f"{key}.upper", report.slack_upper())
        if not report.passed:
            self.fail(trial, key, inputs, gap=report.gap,
                      lower_bound=report.lower_bound, upper_bound=report.upper_bound)


def _trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng((int(seed) ^ int(index)) & _U64)


def _log_uniform(rng, lo: float, hi: float) -> float:
    if lo == hi:
        return lo
    return float(np.exp(rng.uniform(np.log(lo), np.log(hi))))


def _draw_pair(rng, cfg: SuiteConfig) -> tuple[float, float]:
    a = _log_uniform(rng, *cfg.a_range)
    b = _log_uniform(rng, *cfg.b_range)
    for _ in range(8):
        if abs(b - a) >= MIN_GAP:
            break
        b = _log_uniform(rng, *cfg.b_range)
    return a, b


def _draw_weight(rng, cfg: SuiteConfig) -> float:
    lo, hi = cfg.v_range
    return float(rng.uniform(lo, hi))


def _slice(cfg_total: int, start: int, count):
    if count is None:
        count = cfg_total - start
    if start < 0 or count < 0 or start + count > cfg_total:
        raise ValueError(f"slice [{start}, {start + count}) outside [0, {cfg_total})")
    return range(start, start + count)


def run_scalar_suite(cfg: SuiteConfig, start: int = 0, count=None) -> SuiteReport:
    """Mean chains, the seven-term chain cycling the builtin functions,
    and both convexity-gap checks on randomized (a, b, v) draws."""
    t0 = time.perf_counter()
    col = _Collector()
    indices = _slice(cfg.trials, start, count)
    for i in indices:
        rng = _trial_rng(cfg.seed, i)
        a, b = _draw_pair(rng, cfg)
        v = _draw_weight(rng, cfg)
        fname = cfg.functions[i % len(cfg.functions)]
        f = cvx.get_builtin(fname)
        lo, hi = min(a, b), max(a, b)
        inputs = {"a": a, "b": b, "v": v, "f": fname}

        col.chain("log_chain", sc.logarithmic_chain(a, b, v, tol=cfg.tol), i, inputs)
        col.chain("identric_chain", sc.identric_chain(a, b, v, tol=cfg.tol), i, inputs)

        if hi - lo >= MIN_GAP:
            try:
                col.chain("hh_chain", cvx.chain_eval(f, lo, hi, v, tol=cfg.tol), i, inputs)
            except QuadratureError as exc:
                col.fail(i, "hh_chain", inputs, error=str(exc))

        sandwich = cvx.gap_sandwich_check(f, lo, hi, v, tol=cfg.tol)
        col.note("gap_sandwich.lower", sandwich.mid - sandwich.lhs)
        col.note("gap_sandwich.upper", sandwich.rhs - sandwich.mid)
        if not sandwich.passed:
            col.fail(i, "gap_sandwich", inputs, lhs=sandwich.lhs, mid=sandwich.mid,
                     rhs=sandwich.rhs)

        refined = cvx.refined_gap_check(f, lo, hi, v, tol=cfg.tol)
        col.note("refined_gap.refined", refined.lhs - refined.rhs)
        col.note("refined_gap.nonneg", refined.rhs)
        if not refined.passed:
            col.fail(i, "refined_gap", inputs, lhs=refined.lhs, rhs=refined.rhs)

    wall = (time.perf_counter() - t0) * 1e3
    return SuiteReport("scalar", cfg.seed, len(indices), col.failures, col.min_slacks, wall)


def run_bounds_suite(cfg: SuiteConfig, start: int = 0, count=None) -> SuiteReport:
    """Derivative and curvature gap bounds plus the four mean-specific
    reverses/refinements on oriented randomized draws."""
    t0 = time.perf_counter()
    col = _Collector()
    indices = _slice(cfg.trials, start, count)
    for i in indices:
        rng = _trial_rng(cfg.seed, i)
        a, b = _draw_pair(rng, cfg)
        v = _draw_weight(rng, cfg)
        fname = cfg.functions[i % len(cfg.functions)]
        f = cvx.get_builtin(fname)
        lo, hi = min(a, b), max(a, b)
        inputs = {"a": lo, "b": hi, "v": v, "f": fname}

        if hi - lo >= MIN_GAP:
            try:
                for rep in bnd.deriv_gap_bounds(f, lo, hi, v, tol=cfg.tol):
                    col.gap(f"thm32.{rep.name}", rep, i, inputs)
                for rep in bnd.curvature_gap_bounds(f, lo, hi, v, tol=cfg.tol):
                    col.gap(f"thm33.{rep.name}", rep, i, inputs)
            except QuadratureError as exc:
                col.fail(i, "gap_bounds", inputs, error=str(exc))

        for key, fn in (
            ("cor31", bnd.logmean_diff_reverse),
            ("cor32", bnd.identric_ratio_reverse),
            ("cor33", bnd.logmean_diff_refinement),
            ("cor34", bnd.identric_ratio_refinement),
        ):
            for rep in fn(lo, hi, v, tol=cfg.tol):
                col.gap(f"{key}.{rep.name}", rep, i, inputs)

    wall = (time.perf_counter() - t0) * 1e3
    return SuiteReport("bounds", cfg.seed, len(indices), col.failures, col.min_slacks, wall)


def random_spd(rng: np.random.Generator, dim: int, log10_cond_half: float = 2.0) -> ops.SpdMatrix:
    """Random SPD matrix Q diag(lambda) Q^T with log-uniform spectrum.

    Eigenvalues are drawn from 10^U(-c, c) with c = log10_cond_half, so
    the condition number ranges up to 10^(2c).
    """
    gauss = rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(gauss)
    q = q * np.sign(np.diag(r))
    lam = 10.0 ** rng.uniform(-log10_cond_half, log10_cond_half, dim)
    m = (q * lam) @ q.T
    return ops.SpdMatrix(0.5 * (m + m.T))


def _representing_grid(col: _Collector, cfg: SuiteConfig):
    ts = np.logspace(
        np.log10(OPERATOR_GRID_RANGE[0]), np.log10(OPERATOR_GRID_RANGE[1]), OPERATOR_GRID_POINTS
    )
    for v in OPERATOR_GRID_WEIGHTS:
        terms = ops._representing_terms(ts, float(v))
        scale = np.maximum.reduce([np.abs(x) for x in terms])
        for idx in range(4):
            slack = terms[idx + 1] - terms[idx]
            col.note(f"representing.{idx + 1}", float(np.min(slack)))
            worst = int(np.argmin(slack + cfg.tol * scale))
            if slack[worst] < -cfg.tol * scale[worst]:
                col.fail(-1, f"representing.{idx + 1}",
                         {"t": float(ts[worst]), "v": float(v)}, slack=float(slack[worst]))
    lhs = sc.log_mean_unit(np.square(ts), 0.5)
    slack = lhs - ts
    col.note("logmean_gm", float(np.min(slack)))
    worst = int(np.argmin(slack + cfg.tol * np.maximum(1.0, ts)))
    if slack[worst] < -cfg.tol * max(1.0, ts[worst]):
        col.fail(-1, "logmean_gm", {"t": float(ts[worst])}, slack=float(slack[worst]))


def run_operator_suite(cfg: SuiteConfig, start: int = 0, count=None) -> SuiteReport:
    """Operator chains on random SPD pairs for every configured dimension,
    plus the representing-function and helper-inequality grids.

    The grid checks run once, attached to the slice containing trial 0.
    """
    t0 = time.perf_counter()
    col = _Collector()
    total = cfg.trials * len(cfg.dims)
    indices = _slice(total, start, count)
    for i in indices:
        rng = _trial_rng(cfg.seed, i)
        dim = cfg.dims[i // cfg.trials]
        mat_a = random_spd(rng, dim)
        mat_b = random_spd(rng, dim)
        v = _draw_weight(rng, cfg)
        report = ops.operator_chain(mat_a, mat_b, v, tol=cfg.op_tol)
        for idx, vd in enumerate(report.verdicts, start=1):
            col.note(f"op_chain.{idx}", vd.min_eig_of_difference)
        if not report.passed:
            inputs = {"dim": dim, "v": v, "A": mat_a.entries.tolist(),
                      "B": mat_b.entries.tolist()}
            col.fail(i, "op_chain", inputs, min_eigs=list(report.min_eigs()))
    if 0 in indices:
        _representing_grid(col, cfg)
    wall = (time.perf_counter() - t0) * 1e3
    return SuiteReport("operator", cfg.seed, len(indices), col.failures, col.min_slacks, wall)


def reference_value_check() -> SuiteReport:
    """Recompute the two reference values of the max-weight bound difference
    (f = exp, v = 1/4) and the sign change they witness."""
    t0 = time.perf_counter()
    col = _Collector()
    f = cvx.get_builtin("exp")
    diffs = []
    for (a, b), expected, tol_abs in REFERENCE_DIFFS:
        diff = cvx.maxweight_lower(f, a, b, 0.25) - cvx.maxweight_upper(f, a, b, 0.25)
        diffs.append(diff)
        tag = f"{a:g}_{b:g}"
        col.note(f"diff_{tag}", diff)
        margin = tol_abs - abs(diff - expected)
        col.note(f"margin_{tag}", margin)
        if margin < 0.0:
            col.fail(0, f"reference_{tag}", {"a": a, "b": b, "v": 0.25, "f": "exp"},
                     computed=diff, expected=expected, tol=tol_abs)
    col.note("sign_flip", 1.0 if diffs[0] * diffs[1] < 0.0 else -1.0)
    if not diffs[0] * diffs[1] < 0.0:
        col.fail(0, "sign_flip", {"diffs": diffs})
    wall = (time.perf_counter() - t0) * 1e3
    return SuiteReport("paper-numbers", 0, len(REFERENCE_DIFFS), col.failures,
                       col.min_slacks, wall)
