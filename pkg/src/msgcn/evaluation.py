"""Prediction metrics, Welch's t-test and repeated-trial experiments."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .model import ModelParams, predict_network
from .synthgen import GeneratorConfig, generate_dataset, make_manifest, train_test_split
from .train import LossConfig, TrainConfig, fit

log = logging.getLogger(__name__)

__all__ = [
    "MetricSet",
    "metrics",
    "betainc",
    "student_t_sf",
    "welch_ttest",
    "GroupSpec",
    "ExperimentConfig",
    "TrialResult",
    "TTestResult",
    "ExperimentReport",
    "evaluate_networks",
    "run_experiment",
]


@dataclass
class MetricSet:
    """Regression quality of predicted link weights.

    ``pearson_r`` and ``r_squared`` are None when the actual values are
    constant (both are undefined there).
    """

    mse: float
    pearson_r: Optional[float]
    r_squared: Optional[float]
    abs_errors: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.abs_errors)

    @property
    def mean_abs_error(self) -> float:
        return float(np.mean(self.abs_errors))


def metrics(pred, actual) -> MetricSet:
    yhat = np.asarray(pred, dtype=float)
    y = np.asarray(actual, dtype=float)
    if yhat.shape != y.shape or yhat.ndim != 1:
        raise ValueError("pred and actual must be equal-length vectors")
    if y.size < 2:
        raise ValueError("need at least two values")
    resid = yhat - y
    mse = float(np.mean(resid**2))
    dy = y - y.mean()
    ss_tot = float(dy @ dy)
    if ss_tot == 0.0:
        return MetricSet(mse, None, None, np.abs(resid))
    dp = yhat - yhat.mean()
    ss_p = float(dp @ dp)
    r = 0.0 if ss_p == 0.0 else float(np.clip((dp @ dy) / math.sqrt(ss_p * ss_tot), -1.0, 1.0))
    r2 = 1.0 - float(resid @ resid) / ss_tot
    return MetricSet(mse, r, r2, np.abs(resid))


def _betacf(a, b, x, tol=1e-15, max_iter=10_000):
    # modified Lentz evaluation of the incomplete-beta continued fraction
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    d = tiny if abs(d) < tiny else d
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = tiny if abs(d) < tiny else d
        c = 1.0 + aa / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = tiny if abs(d) < tiny else d
        c = 1.0 + aa / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < tol:
            return h
    raise ArithmeticError(f"incomplete beta did not converge for a={a}, b={b}, x={x}")


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function ``I_x(a, b)``."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b) + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def student_t_sf(t: float, df: float) -> float:
    """Two-sided tail probability ``P(|T| >= |t|)`` of Student's t."""
    if math.isinf(t):
        return 0.0
    return betainc(df / 2.0, 0.5, df / (df + t * t))


def welch_ttest(a, b) -> tuple[float, float]:
    """Welch's unequal-variance t-test; returns ``(t, two-sided p)``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size < 2 or b.size < 2:
        raise ValueError("each sample needs at least two values")
    va = a.var(ddof=1) / a.size
    vb = b.var(ddof=1) / b.size
    if va == 0.0 or vb == 0.0:
        raise ValueError("degenerate (zero) sample variance")
    se2 = va + vb
    t = float((a.mean() - b.mean()) / math.sqrt(se2))
    df = se2**2 / (va**2 / (a.size - 1) + vb**2 / (b.size - 1))
    return t, student_t_sf(t, df)


def evaluate_networks(params: ModelParams, networks) -> tuple[MetricSet, np.ndarray, np.ndarray]:
    """Metrics over every labelled candidate link of ``networks``, pooled."""
    pred, actual = [], []
    for net in networks:
        for link, w in predict_network(params, net):
            if link.true_weight is not None:
                pred.append(w)
                actual.append(link.true_weight)
    pred = np.array(pred)
    actual = np.array(actual)
    return metrics(pred, actual), pred, actual


@dataclass(frozen=True)
class GroupSpec:
    name: str
    generator: GeneratorConfig


@dataclass
class ExperimentConfig:
    """Repeated train/test trials over one or more generator groups.

    ``ttest_metric`` selects what is compared between groups: pooled
    ``abs_error`` of every test link, or the per-trial ``mse`` /
    ``pearson_r`` values.
    """

    groups: Sequence[GroupSpec]
    trials: int = 3
    count: int = 200
    train_fraction: float = 0.8
    seed: int = 0
    train: TrainConfig = field(default_factory=TrainConfig)
    loss: LossConfig = field(default_factory=LossConfig)
    ttest_pairs: Optional[Sequence[tuple[str, str]]] = None
    ttest_metric: str = "abs_error"

    def __post_init__(self):
        if self.ttest_metric not in ("abs_error", "mse", "pearson_r"):
            raise ValueError(f"unknown t-test metric {self.ttest_metric!r}")
        names = [g.name for g in self.groups]
        if len(set(names)) != len(names):
            raise ValueError("group names must be unique")


@dataclass
class TrialResult:
    group: str
    trial: int
    seed: int
    network_type: str
    num_nodes: int
    num_layers: int
    metrics: Optional[MetricSet] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.metrics is not None


@dataclass
class TTestResult:
    group_a: str
    group_b: str
    metric: str
    t: Optional[float]
    p: Optional[float]
    error: Optional[str] = None


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    trials: list[TrialResult]
    ttests: list[TTestResult]

    def group_values(self, group: str, metric: str) -> np.ndarray:
        ok = [t.metrics for t in self.trials if t.group == group and t.ok]
        if metric == "abs_error":
            return np.concatenate([m.abs_errors for m in ok]) if ok else np.array([])
        vals = [getattr(m, metric) for m in ok]
        return np.array([v for v in vals if v is not None], dtype=float)

    def summary(self) -> list[dict]:
        """Mean and sample std of each metric per group, from stored trials."""
        rows = []
        for g in self.config.groups:
            ts = [t for t in self.trials if t.group == g.name]
            row = {
                "group": g.name,
                "network_type": g.generator.network_type,
                "num_nodes": g.generator.num_nodes,
                "num_layers": g.generator.num_layers,
                "trials": len(ts),
                "failed": sum(not t.ok for t in ts),
            }
            for m in ("mse", "pearson_r", "r_squared", "mean_abs_error"):
                v = np.array(
                    [getattr(t.metrics, m) for t in ts if t.ok and getattr(t.metrics, m) is not None],
                    dtype=float,
                )
                row[f"{m}_mean"] = float(v.mean()) if v.size else None
                row[f"{m}_std"] = float(v.std(ddof=1)) if v.size > 1 else None
            rows.append(row)
        return rows


def _trial_seed(master: int, group_index: int, trial: int) -> int:
    ss = np.random.SeedSequence([master, group_index, trial])
    return int(ss.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))


def run_trial(gen: GeneratorConfig, count, train_fraction, train_cfg, loss_cfg, seed):
    nets = generate_dataset(make_manifest(replace(gen, seed=seed), count, train_fraction))
    train_nets, test_nets = train_test_split(nets, train_fraction)
    res = fit(train_nets, replace(train_cfg, seed=seed), loss_cfg)
    m, _, _ = evaluate_networks(res.params, test_nets)
    return m, res


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Independent trials per group, each on a freshly generated dataset."""
    trials = []
    for gi, g in enumerate(cfg.groups):
        for k in range(cfg.trials):
            seed = _trial_seed(cfg.seed, gi, k)
            gen = g.generator
            tr = TrialResult(g.name, k, seed, gen.network_type, gen.num_nodes, gen.num_layers)
            try:
                tr.metrics, _ = run_trial(gen, cfg.count, cfg.train_fraction, cfg.train, cfg.loss, seed)
            except (ValueError, ArithmeticError, FloatingPointError) as exc:
                log.warning("trial %s/%d failed: %s", g.name, k, exc)
                tr.error = str(exc)
            trials.append(tr)

    report = ExperimentReport(cfg, trials, [])
    pairs = cfg.ttest_pairs
    if pairs is None:
        pairs = list(combinations([g.name for g in cfg.groups], 2))
    for a, b in pairs:
        try:
            t, p = welch_ttest(report.group_values(a, cfg.ttest_metric), report.group_values(b, cfg.ttest_metric))
            report.ttests.append(TTestResult(a, b, cfg.ttest_metric, t, p))
        except ValueError as exc:
            report.ttests.append(TTestResult(a, b, cfg.ttest_metric, None, None, str(exc)))
    return report
