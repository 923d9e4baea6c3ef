"""Loss, exact gradients, Adam and the training loop.

The loss combines three terms over a batch of predictions ``yhat``::

    total  = w_mse * mse + w_spread * spread + w_range * range_penalty
    mse    = mean((yhat - y)^2)
    spread = 1 / (var(yhat) + eps)            # population variance
    range_penalty = mean((yhat - y_range)^2)  # y_range = max - min of train targets

The spread term rewards varied predictions and keeps the network from
collapsing onto the mean target.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .graph_core import SpatialMultiplexNetwork, candidate_links
from .model import (
    DROPOUT,
    HIDDEN,
    ForwardTrace,
    GraphBatch,
    ModelParams,
    forward_batch,
    init_params,
    links_batch,
)

log = logging.getLogger(__name__)

__all__ = [
    "LossConfig",
    "LossBreakdown",
    "TrainConfig",
    "AdamState",
    "warm_start",
    "loss",
    "loss_grad",
    "backprop",
    "backward",
    "adam_step",
    "fit",
    "FitResult",
    "prepare",
    "gradient_check",
    "GradCheckResult",
]


@dataclass
class LossConfig:
    w_mse: float = 1.0
    w_spread: float = 0.05
    w_range: float = 0.05
    epsilon: float = 1e-8
    y_range: float = 0.0

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if min(self.w_mse, self.w_spread, self.w_range) < 0:
            raise ValueError("loss weights must be non-negative")
        if not np.isfinite(self.y_range):
            raise ValueError("y_range must be finite")

    @property
    def weights(self) -> tuple[float, float, float]:
        return (self.w_mse, self.w_spread, self.w_range)


@dataclass
class LossBreakdown:
    total: float
    mse: float
    spread: float
    range_penalty: float


@dataclass
class TrainConfig:
    epochs: int = 40
    learning_rate: float = 1e-4
    dropout: float = DROPOUT
    hidden_width: int = HIDDEN
    beta1: float = 0.9
    beta2: float = 0.999
    adam_eps: float = 1e-8
    seed: int = 0
    warm_start: bool = True

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if not 0.0 <= self.dropout < 1.0:
            raise ValueError("dropout must lie in [0, 1)")


def loss(predictions, targets, cfg: LossConfig) -> LossBreakdown:
    yhat = np.asarray(predictions, dtype=float)
    y = np.asarray(targets, dtype=float)
    if yhat.size == 0:
        raise ValueError("empty batch")
    if yhat.shape != y.shape:
        raise ValueError(f"shape mismatch: {yhat.shape} vs {y.shape}")
    mse = float(np.mean((yhat - y) ** 2))
    spread = float(1.0 / (np.var(yhat) + cfg.epsilon))
    rng_pen = float(np.mean((yhat - cfg.y_range) ** 2))
    total = cfg.w_mse * mse + cfg.w_spread * spread + cfg.w_range * rng_pen
    return LossBreakdown(total, mse, spread, rng_pen)


def loss_grad(predictions, targets, cfg: LossConfig) -> np.ndarray:
    """d total / d predictions."""
    yhat = np.asarray(predictions, dtype=float)
    y = np.asarray(targets, dtype=float)
    n = yhat.size
    centered = yhat - yhat.mean()
    var = np.mean(centered**2)
    d_var = 2.0 * centered / n
    return (
        cfg.w_mse * 2.0 * (yhat - y) / n
        - cfg.w_spread * d_var / (var + cfg.epsilon) ** 2
        + cfg.w_range * 2.0 * (yhat - cfg.y_range) / n
    )


def _conv_backward(layer_U, layer_W, batch: GraphBatch, h_in, A, G, M, Z, dH, need_input: bool):
    dZ = dH * (Z > 0)
    dW = dZ.T @ M
    dc = dZ.sum(axis=0)
    dM = dZ @ layer_W
    dmsg = dM[batch.dst]
    dA = dmsg * h_in[batch.src] * (A > 0)
    dU = batch.delta.T @ dA
    db = dA.sum(axis=0)
    dh = batch.gather_out(dmsg * G) if need_input else None
    return dU, db, dW, dc, dh


def backprop(params: ModelParams, trace: ForwardTrace, dy) -> ModelParams:
    """Gradients of ``sum(dy * trace.y)`` with respect to every parameter.

    ReLU derivatives at exactly zero are taken as zero.
    """
    b = trace.batch
    dS = np.asarray(dy, dtype=float) * (trace.S > 0)
    d_wout = trace.pooled.T @ dS
    d_bout = np.asarray(dS.sum())
    dH2 = b.unpool(np.outer(dS, params.w_out))

    dU2, db2, dW2, dc2, dHd = _conv_backward(
        params.U2, params.W2, b, trace.Hd, trace.A2, trace.G2, trace.M2, trace.Z2, dH2, True
    )
    dH1 = dHd if trace.mask is None else dHd * trace.mask
    dU1, db1, dW1, dc1, _ = _conv_backward(
        params.U1, params.W1, b, b.x, trace.A1, trace.G1, trace.M1, trace.Z1, dH1, False
    )
    return ModelParams(dU1, db1, dW1, dc1, dU2, db2, dW2, dc2, d_wout, d_bout)


def backward(
    params: ModelParams,
    batch: GraphBatch,
    targets,
    cfg: LossConfig,
    train: bool = False,
    rng: Optional[np.random.Generator] = None,
    dropout: float = DROPOUT,
) -> tuple[LossBreakdown, ModelParams]:
    """Loss and its exact gradient for one batch of projected graphs."""
    trace = forward_batch(params, batch, train, rng, dropout)
    br = loss(trace.y, targets, cfg)
    return br, backprop(params, trace, loss_grad(trace.y, targets, cfg))


@dataclass
class AdamState:
    m: dict = field(default_factory=dict)
    v: dict = field(default_factory=dict)
    t: int = 0


def adam_step(
    params: ModelParams,
    grads: ModelParams,
    state: AdamState,
    t: int,
    cfg: TrainConfig,
) -> tuple[ModelParams, AdamState]:
    """One bias-corrected Adam update. Inputs are left untouched."""
    if t < 1:
        raise ValueError("Adam step index starts at 1")
    g = grads.arrays()
    new, m, v = {}, {}, {}
    for k, p in params.arrays().items():
        m_prev = state.m.get(k, np.zeros_like(p))
        v_prev = state.v.get(k, np.zeros_like(p))
        m[k] = cfg.beta1 * m_prev + (1.0 - cfg.beta1) * g[k]
        v[k] = cfg.beta2 * v_prev + (1.0 - cfg.beta2) * g[k] * g[k]
        m_hat = m[k] / (1.0 - cfg.beta1**t)
        v_hat = v[k] / (1.0 - cfg.beta2**t)
        new[k] = p - cfg.learning_rate * m_hat / (np.sqrt(v_hat) + cfg.adam_eps)
    return ModelParams(**new), AdamState(m, v, t)


def _labelled(net: SpatialMultiplexNetwork):
    links = [c for c in candidate_links(net) if c.true_weight is not None]
    return links_batch(net, links), np.array([c.true_weight for c in links], dtype=float)


def prepare(networks: Sequence[SpatialMultiplexNetwork]) -> list[tuple[GraphBatch, np.ndarray]]:
    """Projected-graph batches and targets of every labelled link, per network."""
    return [_labelled(n) for n in networks]


class FitResult(NamedTuple):
    params: ModelParams
    history: list
    loss_config: LossConfig


def warm_start(params: ModelParams, mean_target: float) -> ModelParams:
    """Shift a fresh initialization so training starts out of the flat zone.

    With zero biases most gates and the output ReLU start dead or constant,
    and the spread term then dominates the first steps. Opening the gates
    (b = 1), lifting the mixing biases (c = 0.1), using a small positive
    readout and starting the output at the mean target avoids that.
    """
    p = params.copy()
    p.b1[...] = 1.0
    p.b2[...] = 1.0
    p.c1[...] = 0.1
    p.c2[...] = 0.1
    p.w_out[...] = 0.1 * np.abs(p.w_out)
    p.b_out[...] = mean_target
    return p


def fit(
    train_networks: Sequence[SpatialMultiplexNetwork],
    cfg: TrainConfig = TrainConfig(),
    loss_cfg: LossConfig = LossConfig(),
    params: Optional[ModelParams] = None,
) -> FitResult:
    """Train on ``train_networks``; one Adam step per network per epoch.

    A fresh initialization goes through :func:`warm_start` unless
    ``cfg.warm_start`` is off; explicit ``params`` are used as given.
    Returns the final parameters, the mean total loss of each epoch and
    the loss config with ``y_range`` filled in from the training targets.
    """
    data = [(b, y) for b, y in prepare(train_networks) if y.size]
    if not data:
        raise ValueError("no labelled interlayer links in the training networks")
    all_y = np.concatenate([y for _, y in data])
    loss_cfg = LossConfig(**{**asdict(loss_cfg), "y_range": float(all_y.max() - all_y.min())})

    rng = np.random.default_rng(cfg.seed)
    if params is None:
        params = init_params(int(rng.integers(2**63)), cfg.hidden_width)
        if cfg.warm_start:
            params = warm_start(params, float(all_y.mean()))
    else:
        rng.integers(2**63)
    state = AdamState()
    history = []
    t = 0
    for epoch in range(cfg.epochs):
        order = rng.permutation(len(data))
        total = 0.0
        for k in order:
            batch, y = data[k]
            br, grads = backward(params, batch, y, loss_cfg, True, rng, cfg.dropout)
            t += 1
            params, state = adam_step(params, grads, state, t, cfg)
            total += br.total
        history.append(total / len(data))
        log.debug("epoch %d loss %.6g", epoch + 1, history[-1])
    return FitResult(params, history, loss_cfg)


@dataclass
class GradCheckResult:
    instance: int
    parameter: str
    index: tuple
    analytic: float
    numeric: float
    ok: bool
    kink: bool = False  # a ReLU input changed sign inside [-h, +h]


def _random_instance(rng: np.random.Generator, hidden: int):
    from .synthgen import GeneratorConfig, generate_network

    kind = ["complete", "random", "small_world"][int(rng.integers(3))]
    n = int(rng.integers(2 if kind == "complete" else 4, 6))
    cfg = GeneratorConfig(
        kind,
        n,
        int(rng.integers(2, 4)),
        p=None if kind == "complete" else 0.5,
        k=2 if kind == "small_world" else None,
    )
    net = generate_network(cfg, rng)
    params = init_params(int(rng.integers(2**63)), hidden)
    # nonzero biases keep ReLU kinks away from the zero-offset diagonal edges
    for k in ("b1", "c1", "b2", "c2"):
        getattr(params, k)[...] = rng.uniform(-0.3, 0.5, getattr(params, k).shape)
    params.b_out[...] = rng.uniform(0.1, 0.5)
    # near-constant outputs at init make 1/(var + eps) huge for tiny eps, and
    # central differences of a huge total lose the gradient to cancellation
    eps = float(10 ** rng.uniform(-3, -1))
    loss_cfg = LossConfig(*rng.uniform(0.01, 1.0, 3), epsilon=eps, y_range=float(rng.uniform(0, 2)))
    return net, params, loss_cfg


def _stacked_eval(P: dict, batch: GraphBatch, y, cfg: LossConfig):
    """Eval-mode loss for a stack of parameter sets.

    Every entry of ``P`` carries a leading axis of length 1 or K; the K
    parameter sets are run side by side. Returns the K totals and, per
    set, one flat boolean vector of all ReLU input signs.
    """
    src, dst, delta = batch.src, batch.dst, batch.delta
    order = np.argsort(dst, kind="stable")
    counts = np.bincount(dst, minlength=batch.num_nodes)
    nonempty = np.flatnonzero(counts)
    starts = np.concatenate([[0], np.cumsum(counts)[:-1]])[nonempty]

    def gather(rows):
        out = np.zeros(rows.shape[:1] + (batch.num_nodes,) + rows.shape[2:])
        if len(nonempty):
            out[:, nonempty] = np.add.reduceat(rows[:, order], starts, axis=1)
        return out

    def conv(U, b, W, c, h):
        A = np.matmul(delta, U) + b[:, None, :]
        M = gather(np.maximum(A, 0.0) * h[:, src])
        Z = np.matmul(M, np.swapaxes(W, 1, 2)) + c[:, None, :]
        return A, Z, np.maximum(Z, 0.0)

    x = batch.x[None]
    A1, Z1, H1 = conv(P["U1"], P["b1"], P["W1"], P["c1"], x)
    A2, Z2, H2 = conv(P["U2"], P["b2"], P["W2"], P["c2"], H1)
    pooled = np.add.reduceat(H2, batch.offsets, axis=1) / batch.sizes[None, :, None]
    S = np.matmul(pooled, P["w_out"][:, :, None])[..., 0] + P["b_out"][:, None]
    yhat = np.maximum(S, 0.0)
    k = yhat.shape[0]
    total = (
        cfg.w_mse * np.mean((yhat - y) ** 2, axis=1)
        + cfg.w_spread / (np.var(yhat, axis=1) + cfg.epsilon)
        + cfg.w_range * np.mean((yhat - cfg.y_range) ** 2, axis=1)
    )
    signs = np.concatenate(
        [np.broadcast_to(a > 0, (k,) + a.shape[1:]).reshape(k, -1) for a in (A1, Z1, A2, Z2, S)], axis=1
    )
    return total, signs


def gradient_check(
    seed: int = 0,
    instances: int = 20,
    h: float = 1e-5,
    rtol: float = 1e-4,
    atol: float = 1e-7,
    hidden: int = HIDDEN,
    chunk: int = 128,
) -> list[GradCheckResult]:
    """Compare analytic gradients with central differences, dropout off.

    Every scalar of every parameter is checked on each random instance.
    A partial passes when the relative error is below ``rtol`` or the
    absolute error is below ``atol``. A mismatching partial whose
    perturbation moved some ReLU input across zero is flagged ``kink``:
    the difference quotient there straddles a non-differentiable point
    and says nothing about the derivative. Perturbed copies are
    evaluated ``chunk`` at a time.
    """
    rng = np.random.default_rng(seed)
    out = []
    for inst in range(instances):
        net, params, loss_cfg = _random_instance(rng, hidden)
        batch, y = _labelled(net)
        _, grads = backward(params, batch, y, loss_cfg)
        base = {k: v[None] for k, v in params.arrays().items()}
        for name, arr in params.arrays().items():
            g = grads.arrays()[name]
            flat = list(np.ndindex(arr.shape))
            for lo in range(0, len(flat), chunk):
                idx = flat[lo : lo + chunk]
                totals, signs = [], []
                for step in (h, -h):
                    stack = np.repeat(base[name], len(idx), axis=0)
                    for r, ix in enumerate(idx):
                        stack[(r,) + ix] += step
                    t, sg = _stacked_eval({**base, name: stack}, batch, y, loss_cfg)
                    totals.append(t)
                    signs.append(sg)
                num = (totals[0] - totals[1]) / (2 * h)
                crossed = np.any(signs[0] != signs[1], axis=1)
                for r, ix in enumerate(idx):
                    ana, nu = float(g[ix]), float(num[r])
                    err = abs(ana - nu)
                    ok = bool(err < atol or err / max(abs(ana), abs(nu)) < rtol)
                    out.append(GradCheckResult(inst, name, ix, ana, nu, ok, bool(not ok and crossed[r])))
    return out
