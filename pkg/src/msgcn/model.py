"""Forward pass of the multiplex spatial graph convolution network.

Architecture, per projected graph::

    conv1 (1 -> H) -> dropout -> conv2 (H -> H) -> mean pool -> ReLU(w . pooled + b)

Each convolution gates neighbour embeddings by a ReLU of a learned linear
map of the position offset, sums the gated messages, then mixes features:

    m_i  = sum_{j in N(i)} relu(U^T (p_j - p_i) + b) * h_j
    h'_i = relu(W m_i + c)

Graphs are evaluated in batches: all graphs are concatenated into one
block-diagonal graph so that a network's candidate links share one pass.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np

from .graph_core import (
    CandidateLink,
    ProjectedGraph,
    SpatialMultiplexNetwork,
    build_projected_graph,
    candidate_links,
    layer_adjacency,
)

__all__ = [
    "ConvLayer",
    "ModelParams",
    "GraphBatch",
    "ForwardTrace",
    "relu",
    "gate",
    "spatial_conv",
    "init_params",
    "forward",
    "forward_batch",
    "network_batch",
    "links_batch",
    "predict_network",
]

HIDDEN = 32
DROPOUT = 0.5


def relu(x):
    return np.maximum(x, 0.0)


class ConvLayer(NamedTuple):
    U: np.ndarray  # (2, d_in) gate weights
    b: np.ndarray  # (d_in,) gate bias
    W: np.ndarray  # (d_out, d_in) mixing weights
    c: np.ndarray  # (d_out,) mixing bias


@dataclass
class ModelParams:
    U1: np.ndarray
    b1: np.ndarray
    W1: np.ndarray
    c1: np.ndarray
    U2: np.ndarray
    b2: np.ndarray
    W2: np.ndarray
    c2: np.ndarray
    w_out: np.ndarray
    b_out: np.ndarray  # 0-d

    @property
    def hidden(self) -> int:
        return self.W1.shape[0]

    def layer(self, k: int) -> ConvLayer:
        return ConvLayer(*(getattr(self, f"{n}{k}") for n in "UbWc"))

    def arrays(self) -> dict[str, np.ndarray]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def copy(self) -> "ModelParams":
        return ModelParams(**{k: v.copy() for k, v in self.arrays().items()})

    @classmethod
    def zeros_like(cls, other: "ModelParams") -> "ModelParams":
        return cls(**{k: np.zeros_like(v) for k, v in other.arrays().items()})

    def shapes(self) -> dict[str, tuple]:
        return {k: v.shape for k, v in self.arrays().items()}

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(v)) for v in self.arrays().values())

    def equals(self, other: "ModelParams") -> bool:
        a, b = self.arrays(), other.arrays()
        return a.keys() == b.keys() and all(np.array_equal(a[k], b[k]) for k in a)


def _glorot(rng, shape, fan_in, fan_out):
    bound = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-bound, bound, size=shape)


def init_params(seed: int, hidden: int = HIDDEN) -> ModelParams:
    """Glorot-uniform weights, zero biases."""
    rng = np.random.default_rng(seed)
    return ModelParams(
        U1=_glorot(rng, (2, 1), 2, 1),
        b1=np.zeros(1),
        W1=_glorot(rng, (hidden, 1), 1, hidden),
        c1=np.zeros(hidden),
        U2=_glorot(rng, (2, hidden), 2, hidden),
        b2=np.zeros(hidden),
        W2=_glorot(rng, (hidden, hidden), hidden, hidden),
        c2=np.zeros(hidden),
        w_out=_glorot(rng, (hidden,), hidden, 1),
        b_out=np.zeros(()),
    )


class GraphBatch:
    """Several projected graphs merged into one disconnected graph.

    Directed edges are stored twice (both directions) as ``src -> dst``;
    ``delta[e] = pos[src[e]] - pos[dst[e]]`` is the offset seen by the
    receiving node.
    """

    def __init__(self, graphs: Sequence[ProjectedGraph]):
        sizes = np.array([g.num_nodes for g in graphs], dtype=np.intp)
        offsets = np.concatenate([[0], np.cumsum(sizes)[:-1]]).astype(np.intp)
        self.num_graphs = len(graphs)
        self.sizes = sizes
        self.offsets = offsets
        x = np.concatenate([np.asarray(g.node_features, dtype=float) for g in graphs])
        self.x = x.reshape(len(x), -1)
        self.pos = np.concatenate([g.node_positions for g in graphs]).reshape(-1, 2)
        src, dst = [], []
        for g, off in zip(graphs, offsets):
            for a, b in g.edges:
                src += [a + off, b + off]
                dst += [b + off, a + off]
        self.src = np.array(src, dtype=np.intp)
        self.dst = np.array(dst, dtype=np.intp)
        self.delta = self.pos[self.src] - self.pos[self.dst]
        self.num_nodes = self.x.shape[0]
        self._in = _Segments(self.dst, self.num_nodes)
        self._out = _Segments(self.src, self.num_nodes)

    def gather_in(self, msg):
        """Sum edge rows into their receiving nodes."""
        return self._in.sum(msg)

    def gather_out(self, msg):
        """Sum edge rows into their sending nodes."""
        return self._out.sum(msg)

    def pool(self, h):
        return np.add.reduceat(h, self.offsets, axis=0) / self.sizes[:, None]

    def unpool(self, g):
        """Adjoint of :meth:`pool`."""
        return np.repeat(g / self.sizes[:, None], self.sizes, axis=0)


class _Segments:
    # sorted-index segment sum; nodes without edges get zero rows
    def __init__(self, index, n):
        self.order = np.argsort(index, kind="stable")
        counts = np.bincount(index, minlength=n)
        self.nonempty = np.flatnonzero(counts)
        self.starts = np.concatenate([[0], np.cumsum(counts)[:-1]])[self.nonempty]
        self.n = n

    def sum(self, rows):
        out = np.zeros((self.n, rows.shape[1]))
        if len(self.nonempty):
            out[self.nonempty] = np.add.reduceat(rows[self.order], self.starts, axis=0)
        return out


def _as_batch(graph) -> GraphBatch:
    return graph if isinstance(graph, GraphBatch) else GraphBatch([graph])


def gate(U, b, delta_p):
    """``relu(U^T delta_p + b)``; ``delta_p`` may be one 2-vector or rows of them."""
    return relu(np.asarray(delta_p) @ U + b)


def _conv(layer: ConvLayer, batch: GraphBatch, h):
    A = batch.delta @ layer.U + layer.b
    G = relu(A)
    M = batch.gather_in(G * h[batch.src])
    Z = M @ layer.W.T + layer.c
    return A, G, M, Z, relu(Z)


def spatial_conv(layer: ConvLayer, graph: Union[ProjectedGraph, GraphBatch], embeddings) -> np.ndarray:
    """One spatial convolution; returns the new node embeddings."""
    return _conv(layer, _as_batch(graph), np.asarray(embeddings, dtype=float).reshape(-1, layer.U.shape[1]))[-1]


@dataclass
class ForwardTrace:
    """Intermediate values kept for the backward pass.

    ``A*`` are gate pre-activations per directed edge, ``G*`` gate values,
    ``M*`` gated message sums, ``Z*`` mixed pre-activations and ``H*``
    node embeddings. ``mask`` is the scaled dropout mask (None in eval).
    """

    batch: GraphBatch
    A1: np.ndarray
    G1: np.ndarray
    M1: np.ndarray
    Z1: np.ndarray
    H1: np.ndarray
    mask: Optional[np.ndarray]
    Hd: np.ndarray
    A2: np.ndarray
    G2: np.ndarray
    M2: np.ndarray
    Z2: np.ndarray
    H2: np.ndarray
    pooled: np.ndarray
    S: np.ndarray
    y: np.ndarray


def forward_batch(
    params: ModelParams,
    batch: GraphBatch,
    train: bool = False,
    rng: Optional[np.random.Generator] = None,
    dropout: float = DROPOUT,
) -> ForwardTrace:
    A1, G1, M1, Z1, H1 = _conv(params.layer(1), batch, batch.x)
    mask = None
    Hd = H1
    if train and dropout > 0:
        if rng is None:
            raise ValueError("train mode needs an rng for dropout")
        mask = (rng.random(H1.shape) >= dropout) / (1.0 - dropout)
        Hd = H1 * mask
    A2, G2, M2, Z2, H2 = _conv(params.layer(2), batch, Hd)
    pooled = batch.pool(H2)
    S = pooled @ params.w_out + params.b_out
    return ForwardTrace(batch, A1, G1, M1, Z1, H1, mask, Hd, A2, G2, M2, Z2, H2, pooled, S, relu(S))


def forward(
    params: ModelParams,
    graph: ProjectedGraph,
    mode: str = "eval",
    rng: Optional[np.random.Generator] = None,
    dropout: float = DROPOUT,
) -> tuple[float, ForwardTrace]:
    """Predict the weight of a single projected graph."""
    if mode not in ("train", "eval"):
        raise ValueError(f"mode must be 'train' or 'eval', got {mode!r}")
    tr = forward_batch(params, _as_batch(graph), mode == "train", rng, dropout)
    return float(tr.y[0]), tr


def links_batch(net: SpatialMultiplexNetwork, links: Sequence[CandidateLink]) -> GraphBatch:
    adj = {q: layer_adjacency(net, q) for q in range(1, net.num_layers)}
    return GraphBatch([build_projected_graph(net, c, adj[c.target_layer]) for c in links])


def network_batch(net: SpatialMultiplexNetwork) -> tuple[list[CandidateLink], GraphBatch]:
    """Candidate links of ``net`` and their projected graphs as one batch."""
    links = candidate_links(net)
    return links, links_batch(net, links)


def predict_network(params: ModelParams, net: SpatialMultiplexNetwork) -> list[tuple[CandidateLink, float]]:
    links, batch = network_batch(net)
    y = forward_batch(params, batch).y
    return [(c, float(v)) for c, v in zip(links, y)]
