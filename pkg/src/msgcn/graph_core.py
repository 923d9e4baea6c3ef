"""Spatial multiplex networks and the per-link projection construction.

A multiplex network keeps one position table and one node set shared by
every layer. Interlayer weight prediction is turned into graph regression:
each candidate link ``(i, p) -> (j, q)`` becomes a small single-layer graph
made of node ``j``, its layer-``q`` neighbours, and a copy of node ``i``
carrying its layer-``p`` feature (the *projected* node).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np

__all__ = [
    "Position",
    "IntraEdge",
    "InterEdge",
    "SpatialMultiplexNetwork",
    "CandidateLink",
    "ProjectedGraph",
    "Violation",
    "validate",
    "candidate_links",
    "build_projected_graph",
    "layer_adjacency",
]


class Position(NamedTuple):
    x: float
    y: float


class IntraEdge(NamedTuple):
    layer: int
    u: int
    v: int
    weight: float


class InterEdge(NamedTuple):
    layer_p: int
    u: int
    layer_q: int
    v: int
    weight: float


def _frozen(a, dtype=float) -> np.ndarray:
    arr = np.array(a, dtype=dtype)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class SpatialMultiplexNetwork:
    """Multiplex network with node positions shared across layers.

    Parameters
    ----------
    num_layers : int
    positions : array_like, shape (M, 2)
        One row per node index; replica nodes in every layer use it.
    features : array_like, shape (num_layers, M)
        Scalar feature of node ``i`` in layer ``l`` at ``features[l, i]``.
    intra_edges : sequence of (layer, u, v, weight)
    inter_edges : sequence of (layer_p, u, layer_q, v, weight)
        Ground-truth interlayer weights. Node ``u`` lives in ``layer_p``
        and node ``v`` in ``layer_q``.

    Arrays are stored read-only; construct a new network to change one.
    Invariants are not enforced at construction so that malformed input
    can be reported by :func:`validate`.
    """

    num_layers: int
    positions: np.ndarray
    features: np.ndarray
    intra_edges: tuple = ()
    inter_edges: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "num_layers", int(self.num_layers))
        object.__setattr__(self, "positions", _frozen(self.positions).reshape(-1, 2))
        object.__setattr__(self, "features", _frozen(np.atleast_2d(self.features)))
        object.__setattr__(
            self,
            "intra_edges",
            tuple(IntraEdge(int(l), int(u), int(v), float(w)) for l, u, v, w in self.intra_edges),
        )
        object.__setattr__(
            self,
            "inter_edges",
            tuple(
                InterEdge(int(lp), int(u), int(lq), int(v), float(w))
                for lp, u, lq, v, w in self.inter_edges
            ),
        )

    @property
    def num_nodes(self) -> int:
        return self.positions.shape[0]

    def position(self, i: int) -> Position:
        return Position(float(self.positions[i, 0]), float(self.positions[i, 1]))

    def __eq__(self, other):
        if not isinstance(other, SpatialMultiplexNetwork):
            return NotImplemented
        return (
            self.num_layers == other.num_layers
            and np.array_equal(self.positions, other.positions)
            and np.array_equal(self.features, other.features)
            and self.intra_edges == other.intra_edges
            and self.inter_edges == other.inter_edges
        )

    __hash__ = None


@dataclass(frozen=True)
class CandidateLink:
    source_layer: int
    source_node: int
    target_layer: int
    target_node: int
    true_weight: Optional[float] = None

    @property
    def is_diagonal(self) -> bool:
        return self.source_node == self.target_node


@dataclass(frozen=True, eq=False)
class ProjectedGraph:
    """Single-layer graph scoring one candidate link.

    Node 0 is always the projected node; the remaining nodes are the
    target and its layer-q neighbours in ascending node index order.
    ``node_ids`` records the original index of each node (the projected
    node reports its source index).
    """

    node_features: np.ndarray  # (n, 1)
    node_positions: np.ndarray  # (n, 2)
    edges: tuple  # undirected (a, b) pairs with a < b
    projected_index: int
    target_index: int
    node_ids: tuple = field(default=())

    @property
    def num_nodes(self) -> int:
        return self.node_features.shape[0]


@dataclass(frozen=True)
class Violation:
    invariant: str
    detail: str

    def __str__(self):
        return f"{self.invariant}: {self.detail}"


def _finite(x) -> bool:
    return math.isfinite(x)


def validate(net: SpatialMultiplexNetwork) -> list[Violation]:
    """Check every multiplex invariant and report what fails.

    Never raises for malformed content; an empty list means the network
    is well formed.
    """
    out: list[Violation] = []
    L, M = net.num_layers, net.num_nodes

    if L < 2:
        out.append(Violation("too few layers", f"num_layers={L}, need >= 2"))
    if net.features.shape != (L, M):
        out.append(
            Violation(
                "feature shape",
                f"features have shape {net.features.shape}, expected ({L}, {M}) "
                "(every layer must hold the same node set)",
            )
        )
    bad = np.argwhere(~np.isfinite(net.positions))
    for i in sorted({int(r) for r, _ in bad}):
        out.append(Violation("non-finite position", f"node {i}"))
    if net.features.ndim == 2:
        for l, i in np.argwhere(~np.isfinite(net.features)):
            out.append(Violation("non-finite feature", f"layer {int(l)}, node {int(i)}"))

    seen = set()
    for e in net.intra_edges:
        where = f"intra edge {tuple(e)}"
        if not 0 <= e.layer < L:
            out.append(Violation("layer out of range", where))
        if not (0 <= e.u < M and 0 <= e.v < M):
            out.append(Violation("node out of range", where))
        if e.u == e.v:
            out.append(Violation("self loop", where))
        key = (e.layer, min(e.u, e.v), max(e.u, e.v))
        if key in seen:
            out.append(Violation("duplicate intra edge", where))
        seen.add(key)
        if not _finite(e.weight):
            out.append(Violation("non-finite weight", where))

    seen = set()
    for e in net.inter_edges:
        where = f"inter edge {tuple(e)}"
        if not (0 <= e.layer_p < L and 0 <= e.layer_q < L):
            out.append(Violation("layer out of range", where))
        if abs(e.layer_p - e.layer_q) != 1:
            out.append(Violation("non-adjacent interlayer edge", where))
        if not (0 <= e.u < M and 0 <= e.v < M):
            out.append(Violation("node out of range", where))
        key = _inter_key(e.layer_p, e.u, e.layer_q, e.v)
        if key in seen:
            out.append(Violation("duplicate inter edge", where))
        seen.add(key)
        if not _finite(e.weight):
            out.append(Violation("non-finite weight", where))
    return out


def _inter_key(lp, u, lq, v):
    # links are undirected; store with the lower layer first
    return (lp, u, lq, v) if lp <= lq else (lq, v, lp, u)


def candidate_links(net: SpatialMultiplexNetwork) -> list[CandidateLink]:
    """Every node pair across each adjacent layer pair, diagonal links included.

    Links are enumerated once per pair with ``source_layer < target_layer``,
    in (layer, i, j) order. ``true_weight`` is filled from ``inter_edges``
    where a label exists.
    """
    labels = {_inter_key(e.layer_p, e.u, e.layer_q, e.v): e.weight for e in net.inter_edges}
    M = net.num_nodes
    out = []
    for p in range(net.num_layers - 1):
        q = p + 1
        for i in range(M):
            for j in range(M):
                out.append(CandidateLink(p, i, q, j, labels.get((p, i, q, j))))
    return out


def layer_adjacency(net: SpatialMultiplexNetwork, layer: int) -> list[list[int]]:
    """Sorted neighbour lists of one layer."""
    nbrs = [set() for _ in range(net.num_nodes)]
    for e in net.intra_edges:
        if e.layer == layer:
            nbrs[e.u].add(e.v)
            nbrs[e.v].add(e.u)
    return [sorted(s) for s in nbrs]


def build_projected_graph(
    net: SpatialMultiplexNetwork,
    link: CandidateLink,
    adjacency: Optional[Sequence[Sequence[int]]] = None,
) -> ProjectedGraph:
    """Project node ``i`` of the source layer next to node ``j`` of the target layer.

    The result holds the projected node (index 0), node ``j`` and its
    target-layer neighbours, every target-layer edge among those nodes,
    and one extra edge joining the projected node to ``j``.

    ``adjacency`` may carry precomputed :func:`layer_adjacency` lists for
    the target layer.
    """
    p, i, q, j = link.source_layer, link.source_node, link.target_layer, link.target_node
    if abs(p - q) != 1:
        raise ValueError(f"layers {p} and {q} are not adjacent")
    if adjacency is None:
        adjacency = layer_adjacency(net, q)

    members = sorted({j, *adjacency[j]})
    local = {v: k + 1 for k, v in enumerate(members)}
    edges = []
    for v in members:
        for w in adjacency[v]:
            if v < w and w in local:
                edges.append((local[v], local[w]))
    edges.append((0, local[j]))
    edges.sort()

    feats = np.empty((len(members) + 1, 1))
    feats[0, 0] = net.features[p, i]
    feats[1:, 0] = net.features[q, members]
    pos = np.empty((len(members) + 1, 2))
    pos[0] = net.positions[i]
    pos[1:] = net.positions[members]
    return ProjectedGraph(
        node_features=_frozen(feats),
        node_positions=_frozen(pos),
        edges=tuple(edges),
        projected_index=0,
        target_index=local[j],
        node_ids=(i, *members),
    )
