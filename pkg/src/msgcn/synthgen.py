"""Synthetic spatial multiplex networks with known interlayer weights.

Generation follows four steps: random positions shared by all layers, one
topology replicated to every layer with fresh uniform weights per layer,
uniform node features, then a single synchronous feature update

    x_ip <- sum_j w(v_ip, v_jp) * x_jp

followed by interlayer weights ``w(v_ip, v_jq) = (x_ip + x_jq) / 2`` for
every node pair of every adjacent layer pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Optional

import numpy as np

from .graph_core import SpatialMultiplexNetwork

__all__ = [
    "NETWORK_TYPES",
    "GeneratorConfig",
    "DatasetManifest",
    "gen_topology",
    "generate_network",
    "generate_dataset",
    "make_manifest",
    "train_test_split",
]

NETWORK_TYPES = ("complete", "random", "small_world")
_MIN_NODES = {"complete": 2, "random": 4, "small_world": 4}
MAX_NODES = 10
K_CHOICES = (2, 4)


@dataclass(frozen=True)
class GeneratorConfig:
    """Parameters of one synthetic network family.

    ``p`` is the Erdős–Rényi link probability for ``random`` and the
    shortcut probability for ``small_world``. Passing ``p_range`` instead
    draws ``p`` uniformly per network; leaving ``k`` as None for
    ``small_world`` draws it per network from the even values below
    ``num_nodes`` in {2, 4}.
    """

    network_type: str = "complete"
    num_nodes: int = 5
    num_layers: int = 2
    p: Optional[float] = None
    k: Optional[int] = None
    p_range: Optional[tuple[float, float]] = None
    seed: int = 0

    def __post_init__(self):
        t = self.network_type.replace("-", "_")
        object.__setattr__(self, "network_type", t)
        if t not in NETWORK_TYPES:
            raise ValueError(f"unknown network type {self.network_type!r}")
        lo = _MIN_NODES[t]
        if not lo <= self.num_nodes <= MAX_NODES:
            raise ValueError(f"{t} networks need {lo}..{MAX_NODES} nodes, got {self.num_nodes}")
        if self.num_layers not in (2, 3):
            raise ValueError(f"num_layers must be 2 or 3, got {self.num_layers}")
        if self.p is not None and not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if self.p_range is not None:
            a, b = self.p_range
            if not 0.0 <= a <= b <= 1.0:
                raise ValueError(f"bad p range {self.p_range}")
            object.__setattr__(self, "p_range", (float(a), float(b)))
        if t != "complete" and self.p is None and self.p_range is None:
            object.__setattr__(self, "p_range", (0.3, 0.7))
        if self.k is not None:
            if self.k % 2 or self.k < 2 or self.k >= self.num_nodes:
                raise ValueError(f"k must be even, >= 2 and < num_nodes, got {self.k}")

    def resolve(self, rng: np.random.Generator) -> "GeneratorConfig":
        """Fix ``p`` and ``k`` to point values, sampling ranges with ``rng``."""
        p, k = self.p, self.k
        if self.network_type != "complete" and p is None:
            p = float(rng.uniform(*self.p_range))
        if self.network_type == "small_world" and k is None:
            k = int(rng.choice([c for c in K_CHOICES if c < self.num_nodes]))
        return replace(self, p=p, k=k, p_range=None if p is not None else self.p_range)


@dataclass(frozen=True)
class DatasetManifest:
    config: GeneratorConfig
    count: int
    seeds: tuple = field(default=())
    train_fraction: float = 0.8

    @property
    def train_count(self) -> int:
        return int(self.count * self.train_fraction + 1e-9)


def make_manifest(config: GeneratorConfig, count: int, train_fraction: float = 0.8) -> DatasetManifest:
    """Derive ``count`` distinct per-network seeds from ``config.seed``."""
    ss = np.random.SeedSequence(config.seed)
    seeds = tuple(int(c.generate_state(1, dtype=np.uint64)[0]) for c in ss.spawn(count))
    if len(set(seeds)) != count:  # pragma: no cover - 64-bit collision
        raise RuntimeError("per-network seed collision")
    return DatasetManifest(config, count, seeds, train_fraction)


def gen_topology(config: GeneratorConfig, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Undirected edge list ``(u, v)``, ``u < v``, of one layer."""
    n = config.num_nodes
    t = config.network_type
    if t == "complete":
        return list(combinations(range(n), 2))
    if t == "random":
        pairs = list(combinations(range(n), 2))
        keep = rng.random(len(pairs)) < config.p
        return [e for e, kp in zip(pairs, keep) if kp]

    # Newman-Watts-Strogatz: ring lattice plus shortcuts, nothing rewired
    k = config.k
    adj = [set() for _ in range(n)]
    ring = []
    for d in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + d) % n
            if v not in adj[u]:
                adj[u].add(v)
                adj[v].add(u)
                ring.append((u, v))
    for u, _ in ring:
        if rng.random() < config.p:
            free = [w for w in range(n) if w != u and w not in adj[u]]
            if free:
                w = free[int(rng.integers(len(free)))]
                adj[u].add(w)
                adj[w].add(u)
    return sorted((u, v) for u in range(n) for v in adj[u] if u < v)


def _feature_update(n, edges, weights, x):
    W = np.zeros((n, n))
    for (u, v), w in zip(edges, weights):
        W[u, v] = W[v, u] = w
    return W @ x


def generate_network(config: GeneratorConfig, rng: np.random.Generator) -> SpatialMultiplexNetwork:
    """Draw one network. Range-valued ``p``/``k`` are sampled first from ``rng``."""
    config = config.resolve(rng)
    n, L = config.num_nodes, config.num_layers
    positions = rng.random((n, 2))
    edges = gen_topology(config, rng)
    weights = rng.random((L, len(edges)))
    x0 = rng.random((L, n))

    x = np.stack([_feature_update(n, edges, weights[l], x0[l]) for l in range(L)])
    intra = [(l, u, v, weights[l, e]) for l in range(L) for e, (u, v) in enumerate(edges)]
    inter = [
        (p, i, p + 1, j, (x[p, i] + x[p + 1, j]) / 2)
        for p in range(L - 1)
        for i in range(n)
        for j in range(n)
    ]
    return SpatialMultiplexNetwork(L, positions, x, intra, inter)


def generate_dataset(manifest: DatasetManifest) -> list[SpatialMultiplexNetwork]:
    nets = []
    for s in manifest.seeds:
        rng = np.random.default_rng(s)
        nets.append(generate_network(manifest.config, rng))
    return nets


def train_test_split(items, train_fraction: float = 0.8):
    """First ``floor(len * train_fraction)`` items train, the rest test."""
    cut = int(len(items) * train_fraction + 1e-9)
    return list(items[:cut]), list(items[cut:])
