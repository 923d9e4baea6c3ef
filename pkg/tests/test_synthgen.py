import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from msgcn.graph_core import layer_adjacency, validate
from msgcn.synthgen import (
    GeneratorConfig,
    _feature_update,
    gen_topology,
    generate_dataset,
    generate_network,
    make_manifest,
    train_test_split,
)

TABLE1 = [
    GeneratorConfig(t, n, L)
    for t, lo in (("complete", 2), ("random", 4), ("small_world", 4))
    for n in range(lo, 11)
    for L in (2, 3)
]


def test_complete_edge_count():
    assert len(gen_topology(GeneratorConfig("complete", 4), np.random.default_rng(0))) == 6


def test_random_mean_edge_count():
    cfg = GeneratorConfig("random", 6, p=0.5)
    rng = np.random.default_rng(123)
    counts = [len(gen_topology(cfg, rng)) for _ in range(10_000)]
    assert abs(np.mean(counts) - 7.5) < 0.25


def test_small_world_without_shortcuts_is_ring():
    cfg = GeneratorConfig("small_world", 6, p=0.0, k=2)
    edges = gen_topology(cfg, np.random.default_rng(0))
    assert edges == sorted([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)])


@pytest.mark.parametrize("n,k", [(5, 2), (7, 4), (10, 4)])
def test_small_world_ring_size(n, k):
    edges = gen_topology(GeneratorConfig("small_world", n, p=0.0, k=k), np.random.default_rng(0))
    assert len(edges) == n * k // 2


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(4, 10), st.sampled_from([2, 4]), st.floats(0, 1))
def test_small_world_keeps_ring(seed, n, k, p):
    if k >= n:
        k = 2
    ring = set(gen_topology(GeneratorConfig("small_world", n, p=0.0, k=k), np.random.default_rng(0)))
    got = gen_topology(GeneratorConfig("small_world", n, p=p, k=k), np.random.default_rng(seed))
    assert ring <= set(got)
    assert all(u < v for u, v in got)
    assert len(got) <= len(ring) * 2


def test_feature_update_hand_example():
    x = _feature_update(2, [(0, 1)], [0.5], np.array([0.4, 0.8]))
    np.testing.assert_allclose(x, [0.40, 0.20], atol=1e-15)
    assert (x[0] + x[1]) / 2 == pytest.approx(0.30, abs=1e-15)


def test_feature_update_is_single_pass():
    x0 = np.array([0.4, 0.8, 0.1])
    edges, w = [(0, 1), (1, 2), (0, 2)], [0.5, 0.25, 0.75]
    once = _feature_update(3, edges, w, x0)
    assert not np.allclose(_feature_update(3, edges, w, once), once)


def _replay(cfg, seed):
    """Independent re-derivation of a generated network from the same draw order."""
    rng = np.random.default_rng(seed)
    cfg = cfg.resolve(rng)
    n, L = cfg.num_nodes, cfg.num_layers
    pos = rng.random((n, 2))
    edges = gen_topology(cfg, rng)
    w = rng.random((L, len(edges)))
    x0 = rng.random((L, n))
    x = np.zeros((L, n))
    for l in range(L):
        for i in range(n):
            for e, (u, v) in enumerate(edges):
                if u == i:
                    x[l, i] += w[l, e] * x0[l, v]
                elif v == i:
                    x[l, i] += w[l, e] * x0[l, u]
    return pos, edges, w, x


@pytest.mark.parametrize("cfg", [GeneratorConfig("complete", 5), GeneratorConfig("small_world", 7, 3), GeneratorConfig("random", 6)])
def test_generate_network_matches_replay(cfg):
    net = generate_network(cfg, np.random.default_rng(42))
    pos, edges, w, x = _replay(cfg, 42)
    assert np.array_equal(net.positions, pos)
    np.testing.assert_allclose(net.features, x, rtol=1e-13, atol=1e-15)
    for l in range(cfg.num_layers):
        got = sorted((e.u, e.v, e.weight) for e in net.intra_edges if e.layer == l)
        assert got == sorted((u, v, w[l, k]) for k, (u, v) in enumerate(edges))


def test_eq8_exact_and_complete():
    for seed in range(20):
        net = generate_network(GeneratorConfig("random", 6, 3, seed=seed), np.random.default_rng(seed))
        x = net.features
        assert len(net.inter_edges) == 2 * 36
        for e in net.inter_edges:
            assert e.weight == (x[e.layer_p, e.u] + x[e.layer_q, e.v]) / 2


def test_complete_degree():
    net = generate_network(GeneratorConfig("complete", 7, 3), np.random.default_rng(1))
    for l in range(3):
        A = layer_adjacency(net, l)
        assert all(len(A[i]) == 6 for i in range(7))


def test_layers_share_topology_not_weights():
    net = generate_network(GeneratorConfig("random", 8, 2), np.random.default_rng(3))
    e0 = [(e.u, e.v) for e in net.intra_edges if e.layer == 0]
    e1 = [(e.u, e.v) for e in net.intra_edges if e.layer == 1]
    assert e0 == e1
    w0 = [e.weight for e in net.intra_edges if e.layer == 0]
    w1 = [e.weight for e in net.intra_edges if e.layer == 1]
    assert w0 != w1


def test_every_table1_config_validates():
    for cfg in TABLE1:
        for s in range(3):
            assert validate(generate_network(cfg, np.random.default_rng(s))) == []


def test_dataset_determinism_and_seeds():
    m = make_manifest(GeneratorConfig("small_world", 6, seed=9), 50)
    assert len(set(m.seeds)) == 50
    a, b = generate_dataset(m), generate_dataset(make_manifest(GeneratorConfig("small_world", 6, seed=9), 50))
    assert all(x == y for x, y in zip(a, b))
    other = generate_dataset(make_manifest(GeneratorConfig("small_world", 6, seed=10), 1))
    assert not np.array_equal(a[0].positions, other[0].positions)


def test_split_80_20():
    tr, te = train_test_split(list(range(500)))
    assert tr == list(range(400)) and te == list(range(400, 500))
    assert make_manifest(GeneratorConfig(), 500).train_count == 400


def test_p_range_sampled_per_network():
    cfg = GeneratorConfig("random", 6, p_range=(0.3, 0.7))
    ps = {cfg.resolve(np.random.default_rng(s)).p for s in range(20)}
    assert len(ps) == 20 and all(0.3 <= p <= 0.7 for p in ps)
    ks = {GeneratorConfig("small_world", 6).resolve(np.random.default_rng(s)).k for s in range(40)}
    assert ks == {2, 4}


@pytest.mark.parametrize(
    "kw",
    [
        dict(network_type="lattice"),
        dict(network_type="random", num_nodes=3),
        dict(num_nodes=11),
        dict(num_layers=4),
        dict(network_type="small_world", num_nodes=6, k=3),
        dict(network_type="small_world", num_nodes=4, k=4),
        dict(network_type="random", p=1.5),
    ],
)
def test_config_rejects(kw):
    with pytest.raises(ValueError):
        GeneratorConfig(**kw)


def test_config_accepts_hyphen():
    assert GeneratorConfig("small-world", 6).network_type == "small_world"
