import numpy as np
import pytest

from lsaqpbo import (BinaryEnergy, NonSubmodularError, build_flow_network,
                     eval_energy, max_flow, minimize_submodular, random_energy)
from lsaqpbo.energy import all_labelings
from lsaqpbo.maxflow import FlowNetwork

from conftest import enumerate_min


def test_single_arc():
    net = FlowNetwork(0)
    net.add_arc(net.source, net.sink, 7.0)
    assert max_flow(net)[0] == 7.0


def test_two_disjoint_paths():
    net = FlowNetwork(2)
    s, t = net.source, net.sink
    for v in (0, 1):
        net.add_arc(s, v, 1.0)
        net.add_arc(v, t, 1.0)
    assert max_flow(net)[0] == 2.0


def test_bottleneck_and_reverse_arc_use():
    # classic case where an augmenting path must cancel flow on a middle arc
    net = FlowNetwork(2)
    s, t = net.source, net.sink
    net.add_arc(s, 0, 10.0)
    net.add_arc(s, 1, 10.0)
    net.add_arc(0, 1, 1.0)
    net.add_arc(0, t, 4.0)
    net.add_arc(1, t, 9.0)
    value, labels = max_flow(net)
    assert value == 13.0
    assert net.cut_cost(labels) == 13.0


def test_single_unary_network():
    e = BinaryEnergy.from_terms(1, [5.0])
    net = build_flow_network(e)
    assert net.offset == 0.0
    assert net.cut_cost([1]) == 5.0 and net.cut_cost([0]) == 0.0
    s, v = minimize_submodular(e)
    assert s.tolist() == [0] and v == 0.0


@pytest.mark.parametrize("unary,pairs,best", [
    ([0.0, 0.0], [(0, 1, -2.0)], -2.0),
    ([3.0, -3.0], [(0, 1, -1.0)], -3.0),
    ([1.0, 1.0], [(0, 1, -3.0)], -1.0),
])
def test_small_minima(unary, pairs, best):
    e = BinaryEnergy.from_terms(2, unary, pairs)
    assert enumerate_min(e)[1] == best
    net = build_flow_network(e)
    value, _ = max_flow(net)
    assert value + net.offset == pytest.approx(best, abs=1e-12)
    s, v = minimize_submodular(e)
    assert v == best and eval_energy(e, s) == v


def test_zero_energy_returns_zeros():
    e = BinaryEnergy.from_terms(4, [0, 0, 0, 0], [], constant=1.5)
    s, v = minimize_submodular(e)
    assert s.tolist() == [0, 0, 0, 0] and v == 1.5


def test_rejects_supermodular():
    e = BinaryEnergy.from_terms(2, [0, 0], [(0, 1, 1.0)])
    with pytest.raises(NonSubmodularError):
        minimize_submodular(e)
    with pytest.raises(NonSubmodularError):
        build_flow_network(e)


@pytest.mark.parametrize("seed", range(15))
def test_cut_identity(seed):
    n = 2 + seed % 9
    e = random_energy(n, 0.6, 0.0, 2.0, seed)
    net = build_flow_network(e)
    assert all(c >= 0 for c in net.capacity)
    for s in all_labelings(n):
        assert net.cut_cost(s) + net.offset == pytest.approx(eval_energy(e, s), abs=1e-12)


@pytest.mark.parametrize("seed", range(15))
def test_conservation_and_capacity(seed):
    e = random_energy(14, 0.5, 0.0, 1.0, seed)
    net = build_flow_network(e)
    value, labels = max_flow(net)
    f = net.flow()
    cap = np.asarray(net.capacity)
    assert np.all(f <= cap + 1e-12)
    np.testing.assert_allclose(f[0::2], -f[1::2])
    head = np.asarray(net.head)
    excess = np.zeros(net.num_nodes)
    np.add.at(excess, head, f)
    np.testing.assert_allclose(excess[:net.num_vars], 0.0, atol=1e-12)
    assert excess[net.sink] == pytest.approx(value, abs=1e-12)
    assert net.cut_cost(labels) == pytest.approx(value, abs=1e-12)


@pytest.mark.parametrize("seed", range(40))
def test_matches_enumeration(seed):
    e = random_energy(4 + seed % 9, 0.5, 0.0, 1.0, seed)
    _, v = minimize_submodular(e)
    assert v == pytest.approx(enumerate_min(e)[1], rel=1e-9, abs=1e-12)


def test_grid_instance():
    # 20x20 4-connected attraction grid with noisy unaries
    rng = np.random.default_rng(3)
    h = w = 20
    idx = np.arange(h * w).reshape(h, w)
    pairs = [(a, b, -0.8) for a, b in zip(idx[:, :-1].ravel(), idx[:, 1:].ravel())]
    pairs += [(a, b, -0.8) for a, b in zip(idx[:-1].ravel(), idx[1:].ravel())]
    e = BinaryEnergy.from_terms(h * w, rng.normal(0, 1, h * w), pairs)
    s, v = minimize_submodular(e)
    # no single flip improves a global minimum
    for p in range(h * w):
        t = s.copy()
        t[p] ^= 1
        assert eval_energy(e, t) >= v - 1e-12
