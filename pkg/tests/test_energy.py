import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lsaqpbo import (BinaryEnergy, DimensionError, ParameterError, decompose,
                     eval_energy, hamming, hamming_unaries, random_energy)
from lsaqpbo.energy import all_labelings, evaluate_many

from conftest import dyadic_energy, naive_energy


def single_pair(alpha):
    return BinaryEnergy.from_terms(2, [0.0, 0.0], [(0, 1, alpha)])


def test_eval_single_pair():
    e = single_pair(3.0)
    assert eval_energy(e, [1, 1]) == 3.0
    assert eval_energy(e, [0, 1]) == 0.0


def test_eval_hand_instance(hand_energy):
    assert eval_energy(hand_energy, [1, 1, 0]) == 2.0
    for s in all_labelings(3):
        assert eval_energy(hand_energy, s) == pytest.approx(naive_energy(hand_energy, s), abs=1e-12)


def test_eval_length_mismatch(hand_energy):
    with pytest.raises(DimensionError):
        eval_energy(hand_energy, [1, 0])


def test_eval_is_bit_deterministic():
    e = random_energy(40, 0.3, 0.5, 3.0, seed=5)
    s = np.random.default_rng(1).integers(0, 2, 40)
    assert eval_energy(e, s).hex() == eval_energy(e, s).hex()


def test_from_terms_canonicalizes():
    e = BinaryEnergy.from_terms(3, [0, 0, 0], [(2, 0, 1.0), (0, 2, 0.5), (1, 1, -3.0)])
    assert e.pairs == [(0, 2, 1.5)]
    assert e.unary.tolist() == [0.0, -3.0, 0.0]


@pytest.mark.parametrize("bad", [
    dict(pair_p=[1], pair_q=[0], pair_w=[1.0]),
    dict(pair_p=[0, 0], pair_q=[1, 1], pair_w=[1.0, 2.0]),
    dict(pair_p=[0], pair_q=[5], pair_w=[1.0]),
    dict(pair_p=[0], pair_q=[1], pair_w=[np.inf]),
])
def test_constructor_rejects_noncanonical(bad):
    with pytest.raises(ValueError):
        BinaryEnergy(3, np.zeros(3), constant=0.0, **bad)


def test_energy_is_immutable(hand_energy):
    with pytest.raises(ValueError):
        hand_energy.unary[0] = 7.0


def test_decompose_sign_split(hand_energy):
    dec = decompose(hand_energy)
    assert dec.sub.pairs == [(0, 1, -1.0)]
    assert dec.sup_pairs == [(1, 2, 2.0)]
    assert dec.sub.constant == 4.0
    assert np.array_equal(dec.sub.unary, hand_energy.unary)


def test_decompose_all_negative_and_zero():
    e = BinaryEnergy.from_terms(3, [1, 2, 3], [(0, 1, -1.0), (1, 2, 0.0)])
    dec = decompose(e)
    assert dec.sup_pairs == []
    assert dec.sub.pairs == e.pairs


@pytest.mark.parametrize("seed", range(20))
def test_reconstruction_exact(seed):
    n = 3 + seed % 10
    e = random_energy(n, 0.6, 0.5, 2.0, seed)
    dec = decompose(e)
    for s in all_labelings(n):
        assert dec.eval(s) == eval_energy(e, s)
        two_part = eval_energy(dec.sub, s) + dec.sup_value(s)
        assert two_part == pytest.approx(eval_energy(e, s), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_reconstruction_bitwise_on_dyadic(seed):
    e = dyadic_energy(10, seed)
    dec = decompose(e)
    for s in all_labelings(10):
        assert eval_energy(dec.sub, s) + dec.sup_value(s) == eval_energy(e, s)


@pytest.mark.parametrize("a,b,d", [
    ((0, 0, 0), (0, 0, 0), 0),
    ((1, 1, 0), (0, 1, 1), 2),
    ((1,) * 7, (0,) * 7, 7),
])
def test_hamming(a, b, d):
    assert hamming(a, b) == d


def test_hamming_mismatch():
    with pytest.raises(DimensionError):
        hamming([0, 1], [0, 1, 1])


def test_hamming_unaries_examples():
    d, c = hamming_unaries([0, 0], 1.0)
    assert d.tolist() == [1.0, 1.0] and c == 0.0
    d, c = hamming_unaries([1, 0], 2.0)
    assert d.tolist() == [-2.0, 2.0] and c == 2.0
    for s in all_labelings(2):
        assert c + d @ s == 2.0 * hamming(s, [1, 0])
    d, c = hamming_unaries([1, 0, 1], 0.0)
    assert np.all(d == 0) and c == 0.0


def test_hamming_unaries_negative_lambda():
    with pytest.raises(ParameterError):
        hamming_unaries([0, 1], -0.5)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=12),
       st.floats(0, 100, allow_nan=False))
def test_hamming_unaries_identity(s0, lam):
    d, c = hamming_unaries(s0, lam)
    S = all_labelings(len(s0))
    expected = lam * (S != np.array(s0)).sum(axis=1)
    np.testing.assert_allclose(c + S @ d, expected, rtol=1e-12, atol=1e-9)


def test_evaluate_many_matches_naive(hand_energy):
    S = all_labelings(3)
    np.testing.assert_allclose(evaluate_many(hand_energy, S),
                               [naive_energy(hand_energy, s) for s in S])


def test_all_labelings_lexicographic():
    assert all_labelings(2).tolist() == [[0, 0], [0, 1], [1, 0], [1, 1]]
