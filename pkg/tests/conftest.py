import itertools

import numpy as np
import pytest

from lsaqpbo import BinaryEnergy


def naive_energy(e, s):
    """Term-by-term Python evaluation, independent of the library paths."""
    total = e.constant
    for p in range(e.num_vars):
        total += e.unary[p] * s[p]
    for p, q, w in e.pairs:
        total += w * s[p] * s[q]
    return total


def enumerate_min(e):
    best = None
    for bits in itertools.product((0, 1), repeat=e.num_vars):
        v = naive_energy(e, bits)
        if best is None or v < best[1]:
            best = (np.array(bits), v)
    return best


def dyadic_energy(n, seed, density=0.5):
    """Random energy with coefficients k/8, so every float sum is exact."""
    rng = np.random.default_rng(seed)
    pairs = [(p, q, rng.integers(-40, 41) / 8.0)
             for p in range(n) for q in range(p + 1, n) if rng.random() < density]
    return BinaryEnergy.from_terms(n, rng.integers(-40, 41, n) / 8.0, pairs,
                                   rng.integers(-40, 41) / 8.0)


@pytest.fixture
def hand_energy():
    return BinaryEnergy.from_terms(3, [1.0, -2.0, 0.5], [(0, 1, -1.0), (1, 2, 2.0)], 4.0)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[key])
