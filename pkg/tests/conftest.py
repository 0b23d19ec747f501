import numpy as np
import pytest

from kernelwave import DEFAULT_DELTAS, lookup, standard_config, sweep_rate

# pinned rate-study setup: wide small Gaussian, N=1024 on [-30, 30), s=2, T=1,
# geometric delta ladder 0.4 -> 0.05
ACCEPTANCE_PAIRS = {
    "bbm_vs_hopf": ("bbm", "dirac", (1.8, 2.2)),
    "rosenau_vs_hopf": ("rosenau", "dirac", (3.7, 4.3)),
    "bbm_vs_rosenau": ("bbm", "rosenau", (1.8, 2.2)),
    "rectangular_vs_hopf": ("rectangular", "dirac", (1.8, 2.2)),
    "five_point_vs_hopf": ("five_point", "dirac", (3.7, 4.3)),
    "fractional075_vs_hopf": ("fractional:gamma=0.75", "dirac", (1.3, 1.7)),
    "fractional1_vs_hopf": ("fractional:gamma=1", "dirac", (1.8, 2.2)),
}

INTEGER_ORDER_PAIRS = [
    "bbm_vs_hopf",
    "rosenau_vs_hopf",
    "bbm_vs_rosenau",
    "rectangular_vs_hopf",
    "five_point_vs_hopf",
    "fractional1_vs_hopf",
]


@pytest.fixture(scope="session")
def standard_sweep():
    """Memoized standard-parameter rate sweeps, shared across test modules."""
    cache = {}

    def run(name, s=2.0):
        key = (name, s)
        if key not in cache:
            k1, k2, _ = ACCEPTANCE_PAIRS[name]
            cfg = standard_config(k1, s=s)
            cache[key] = sweep_rate(lookup(k1), lookup(k2), cfg, DEFAULT_DELTAS)
        return cache[key]

    return run


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_field_values(rng, n, scale=1.0):
    return scale * rng.standard_normal(n)
