import math

import pytest
from hypothesis import settings

import sinefit as sf
from sinefit.model import standard_normal_draws

settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile("default")

# The running example used throughout: A=2, f=0.05 Hz, phi=35 degrees,
# N=100 samples at dt=1 with sigma=0.5 Gaussian noise.
AMPLITUDE = 2.0
FREQUENCY = 0.05
PHASE = 0.6109
PHASE_EXACT = 7.0 * math.pi / 36.0
SIGMA = 0.5
N = 100


@pytest.fixture(scope="session")
def demo_params():
    return sf.SinusoidParams(AMPLITUDE, FREQUENCY, PHASE)


@pytest.fixture(scope="session")
def noisy_series():
    """Factory for seeded noisy records of the demo configuration."""

    def make(seed, sigma=SIGMA, n=N):
        params = sf.SinusoidParams(AMPLITUDE, FREQUENCY, PHASE)
        return sf.synthesize(params, sf.NoiseSpec(sigma=sigma, seed=seed), n)

    return make


@pytest.fixture(scope="session")
def pure_noise():
    """Factory for seeded signal-free Gaussian records."""

    def make(seed, sigma=1.0, n=N):
        return sf.TimeSeries(0.0, 1.0, sigma * standard_normal_draws(seed, n))

    return make


@pytest.fixture(scope="session")
def pipeline_reports(noisy_series):
    """Default-config pipeline runs over 100 fixed seeds, shared by the
    Monte Carlo tests and the acceptance suite."""
    config = sf.PipelineConfig()
    return [sf.estimate_parameters(noisy_series(seed), config)
            for seed in range(100)]
