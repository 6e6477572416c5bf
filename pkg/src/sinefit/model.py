"""Sinusoid model: parameter space, synthetic data, structural landmarks.

The model is undamped simple harmonic motion x(t) = A*sin(w*t + phi) with
no vertical offset.  Everything here is a pure function of its inputs; the
noise generator state is local to each ``synthesize`` call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .normal import normal_quantile

TWO_PI = 2.0 * math.pi


def wrap_phase(phi: float) -> float:
    """Wrap an angle into the canonical interval [-pi, pi)."""
    return (phi + math.pi) % TWO_PI - math.pi


@dataclass(frozen=True)
class SinusoidParams:
    """The triple (A, f, phi) describing x(t) = A*sin(2*pi*f*t + phi).

    amplitude is in signal units (> 0), frequency_hz in Hz (> 0), and
    phase_rad in radians.  Phases outside [-pi, pi) are wrapped on
    construction, never rejected.
    """

    amplitude: float
    frequency_hz: float
    phase_rad: float

    def __post_init__(self):
        if not self.amplitude > 0:
            raise ValueError("amplitude must be positive")
        if not self.frequency_hz > 0:
            raise ValueError("frequency_hz must be positive")
        if not math.isfinite(self.phase_rad):
            raise ValueError("phase_rad must be finite")
        object.__setattr__(self, "phase_rad", wrap_phase(self.phase_rad))

    def omega(self) -> float:
        """Angular frequency 2*pi*f in rad/s."""
        return TWO_PI * self.frequency_hz

    def period(self) -> float:
        """Duration of one cycle, 1/f."""
        return 1.0 / self.frequency_hz

    def time_delay(self) -> float:
        """Horizontal shift phi/omega; shares the sign of the phase."""
        return self.phase_rad / self.omega()


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """A uniformly sampled real-valued record.

    Sample i sits at time start_time + i*dt.  The sample array is copied
    and frozen so instances can be shared across threads safely.
    """

    start_time: float
    dt: float
    samples: np.ndarray

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        samples = np.array(self.samples, dtype=float)
        if samples.ndim != 1 or samples.size < 2:
            raise ValueError("a record needs at least two samples")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return self.samples.size

    def times(self) -> np.ndarray:
        return self.start_time + self.dt * np.arange(self.samples.size)


@dataclass(frozen=True)
class NoiseSpec:
    """Additive Gaussian noise: sigma in signal units, deterministic per seed."""

    sigma: float
    seed: int
    kind: str = "gaussian"

    def __post_init__(self):
        if self.kind != "gaussian":
            raise ValueError(f"unsupported noise kind {self.kind!r}")
        if not self.sigma >= 0:
            raise ValueError("sigma must be non-negative")


def evaluate(params: SinusoidParams, t):
    """Evaluate A*sin(omega*t + phi) at a scalar time or an array of times."""
    return params.amplitude * np.sin(params.omega() * t + params.phase_rad)


def standard_normal_draws(seed: int, n: int) -> np.ndarray:
    """n reproducible standard-normal draws.

    Inverse-CDF transform of PCG64 uniforms.  The bit-generator stream is
    stable across platforms for a fixed seed, and the quantile function is
    deterministic, so the same (seed, n) always yields the same values.
    """
    rng = np.random.default_rng(seed)
    u = rng.random(n)
    # rng.random() can return exactly 0.0; keep the quantile finite.
    return normal_quantile(np.maximum(u, 2.0 ** -54))


def synthesize(params: SinusoidParams, noise: NoiseSpec, n: int,
               dt: float = 1.0, start: float = 0.0) -> TimeSeries:
    """Sample the sinusoid on a uniform grid and add seeded Gaussian noise.

    With sigma = 0 the output equals ``evaluate`` pointwise, bit for bit.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if not dt > 0:
        raise ValueError("dt must be positive")
    t = start + dt * np.arange(n)
    samples = evaluate(params, t)
    if noise.sigma > 0:
        samples = samples + noise.sigma * standard_normal_draws(noise.seed, n)
    return TimeSeries(start, dt, samples)


@dataclass(frozen=True)
class Landmark:
    """One structural point of the sinusoid: the time where w*t + phi = k*pi."""

    k: float
    time: float
    value: float


@dataclass(frozen=True)
class LandmarkTable:
    """Zero crossings and extrema of one time-delayed cycle.

    ``period_bounds`` names the pair of landmarks (as multiples of pi)
    whose spacing realizes one period on t >= 0: the two maxima for a
    delayed sinusoid (phase > 0), the two upward crossings for a
    time-ahead one (phase < 0).
    """

    entries: tuple[Landmark, ...]
    value_at_origin: float
    period: float
    period_bounds: tuple[float, float]

    def time_of(self, k: float) -> float:
        for entry in self.entries:
            if entry.k == k:
                return entry.time
        raise KeyError(f"no landmark at k = {k}")

    def value_of(self, k: float) -> float:
        for entry in self.entries:
            if entry.k == k:
                return entry.value
        raise KeyError(f"no landmark at k = {k}")


_LANDMARK_KS = (0.0, 0.5, 1.0, 1.5, 2.0, 2.5)


def landmarks(params: SinusoidParams) -> LandmarkTable:
    """Landmark times t_k = (k*pi - phi)/omega for k in 0, 1/2, ..., 5/2.

    The period is reported as a landmark difference rather than 1/f so the
    table is self-consistent: t_{5pi/2} - t_{pi/2} for a delayed sinusoid,
    t_{2pi} - t_0 for a time-ahead one (phase < 0).
    """
    w = params.omega()
    phi = params.phase_rad
    entries = []
    for k in _LANDMARK_KS:
        t_k = (k * math.pi - phi) / w
        entries.append(Landmark(k, t_k, float(evaluate(params, t_k))))
    if phi < 0:
        bounds = (0.0, 2.0)
    else:
        bounds = (0.5, 2.5)
    table = {entry.k: entry.time for entry in entries}
    period = table[bounds[1]] - table[bounds[0]]
    return LandmarkTable(tuple(entries), float(evaluate(params, 0.0)),
                         period, bounds)
