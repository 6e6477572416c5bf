"""Autocorrelation machinery.

Three ACF flavors live here:

* the discrete circular (wrap-around) serial correlation of a sampled
  record, normalized by its lag-0 value and symmetric about lag N/2;
* the closed-form "full model" ACF of A*sin(w*t + phi) obtained by
  integrating the sine product over one period in t, which keeps all
  three parameters in play;
* the "reduced model" ACF cos(w*tau) obtained by integrating over a
  random phase instead, which inverts cleanly to a frequency.

The closed forms work in lag-sample units: when lags count samples, the
angular frequency fed to them must be radians per sample (fold dt into
the frequency before constructing the parameter object).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import SinusoidParams, TimeSeries, TWO_PI


class DegenerateParametersError(ValueError):
    """The analytic normalization denominator vanished for these parameters."""


DISCRETE_CIRCULAR = "discrete_circular"
MODEL_FULL = "model_full"
MODEL_REDUCED = "model_reduced"
_KINDS = (DISCRETE_CIRCULAR, MODEL_FULL, MODEL_REDUCED)

# How far outside [-1, 1] a correlation value may sit before it is treated
# as a non-correlation input rather than roundoff.
_CLAMP_SLACK = 1e-6


@dataclass(frozen=True, eq=False)
class AcfSeries:
    """Lag-indexed correlation values; values[tau] is the value at lag tau."""

    kind: str
    values: np.ndarray

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown ACF kind {self.kind!r}")
        values = np.array(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def max_lag(self) -> int:
        return self.values.size - 1


@dataclass(frozen=True)
class IntegralParams:
    """Arguments of the definite integral of sin(a*x + b)*sin(a*x + d) over [u, v]."""

    a: float
    b: float
    d: float
    u: float
    v: float

    def __post_init__(self):
        if self.v < self.u:
            raise ValueError("upper limit v must be >= lower limit u")


def circular_acf(record: TimeSeries, max_lag: int | None = None) -> AcfSeries:
    """Mean-centered circular serial correlation, normalized at lag 0.

    values[tau] = sum_i y_i * y_{(i+tau) mod N} / sum_i y_i^2 with
    y = x - mean(x).  The full-lag version (max_lag = N-1, the default)
    satisfies values[tau] == values[N - tau]: the fold-over symmetry that
    makes lags beyond N/2 redundant.
    """
    x = record.samples
    n = x.size
    if max_lag is None:
        max_lag = n - 1
    if not 1 <= max_lag <= n - 1:
        raise ValueError(f"max_lag must be in [1, {n - 1}]")
    y = x - x.mean()
    denom = float(y @ y)
    if denom == 0.0:
        raise ValueError("constant record has zero variance")
    values = np.empty(max_lag + 1)
    for tau in range(max_lag + 1):
        values[tau] = float(y @ np.roll(y, -tau)) / denom
    return AcfSeries(DISCRETE_CIRCULAR, values)


def sine_product_integral(p: IntegralParams) -> float:
    """Closed form of the definite integral of sin(a*x + b)*sin(a*x + d).

    Over [u, v] this equals
    (v-u)/2 * cos(b-d) - sin(a*(v-u)) * cos(a*(u+v) + b + d) / (2*a).
    """
    if p.a == 0:
        raise ValueError("a must be non-zero")
    span = p.v - p.u
    return (span / 2.0 * math.cos(p.b - p.d)
            - math.sin(p.a * span) * math.cos(p.a * (p.u + p.v) + p.b + p.d)
            / (2.0 * p.a))


def _coupling_and_denominator(w: float, phi: float) -> tuple[float, float]:
    two_pi_w = TWO_PI * w
    coupling = math.sin(two_pi_w) / two_pi_w
    denominator = 1.0 - coupling * math.cos(two_pi_w + 2.0 * phi)
    return coupling, denominator


def normalizing_constant(params: SinusoidParams) -> float:
    """Normalizing constant of the full-model ACF, C = (2/A^2) * D.

    D = 1 - sin(2*pi*w)*cos(2*pi*w + 2*phi)/(2*pi*w) is the lag-0 value of
    the raw one-period sine-product integral divided by A^2/2 (it is also
    the denominator that scales the full-model ACF to 1 at lag 0).
    Dividing the raw integral by C*(A^2/2)^2 reproduces ``model_acf_full``.
    """
    w = params.omega()
    _, denominator = _coupling_and_denominator(w, params.phase_rad)
    if abs(denominator) < 1e-12:
        raise DegenerateParametersError(
            "normalization denominator vanishes for these parameters")
    return 2.0 / params.amplitude ** 2 * denominator


def model_acf_full(params: SinusoidParams, max_lag: int) -> AcfSeries:
    """Closed-form ACF of the sinusoid with all three parameters retained.

    values[tau] = [cos(w*tau) - c*cos((2*pi + tau)*w + 2*phi)] / D with
    c = sin(2*pi*w)/(2*pi*w) and D = 1 - c*cos(2*pi*w + 2*phi), so
    values[0] = 1 exactly.  Not an even function of tau in general, unlike
    the reduced model.
    """
    if max_lag < 1:
        raise ValueError("max_lag must be at least 1")
    w = params.omega()
    phi = params.phase_rad
    coupling, denominator = _coupling_and_denominator(w, phi)
    if abs(denominator) < 1e-12:
        raise DegenerateParametersError(
            "normalization denominator vanishes for these parameters")
    taus = np.arange(max_lag + 1, dtype=float)
    values = (np.cos(w * taus)
              - coupling * np.cos((TWO_PI + taus) * w + 2.0 * phi)) / denominator
    return AcfSeries(MODEL_FULL, values)


def model_acf_reduced(params: SinusoidParams, max_lag: int) -> AcfSeries:
    """Random-phase ACF cos(w*tau); the A^2/2 scale is dropped outright."""
    if max_lag < 1:
        raise ValueError("max_lag must be at least 1")
    taus = np.arange(max_lag + 1, dtype=float)
    return AcfSeries(MODEL_REDUCED, np.cos(params.omega() * taus))


def frequency_from_acf(r_value: float, tau: int) -> float:
    """Invert the reduced-model ACF: f = arccos(r)/(2*pi*tau).

    tau counts lags, so the result is in cycles per lag unit; divide by dt
    for Hz when lags are samples.  r is clamped into [-1, 1] when it is
    within 1e-6 of the interval; anything farther out is rejected as not
    being a correlation value.  r = 1 maps to 0, which carries no
    frequency information, and callers must treat it that way.
    """
    if tau < 1:
        raise ValueError("tau must be at least 1")
    if not -1.0 - _CLAMP_SLACK <= r_value <= 1.0 + _CLAMP_SLACK:
        raise ValueError(f"{r_value} is too far outside [-1, 1] to be an ACF value")
    r = min(1.0, max(-1.0, r_value))
    return math.acos(r) / (TWO_PI * tau)
