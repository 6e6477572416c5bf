"""Standard normal quantile function (inverse CDF).

Uses Acklam's rational approximation, which is accurate to better than
1.2e-9 in absolute error over the whole open unit interval.  That is more
than enough for the small false-alarm rates used by the screening gates
(e.g. 0.001) and for inverse-CDF sampling of Gaussian noise.
"""

from __future__ import annotations

import numpy as np

_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00)

_P_LOW = 0.02425
_P_HIGH = 1.0 - _P_LOW


def _central(p):
    q = p - 0.5
    r = q * q
    num = ((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]
    den = ((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0
    return num * q / den


def _tail(p):
    # Lower-tail branch; callers negate for the upper tail.
    q = np.sqrt(-2.0 * np.log(p))
    num = ((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]
    den = (((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0
    return num / den


def normal_quantile(p):
    """Return z such that P(Z <= z) = p for a standard normal Z.

    Accepts a scalar or an array of probabilities strictly inside (0, 1);
    returns a float for scalar input, an ndarray otherwise.
    """
    arr = np.asarray(p, dtype=float)
    if np.any((arr <= 0.0) | (arr >= 1.0)) or np.any(~np.isfinite(arr)):
        raise ValueError("probability must lie strictly inside (0, 1)")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.empty_like(arr)

    low = arr < _P_LOW
    high = arr > _P_HIGH
    mid = ~(low | high)
    if np.any(mid):
        out[mid] = _central(arr[mid])
    if np.any(low):
        out[low] = _tail(arr[low])
    if np.any(high):
        out[high] = -_tail(1.0 - arr[high])
    return float(out[0]) if scalar else out
