"""Parameter estimation for noise-corrupted sinusoids.

Recovers the amplitude, frequency, and phase of x(t) = A*sin(w*t + phi)
from a finite, uniformly sampled record: a two-gate randomness screen,
moving-average smoothing, spectrum-peak frequency recovery with
ACF-based cross-checks, closed-form ACF models, and a least-squares
phase grid search.
"""

from .acf import (AcfSeries, DegenerateParametersError, IntegralParams,
                  circular_acf, frequency_from_acf, model_acf_full,
                  model_acf_reduced, normalizing_constant,
                  sine_product_integral)
from .estimate import (EstimationReport, PhaseObjective, PipelineConfig,
                       detect_t2pi, estimate_parameters,
                       phase_arcsin_at_time, phase_arctan_at_origin,
                       phase_from_crossover, phase_from_landmarks_general,
                       phase_grid_search, phase_objective_value)
from .model import (Landmark, LandmarkTable, NoiseSpec, SinusoidParams,
                    TimeSeries, evaluate, landmarks, synthesize, wrap_phase)
from .normal import normal_quantile
from .screening import ScreeningDecision, acf_bounds, runs_test, screen
from .smoothing import (SmoothedSeries, amplitude_estimate, ma_attenuation,
                        moving_average, recommended_windows, rms_error)
from .spectrum import Spectrum, dft_magnitude, fundamental_frequency

__version__ = "0.1.0"

__all__ = [
    "AcfSeries", "DegenerateParametersError", "EstimationReport",
    "IntegralParams", "Landmark", "LandmarkTable", "NoiseSpec",
    "PhaseObjective", "PipelineConfig", "ScreeningDecision",
    "SinusoidParams", "SmoothedSeries", "Spectrum", "TimeSeries",
    "acf_bounds", "amplitude_estimate", "circular_acf", "detect_t2pi",
    "dft_magnitude", "estimate_parameters", "evaluate",
    "frequency_from_acf", "fundamental_frequency", "landmarks",
    "ma_attenuation", "model_acf_full", "model_acf_reduced",
    "moving_average", "normal_quantile", "normalizing_constant",
    "phase_arcsin_at_time", "phase_arctan_at_origin",
    "phase_from_crossover", "phase_from_landmarks_general",
    "phase_grid_search", "phase_objective_value", "recommended_windows",
    "rms_error", "runs_test", "screen", "sine_product_integral",
    "synthesize", "wrap_phase",
]
