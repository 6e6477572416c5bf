"""CSV and JSON input/output used by the command-line tools.

File formats are deliberately rigid: CSV files carry a single header row,
use '.' as the decimal separator and LF line endings, and every writer
goes through an atomic write-temp-then-rename so readers never see a
half-written file.
"""

from __future__ import annotations

import csv
import json
import os
import tempfile
from typing import Iterable, Sequence

from .acf import circular_acf, model_acf_reduced
from .estimate import EstimationReport
from .model import SinusoidParams, TimeSeries
from .screening import ScreeningDecision

# Relative tolerance on sample spacing when ingesting CSV records.
_DT_RTOL = 1e-9


def atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".sinefit-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _format(value: float) -> str:
    return repr(float(value))


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[float]]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_format(v) for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_json(path: str, payload: dict) -> None:
    atomic_write_text(path, json.dumps(payload, indent=2) + "\n")


def write_timeseries_csv(path: str, series: TimeSeries) -> None:
    write_csv(path, ("t", "value"), zip(series.times(), series.samples))


def read_timeseries_csv(path: str) -> TimeSeries:
    """Parse a `t,value` CSV into a record, insisting on uniform spacing."""
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        if [c.strip() for c in header] != ["t", "value"]:
            raise ValueError(f"{path}: expected header 't,value', got {header!r}")
        times: list[float] = []
        values: list[float] = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise ValueError(f"{path}: line {lineno}: expected two columns")
            try:
                times.append(float(row[0]))
                values.append(float(row[1]))
            except ValueError:
                raise ValueError(f"{path}: line {lineno}: could not parse numbers") from None
    if len(values) < 2:
        raise ValueError(f"{path}: need at least two data rows")
    dt = times[1] - times[0]
    if not dt > 0:
        raise ValueError(f"{path}: line 3: time must be strictly increasing")
    for i in range(2, len(times)):
        step = times[i] - times[i - 1]
        if abs(step - dt) > _DT_RTOL * abs(dt):
            raise ValueError(
                f"{path}: line {i + 2}: non-uniform sample spacing "
                f"({step!r} vs {dt!r})")
    return TimeSeries(times[0], dt, values)


def params_to_dict(params: SinusoidParams) -> dict:
    return {
        "amplitude": params.amplitude,
        "frequency_hz": params.frequency_hz,
        "phase_rad": params.phase_rad,
        "period_s": params.period(),
        "time_delay_s": params.time_delay(),
    }


def decision_to_dict(decision: ScreeningDecision) -> dict:
    return {
        "runs_statistic": decision.runs_statistic,
        "runs_count": decision.runs_count,
        "n_above": decision.n_above,
        "n_below": decision.n_below,
        "acf_exceedances": decision.acf_exceedances,
        "acf_bound": decision.acf_bound,
        "far": decision.far,
        "verdict": decision.verdict,
        "gate_failed": decision.gate_failed,
    }


def report_to_dict(report: EstimationReport) -> dict:
    """JSON-ready view of a report; field names carry explicit units."""
    payload: dict = {
        "verdict": report.verdict,
        "params": params_to_dict(report.params) if report.params else None,
        "frequency_source": report.frequency_source,
        "frequency_cross_checks_hz": report.frequency_cross_checks_hz,
        "t_2pi_s": report.t_2pi,
        "delta_t_s": report.delta_t,
        "objective_value": report.objective_value,
        "phase_cross_checks_rad": report.phase_cross_checks,
        "smoothing_k": report.smoothing_k,
        "warnings": list(report.warnings),
        "screening": decision_to_dict(report.screening) if report.screening else None,
        "series": None,
    }
    if report.params is not None:
        series: dict = {}
        if report.smoothed is not None:
            series["smoothed"] = {
                "start_time_s": report.smoothed.series.start_time,
                "dt_s": report.smoothed.series.dt,
                "values": report.smoothed.series.samples.tolist(),
            }
        if report.model_acf is not None:
            series["model_acf_full"] = report.model_acf.values.tolist()
        if report.spectrum is not None:
            series["spectrum"] = {
                "df_hz": report.spectrum.df,
                "magnitudes": report.spectrum.magnitudes.tolist(),
            }
        payload["series"] = series
    return payload


def write_plot_data(directory: str, record: TimeSeries, report: EstimationReport,
                    bound: float | None) -> list[str]:
    """Emit the plot-ready CSV bundle for a record and its report.

    Writes raw data, smoothed data, the circular ACF with significance
    bounds, the model ACFs of the fitted sinusoid, and the magnitude
    spectrum.  Returns the paths written.
    """
    os.makedirs(directory, exist_ok=True)
    written: list[str] = []

    path = os.path.join(directory, "raw.csv")
    write_timeseries_csv(path, record)
    written.append(path)

    if report.smoothed is not None:
        path = os.path.join(directory, "smoothed.csv")
        write_timeseries_csv(path, report.smoothed.series)
        written.append(path)

    acf = circular_acf(record, max_lag=len(record) // 2)
    lo = -bound if bound is not None else float("nan")
    hi = bound if bound is not None else float("nan")
    path = os.path.join(directory, "acf.csv")
    write_csv(path, ("lag", "value", "lower_bound", "upper_bound"),
              ((tau, v, lo, hi) for tau, v in enumerate(acf.values)))
    written.append(path)

    if report.params is not None and report.model_acf is not None:
        per_sample = SinusoidParams(report.params.amplitude,
                                    report.params.frequency_hz * record.dt,
                                    report.params.phase_rad)
        reduced = model_acf_reduced(per_sample, report.model_acf.max_lag)
        path = os.path.join(directory, "model_acf.csv")
        write_csv(path, ("lag", "full_model", "reduced_model"),
                  zip(range(report.model_acf.max_lag + 1),
                      report.model_acf.values, reduced.values))
        written.append(path)

    if report.spectrum is not None:
        path = os.path.join(directory, "spectrum.csv")
        write_csv(path, ("frequency_hz", "magnitude"),
                  zip(report.spectrum.frequencies(), report.spectrum.magnitudes))
        written.append(path)
    return written
