"""Quantitative features of coincidence traces.

Everything a trace comparison needs: a robust baseline (median of the outer
10% of samples on each side, which tolerates residual oscillation in the
wings), the extremum refined by a 3-point parabola, visibility, and feature
widths at half and 10% of the extremum-minus-baseline height with linearly
interpolated threshold crossings.  All metrics except baseline and
extremum_value are invariant under affine rescaling rate -> a*rate + b
(a > 0) and covariant under delay reversal.

A trace whose deviation from baseline is indistinguishable from zero yields
an explicit "featureless" result rather than an exception.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .interferometry import Trace

KIND_PEAK = "peak"
KIND_DIP = "dip"
KIND_FEATURELESS = "featureless"

# Fraction of samples per side pooled for the baseline median.
BASELINE_FRACTION = 0.1
# Feature-height fractions defining the two width measures.
HALF_FRACTION = 0.5
TAIL_FRACTION = 0.1
# A trace is featureless when its deviation from baseline is below this
# fraction of the overall rate scale.
FEATURELESS_RTOL = 1e-9

MIN_SAMPLES = 21


class AnalysisError(ValueError):
    """A trace violates an analysis precondition (too short, featureless
    where a feature is required, or its feature does not fit the span)."""


@dataclass(frozen=True)
class TraceMetrics:
    """Extracted features; extremum fields are None for featureless traces."""

    baseline: float
    kind: str
    extremum_value: Optional[float] = None
    extremum_delay: Optional[float] = None
    visibility: Optional[float] = None
    width_half: Optional[float] = None
    tail_width: Optional[float] = None

    @property
    def featureless(self) -> bool:
        return self.kind == KIND_FEATURELESS


def _baseline(rates: np.ndarray) -> float:
    k = max(1, int(round(BASELINE_FRACTION * rates.size)))
    return float(np.median(np.concatenate([rates[:k], rates[-k:]])))


def _refine_extremum(taus: np.ndarray, dev: np.ndarray, i: int) -> tuple[float, float]:
    """Parabolic refinement of the extremum of ``dev`` around sample i.

    Returns (delay, dev value); falls back to the grid sample at the edges or
    when the three points are collinear.
    """
    if i == 0 or i == dev.size - 1:
        return float(taus[i]), float(dev[i])
    y0, y1, y2 = dev[i - 1], dev[i], dev[i + 1]
    denom = y0 - 2.0 * y1 + y2
    if denom == 0.0:
        return float(taus[i]), float(y1)
    offset = 0.5 * (y0 - y2) / denom
    offset = min(0.5, max(-0.5, offset))
    step = taus[1] - taus[0]
    return float(taus[i] + offset * step), float(y1 - 0.25 * (y0 - y2) * offset)


def _width_at(taus: np.ndarray, dev: np.ndarray, i: int, height: float, frac: float) -> float:
    """Full width of the feature at ``frac`` of ``height``: the first
    crossings of the threshold walking outward from the extremum, linearly
    interpolated between samples."""
    thr = frac * height

    def crossing(direction: int) -> float:
        j = i
        while 0 <= j + direction < dev.size:
            a, b = dev[j], dev[j + direction]
            if a >= thr > b:
                return float(taus[j] + (a - thr) / (a - b) * (taus[j + direction] - taus[j]))
            j += direction
        raise AnalysisError(
            f"feature does not cross {frac:g} of its height inside the delay span; "
            "widen the span"
        )

    return crossing(+1) - crossing(-1)


def trace_metrics(trace: Trace) -> TraceMetrics:
    """Measure baseline, extremum, visibility and widths of a trace."""
    rates = trace.rates
    taus = trace.delays.values
    if rates.size < MIN_SAMPLES:
        raise AnalysisError(f"need at least {MIN_SAMPLES} samples, got {rates.size}")
    baseline = _baseline(rates)
    signed = rates - baseline
    scale = max(float(np.max(np.abs(rates))), 1e-300)
    i = int(np.argmax(np.abs(signed)))
    if abs(signed[i]) <= FEATURELESS_RTOL * scale:
        return TraceMetrics(baseline=baseline, kind=KIND_FEATURELESS)
    is_peak = signed[i] > 0.0
    dev = signed if is_peak else -signed
    delay, height = _refine_extremum(taus, dev, i)
    extremum_value = baseline + height if is_peak else baseline - height
    denom = extremum_value + baseline
    visibility = abs(extremum_value - baseline) / denom if denom != 0.0 else math.inf
    width_half = _width_at(taus, dev, i, height, HALF_FRACTION)
    tail_width = _width_at(taus, dev, i, height, TAIL_FRACTION)
    span = taus[-1] - taus[0]
    if 4.0 * width_half > span:
        raise AnalysisError(
            f"delay span {span:g} ps is below 4x the feature width {width_half:g} ps"
        )
    return TraceMetrics(
        baseline=baseline,
        kind=KIND_PEAK if is_peak else KIND_DIP,
        extremum_value=extremum_value,
        extremum_delay=delay,
        visibility=visibility,
        width_half=width_half,
        tail_width=tail_width,
    )


def normalize_rates(trace: Trace, metrics: Optional[TraceMetrics] = None) -> np.ndarray:
    """Affinely map the rates so baseline -> 0 and extremum -> 1."""
    m = trace_metrics(trace) if metrics is None else metrics
    if m.featureless:
        raise AnalysisError("cannot normalize a featureless trace")
    return (trace.rates - m.baseline) / (m.extremum_value - m.baseline)


def normalized_distance(trace_a: Trace, trace_b: Trace) -> float:
    """Max pointwise difference between the affinely normalized traces.

    Zero for a trace against any affinely rescaled copy of itself, so the
    comparison sees only shape.
    """
    if trace_a.delays != trace_b.delays:
        raise AnalysisError("traces must share an identical delay axis")
    return float(np.max(np.abs(normalize_rates(trace_a) - normalize_rates(trace_b))))


def tail_ratio(trace_a: Trace, trace_b: Trace) -> float:
    """tail_width(A) / tail_width(B); both traces must have a feature."""
    width_a = trace_metrics(trace_a).tail_width
    width_b = trace_metrics(trace_b).tail_width
    if width_a is None or width_b is None:
        raise AnalysisError("tail_ratio requires traces with a feature")
    return width_a / width_b
