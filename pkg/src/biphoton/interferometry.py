"""Coincidence-rate traces for three two-photon interferometer layouts.

A pair amplitude phi(nu_s, nu_i) arrives at a beamsplitter with constant
transmission t and reflection r (|t|^2 + |r|^2 <= 1; sub-unity throughput
models loss, whose vacuum noise contributes nothing to normally ordered
coincidence counting).  A delay tau acts on the signal photon.  With
phi' = phi(nu_i, nu_s) and grid spacing D, the coincidence rates are plain
Riemann sums over the grid:

  single_port (both photons in one input port):
      R+ = |t|^2 |r|^2 * sum |phi e^{i(nu_s - nu_i) tau} + phi'|^2 D^2

  two_port (one photon per input port, the Hong-Ou-Mandel layout):
      R- = sum [ |t|^4 |phi|^2 + |r|^4 |phi'|^2
                 + 2 Re( conj(r^2) t^2 phi conj(phi') e^{i(nu_s - nu_i) tau} ) ] D^2

  noon (both-photons-in-a superposed with both-photons-in-b):
      R_N = (|t|^2 |r|^2 / 2) * sum |phi + phi'|^2 |1 + e^{i(nu_s + nu_i) tau}|^2 D^2

For the lossless 50:50 splitter (t = i r, |t| = |r| = 1/sqrt 2) these reduce
to the familiar 1/4-prefactor forms; the prefactors are kept literally so the
numbers match the formulas, and shape comparisons normalize afterwards.

R_N depends on phi only through the symmetrized sum-frequency marginal
M(nu_plus); ``noon_via_sum_marginal`` exploits that restructuring and must
agree with the direct scan to ~1e-10.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from .spectral import FrequencyGrid, JointAmplitude

CONFIG_SINGLE_PORT = "single_port"
CONFIG_TWO_PORT = "two_port"
CONFIG_NOON = "noon"
CONFIGURATIONS = (CONFIG_SINGLE_PORT, CONFIG_TWO_PORT, CONFIG_NOON)

# Tolerance for beamsplitter coefficient checks (losslessness, 50:50 balance).
_BS_TOL = 1e-12


def _abs2(z) -> float:
    """|z|^2 without the square root (exact for exactly-representable squares)."""
    return z.real * z.real + z.imag * z.imag


def _abs2_arr(z: np.ndarray) -> np.ndarray:
    return z.real**2 + z.imag**2


@dataclass(frozen=True)
class BeamSplitterSpec:
    """Constant beamsplitter coefficients.

    Requires |t|^2 + |r|^2 <= 1 and additionally |t + r| <= 1, |t - r| <= 1
    so the coupler embeds in a unitary with loss channels; without the latter
    a "beamsplitter" could amplify, breaking norm monotonicity.
    """

    t: complex
    r: complex

    def __post_init__(self) -> None:
        t, r = complex(self.t), complex(self.r)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "r", r)
        if not (cmath.isfinite(t) and cmath.isfinite(r)):
            raise ValueError("beamsplitter coefficients must be finite")
        if self.throughput > 1.0 + _BS_TOL:
            raise ValueError(f"|t|^2 + |r|^2 = {self.throughput} exceeds 1")
        if max(abs(t + r), abs(t - r)) > 1.0 + _BS_TOL:
            raise ValueError("coefficients must satisfy |t +/- r| <= 1 (passive coupler)")

    @property
    def throughput(self) -> float:
        return _abs2(self.t) + _abs2(self.r)

    @property
    def is_lossless(self) -> bool:
        return abs(self.throughput - 1.0) <= _BS_TOL

    @property
    def is_balanced_5050(self) -> bool:
        return (
            self.is_lossless
            and abs(_abs2(self.t) - 0.5) <= _BS_TOL
            and abs(_abs2(self.r) - 0.5) <= _BS_TOL
        )

    @classmethod
    def lossless_5050(cls) -> "BeamSplitterSpec":
        """The lossless 50:50 preset t = i r, |t| = |r| = 1/sqrt 2."""
        a = 1.0 / math.sqrt(2.0)
        return cls(t=complex(0.0, a), r=complex(a, 0.0))

    def scaled(self, amplitude_factor: float) -> "BeamSplitterSpec":
        """Uniformly attenuated copy (same t/r ratio and phases)."""
        return BeamSplitterSpec(t=self.t * amplitude_factor, r=self.r * amplitude_factor)


@dataclass(frozen=True)
class DelayAxis:
    """Uniform delay axis (ps), symmetric about zero; odd count keeps tau = 0
    on the axis."""

    n_points: int
    step: float

    def __post_init__(self) -> None:
        if self.n_points < 3 or self.n_points % 2 == 0:
            raise ValueError(f"delay count must be odd and >= 3, got {self.n_points}")
        if not (self.step > 0.0 and math.isfinite(self.step)):
            raise ValueError(f"delay step must be positive and finite, got {self.step}")

    @classmethod
    def from_span(cls, span: float, n_points: int) -> "DelayAxis":
        """Axis covering [-span, +span] with ``n_points`` samples."""
        if not (span > 0.0 and math.isfinite(span)):
            raise ValueError(f"delay span must be positive and finite, got {span}")
        if n_points < 3:
            raise ValueError(f"delay count must be >= 3, got {n_points}")
        return cls(n_points=n_points, step=2.0 * span / (n_points - 1))

    @property
    def span(self) -> float:
        return 0.5 * self.step * (self.n_points - 1)

    @cached_property
    def values(self) -> np.ndarray:
        k = np.arange(self.n_points) - (self.n_points - 1) // 2
        v = k * self.step
        v.setflags(write=False)
        return v


@dataclass(frozen=True)
class Provenance:
    """Human-readable descriptors of what produced a trace."""

    source: str = ""
    filters: str = ""
    beamsplitter: str = ""

    def label(self) -> str:
        parts = [p for p in (self.source, self.filters, self.beamsplitter) if p]
        return " | ".join(parts) if parts else "trace"


@dataclass(frozen=True)
class Trace:
    """Coincidence rate sampled over a delay axis."""

    delays: DelayAxis
    rates: np.ndarray = field(repr=False)
    config: str
    provenance: Optional[Provenance] = None

    def __post_init__(self) -> None:
        rates = np.ascontiguousarray(self.rates, dtype=float)
        if rates.shape != (self.delays.n_points,):
            raise ValueError(
                f"rates length {rates.shape} does not match delay axis ({self.delays.n_points},)"
            )
        if not np.all(np.isfinite(rates)):
            raise ValueError("rates must be finite")
        floor = -1e-12 * max(1.0, float(np.max(np.abs(rates))))
        if np.any(rates < floor):
            raise ValueError("rates must be non-negative")
        if self.config not in CONFIGURATIONS:
            raise ValueError(f"unknown configuration {self.config!r}")
        rates.setflags(write=False)
        object.__setattr__(self, "rates", rates)

    def label(self) -> str:
        base = self.config
        if self.provenance is not None:
            return f"{base}: {self.provenance.label()}"
        return base


def _signal_phase(grid: FrequencyGrid, tau: float) -> np.ndarray:
    """e^{i nu tau} on the axis (delay acting on the signal photon)."""
    return np.exp(1j * grid.axis * tau)


def rate_single_port(jsa: JointAmplitude, tau: float, bs: BeamSplitterSpec) -> float:
    """Coincidence rate with both photons entering one input port."""
    if not math.isfinite(tau):
        raise ValueError("tau must be finite")
    phi = jsa.values
    ps = _signal_phase(jsa.grid, tau)
    phase = ps[:, None] * np.conj(ps)[None, :]  # e^{i(nu_s - nu_i) tau}
    amp = phi * phase + phi.T
    d = jsa.grid.spacing
    return _abs2(bs.t) * _abs2(bs.r) * float(np.sum(_abs2_arr(amp))) * d * d


def rate_two_port(jsa: JointAmplitude, tau: float, bs: BeamSplitterSpec) -> float:
    """Coincidence rate with one photon per input port (HOM layout)."""
    if not math.isfinite(tau):
        raise ValueError("tau must be finite")
    phi = jsa.values
    phi_x = phi.T
    ps = _signal_phase(jsa.grid, tau)
    phase = ps[:, None] * np.conj(ps)[None, :]
    cross_coeff = np.conj(bs.r * bs.r) * (bs.t * bs.t)
    integrand = (
        _abs2(bs.t) ** 2 * _abs2_arr(phi)
        + _abs2(bs.r) ** 2 * _abs2_arr(phi_x)
        + 2.0 * np.real(cross_coeff * phi * np.conj(phi_x) * phase)
    )
    d = jsa.grid.spacing
    return float(np.sum(integrand)) * d * d


def rate_noon(jsa: JointAmplitude, tau: float, bs: BeamSplitterSpec) -> float:
    """Coincidence rate for the path-superposed (aa + bb) input."""
    if not math.isfinite(tau):
        raise ValueError("tau must be finite")
    phi = jsa.values
    sym = phi + phi.T
    ps = _signal_phase(jsa.grid, tau)
    pair_phase = ps[:, None] * ps[None, :]  # e^{i(nu_s + nu_i) tau}
    weight = _abs2_arr(1.0 + pair_phase)
    d = jsa.grid.spacing
    return 0.5 * _abs2(bs.t) * _abs2(bs.r) * float(np.sum(_abs2_arr(sym) * weight)) * d * d


_RATE_FUNCTIONS: dict[str, Callable[[JointAmplitude, float, BeamSplitterSpec], float]] = {
    CONFIG_SINGLE_PORT: rate_single_port,
    CONFIG_TWO_PORT: rate_two_port,
    CONFIG_NOON: rate_noon,
}


def rate(config: str, jsa: JointAmplitude, tau: float, bs: BeamSplitterSpec) -> float:
    """Dispatch to the rate function for ``config``."""
    try:
        fn = _RATE_FUNCTIONS[config]
    except KeyError:
        raise ValueError(f"unknown configuration {config!r}") from None
    return fn(jsa, tau, bs)


def scan_trace(
    config: str,
    jsa: JointAmplitude,
    delays: DelayAxis,
    bs: BeamSplitterSpec,
    provenance: Optional[Provenance] = None,
) -> Trace:
    """Evaluate the configuration's rate at every delay.  Deterministic; the
    evaluations at distinct delays are independent."""
    fn = _RATE_FUNCTIONS.get(config)
    if fn is None:
        raise ValueError(f"unknown configuration {config!r}")
    rates = np.array([fn(jsa, float(tau), bs) for tau in delays.values])
    return Trace(delays=delays, rates=rates, config=config, provenance=provenance)


def sum_frequency_marginal(jsa: JointAmplitude) -> tuple[np.ndarray, np.ndarray]:
    """Anti-diagonal marginal M(nu_plus) of the symmetrized intensity.

    M[m] = (1/4) * sum_{j+k=m} |phi[j,k] + phi[k,j]|^2 * spacing^2, indexed by
    nu_plus = axis[j] + axis[k].  This is the only part of the amplitude the
    noon configuration can see.
    """
    phi = jsa.values
    n = jsa.grid.n_points
    d = jsa.grid.spacing
    s2 = _abs2_arr(phi + phi.T)
    idx = (np.arange(n)[:, None] + np.arange(n)[None, :]).ravel()
    marginal = 0.25 * np.bincount(idx, weights=s2.ravel(), minlength=2 * n - 1) * d * d
    nu_plus = (np.arange(2 * n - 1) - (n - 1)) * d
    return nu_plus, marginal


def noon_via_sum_marginal(
    jsa: JointAmplitude, delays: DelayAxis, bs: Optional[BeamSplitterSpec] = None,
    provenance: Optional[Provenance] = None,
) -> Trace:
    """noon trace computed from the 1D sum-frequency marginal:

        R_N(tau) = sum M(nu_plus) * (1 + cos(nu_plus tau))

    Restricted to the lossless 50:50 splitter, for which this restructuring
    is an algebraic identity with ``scan_trace(noon, ...)``.
    """
    if bs is None:
        bs = BeamSplitterSpec.lossless_5050()
    if not bs.is_balanced_5050:
        raise ValueError("sum-marginal evaluation requires the lossless 50:50 beamsplitter")
    nu_plus, marginal = sum_frequency_marginal(jsa)
    rates = np.array(
        [float(np.sum(marginal * (1.0 + np.cos(nu_plus * tau)))) for tau in delays.values]
    )
    return Trace(delays=delays, rates=rates, config=CONFIG_NOON, provenance=provenance)
