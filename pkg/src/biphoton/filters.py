"""Amplitude notch filters modelling pair losses in a sample.

A two-photon absorber removes pairs at the two-photon resonance, which in
detuning coordinates is the anti-diagonal nu_s + nu_i = 0:

    f_tp(nu_s, nu_i) = 1 - exp[-(nu_s + nu_i)^2 / (2 sigma^2)]

Linear (single-photon) losses such as scattering remove one photon at a time
and act on a single frequency axis:

    f_s(nu_s) = 1 - exp[-(nu_s - nu0)^2 / (2 sigma^2)]      (idler analogous)

Filters multiply the joint *amplitude*, not the intensity, so downstream
interference terms stay correct.  Composition is multiplicative and therefore
order-independent; filtered amplitudes are never renormalized here (the lost
norm is the physical loss), but the survival probability is reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .spectral import NORM_UNNORMALIZED, FrequencyGrid, JointAmplitude


class FilterKind(str, Enum):
    TWO_PHOTON = "two_photon"
    SINGLE_SIGNAL = "single_signal"
    SINGLE_IDLER = "single_idler"


@dataclass(frozen=True)
class FilterSpec:
    """One notch: kind, bandwidth sigma (rad/ps) and center detuning (rad/ps).

    The two-photon notch is pinned to the resonance, so its center must be 0.
    """

    kind: FilterKind
    bandwidth: float
    center: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", FilterKind(self.kind))
        if not (self.bandwidth > 0.0 and math.isfinite(self.bandwidth)):
            raise ValueError(f"filter bandwidth must be positive and finite, got {self.bandwidth}")
        if not math.isfinite(self.center):
            raise ValueError("filter center must be finite")
        if self.kind is FilterKind.TWO_PHOTON and self.center != 0.0:
            raise ValueError("two_photon filter center is fixed at 0")


@dataclass(frozen=True)
class FilteredAmplitude:
    """apply_filters result: the attenuated amplitude and the survival
    probability p = (output L2 norm)^2 / (input L2 norm)^2."""

    amplitude: JointAmplitude
    survival: float


def filter_value(spec: FilterSpec, nu_s, nu_i):
    """Evaluate the notch transmission at (nu_s, nu_i); values lie in [0, 1)."""
    nu_s = np.asarray(nu_s, dtype=float)
    nu_i = np.asarray(nu_i, dtype=float)
    s2 = 2.0 * spec.bandwidth**2
    if spec.kind is FilterKind.TWO_PHOTON:
        arg = nu_s + nu_i
    elif spec.kind is FilterKind.SINGLE_SIGNAL:
        arg = nu_s - spec.center
    else:
        arg = nu_i - spec.center
    out = 1.0 - np.exp(-(arg * arg) / s2)
    if out.ndim == 0:
        return float(out)
    return out


def filter_grid(spec: FilterSpec, grid: FrequencyGrid) -> np.ndarray:
    """Sample the notch on a full (nu_s, nu_i) grid."""
    return filter_value(spec, grid.axis[:, None], grid.axis[None, :])


def combined_filter_grid(specs: Iterable[FilterSpec], grid: FrequencyGrid) -> np.ndarray:
    out = np.ones((grid.n_points, grid.n_points))
    for spec in specs:
        out = out * filter_grid(spec, grid)
    return out


def apply_filters(jsa: JointAmplitude, specs: Sequence[FilterSpec]) -> FilteredAmplitude:
    """Attenuate ``jsa`` by the pointwise product of all notches.

    The filters are combined first and applied in a single multiplication, so
    any ordering of ``specs`` yields an identical result.  With no specs the
    input amplitude is returned unchanged with survival 1.
    """
    if not specs:
        return FilteredAmplitude(amplitude=jsa, survival=1.0)
    norm_in = jsa.l2_norm_sq()
    if norm_in == 0.0:
        raise ValueError("cannot filter a zero-norm amplitude")
    values = jsa.values * combined_filter_grid(specs, jsa.grid)
    out = JointAmplitude(grid=jsa.grid, values=values, norm_convention=NORM_UNNORMALIZED)
    return FilteredAmplitude(amplitude=out, survival=out.l2_norm_sq() / norm_in)
