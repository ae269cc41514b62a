"""Joint spectral amplitudes of photon pairs on discrete frequency grids.

A frequency-degenerate pair is described by the detunings (nu_s, nu_i) of the
signal and idler photons from their shared central frequency.  The source is
a Gaussian pulsed pump of duration T_p driving a crystal of length L whose
phase matching is governed by the pump/daughter inverse-group-velocity
differences eta_s and eta_i.  To first order in dispersion the amplitude is

    phi(nu_s, nu_i) = exp[-2 T_p^2 (nu_s + nu_i)^2] * sinc(x) * exp(-i x),
    x = (eta_s L nu_s + eta_i L nu_i) / 2,     sinc(x) = sin(x)/x.

Only the products eta_s*L and eta_i*L enter, so ``SourceParams`` stores those
directly (in ps).  Equal products make the amplitude exchange-symmetric.

Units: rad/ps for frequencies, ps for times.  Everything here is a pure
function of its inputs; grid axes and amplitude buffers are frozen after
construction and safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

# Unnormalized |phi| never exceeds 1; unit-L2 grids must satisfy
# sum |phi|^2 * spacing^2 = 1 to this relative tolerance.
UNIT_L2_RTOL = 1e-12

NORM_UNNORMALIZED = "unnormalized"
NORM_UNIT_L2 = "unit-l2"

# Below this |x| the sinc is evaluated by series to keep full double
# precision through the removable singularity.
_SINC_SERIES_CUTOFF = 1e-4


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform square grid of (nu_s, nu_i) detunings, symmetric about zero.

    ``n_points`` must be odd so nu = 0 is a grid point; the axis satisfies
    axis[k] == -axis[n-1-k] exactly (it is built as integer * spacing).
    """

    n_points: int
    half_width: float

    def __post_init__(self) -> None:
        if self.n_points < 8 or self.n_points % 2 == 0:
            raise ValueError(f"n_points must be odd and >= 8, got {self.n_points}")
        if not (self.half_width > 0.0 and math.isfinite(self.half_width)):
            raise ValueError(f"half_width must be positive and finite, got {self.half_width}")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / (self.n_points - 1)

    @cached_property
    def axis(self) -> np.ndarray:
        k = np.arange(self.n_points) - (self.n_points - 1) // 2
        ax = k * self.spacing
        ax.setflags(write=False)
        return ax


@dataclass(frozen=True)
class SourceParams:
    """Pair-source parameters: pump duration and group-velocity-mismatch
    products (all in ps).  ``center_frequency`` (rad/ps) is carried as
    metadata only; the rate formulas work in detunings."""

    pump_duration: float
    eta_s_L: float
    eta_i_L: float
    center_frequency: float = 0.0

    def __post_init__(self) -> None:
        if not (self.pump_duration > 0.0 and math.isfinite(self.pump_duration)):
            raise ValueError(f"pump_duration must be positive and finite, got {self.pump_duration}")
        for name in ("eta_s_L", "eta_i_L"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def exchange_symmetric(self) -> bool:
        return self.eta_s_L == self.eta_i_L


@dataclass(frozen=True)
class JointAmplitude:
    """Complex pair amplitude sampled on a FrequencyGrid.

    values[j, k] is the amplitude at (nu_s = axis[j], nu_i = axis[k]).
    """

    grid: FrequencyGrid
    values: np.ndarray = field(repr=False)
    norm_convention: str = NORM_UNNORMALIZED

    def __post_init__(self) -> None:
        n = self.grid.n_points
        if self.values.shape != (n, n):
            raise ValueError(f"values must have shape ({n}, {n}), got {self.values.shape}")
        if self.norm_convention not in (NORM_UNNORMALIZED, NORM_UNIT_L2):
            raise ValueError(f"unknown norm convention {self.norm_convention!r}")
        vals = np.ascontiguousarray(self.values, dtype=complex)
        if not np.all(np.isfinite(vals.view(float))):
            raise ValueError("amplitude values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        if self.norm_convention == NORM_UNIT_L2:
            norm = self.l2_norm_sq()
            if abs(norm - 1.0) > UNIT_L2_RTOL:
                raise ValueError(f"unit-L2 amplitude has norm^2 {norm!r}")

    def l2_norm_sq(self) -> float:
        """sum |phi|^2 * spacing^2, the grid quadrature of the L2 norm."""
        d = self.grid.spacing
        v = self.values
        return float(np.sum(v.real**2 + v.imag**2)) * d * d

    def intensity(self) -> np.ndarray:
        """|phi|^2 on the grid (the joint spectral intensity)."""
        v = self.values
        return v.real**2 + v.imag**2


def build_grid(n_points: int, half_width: float) -> FrequencyGrid:
    """Construct a symmetric frequency grid; see FrequencyGrid for contracts."""
    return FrequencyGrid(n_points=n_points, half_width=half_width)


def default_half_width(source: SourceParams, filter_bandwidths: tuple[float, ...] = (),
                       factor: float = 6.0) -> float:
    """Default grid extent: a multiple of the widest spectral scale present.

    Covers the pump bandwidth 1/T_p, any filter bandwidth, and the
    phase-matching lobe scale 2*pi/(|eta_s L| + |eta_i L|).
    """
    scales = [1.0 / source.pump_duration]
    scales.extend(filter_bandwidths)
    scales.append(2.0 * math.pi / (abs(source.eta_s_L) + abs(source.eta_i_L) + 1e-12))
    return factor * max(scales)


def sinc(x):
    """sin(x)/x with the removable singularity handled by series expansion."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < _SINC_SERIES_CUTOFF
    out = np.empty_like(x)
    xs = x[small]
    out[small] = 1.0 - xs * xs / 6.0 + xs**4 / 120.0
    xl = x[~small]
    out[~small] = np.sin(xl) / xl
    if out.ndim == 0:
        return float(out)
    return out


def pump_envelope(nu_s, nu_i, pump_duration: float):
    """Gaussian pump spectral amplitude exp[-2 T_p^2 (nu_s + nu_i)^2], in (0, 1]."""
    if not pump_duration > 0.0:
        raise ValueError(f"pump_duration must be positive, got {pump_duration}")
    s = np.asarray(nu_s, dtype=float) + np.asarray(nu_i, dtype=float)
    out = np.exp(-2.0 * pump_duration**2 * s * s)
    if out.ndim == 0:
        return float(out)
    return out


def phase_matching(nu_s, nu_i, eta_s_L: float, eta_i_L: float):
    """Phase-matching amplitude sinc(x) * exp(-i x), x = (eta_s L nu_s + eta_i L nu_i)/2.

    |result| <= 1 everywhere; at x = 0 the value is exactly 1.
    """
    x = 0.5 * (eta_s_L * np.asarray(nu_s, dtype=float) + eta_i_L * np.asarray(nu_i, dtype=float))
    out = sinc(x) * np.exp(-1j * x)
    if np.ndim(out) == 0:
        return complex(out)
    return out


def build_jsa(grid: FrequencyGrid, source: SourceParams, normalize: bool = True) -> JointAmplitude:
    """Sample the pair amplitude on ``grid``; optionally rescale to unit L2.

    For an exchange-symmetric source the result satisfies
    values[j, k] == values[k, j] bit-for-bit.
    """
    nu_s = grid.axis[:, None]
    nu_i = grid.axis[None, :]
    values = pump_envelope(nu_s, nu_i, source.pump_duration) * phase_matching(
        nu_s, nu_i, source.eta_s_L, source.eta_i_L
    )
    if normalize:
        d = grid.spacing
        scale = math.sqrt(float(np.sum(values.real**2 + values.imag**2))) * d
        if scale == 0.0:
            raise ValueError("amplitude is identically zero; cannot normalize")
        values = values / scale
        return JointAmplitude(grid=grid, values=values, norm_convention=NORM_UNIT_L2)
    return JointAmplitude(grid=grid, values=values, norm_convention=NORM_UNNORMALIZED)
