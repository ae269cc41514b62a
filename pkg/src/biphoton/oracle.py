"""Brute-force Fock-basis validator for the closed-form coincidence rates.

The pair state is expanded over discrete frequency bins with an explicit
two-slot creation-operator tensor psi[p1, m1, p2, m2] (p in {a, b} labels the
beamsplitter port, m the frequency bin), symmetrized under simultaneous
exchange of the slots.  The beamsplitter acts linearly on each slot's port
index, coincidences are counted by direct summation over all (bin, bin)
pairs, and nothing here shares code with the quadrature formulas - that
independence is the point.

Amplitude bookkeeping matches the continuum Riemann sums: a pair amplitude
phi on a grid of spacing D enters the tensor as D * phi, so the computed
coincidence probability equals the closed-form rate with no rescaling.
Sub-unity |t|^2 + |r|^2 models loss; the associated vacuum noise operators
annihilate the input state, so they are correctly represented by plain
amplitude decay.

The tensor is O(n_modes^2) in memory but the construction enumerates
O(n_modes^2) entries per port pair, so grids are capped at 65 bins per axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .interferometry import (
    CONFIG_NOON,
    CONFIG_SINGLE_PORT,
    CONFIG_TWO_PORT,
    CONFIGURATIONS,
    BeamSplitterSpec,
)
from .spectral import FrequencyGrid, JointAmplitude

MAX_ORACLE_MODES = 65

_SYMMETRY_RTOL = 1e-12


@dataclass(frozen=True)
class DiscreteBiphoton:
    """Two-photon state over ports {a, b} x frequency bins.

    psi[p1, m1, p2, m2] must equal psi[p2, m2, p1, m1] (bosonic exchange).
    The physical squared norm of the state is 2 * sum |psi|^2; input states
    built from an unnormalized pair amplitude keep that amplitude's norm.
    """

    grid: FrequencyGrid
    psi: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        n = self.grid.n_points
        psi = np.ascontiguousarray(self.psi, dtype=complex)
        if psi.shape != (2, n, 2, n):
            raise ValueError(f"psi must have shape (2, {n}, 2, {n}), got {psi.shape}")
        if not np.all(np.isfinite(psi.view(float))):
            raise ValueError("psi must be finite")
        swapped = psi.transpose(2, 3, 0, 1)
        scale = float(np.max(np.abs(psi))) or 1.0
        if float(np.max(np.abs(psi - swapped))) > _SYMMETRY_RTOL * scale:
            raise ValueError("psi must be symmetric under exchange of the two operator slots")
        psi.setflags(write=False)
        object.__setattr__(self, "psi", psi)

    def norm_sq(self) -> float:
        """Physical squared norm <state|state> = 2 sum |psi|^2."""
        p = self.psi
        return 2.0 * float(np.sum(p.real**2 + p.imag**2))


def _symmetrize(unsym: np.ndarray) -> np.ndarray:
    return 0.5 * (unsym + unsym.transpose(2, 3, 0, 1))


def prepare_input(config: str, jsa: JointAmplitude, tau: float) -> DiscreteBiphoton:
    """Build the interferometer input state for ``config`` from a sampled
    pair amplitude, with the delay tau acting on the signal photon.

    single_port: both photons on port a, phase e^{i nu_s tau} on the signal.
    two_port:    signal on port a, idler on port b, same signal phase.
    noon:        (aa * e^{i(nu_s + nu_i) tau} + bb) / sqrt 2  (envelope
                 phases only, matching the rate formulas' detuning form).
    """
    if config not in CONFIGURATIONS:
        raise ValueError(f"unknown configuration {config!r}")
    if not math.isfinite(tau):
        raise ValueError("tau must be finite")
    n = jsa.grid.n_points
    if n > MAX_ORACLE_MODES:
        raise ValueError(
            f"oracle grids are capped at {MAX_ORACLE_MODES} bins per axis (got {n}); "
            "the four-slot tensor grows too fast beyond that"
        )
    d = jsa.grid.spacing
    nu = jsa.grid.axis
    amp = d * jsa.values  # bin amplitude matching the continuum normalization
    unsym = np.zeros((2, n, 2, n), dtype=complex)
    if config == CONFIG_SINGLE_PORT:
        unsym[0, :, 0, :] = amp * np.exp(1j * nu * tau)[:, None]
    elif config == CONFIG_TWO_PORT:
        unsym[0, :, 1, :] = amp * np.exp(1j * nu * tau)[:, None]
    else:
        pair_phase = np.exp(1j * (nu[:, None] + nu[None, :]) * tau)
        unsym[0, :, 0, :] = amp * pair_phase / math.sqrt(2.0)
        unsym[1, :, 1, :] = amp / math.sqrt(2.0)
    return DiscreteBiphoton(grid=jsa.grid, psi=_symmetrize(unsym))


def apply_bs(state: DiscreteBiphoton, bs: BeamSplitterSpec) -> DiscreteBiphoton:
    """Send the state through the beamsplitter.

    Each slot's port index transforms by M = [[t, r], [r, t]] (row = output
    port, column = input port).  Loss shows up as norm decay; the transform
    never increases the physical norm and preserves it exactly for a lossless
    splitter.
    """
    m = np.array([[bs.t, bs.r], [bs.r, bs.t]])
    psi_out = np.einsum("pq,PQ,qmQM->pmPM", m, m, state.psi)
    return DiscreteBiphoton(grid=state.grid, psi=psi_out)


def coincidence_probability(state: DiscreteBiphoton) -> float:
    """P(one photon in port a AND one in port b), summed over all bin pairs.

    The cross-port amplitude for bins (m1, m2) is 2 psi[a, m1, b, m2] (the
    factor 2 counts the two operator pairings; a and b bins are distinct
    modes even when m1 == m2, so no extra occupation weight appears).
    """
    cross = state.psi[0, :, 1, :]
    return 4.0 * float(np.sum(cross.real**2 + cross.imag**2))


def oracle_rate(config: str, jsa: JointAmplitude, tau: float, bs: BeamSplitterSpec) -> float:
    """Full pipeline: prepare the input, apply the splitter, count coincidences."""
    return coincidence_probability(apply_bs(prepare_input(config, jsa, tau), bs))
