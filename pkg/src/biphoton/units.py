"""Unit conventions and conversions.

Internally every frequency is an angular frequency in rad/ps and every time
is in ps, so a pump duration T_p (ps) and a detuning nu (rad/ps) are direct
Fourier conjugates and no 2*pi floats around in the rate formulas.

Bandwidths are often quoted in GHz.  Whether such a number means ordinary
frequency (cycles) or angular frequency (rad) is a convention, so the
conversion takes an explicit ``quote`` switch instead of guessing:

    ordinary:  f GHz -> 2*pi * f * 1e-3 rad/ps   (20 GHz -> 0.125664 rad/ps)
    angular:   f GHz ->        f * 1e-3 rad/ps   (20 GHz -> 0.02 rad/ps)
"""

from __future__ import annotations

import math

QUOTE_ORDINARY = "ordinary"
QUOTE_ANGULAR = "angular"
FREQUENCY_QUOTES = (QUOTE_ORDINARY, QUOTE_ANGULAR)


def ghz_to_rad_per_ps(value_ghz: float, quote: str = QUOTE_ORDINARY) -> float:
    """Convert a bandwidth quoted in GHz to internal rad/ps."""
    if quote not in FREQUENCY_QUOTES:
        raise ValueError(f"unknown frequency quote {quote!r}, expected one of {FREQUENCY_QUOTES}")
    if quote == QUOTE_ORDINARY:
        return 2.0 * math.pi * value_ghz * 1e-3
    return value_ghz * 1e-3
