"""Operating-point timescales: are the gate windows short enough to survive?

Everything here is recomputed from ``FeasibilityParams``; the only constants
are two-significant-figure anchor values for the default operating point,
kept as regression guards against unit or formula slips.  The quantities:

    cavity_lifetime_s     1/k        with k = omega_c / Q
    exchange_window_s     pi / g     duration of the cavity-coupling segment
    pulse_window_s        pi / (2 * omega_drive)   duration of one pulse
    cooperativity         g^2 / (gamma_e * k)      strong-coupling figure

The gate works when both windows are tiny fractions of the decay times,
i.e. ``exchange_per_cavity_decay`` = T_r * k and ``exchange_per_e_decay`` =
T_r * gamma_e are << 1, and the cooperativity is >> 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .hamiltonians import FeasibilityParams

# two-significant-figure values at the default operating point
ANCHORS = {
    "cavity_lifetime_s": 2.0e-5,
    "exchange_window_s": 1.7e-8,
    "pulse_window_s": 1.8e-8,
    "cooperativity": 1.6e6,
}

_ANCHOR_SIG_FIGURES = 2


def round_to_sig_figures(value: float, n: int) -> float:
    """Round to ``n`` significant figures; 0.0 stays 0.0."""
    if value == 0.0 or not math.isfinite(value):
        return value
    exponent = math.floor(math.log10(abs(value)))
    return round(value, -exponent + n - 1)


@dataclass
class FeasibilityReport:
    """Derived timescales with pass flags against the default-point anchors."""

    cavity_decay_per_s: float
    cavity_lifetime_s: float
    exchange_window_s: float
    pulse_window_s: float
    cooperativity: float
    exchange_per_cavity_decay: float
    exchange_per_e_decay: float
    anchors_matched: dict
    passed: bool

    def to_dict(self) -> dict:
        return {
            "cavity_decay_per_s": self.cavity_decay_per_s,
            "cavity_lifetime_s": self.cavity_lifetime_s,
            "exchange_window_s": self.exchange_window_s,
            "pulse_window_s": self.pulse_window_s,
            "cooperativity": self.cooperativity,
            "exchange_per_cavity_decay": self.exchange_per_cavity_decay,
            "exchange_per_e_decay": self.exchange_per_e_decay,
            "anchors_matched": dict(self.anchors_matched),
            "passed": self.passed,
        }


def feasibility_report(params: FeasibilityParams = FeasibilityParams()) -> FeasibilityReport:
    """Recompute every derived quantity and flag each against its anchor.

    The anchors describe the default operating point; a report built from
    other parameters will honestly fail them.
    """
    k = params.cavity_decay_per_s
    gamma_e = params.gamma_e_per_s
    values = {
        "cavity_lifetime_s": 1.0 / k,
        "exchange_window_s": math.pi / params.g_per_s,
        "pulse_window_s": math.pi / (2.0 * params.omega_drive_per_s),
        # gamma_e = 0 is a legal lossless point; report infinite cooperativity
        "cooperativity": params.g_per_s**2 / (gamma_e * k) if gamma_e > 0 else math.inf,
    }
    matched = {
        name: math.isclose(
            round_to_sig_figures(values[name], _ANCHOR_SIG_FIGURES),
            anchor,
            rel_tol=1e-9,
        )
        for name, anchor in ANCHORS.items()
    }
    return FeasibilityReport(
        cavity_decay_per_s=k,
        cavity_lifetime_s=values["cavity_lifetime_s"],
        exchange_window_s=values["exchange_window_s"],
        pulse_window_s=values["pulse_window_s"],
        cooperativity=values["cooperativity"],
        exchange_per_cavity_decay=values["exchange_window_s"] * k,
        exchange_per_e_decay=values["exchange_window_s"] * params.gamma_e_per_s,
        anchors_matched=matched,
        passed=all(matched.values()),
    )
