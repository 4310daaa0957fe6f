"""Boost parameters and light-cone coordinate transformations.

Works in the light-cone variable chi = x - s*c*t, where s = +1 labels
right-moving and s = -1 left-moving signals.  A boost with velocity
fraction beta rescales chi by the Doppler factor kappa = gamma*(1 + s*beta);
field amplitudes pick up the reciprocal factor xi = gamma*(1 - s*beta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "BoostParams",
    "LightConeCoord",
    "SignalExchangeRecord",
    "make_boost",
    "kappa",
    "xi",
    "chi_of_event",
    "boost_coord",
    "inverse_boost",
    "compose_boosts",
    "simulate_signal_exchange",
]


def _check_direction(s: int) -> int:
    if s not in (+1, -1):
        raise ValueError(f"direction flag must be +1 or -1, got {s!r}")
    return s


@dataclass(frozen=True)
class BoostParams:
    """Relative velocity fraction beta and the cached Lorentz factor gamma."""

    beta: float
    gamma: float


@dataclass(frozen=True)
class LightConeCoord:
    """A light-cone coordinate chi together with its direction flag s."""

    chi: float
    s: int

    def __post_init__(self):
        _check_direction(self.s)


@dataclass(frozen=True)
class SignalExchangeRecord:
    """Emission/reception times of a light pulse seen by both observers."""

    t_emit_A: float
    t_receive_A: float
    t_emit_B: float
    t_receive_B: float
    kappa_measured: float


def make_boost(beta: float) -> BoostParams:
    """Build boost parameters for a subluminal relative velocity fraction."""
    beta = float(beta)
    if not math.isfinite(beta):
        raise ValueError(f"beta must be finite, got {beta!r}")
    if abs(beta) >= 1.0:
        raise ValueError(f"|beta| must be < 1 (subluminal), got {beta!r}")
    # 1 - beta**2 underflows gracefully: beta = 1 - 1e-16 still yields a
    # finite gamma because the product (1-beta)*(1+beta) is computed first.
    gamma = 1.0 / math.sqrt((1.0 - beta) * (1.0 + beta))
    return BoostParams(beta=beta, gamma=gamma)


def kappa(s: int, boost: BoostParams) -> float:
    """Doppler coordinate factor: chi_B = kappa * chi_A."""
    _check_direction(s)
    return boost.gamma * (1.0 + s * boost.beta)


def xi(s: int, boost: BoostParams) -> float:
    """Amplitude factor gamma*(1 - s*beta); reciprocal of kappa."""
    _check_direction(s)
    return boost.gamma * (1.0 - s * boost.beta)


def chi_of_event(x: float, t: float, s: int, c: float = 1.0) -> LightConeCoord:
    """Light-cone coordinate chi = x - s*c*t of a spacetime event."""
    _check_direction(s)
    if not (math.isfinite(x) and math.isfinite(t) and math.isfinite(c)):
        raise ValueError("event coordinates and c must be finite")
    if c <= 0.0:
        raise ValueError(f"c must be positive, got {c!r}")
    return LightConeCoord(chi=x - s * c * t, s=s)


def boost_coord(coord: LightConeCoord, boost: BoostParams) -> LightConeCoord:
    """Map a light-cone coordinate into the boosted frame; s is unchanged."""
    return LightConeCoord(chi=kappa(coord.s, boost) * coord.chi, s=coord.s)


def inverse_boost(boost: BoostParams) -> BoostParams:
    """The boost back: beta changes sign, gamma is even in beta."""
    return BoostParams(beta=-boost.beta, gamma=boost.gamma)


def compose_boosts(first: BoostParams, second: BoostParams) -> BoostParams:
    """Relativistic velocity addition; kappa and xi are multiplicative."""
    b1, b2 = first.beta, second.beta
    return make_boost((b1 + b2) / (1.0 + b1 * b2))


def simulate_signal_exchange(
    boost: BoostParams, t_emit_A: float, c: float = 1.0
) -> SignalExchangeRecord:
    """Reenact the two-observer light-pulse exchange that measures kappa.

    Alice (at rest at her origin) emits a right-moving pulse at t_emit_A
    toward Bob, who recedes at v = beta*c having met Alice at t = 0.  The
    pulse catches Bob where c*(t - t_emit_A) = v*t; time dilation relates
    each observer's clock to the other's.  The ratio of Bob's reception
    time to Alice's emission time measures kappa = gamma*(1 + beta).
    """
    if not (t_emit_A > 0.0):
        raise ValueError(f"emission time must be positive, got {t_emit_A!r}")
    if c <= 0.0:
        raise ValueError(f"c must be positive, got {c!r}")
    beta, gamma = boost.beta, boost.gamma
    # Catch-up condition in Alice's frame: reception at t_A2 = t_A1/(1-beta).
    t_receive_A = t_emit_A / (1.0 - beta)
    # Reception point moves with Bob -> Bob's clock reads t_A2/gamma there.
    t_receive_B = t_receive_A / gamma
    # Emitter is stationary for Alice, moving for Bob -> t_B1 = gamma*t_A1.
    t_emit_B = gamma * t_emit_A
    kappa_measured = t_receive_B / t_emit_A
    # Same pulse seen from Bob's side: t_B2 = (1+beta)*t_B1.
    alt = (1.0 + beta) * t_emit_B
    if not math.isclose(kappa_measured, alt / t_emit_A, rel_tol=1e-12):
        raise AssertionError(
            "inconsistent exchange chain: "
            f"{kappa_measured} vs {alt / t_emit_A}"
        )
    return SignalExchangeRecord(
        t_emit_A=t_emit_A,
        t_receive_A=t_receive_A,
        t_emit_B=t_emit_B,
        t_receive_B=t_receive_B,
        kappa_measured=kappa_measured,
    )
