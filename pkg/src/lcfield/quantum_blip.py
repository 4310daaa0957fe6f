"""Single-excitation blip states and their observables.

States live in the one-photon sector and are represented by complex
amplitude functions per (direction, polarization) channel; the squared
norm is the photon-number expectation.  The electric-field matrix element
applies the singular convolution kernel -sqrt(hbar/(4*pi*eps*c*A)) *
|u|^{-3/2} as a Fourier multiplier proportional to sqrt(|k|); a Hadamard
finite-part quadrature of the same kernel serves as the independent slow
oracle that pins the multiplier's sign and magnitude.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from . import spectral
from .grid import Axis, Representation, SampledFunction, norm, resample
from .kinematics import BoostParams, kappa, xi

__all__ = [
    "FieldConstants",
    "BlipState",
    "MomentumBlipState",
    "RegularisationKernel",
    "propagate_blip",
    "boost_blip",
    "photon_number",
    "to_momentum_state",
    "to_position_state",
    "boost_momentum_state",
    "mode_occupation",
    "field_matrix_element",
    "kernel_consistency_check",
    "finite_part_convolution",
]


@dataclass(frozen=True)
class FieldConstants:
    """Physical constants; the model leaves units open, so all default to 1."""

    c: float = 1.0
    hbar: float = 1.0
    epsilon: float = 1.0
    area: float = 1.0

    def __post_init__(self):
        if min(self.c, self.hbar, self.epsilon, self.area) <= 0:
            raise ValueError("physical constants must be positive")


@dataclass(frozen=True, eq=False)
class BlipState:
    """Amplitude function per (s, pol) channel in the chi representation."""

    channels: dict  # (s, pol) -> SampledFunction[POSITION_CHI]
    constants: FieldConstants = FieldConstants()

    def __post_init__(self):
        for (s, pol), f in self.channels.items():
            if (f.s, f.pol) != (s, pol):
                raise ValueError(f"channel key {(s, pol)} does not match tags")
            if f.representation is not Representation.POSITION_CHI:
                raise ValueError("blip channels must be position-chi functions")

    def channel(self, s: int, pol: str = "H") -> SampledFunction:
        return self.channels[(s, pol)]


@dataclass(frozen=True, eq=False)
class MomentumBlipState:
    """The same state with every channel in the k representation."""

    channels: dict  # (s, pol) -> SampledFunction[MOMENTUM_K]
    constants: FieldConstants = FieldConstants()

    def channel(self, s: int, pol: str = "H") -> SampledFunction:
        return self.channels[(s, pol)]


def propagate_blip(state: BlipState, t: float):
    """Return an evaluation map (x, s, pol) -> amplitude at time t.

    The state itself is time-invariant in chi; propagation is the exact
    relabeling psi(x - s*c*t).
    """
    c = state.constants.c

    def amplitude(x: float, s: int, pol: str = "H") -> complex:
        f = state.channel(s, pol)
        chi = x - s * c * t
        pts = f.axis.points()
        if chi < pts[0] or chi > pts[-1]:
            raise ValueError(f"chi = {chi} outside the sampled grid")
        from .grid import eval_points
        return complex(eval_points(f, np.array([chi]))[0])

    return amplitude


def boost_blip(state: BlipState, boost: BoostParams, target: Axis) -> BlipState:
    """psi_B(chi_B) = sqrt(xi) * psi_A(xi * chi_B), channel by channel.

    The sqrt(xi) amplitude keeps the squared norm, hence the photon
    number, invariant.
    """
    out = {}
    for (s, pol), f in state.channels.items():
        sc = xi(s, boost)
        out[(s, pol)] = resample(f, scale=sc, amplitude_factor=math.sqrt(sc),
                                 target=target)
    return BlipState(channels=out, constants=state.constants)


def photon_number(state) -> float:
    """Sum over channels of int |psi|^2; works for both representations."""
    return float(sum(norm(f) ** 2 for f in state.channels.values()))


def to_momentum_state(state: BlipState) -> MomentumBlipState:
    return MomentumBlipState(
        channels={key: spectral.to_momentum(f)
                  for key, f in state.channels.items()},
        constants=state.constants)


def to_position_state(mstate: MomentumBlipState,
                      target: Axis | None = None) -> BlipState:
    return BlipState(
        channels={key: spectral.to_position(f, target)
                  for key, f in mstate.channels.items()},
        constants=mstate.constants)


def boost_momentum_state(mstate: MomentumBlipState, boost: BoostParams,
                         target: Axis) -> MomentumBlipState:
    """psi~_B(k_B) = sqrt(kappa) * psi~_A(kappa * k_B), channel by channel."""
    out = {}
    for (s, pol), f in mstate.channels.items():
        sc = kappa(s, boost)
        out[(s, pol)] = resample(f, scale=sc, amplitude_factor=math.sqrt(sc),
                                 target=target)
    return MomentumBlipState(channels=out, constants=mstate.constants)


def mode_occupation(mstate: MomentumBlipState, k_lo: float, k_hi: float) -> float:
    """int over [k_lo, k_hi] of |psi~(k)|^2 dk, summed over channels."""
    if not k_hi > k_lo:
        raise ValueError("empty wavenumber window")
    total = 0.0
    for f in mstate.channels.values():
        pts = f.axis.points()
        mask = (pts >= k_lo) & (pts <= k_hi)
        total += f.axis.step * float(np.sum(np.abs(f.values[mask]) ** 2))
    return total


class RegularisationKernel:
    """Spectral form of the singular field-weighting kernel.

    The position-space kernel is prefactor * |u|^{-3/2} with prefactor
    -sqrt(hbar/(4*pi*eps*c*A)).  Its Hadamard finite-part Fourier
    transform is -2*sqrt(2*pi*|k|), so the multiplier applied to psi~(k)
    for the electric-field matrix element (including the factor c of the
    field observable) is

        m(k) = c * prefactor * (-2*sqrt(2*pi*|k|)) = sqrt(2*hbar*c/(eps*A)) * sqrt(|k|)

    real, even, with m(0) = 0 (the zero mode carries no energy).
    """

    def __init__(self, k_axis: Axis, constants: FieldConstants = FieldConstants()):
        self.k_axis = k_axis
        self.constants = constants
        self.prefactor = -math.sqrt(
            constants.hbar / (4.0 * math.pi * constants.epsilon
                              * constants.c * constants.area))
        k = k_axis.points()
        self.multiplier = (constants.c * self.prefactor
                           * (-2.0) * np.sqrt(2.0 * np.pi * np.abs(k)))
        self.multiplier.flags.writeable = False

    def export_csv(self, path) -> None:
        """Write `k,m_re,m_im` rows for audit."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["k", "m_re", "m_im"])
            for k, m in zip(self.k_axis.points(), self.multiplier):
                writer.writerow([format(k, ".17g"), format(m, ".17g"),
                                 format(0.0, ".17g")])


def field_matrix_element(state: BlipState, s: int,
                         kernel: RegularisationKernel | None = None) -> SampledFunction:
    """Vacuum-to-one-photon matrix element of the electric field for the
    H channel with direction s: int c * R(chi - chi') * psi(chi') dchi',
    computed as the sqrt(|k|) Fourier multiplier.

    The magnetic counterpart is s * result / c.
    """
    f = state.channel(s, "H")
    ft = spectral.to_momentum(f)
    if kernel is None:
        kernel = RegularisationKernel(ft.axis, state.constants)
    if kernel.k_axis != ft.axis:
        raise ValueError("kernel was built for a different grid")
    out = ft.with_values(kernel.multiplier * ft.values)
    return spectral.to_position(out, target=f.axis)


@dataclass(frozen=True)
class KernelCheckReport:
    rel_l2_discrepancy: float
    leakage: float


def kernel_consistency_check(state: BlipState, boost: BoostParams,
                             s: int, target: Axis) -> KernelCheckReport:
    """Check that the field matrix element of a boosted state matches the
    classical-field transformation xi * E_A(xi * chi_B) of the unboosted
    matrix element.  Both sides are computed by independent code paths;
    agreement witnesses the |u|^{-3/2} kernel homogeneity R(kappa*u) =
    kappa^{-3/2} R(u).
    """
    lhs = field_matrix_element(boost_blip(state, boost, target), s)
    me_A = field_matrix_element(state, s)
    rhs = resample(me_A, scale=xi(s, boost), amplitude_factor=xi(s, boost),
                   target=target)
    ref = norm(lhs)
    num = float(np.sqrt(target.step) * np.linalg.norm(lhs.values - rhs.values))
    disc = num / ref if ref > 0 else num
    return KernelCheckReport(rel_l2_discrepancy=disc,
                             leakage=max(lhs.leakage, rhs.leakage))


def finite_part_convolution(psi, chi_points, constants: FieldConstants = FieldConstants(),
                            inner_radius: float = 1.0, outer_radius: float = 60.0):
    """Slow oracle: Hadamard finite-part quadrature of the field matrix
    element for a smooth callable amplitude psi.

    FP int |u|^{-3/2} g(u) du =
        int_{|u|<a} |u|^{-3/2} (g(u) - g(0)) du - 4 g(0)/sqrt(a)
        + int_{a<|u|<R} |u|^{-3/2} g(u) du

    applied to g(u) = psi(chi - u) at each requested chi, then scaled by
    c * prefactor.  psi must be negligible beyond `outer_radius`.
    """
    prefactor = -math.sqrt(constants.hbar / (4.0 * math.pi * constants.epsilon
                                             * constants.c * constants.area))
    a, big = inner_radius, outer_radius

    def fp_at(chi: float, part) -> float:
        def g(u: float) -> float:
            return part(psi(chi - u))

        g0 = g(0.0)
        # quad flags the |u|^{-1/2}-type subtracted integrand as slowly
        # convergent even when the result is accurate; full_output
        # suppresses the warning.
        inner = quad(lambda u: (g(u) - g0) * u ** -1.5, 0.0, a,
                     limit=400, full_output=1)[0]
        inner += quad(lambda u: (g(-u) - g0) * u ** -1.5, 0.0, a,
                      limit=400, full_output=1)[0]
        outer = quad(lambda u: g(u) * u ** -1.5, a, big, limit=400)[0]
        outer += quad(lambda u: g(-u) * u ** -1.5, a, big, limit=400)[0]
        return inner + outer - 4.0 * g0 / math.sqrt(a)

    out = np.empty(len(chi_points), dtype=complex)
    for i, chi in enumerate(chi_points):
        out[i] = complex(fp_at(chi, np.real), fp_at(chi, np.imag))
    return constants.c * prefactor * out
