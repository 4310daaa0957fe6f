"""Direction-signed Fourier transforms between chi and k representations.

Forward kernel is e^{-i*s*k*chi}, inverse e^{+i*s*k*chi}, both with the
symmetric 1/sqrt(2*pi) normalization; discrete sums carry the grid step so
the discrete and continuum normalizations agree.  The k axis is symmetric
about zero, so negative wave numbers are always present.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Axis, Representation, SampledFunction, norm

__all__ = ["to_momentum", "to_position", "parseval_check", "ParsevalReport"]


def _signed_dft(values: np.ndarray, x0: float, dx: float, k0: float,
                dk: float, sign: int) -> np.ndarray:
    """Compute out[m] = sum_j values[j] * exp(i*sign*k_m*x_j) for the two
    uniform grids x_j = x0 + j*dx and k_m = k0 + m*dk with dk*dx = 2*pi/N.
    """
    n = len(values)
    j = np.arange(n)
    m = np.arange(n)
    # exp(i*sign*k_m*x_j) factors as exp(i*sign*k0*x_j) * exp(i*sign*m*dk*x0)
    # * exp(i*sign*2pi*m*j/N); the last factor is a plain (i)FFT.
    inner = values.astype(complex) * np.exp(1j * sign * k0 * (x0 + j * dx))
    if sign == -1:
        core = np.fft.fft(inner)
    else:
        core = n * np.fft.ifft(inner)
    return core * np.exp(1j * sign * m * dk * x0)


def to_momentum(f: SampledFunction) -> SampledFunction:
    """Transform chi samples to the conjugate symmetric k axis."""
    if f.representation is not Representation.POSITION_CHI:
        raise ValueError("to_momentum requires a position-chi function")
    k_axis = f.axis.conjugate()
    out = _signed_dft(f.values, f.axis.start, f.axis.step,
                      k_axis.start, k_axis.step, sign=-f.s)
    out *= f.axis.step / np.sqrt(2.0 * np.pi)
    return SampledFunction(axis=k_axis, values=out,
                           representation=Representation.MOMENTUM_K,
                           s=f.s, pol=f.pol, leakage=f.leakage)


def to_position(f: SampledFunction, target: Axis | None = None) -> SampledFunction:
    """Inverse transform with kernel e^{+i*s*k*chi}; exact inverse of
    to_momentum when `target` is the chi axis the momentum grid came from.

    Defaults to the zero-centred chi axis conjugate to the k grid.
    """
    if f.representation is not Representation.MOMENTUM_K:
        raise ValueError("to_position requires a momentum-k function")
    chi_axis = target if target is not None else f.axis.conjugate()
    if chi_axis.count != f.axis.count or not np.isclose(
            chi_axis.step * f.axis.step * f.axis.count, 2.0 * np.pi):
        raise ValueError("target chi axis is not conjugate to the k grid")
    out = _signed_dft(f.values, f.axis.start, f.axis.step,
                      chi_axis.start, chi_axis.step, sign=+f.s)
    out *= f.axis.step / np.sqrt(2.0 * np.pi)
    return SampledFunction(axis=chi_axis, values=out,
                           representation=Representation.POSITION_CHI,
                           s=f.s, pol=f.pol, leakage=f.leakage)


@dataclass(frozen=True)
class ParsevalReport:
    position_norm: float
    momentum_norm: float
    rel_error: float
    absolute: bool = False  # True when the input was zero and rel_error
    # actually holds the absolute error


def parseval_check(f: SampledFunction) -> ParsevalReport:
    """Compare ||f||^2 on the chi grid with ||f~||^2 on the k grid."""
    if f.representation is not Representation.POSITION_CHI:
        raise ValueError("parseval_check requires a position-chi function")
    ft = to_momentum(f)
    p = norm(f) ** 2
    m = norm(ft) ** 2
    if p == 0.0:
        return ParsevalReport(position_norm=p, momentum_norm=m,
                              rel_error=abs(p - m), absolute=True)
    return ParsevalReport(position_norm=p, momentum_norm=m,
                          rel_error=abs(p - m) / p)
