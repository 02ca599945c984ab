"""Dipole-dipole coupling kernel of the chain, in real and momentum space.

Units throughout the package: gamma0 = 1 sets the rate scale, lengths are
in units of the transition wavelength (so k0 = 2pi), times in 1/gamma0.

The real-space kernel is the circular-polarization-diagonal element of
the transverse free-space propagator evaluated on the chain axis,

    K(r) = (3 gamma0 / 4) e^{i x} (1/x + i/x^2 - 1/x^3),   x = k0 r,

and its lattice Fourier transform over separations m != 0 collapses to
unit-circle polylogarithms of order 1..3 in the phases (k0 +- k) a.  The
transform diverges on the light line |k| = k0 (mod 2pi/a) through the
Li_1 term; outside the light line Im K_tilde(k) = -gamma0/2 identically,
which is what makes the guided bands lossless.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import InvalidParams, LightLineSingularity, NonPositiveSeparation, SingularPoint
from .polylog import EPS_SING, li0_unit_circle, polylog_unit_circle

K0 = 2.0 * np.pi


@dataclass(frozen=True)
class ChainParams:
    """Geometry and atomic constants of the chain.

    N       atom count, positions z_n = n a for n = 0..N-1
    a       lattice constant in wavelength units (subradiant regime a < 1/2)
    gamma0  single-atom decay rate (the rate unit, 1.0)
    k0      transition wavenumber, 2pi in these units
    """

    N: int
    a: float
    gamma0: float = 1.0
    k0: float = K0

    def __post_init__(self):
        if self.N < 1:
            raise InvalidParams(f"N must be >= 1, got {self.N}")
        if self.a <= 0:
            raise InvalidParams(f"a must be > 0, got {self.a}")
        if self.gamma0 <= 0:
            raise InvalidParams(f"gamma0 must be > 0, got {self.gamma0}")

    @property
    def positions(self) -> np.ndarray:
        return np.arange(self.N) * self.a

    @property
    def zone_edge(self) -> float:
        """Brillouin-zone boundary pi/a."""
        return np.pi / self.a


def transverse_green_coupling(r, gamma0=1.0, k0=K0):
    """Coherent+dissipative coupling rate between two atoms at separation r.

    r in wavelength units, r > 0; the on-site term is not covered here
    (the Hamiltonian assembly uses the constant i gamma0/2 for it).
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise NonPositiveSeparation("separation must be > 0")
    x = k0 * r
    return 0.75 * gamma0 * np.exp(1j * x) * (1.0 / x + 1j / x**2 - 1.0 / x**3)


def fold_to_zone(k, a):
    """Fold wavenumber(s) into the first Brillouin zone [-pi/a, pi/a)."""
    period = 2.0 * np.pi / a
    return np.mod(np.asarray(k, dtype=float) + np.pi / a, period) - np.pi / a


def is_radiative(k, params: ChainParams) -> np.ndarray:
    """True where the folded wavenumber lies inside the light line |k| < k0."""
    return np.abs(fold_to_zone(k, params.a)) < params.k0


def momentum_kernel(k, params: ChainParams, eps_sing=EPS_SING):
    """K_tilde(k) = sum_{m != 0} K(|m| a) e^{i k m a} via polylogarithms.

    Even and 2pi/a-periodic in k.  Raises LightLineSingularity when either
    phase (k0 +- k) a falls within eps_sing of 0 mod 2pi.
    """
    a, k0, g0 = params.a, params.k0, params.gamma0
    k = np.asarray(k, dtype=float)
    phi_p = (k0 + k) * a
    phi_m = (k0 - k) * a
    pref = 0.75 * g0 / 1j
    out = 0.0
    try:
        for m in (1, 2, 3):
            lsum = polylog_unit_circle(m, phi_p, eps_sing) + polylog_unit_circle(
                m, phi_m, eps_sing
            )
            out = out + pref * (1j / (a * k0)) ** m * lsum
    except SingularPoint as exc:
        raise LightLineSingularity(
            "momentum kernel diverges: (k0 +- k) a on the light line"
        ) from exc
    return out


def momentum_kernel_derivative(k, params: ChainParams, eps_sing=EPS_SING):
    """Analytic dK_tilde/dk by polylog order lowering.

    d/dk Li_m(e^{i(k0 +- k)a}) = (+-) i a Li_{m-1}(e^{i(k0 +- k)a}).
    """
    a, k0, g0 = params.a, params.k0, params.gamma0
    k = np.asarray(k, dtype=float)
    phi_p = (k0 + k) * a
    phi_m = (k0 - k) * a
    pref = 0.75 * g0 / 1j

    def lower(m, phi):
        if m == 1:
            return li0_unit_circle(phi, eps_sing)
        return polylog_unit_circle(m - 1, phi, eps_sing)

    out = 0.0
    try:
        for m in (1, 2, 3):
            diff = lower(m, phi_p) - lower(m, phi_m)
            out = out + pref * (1j / (a * k0)) ** m * (1j * a) * diff
    except SingularPoint as exc:
        raise LightLineSingularity(
            "kernel derivative diverges: (k0 +- k) a on the light line"
        ) from exc
    return out


@dataclass(frozen=True)
class CouplingKernel:
    """Momentum-space kernel bundle passed to the band solver.

    ktilde and ktilde_prime accept scalar or array k.  Tests substitute
    modified callables (e.g. the Hermitian-limit kernel with Im set to 0).
    """

    ktilde: Callable
    ktilde_prime: Callable
    params: ChainParams = field(default=None)


def make_coupling_kernel(params: ChainParams, eps_sing=EPS_SING) -> CouplingKernel:
    return CouplingKernel(
        ktilde=lambda k: momentum_kernel(k, params, eps_sing),
        ktilde_prime=lambda k: momentum_kernel_derivative(k, params, eps_sing),
        params=params,
    )
