"""Bloch bands of the driven chain from the helical 2x2 eigenproblem.

For quasimomentum k the two polariton branches are the eigenvalues of

    E(k) = -i gamma0/2 + (1/4) A(k),
    A(k) = [[d cos(th) - 4 Kt(k - kc),  d sin(th)              ],
            [d sin(th),               -d cos(th) - 4 Kt(k + kc)]]

with d the light shift, th the drive mixing angle and Kt the momentum
kernel.  All energies are reported relative to the shifted origin
omega_shift = omega0 + (2 Delta + d)/4, which removes the drive detuning
Delta from the problem entirely.

Writing B = d cos(th) + 2 [Kt(k+kc) - Kt(k-kc)] and q = d sin(th), the
branches are E_pm = -i gamma0/2 - (Kt(k+kc) + Kt(k-kc))/2 +- Omega_k/4
with band splitting Omega_k = sqrt(q^2 + B^2).  The principal square
root (Re >= 0) makes the + branch the "upper" band (larger Re E) at
every k, so no separate branch tracking is needed for the labels.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field

import numpy as np

from .couplings import ChainParams, CouplingKernel, fold_to_zone, make_coupling_kernel
from .errors import DegenerateBands, InvalidParams, LightLineSingularity
from .io_utils import atomic_write_text, fmt

log = logging.getLogger(__name__)

DEGENERACY_TOL = 1e-10


@dataclass(frozen=True)
class ControlField:
    """Drive parameters of the elliptically polarized control field.

    delta   light shift |Omega|^2 / (2 Delta), >= 0, units gamma0
    theta   mixing angle in [0, pi]; 0 circular, pi/2 linear
    k_c     control wavenumber (defaults to k0 = 2pi)
    Delta   raw detuning, bookkeeping only (energies are relative to
            omega_shift, so Delta never enters the numbers)
    """

    delta: float
    theta: float = 0.0
    k_c: float = 2.0 * np.pi
    Delta: float = 0.0

    def __post_init__(self):
        if self.delta < 0:
            raise InvalidParams(f"delta must be >= 0, got {self.delta}")
        if not 0.0 <= self.theta <= np.pi:
            raise InvalidParams(f"theta must be in [0, pi], got {self.theta}")

    @classmethod
    def from_amplitudes(cls, e_plus, e_minus, delta, k_c=2.0 * np.pi, Delta=0.0):
        """Mixing angle from the two circular field amplitudes."""
        if e_plus < 0 or e_minus < 0:
            raise InvalidParams("field amplitudes must be >= 0")
        theta = 2.0 * np.arctan2(e_plus, e_minus)
        return cls(delta=delta, theta=theta, k_c=k_c, Delta=Delta)


def _kernel_terms(k, field: ControlField, kernel: CouplingKernel):
    kt_p = kernel.ktilde(np.asarray(k) + field.k_c)
    kt_m = kernel.ktilde(np.asarray(k) - field.k_c)
    return kt_p, kt_m


def coupling_matrix_A(k, field: ControlField, kernel: CouplingKernel):
    """The complex-symmetric 2x2 Bloch matrix A(k) in the (+, -) basis."""
    kt_p, kt_m = _kernel_terms(k, field, kernel)
    d, th = field.delta, field.theta
    return np.array(
        [
            [d * np.cos(th) - 4.0 * kt_m, d * np.sin(th)],
            [d * np.sin(th), -d * np.cos(th) - 4.0 * kt_p],
        ],
        dtype=complex,
    )


def _band_core(k, field: ControlField, kernel: CouplingKernel):
    """Vectorized band quantities at wavenumber(s) k.

    Returns (E_upper, E_lower, B, q, Omega, mean) where mean is the
    label-independent part -i gamma0/2 - (Kt_p + Kt_m)/2.
    """
    g0 = kernel.params.gamma0 if kernel.params is not None else 1.0
    kt_p, kt_m = _kernel_terms(k, field, kernel)
    d, th = field.delta, field.theta
    B = d * np.cos(th) + 2.0 * (kt_p - kt_m)
    q = d * np.sin(th)
    omega = np.sqrt(q * q + B * B + 0j)
    mean = -0.5j * g0 - 0.5 * (kt_p + kt_m)
    return mean + 0.25 * omega, mean - 0.25 * omega, B, q, omega, mean


def band_eigenvalues(k, field: ControlField, kernel: CouplingKernel):
    """(E_upper, E_lower) at k, with Re E_upper >= Re E_lower."""
    e_up, e_lo, *_ = _band_core(k, field, kernel)
    return e_up, e_lo


def band_splitting(k, field: ControlField, kernel: CouplingKernel):
    """Omega_k = sqrt((d sin th)^2 + (d cos th + 2[Kt_p - Kt_m])^2)."""
    *_, omega, _ = _band_core(k, field, kernel)
    return omega


def mixing_angle_alpha(k, field: ControlField, kernel: CouplingKernel):
    """Complex mixing angle alpha_k of the band eigenvectors of A.

    (cos(a/2), -sin(a/2)) is the upper-band spinor and
    (sin(a/2), cos(a/2)) the lower-band spinor, both in the (+, -)
    polarization basis before the helical phases e^{-+ i k_c z_n} are
    restored.  Real whenever both k +- k_c are outside the light line.
    """
    _, _, B, q, omega, _ = _band_core(k, field, kernel)
    return _alpha_from_parts(B, q, omega)


def _alpha_from_parts(B, q, omega):
    if np.abs(omega) < DEGENERACY_TOL:
        raise DegenerateBands(f"|Omega_k| = {np.abs(omega):.3e} below tolerance")
    if abs(q) == 0.0:
        # diagonal A: bands are pure |e_+> / |e_->
        return 0.0 if np.real(B) >= 0 else np.pi
    return 2.0 * np.arctan((B - omega) / q)


def band_spinors(alpha):
    """Upper and lower eigenvector spinors for a given mixing angle."""
    c, s = np.cos(alpha / 2.0), np.sin(alpha / 2.0)
    return np.array([c, -s]), np.array([s, c])


def group_velocity(k, band, field: ControlField, kernel: CouplingKernel):
    """d Re(omega_band)/dk via the analytic kernel derivative.

    band is "upper" or "lower"; units gamma0 * lambda0.
    """
    sign = _band_sign(band)
    _, _, B, q, omega, _ = _band_core(k, field, kernel)
    ktp_p = kernel.ktilde_prime(np.asarray(k) + field.k_c)
    ktp_m = kernel.ktilde_prime(np.asarray(k) - field.k_c)
    dmean = -0.5 * (ktp_p + ktp_m)
    if np.all(np.abs(omega) < DEGENERACY_TOL):
        return float(np.real(dmean))
    domega = B * 2.0 * (ktp_p - ktp_m) / omega
    return float(np.real(dmean + sign * 0.25 * domega))


def group_velocity_theta_rate(
    k, field: ControlField, theta_dot, kernel: CouplingKernel
):
    """dv_L/dt of the lower band under a mixing-angle ramp theta_dot.

    Closed form of theta_dot * dv_L/dtheta; proportional to
    theta_dot sin(th) d_k[Kt(k+kc) - Kt(k-kc)] up to the smooth weight
    delta^2 (delta + 2 DK cos th)/Omega^3.
    """
    if theta_dot == 0.0:
        return 0.0
    d, th = field.delta, field.theta
    _, _, B, q, omega, _ = _band_core(k, field, kernel)
    if np.abs(omega) < DEGENERACY_TOL:
        raise DegenerateBands("theta rate undefined at a band degeneracy")
    ktp_p = kernel.ktilde_prime(np.asarray(k) + field.k_c)
    ktp_m = kernel.ktilde_prime(np.asarray(k) - field.k_c)
    kt_p, kt_m = _kernel_terms(k, field, kernel)
    dk = kt_p - kt_m
    # d(B/Omega)/dtheta = -delta^2 sin(th) (delta + 2 dk cos th) / Omega^3
    dratio = -(d * d) * np.sin(th) * (d + 2.0 * dk * np.cos(th)) / omega**3
    dv_dth = -np.real(0.5 * (ktp_p - ktp_m) * dratio)
    return float(theta_dot * dv_dth)


def _band_sign(band):
    if band == "upper":
        return +1.0
    if band == "lower":
        return -1.0
    raise ValueError(f"band must be 'upper' or 'lower', got {band!r}")


@dataclass(frozen=True)
class GridSpec:
    """Brillouin-zone sampling for band sweeps."""

    n_nodes: int = 2048
    exclusion_frac: float = 1e-3  # light-line exclusion radius / (pi/a)


@dataclass
class BandStructure:
    """Band sweep result on a strictly increasing k grid."""

    k: np.ndarray
    e_upper: np.ndarray
    e_lower: np.ndarray
    alpha: np.ndarray
    v_upper: np.ndarray
    v_lower: np.ndarray
    radiative_plus: np.ndarray   # folded k + k_c inside the light line
    radiative_minus: np.ndarray  # folded k - k_c inside the light line
    dropped_k: np.ndarray
    params: ChainParams = None
    field: ControlField = None

    @property
    def radiative(self):
        return self.radiative_plus | self.radiative_minus

    @property
    def subradiant(self):
        return ~self.radiative

    def gamma_upper(self):
        return -2.0 * np.imag(self.e_upper)

    def gamma_lower(self):
        return -2.0 * np.imag(self.e_lower)

    def to_csv(self, path):
        rows = [
            (
                "k",
                "re_e_upper",
                "im_e_upper",
                "re_e_lower",
                "im_e_lower",
                "re_alpha",
                "im_alpha",
                "v_upper",
                "v_lower",
                "radiative_flag",
            )
        ]
        for i in range(len(self.k)):
            rows.append(
                (
                    fmt(self.k[i]),
                    fmt(self.e_upper[i].real),
                    fmt(self.e_upper[i].imag),
                    fmt(self.e_lower[i].real),
                    fmt(self.e_lower[i].imag),
                    fmt(self.alpha[i].real),
                    fmt(self.alpha[i].imag),
                    fmt(self.v_upper[i]),
                    fmt(self.v_lower[i]),
                    "1" if (self.radiative_plus[i] or self.radiative_minus[i]) else "0",
                )
            )
        text = "\n".join(",".join(r) for r in rows) + "\n"
        atomic_write_text(path, text)


def _grid_with_exclusions(params: ChainParams, field: ControlField, grid: GridSpec):
    edge = params.zone_edge
    k = np.linspace(-edge, edge, grid.n_nodes, endpoint=False)
    radius = grid.exclusion_frac * edge
    keep = np.ones_like(k, dtype=bool)
    for shift in (field.k_c, -field.k_c):
        folded = fold_to_zone(k + shift, params.a)
        for sing in (params.k0, -params.k0):
            keep &= np.abs(folded - sing) > radius
    return k[keep], k[~keep]


def band_sweep(
    params: ChainParams,
    field: ControlField,
    grid: GridSpec = None,
    kernel: CouplingKernel = None,
) -> BandStructure:
    """Sample both bands over the Brillouin zone.

    Grid nodes within the light-line exclusion radius are dropped and
    reported via the ``dropped_k`` array (and a log line).
    """
    grid = grid or GridSpec()
    kernel = kernel or make_coupling_kernel(params)
    k, dropped = _grid_with_exclusions(params, field, grid)
    if len(dropped):
        log.info("band_sweep: dropped %d light-line nodes", len(dropped))

    e_up, e_lo, B, q, omega, _ = _band_core(k, field, kernel)
    alpha = np.empty(len(k), dtype=complex)
    for i in range(len(k)):
        try:
            alpha[i] = _alpha_from_parts(B[i], q, omega[i])
        except DegenerateBands:
            alpha[i] = np.nan

    ktp_p = kernel.ktilde_prime(k + field.k_c)
    ktp_m = kernel.ktilde_prime(k - field.k_c)
    dmean = -0.5 * (ktp_p + ktp_m)
    with np.errstate(invalid="ignore", divide="ignore"):
        domega = np.where(
            np.abs(omega) < DEGENERACY_TOL, 0.0, B * 2.0 * (ktp_p - ktp_m) / omega
        )
    v_up = np.real(dmean + 0.25 * domega)
    v_lo = np.real(dmean - 0.25 * domega)

    rad_p = np.abs(fold_to_zone(k + field.k_c, params.a)) < params.k0
    rad_m = np.abs(fold_to_zone(k - field.k_c, params.a)) < params.k0

    return BandStructure(
        k=k,
        e_upper=e_up,
        e_lower=e_lo,
        alpha=alpha,
        v_upper=v_up,
        v_lower=v_lo,
        radiative_plus=rad_p,
        radiative_minus=rad_m,
        dropped_k=dropped,
        params=params,
        field=field,
    )


def subradiant_bandwidth(structure: BandStructure, band="lower"):
    """Spread of Re E over the subradiant window of one band."""
    mask = structure.subradiant
    if not np.any(mask):
        return 0.0
    e = structure.e_lower if band == "lower" else structure.e_upper
    vals = np.real(e[mask])
    return float(vals.max() - vals.min())
