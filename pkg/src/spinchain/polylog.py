"""Polylogarithms Li_m(e^{i phi}) on the unit circle for m = 1, 2, 3.

Splitting Li_m into Fourier sums C_m = sum cos(k phi)/k^m and
S_m = sum sin(k phi)/k^m, the components with elementary closed forms on
[0, 2pi] are

    C_1 = -ln(2 sin(phi/2))          S_1 = (pi - phi)/2
    C_2 = pi^2/6 - pi phi/2 + phi^2/4
    S_3 = pi^2 phi/6 - pi phi^2/4 + phi^3/12

(the Bernoulli-polynomial family).  The two remaining components are
Clausen-type functions with no elementary form:

    S_2 = Cl_2(phi)   (classic Clausen function)
    C_3 = sum cos(k phi)/k^3

Both are evaluated from the power-series expansion of ln(2 sin(t/2))
around t = 0, folded into [0, pi] by (anti)symmetry about phi = pi.  The
series coefficients involve zeta(2j) and converge like 4^{-j} at the
fold point, so ~30 terms give < 1e-16 tails.

Li_1 diverges at phi = 0 (mod 2pi); this is the light-line divergence of
the coupling kernel and is guarded by ``eps_sing``.
"""

from __future__ import annotations

import numpy as np
from scipy.special import zeta

from .errors import InvalidOrder, SingularPoint

TWO_PI = 2.0 * np.pi

#: Default guard radius (rad) around the Li_1 singularity at phi = 0 mod 2pi.
EPS_SING = 1e-9

ZETA3 = float(zeta(3.0))

# Coefficients of Cl_2(t) = t(1 - ln t) + sum_j _CL2_COEF[j] t^{2j+3}
# from integrating ln(2 sin(t/2)) = ln t - sum_j zeta(2j)/j (t/2pi)^{2j}.
_J = np.arange(1, 31)
_CL2_COEF = zeta(2.0 * _J) / (_J * (2 * _J + 1) * TWO_PI ** (2 * _J))
_CL2_POW = 2 * _J + 1
# C_3 follows from one more integration: C_3' = -Cl_2.
_C3_COEF = _CL2_COEF / (2 * _J + 2)
_C3_POW = 2 * _J + 2


def reduce_phase(phi):
    """Reduce phase(s) to [0, 2pi). Finite input required."""
    phi = np.asarray(phi, dtype=float)
    if not np.all(np.isfinite(phi)):
        raise ValueError("phase must be finite")
    out = np.mod(phi, TWO_PI)
    # np.mod can return 2pi for tiny negative inputs
    out = np.where(out >= TWO_PI, out - TWO_PI, out)
    return out


def _fold_half(phi):
    """Map [0, 2pi) onto [0, pi]; second half mirrored, sign flag returned."""
    mirrored = phi > np.pi
    return np.where(mirrored, TWO_PI - phi, phi), mirrored


def _clausen2(phi):
    """Cl_2(phi) = sum sin(k phi)/k^2 for phi in [0, 2pi)."""
    t, mirrored = _fold_half(phi)
    safe = np.where(t > 0.0, t, 1.0)
    base = t * (1.0 - np.log(safe))
    series = (_CL2_COEF * safe[..., None] ** _CL2_POW).sum(axis=-1)
    val = np.where(t > 0.0, base + series, 0.0)
    return np.where(mirrored, -val, val)


def _cosine3(phi):
    """C_3(phi) = sum cos(k phi)/k^3 for phi in [0, 2pi); even about pi."""
    t, _ = _fold_half(phi)
    safe = np.where(t > 0.0, t, 1.0)
    base = ZETA3 - 0.75 * t * t + 0.5 * t * t * np.log(safe)
    series = (_C3_COEF * safe[..., None] ** _C3_POW).sum(axis=-1)
    return np.where(t > 0.0, base - series, ZETA3)


def _singular_mask(phi, eps_sing):
    """True where phi is within eps_sing of 0 mod 2pi."""
    return np.minimum(phi, TWO_PI - phi) < eps_sing


def _li1(phi):
    # -ln(1 - e^{i phi}) written via |1 - e^{i phi}| = 2 sin(phi/2) to
    # avoid cancellation near the endpoints of [0, 2pi).
    return -np.log(2.0 * np.sin(0.5 * phi)) + 0.5j * (np.pi - phi)


def _li0(phi):
    # Li_0(z) = z/(1-z); on the circle 1/(1-e^{i phi}) = (1 + i cot(phi/2))/2.
    return -0.5 + 0.5j / np.tan(0.5 * phi)


def li0_unit_circle(phi, eps_sing=EPS_SING):
    """Li_0(e^{i phi}); internal helper for kernel k-derivatives."""
    phi = reduce_phase(phi)
    if np.any(_singular_mask(phi, eps_sing)):
        raise SingularPoint("Li_0 evaluated within eps_sing of phi = 0 mod 2pi")
    return _li0(phi)


def polylog_unit_circle(m, phi, eps_sing=EPS_SING):
    """Li_m(e^{i phi}) for integer m in {1, 2, 3}.

    Accepts scalar or array ``phi`` (radians, any real value; reduced to
    [0, 2pi) internally).  Raises SingularPoint for m = 1 within
    ``eps_sing`` of the divergence at phi = 0 mod 2pi.
    """
    if m not in (1, 2, 3):
        raise InvalidOrder(f"order must be 1, 2 or 3, got {m!r}")
    phi = reduce_phase(phi)
    scalar = phi.ndim == 0
    phi = np.atleast_1d(phi)

    if m == 1:
        if np.any(_singular_mask(phi, eps_sing)):
            raise SingularPoint(
                "Li_1 diverges at phi = 0 mod 2pi (light line)"
            )
        out = _li1(phi)
    elif m == 2:
        real = np.pi**2 / 6.0 - 0.5 * np.pi * phi + 0.25 * phi * phi
        out = real + 1j * _clausen2(phi)
    else:
        imag = np.pi**2 * phi / 6.0 - 0.25 * np.pi * phi * phi + phi**3 / 12.0
        out = _cosine3(phi) + 1j * imag

    return out[0] if scalar else out


def polylog_phase_derivative(m, phi, eps_sing=EPS_SING):
    """d/dphi Li_m(e^{i phi}) = i Li_{m-1}(e^{i phi}) for m in {2, 3}."""
    if m not in (2, 3):
        raise InvalidOrder(f"derivative supported for m in {{2, 3}}, got {m!r}")
    return 1j * polylog_unit_circle(m - 1, phi, eps_sing=eps_sing)
