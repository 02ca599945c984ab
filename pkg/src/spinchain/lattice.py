"""Finite-chain Hamiltonian assembly, theta schedules and the probe drive.

Basis order is (n, s=+), (n, s=-) interleaved: index 2n holds the sigma+
amplitude of atom n and 2n+1 the sigma- amplitude.  All energies are
measured relative to omega_shift, which leaves on each site

    diagonal       (delta/4) s cos(theta) - i gamma0/2
    polarization   (delta/4) sin(theta) e^{-+ 2 i k_c z_n}   (+<->-)

plus the polarization-diagonal dissipative couplings -K(|z_n - z_m|).
The dissipative block is theta-independent and is exposed separately so
integrators can reuse it across control-field updates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np
from scipy.linalg import toeplitz

from .bands import ControlField
from .couplings import ChainParams, transverse_green_coupling
from .errors import InvalidParams, OutOfRangeTime

_CONTINUITY_TOL = 1e-9


# --- theta schedules -------------------------------------------------------

@dataclass(frozen=True)
class Hold:
    theta: float
    duration: float

    def value(self, t):
        return np.full_like(np.asarray(t, dtype=float), self.theta)

    def rate(self, t):
        return np.zeros_like(np.asarray(t, dtype=float))

    @property
    def theta_start(self):
        return self.theta

    @property
    def theta_end(self):
        return self.theta


@dataclass(frozen=True)
class CosineRamp:
    """theta_from -> theta_to with zero slope at both endpoints."""

    theta_from: float
    theta_to: float
    duration: float

    def value(self, t):
        u = np.asarray(t, dtype=float) / self.duration
        return self.theta_from + (self.theta_to - self.theta_from) * 0.5 * (
            1.0 - np.cos(np.pi * u)
        )

    def rate(self, t):
        u = np.asarray(t, dtype=float) / self.duration
        return (
            (self.theta_to - self.theta_from)
            * 0.5
            * np.pi
            / self.duration
            * np.sin(np.pi * u)
        )

    @property
    def theta_start(self):
        return self.theta_from

    @property
    def theta_end(self):
        return self.theta_to


@dataclass(frozen=True)
class Oscillate:
    """Sinusoidal wobble around a center angle, a whole number of cycles."""

    center: float
    amplitude: float
    period: float
    cycles: int

    @property
    def duration(self):
        return self.period * self.cycles

    def value(self, t):
        t = np.asarray(t, dtype=float)
        return self.center + self.amplitude * np.sin(2.0 * np.pi * t / self.period)

    def rate(self, t):
        t = np.asarray(t, dtype=float)
        return (
            self.amplitude
            * 2.0
            * np.pi
            / self.period
            * np.cos(2.0 * np.pi * t / self.period)
        )

    @property
    def theta_start(self):
        return self.center

    @property
    def theta_end(self):
        return self.center


Segment = Union[Hold, CosineRamp, Oscillate]


class ThetaSchedule:
    """Piecewise-smooth theta(t) built from ordered segments.

    Continuity across segment boundaries is enforced at construction;
    zero-duration segments are allowed only when they do not jump.
    """

    def __init__(self, segments: Sequence[Segment]):
        segments = list(segments)
        if not segments:
            raise InvalidParams("schedule needs at least one segment")
        for seg in segments:
            if seg.duration < 0:
                raise InvalidParams("segment duration must be >= 0")
        prev = segments[0]
        for seg in segments[1:]:
            if abs(prev.theta_end - seg.theta_start) > _CONTINUITY_TOL:
                raise InvalidParams(
                    f"theta jumps {prev.theta_end} -> {seg.theta_start} "
                    "across a segment boundary"
                )
            prev = seg
        self.segments = segments
        self.boundaries = np.concatenate(
            [[0.0], np.cumsum([s.duration for s in segments])]
        )
        if self.total_duration <= 0:
            raise InvalidParams("total schedule duration must be > 0")

    @property
    def total_duration(self) -> float:
        return float(self.boundaries[-1])

    def _locate(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t < -1e-12) or np.any(t > self.total_duration + 1e-12):
            raise OutOfRangeTime(
                f"t outside [0, {self.total_duration}]"
            )
        idx = np.searchsorted(self.boundaries, t, side="right") - 1
        return np.clip(idx, 0, len(self.segments) - 1), t

    def theta(self, t):
        idx, t = self._locate(t)
        if t.ndim == 0:
            seg = self.segments[int(idx)]
            return float(seg.value(t - self.boundaries[int(idx)]))
        out = np.empty_like(t)
        for i, seg in enumerate(self.segments):
            m = idx == i
            if np.any(m):
                out[m] = seg.value(t[m] - self.boundaries[i])
        return out

    def theta_rate(self, t):
        idx, t = self._locate(t)
        if t.ndim == 0:
            seg = self.segments[int(idx)]
            return float(seg.rate(t - self.boundaries[int(idx)]))
        out = np.empty_like(t)
        for i, seg in enumerate(self.segments):
            m = idx == i
            if np.any(m):
                out[m] = seg.rate(t[m] - self.boundaries[i])
        return out


def theta_schedule_eval(schedule: ThetaSchedule, t):
    """theta(t); OutOfRangeTime outside [0, total_duration]."""
    return schedule.theta(t)


# --- probe pulse -----------------------------------------------------------

@dataclass(frozen=True)
class ProbePulse:
    """Gaussian probe driving one site.

    amplitude  peak Rabi amplitude Omega_p (units gamma0)
    center     pulse center t_p (units 1/gamma0)
    width      temporal std tau (units 1/gamma0)
    detuning   carrier detuning relative to omega_shift
    polarization  "linear" (equal sigma+- weights), "plus" or "minus"
    """

    site: int = 0
    amplitude: float = 0.35
    center: float = 50.0
    width: float = 25.0
    detuning: float = -3.5
    polarization: str = "linear"

    def __post_init__(self):
        if self.width <= 0:
            raise InvalidParams("probe.width must be > 0")
        if self.site < 0:
            raise InvalidParams("probe.site must be >= 0")
        if self.polarization not in ("linear", "plus", "minus", "circular"):
            raise InvalidParams(
                f"probe.polarization must be linear/plus/minus, got {self.polarization!r}"
            )

    @property
    def weights(self):
        """(w_plus, w_minus) polarization weights."""
        if self.polarization == "linear":
            r = 1.0 / np.sqrt(2.0)
            return r, r
        if self.polarization in ("plus", "circular"):
            return 1.0, 0.0
        return 0.0, 1.0


def drive_vector(pulse: ProbePulse, t, params: ChainParams, field: ControlField):
    """Source term of the driven Schrodinger equation at time t.

    Nonzero only at the pulse site; carries the control-frame phases
    e^{-+ i k_c z_site} so the injected spinor is expressed in the same
    frame as the Hamiltonian (a pure phase per slot for a single site).
    """
    if pulse.site >= params.N:
        raise InvalidParams("probe.site must be < chain.N")
    out = np.zeros(2 * params.N, dtype=complex)
    env = 0.5 * pulse.amplitude * np.exp(
        -((t - pulse.center) ** 2) / (2.0 * pulse.width**2)
    )
    carrier = np.exp(-1j * pulse.detuning * t)
    z = pulse.site * params.a
    w_p, w_m = pulse.weights
    out[2 * pulse.site] = env * carrier * w_p * np.exp(-1j * field.k_c * z)
    out[2 * pulse.site + 1] = env * carrier * w_m * np.exp(+1j * field.k_c * z)
    return out


# --- Hamiltonian assembly --------------------------------------------------

@dataclass
class HamiltonianAssembly:
    """Dense 2N x 2N Hamiltonian snapshot at a given mixing angle."""

    matrix: np.ndarray
    theta: float
    params: ChainParams
    field: ControlField


def dissipative_hamiltonian(params: ChainParams) -> np.ndarray:
    """Theta-independent part: -K couplings and the -i gamma0/2 self term."""
    n = params.N
    h = np.zeros((2 * n, 2 * n), dtype=complex)
    if n > 1:
        col = np.zeros(n, dtype=complex)
        col[1:] = -transverse_green_coupling(
            np.arange(1, n) * params.a, params.gamma0, params.k0
        )
        block = toeplitz(col)
        h[0::2, 0::2] = block
        h[1::2, 1::2] = block
    h -= 0.5j * params.gamma0 * np.eye(2 * n)
    return h


def control_phases(params: ChainParams, field: ControlField) -> np.ndarray:
    """Per-site mixing phases e^{-2 i k_c z_n} (the +<-- - matrix element)."""
    return np.exp(-2j * field.k_c * params.positions)


def apply_control_terms(h: np.ndarray, params: ChainParams, field: ControlField, theta: float):
    """Add the на-site control-field block for the given theta, in place."""
    n = params.N
    d4 = 0.25 * field.delta
    diag = d4 * np.cos(theta)
    idx = np.arange(n)
    h[2 * idx, 2 * idx] += diag
    h[2 * idx + 1, 2 * idx + 1] += -diag
    mix = d4 * np.sin(theta) * control_phases(params, field)
    h[2 * idx, 2 * idx + 1] += mix
    h[2 * idx + 1, 2 * idx] += np.conj(mix)
    return h


def build_hamiltonian(
    params: ChainParams, field: ControlField, theta: float
) -> HamiltonianAssembly:
    """Full driven, dissipative Hamiltonian at mixing angle theta."""
    h = dissipative_hamiltonian(params)
    apply_control_terms(h, params, field, theta)
    return HamiltonianAssembly(matrix=h, theta=theta, params=params, field=field)


@dataclass
class DecayReport:
    matrix: np.ndarray
    min_eigenvalue: float
    passed: bool


def decay_matrix(params: ChainParams, tol: float = 1e-10) -> DecayReport:
    """Gamma = i (H - H^dag) with its PSD check.

    The control terms are Hermitian and cancel, so the report is
    independent of the drive.
    """
    h = dissipative_hamiltonian(params)
    gamma = 1j * (h - h.conj().T)
    if np.max(np.abs(gamma.imag)) > 1e-12:
        raise InvalidParams("decay matrix is not real; assembly broken")
    gamma = gamma.real
    min_eig = float(np.linalg.eigvalsh(gamma).min())
    return DecayReport(
        matrix=gamma,
        min_eigenvalue=min_eig,
        passed=min_eig >= -tol * params.gamma0,
    )


# --- ring variant (test-only) ---------------------------------------------

def build_ring_hamiltonian(
    params: ChainParams, field: ControlField, theta: float
) -> np.ndarray:
    """Periodic chain with ring-wrapped separations; used by symmetry tests."""
    n = params.N
    h = np.zeros((2 * n, 2 * n), dtype=complex)
    if n > 1:
        sep = np.arange(1, n)
        dist = np.minimum(sep, n - sep) * params.a
        col = np.zeros(n, dtype=complex)
        col[1:] = -transverse_green_coupling(dist, params.gamma0, params.k0)
        block = toeplitz(col)
        h[0::2, 0::2] = block
        h[1::2, 1::2] = block
    h -= 0.5j * params.gamma0 * np.eye(2 * n)
    apply_control_terms(h, params, field, theta)
    return h


def helical_operator(params: ChainParams, field: ControlField) -> np.ndarray:
    """Translate-by-a combined with the k_c a polarization rotation (ring)."""
    n = params.N
    op = np.zeros((2 * n, 2 * n), dtype=complex)
    phase = np.exp(1j * field.k_c * params.a)
    for m in range(n):
        m2 = (m + 1) % n
        op[2 * m2, 2 * m] = phase
        op[2 * m2 + 1, 2 * m + 1] = np.conj(phase)
    return op
