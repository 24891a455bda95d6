"""Analytic per-sector evolution and the thermally averaged two-qubit state.

Each Fock index n labels a 4-dimensional invariant subspace spanned by
{|e1 e2, n-1>, |e1 g2, n>, |g1 e2, n>, |g1 g2, n+1>}. Evolution inside a
sector is a 4x4 unitary with closed-form entries built from the two
characteristic frequencies of the sector; the thermal state is a classical
mixture over sectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ModelParams, ThermalField

_POP_CLAMP = 1e-12
_POSITIVITY_TOL = 1e-10


@dataclass(frozen=True)
class SectorFrequencies:
    """Characteristic quantities of one Fock sector."""

    n: int
    a: float  # g * sqrt(n)
    b: float  # g * sqrt(n+1)
    r: float  # lam^2 * beta, the splitting omega_plus^2 - omega_minus^2
    alpha: float
    beta: float
    omega_plus: float
    omega_minus: float


@dataclass(frozen=True)
class SectorPropagator:
    n: int
    t: float
    A: np.ndarray  # 4x4 complex, symmetric and unitary


@dataclass(frozen=True)
class SectorAmplitudes:
    """Amplitudes on the sector basis for the |e1, g2, n> initial condition."""

    n: int
    c1: complex
    c2: complex
    c3: complex
    c4: complex


@dataclass(frozen=True)
class TwoQubitState:
    """X-structured two-qubit density matrix in the basis {ee, eg, ge, gg}.

    Only the populations and the single surviving coherence rho23 are
    nonzero; every other entry is zero by construction.
    """

    rho11: float
    rho22: float
    rho33: float
    rho44: float
    rho23: complex

    def __post_init__(self):
        for name in ("rho11", "rho22", "rho33", "rho44"):
            p = getattr(self, name)
            if p < -_POP_CLAMP:
                raise ValueError(f"{name} = {p} is negative beyond tolerance")
            if p < 0.0:
                object.__setattr__(self, name, 0.0)
        if abs(self.rho23) ** 2 > self.rho22 * self.rho33 + _POSITIVITY_TOL:
            raise ValueError(
                f"|rho23|^2 = {abs(self.rho23)**2} exceeds rho22*rho33 = "
                f"{self.rho22 * self.rho33}"
            )

    @property
    def trace(self) -> float:
        return self.rho11 + self.rho22 + self.rho33 + self.rho44

    def matrix(self) -> np.ndarray:
        """Dense 4x4 density matrix."""
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0] = self.rho11
        rho[1, 1] = self.rho22
        rho[2, 2] = self.rho33
        rho[3, 3] = self.rho44
        rho[1, 2] = self.rho23
        rho[2, 1] = np.conj(self.rho23)
        return rho


def sector_frequencies(params: ModelParams, n: int) -> SectorFrequencies:
    """Coupling amplitudes and characteristic frequencies of sector n."""
    if n < 0:
        raise ValueError(f"sector index must be >= 0, got {n}")
    lam, g, k = params.lam, params.g, params.k
    a = g * np.sqrt(n)
    b = g * np.sqrt(n + 1)
    alpha = 1.0 + (2 * n + 1) * k**2
    beta = np.sqrt((1.0 + k**2) ** 2 + 4.0 * n * k**2)
    r = lam**2 * beta
    omega_plus = lam / np.sqrt(2.0) * np.sqrt(alpha + beta)
    # alpha - beta vanishes identically at n = 0; guard the rounding there
    omega_minus = lam / np.sqrt(2.0) * np.sqrt(max(alpha - beta, 0.0))
    if n == 0:
        omega_minus = 0.0
    return SectorFrequencies(
        n=n, a=a, b=b, r=r, alpha=alpha, beta=beta,
        omega_plus=omega_plus, omega_minus=omega_minus,
    )


def _sin_over_w(w, t):
    """sin(w t) / w, finite at w = 0 where it tends to t."""
    return t * np.sinc(w * t / np.pi)


def _propagator_entries(f: SectorFrequencies, lam: float, t):
    """The ten independent entries A_jm(t); t may be a scalar or an array."""
    wp, wm, a, b, r = f.omega_plus, f.omega_minus, f.a, f.b, f.r
    cp, cm = np.cos(wp * t), np.cos(wm * t)
    sp, sm = np.sin(wp * t), np.sin(wm * t)
    swp, swm = _sin_over_w(wp, t), _sin_over_w(wm, t)
    a2, b2, l2 = a * a, b * b, lam * lam
    wp2, wm2 = wp * wp, wm * wm
    return {
        (0, 0): ((wp2 - b2 - l2) * cp - (wm2 - b2 - l2) * cm) / r,
        (0, 1): 1j * a * ((b2 - wp2) * swp - (b2 - wm2) * swm) / r,
        (0, 2): lam * a * (cp - cm) / r,
        (0, 3): -1j * lam * a * b * (swp - swm) / r,
        (1, 1): ((wp2 - b2) * cp - (wm2 - b2) * cm) / r,
        (1, 2): -1j * lam * (wp * sp - wm * sm) / r,
        (1, 3): lam * b * (cp - cm) / r,
        (2, 2): ((wp2 - a2) * cp - (wm2 - a2) * cm) / r,
        (2, 3): 1j * b * ((a2 - wp2) * swp - (a2 - wm2) * swm) / r,
        (3, 3): ((wp2 - a2 - l2) * cp - (wm2 - a2 - l2) * cm) / r,
    }


def sector_propagator(params: ModelParams, n: int, t: float) -> SectorPropagator:
    """The 4x4 sector propagator A^(n)(t); symmetric and unitary."""
    f = sector_frequencies(params, n)
    entries = _propagator_entries(f, params.lam, t)
    A = np.zeros((4, 4), dtype=complex)
    for (j, m), v in entries.items():
        A[j, m] = v
        A[m, j] = v
    return SectorPropagator(n=n, t=t, A=A)


def sector_amplitudes(params: ModelParams, n: int, t: float) -> SectorAmplitudes:
    """Amplitudes (C1, C2, C3, C4) at time t for the |e1, g2, n> start."""
    f = sector_frequencies(params, n)
    e = _propagator_entries(f, params.lam, t)
    return SectorAmplitudes(n=n, c1=e[(0, 1)], c2=e[(1, 1)], c3=e[(1, 2)], c4=e[(1, 3)])


def amplitude_table(params: ModelParams, nmax: int, times: np.ndarray):
    """Amplitude arrays C_j[n, it] for n = 0 .. nmax over a time grid."""
    times = np.asarray(times, dtype=float)
    shape = (nmax + 1,) + times.shape
    c1 = np.zeros(shape, dtype=complex)
    c2 = np.zeros(shape, dtype=complex)
    c3 = np.zeros(shape, dtype=complex)
    c4 = np.zeros(shape, dtype=complex)
    for n in range(nmax + 1):
        f = sector_frequencies(params, n)
        e = _propagator_entries(f, params.lam, times)
        c1[n] = e[(0, 1)]
        c2[n] = e[(1, 1)]
        c3[n] = e[(1, 2)]
        c4[n] = e[(1, 3)]
    return c1, c2, c3, c4


def two_qubit_states(
    params: ModelParams, field: ThermalField, times: np.ndarray
) -> list[TwoQubitState]:
    """Thermally averaged two-qubit states over a whole time grid.

    The rho11 sum carries weights shifted by one index, so it is extended
    one slot past the field's truncation to keep the stated tail bound.
    """
    times = np.atleast_1d(np.asarray(times, dtype=float))
    nmax = field.nmax
    # one extra sector for the P_{n+1} |C_{1,n+1}|^2 population
    c1, c2, c3, c4 = amplitude_table(params, nmax + 1, times)
    w = field.weights
    w_ext = np.array([field.weight(n) for n in range(nmax + 2)])

    rho11 = w_ext[1:] @ np.abs(c1[1:]) ** 2
    rho22 = w @ np.abs(c2[:-1]) ** 2
    rho33 = w @ np.abs(c3[:-1]) ** 2
    rho44 = w @ np.abs(c4[:-1]) ** 2
    rho23 = w @ (c2[:-1] * np.conj(c3[:-1]))

    return [
        TwoQubitState(
            rho11=float(rho11[i]),
            rho22=float(rho22[i]),
            rho33=float(rho33[i]),
            rho44=float(rho44[i]),
            rho23=complex(rho23[i]),
        )
        for i in range(times.size)
    ]


def two_qubit_state(params: ModelParams, field: ThermalField, t: float) -> TwoQubitState:
    """Thermally averaged two-qubit density matrix at a single time."""
    return two_qubit_states(params, field, np.array([t]))[0]
