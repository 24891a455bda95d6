"""Detection of entanglement sudden death / sudden birth intervals.

An interval is reported wherever the separability function Lambda(t) is
strictly negative; its endpoints are sign crossings refined by bisection
on the continuous analytic Lambda(t). Tangential touches of zero (as in
the isolated-pair case, where the concurrence is |sin 2 lam t|) are not
deaths.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import two_qubit_state, two_qubit_states
from .model import ModelParams, ThermalField
from .observables import concurrence_xstate

_CROSSING_TOL = 1e-9
_MAX_BISECT = 60
_MIN_WIDTH = 1e-9
_GRAZE_DEPTH = -1e-12


@dataclass(frozen=True)
class EsdInterval:
    """One interval of zero concurrence.

    t_death / t_birth are the bounding Lambda sign crossings; either may
    coincide with the scan window edge, flagged by the boundary markers.
    """

    t_death: float
    t_birth: float
    min_lambda: float
    refined: bool
    open_left: bool = False
    open_right: bool = False

    @property
    def width(self) -> float:
        return self.t_birth - self.t_death


def _lambda_at(params: ModelParams, field: ThermalField, t: float) -> float:
    return concurrence_xstate(two_qubit_state(params, field, t))[1]


def _bisect_crossing(params, field, t_lo, t_hi, f_lo, f_hi) -> float:
    """Refine a bracketed sign change until |Lambda| <= tol at the midpoint."""
    for _ in range(_MAX_BISECT):
        t_mid = 0.5 * (t_lo + t_hi)
        f_mid = _lambda_at(params, field, t_mid)
        if abs(f_mid) <= _CROSSING_TOL:
            return t_mid
        if (f_lo < 0) == (f_mid < 0):
            t_lo, f_lo = t_mid, f_mid
        else:
            t_hi, f_hi = t_mid, f_mid
    return 0.5 * (t_lo + t_hi)


def scan_esd(
    params: ModelParams,
    field: ThermalField,
    t0: float,
    t1: float,
    n_grid: int,
) -> list[EsdInterval]:
    """Scan [t0, t1] for intervals with Lambda < 0; empty list if none."""
    if not t0 < t1:
        raise ValueError(f"need t0 < t1, got [{t0}, {t1}]")
    if n_grid < 2:
        raise ValueError(f"n_grid must be >= 2, got {n_grid}")

    times = np.linspace(t0, t1, n_grid)
    lam = np.array([concurrence_xstate(s)[1] for s in two_qubit_states(params, field, times)])

    intervals: list[EsdInterval] = []
    i = 0
    while i < n_grid:
        if lam[i] >= 0:
            i += 1
            continue
        # entered a negative stretch; locate its boundaries
        j = i
        while j + 1 < n_grid and lam[j + 1] < 0:
            j += 1

        open_left = i == 0
        open_right = j == n_grid - 1
        if open_left:
            t_death, refined_l = t0, False
        else:
            t_death = _bisect_crossing(params, field, times[i - 1], times[i], lam[i - 1], lam[i])
            refined_l = True
        if open_right:
            t_birth, refined_r = t1, False
        else:
            t_birth = _bisect_crossing(params, field, times[j], times[j + 1], lam[j], lam[j + 1])
            refined_r = True

        min_lambda = float(lam[i : j + 1].min())
        if t_birth - t_death >= _MIN_WIDTH and min_lambda < _GRAZE_DEPTH:
            intervals.append(
                EsdInterval(
                    t_death=t_death,
                    t_birth=t_birth,
                    min_lambda=min_lambda,
                    refined=refined_l and refined_r,
                    open_left=open_left,
                    open_right=open_right,
                )
            )
        i = j + 1
    return intervals


def dwell_fraction(intervals: list[EsdInterval], t0: float, t1: float) -> float:
    """Fraction of the window spent with zero concurrence."""
    if not t0 < t1:
        raise ValueError(f"need t0 < t1, got [{t0}, {t1}]")
    total = sum(min(iv.t_birth, t1) - max(iv.t_death, t0) for iv in intervals)
    return max(0.0, min(1.0, total / (t1 - t0)))
