"""Survival probability at rest and for a single boosted momentum state.

Three treatments share the rest-frame transform F(t) of the mass density:

* rest               P0(t) = |F(t)|^2
* naive boost        time evolution only, P(t) = |F(gamma t)|^2
* heuristic          space-time evolution along x = v t, P(t) = |F(t / gamma)|^2
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InvalidParameters
from .masspec import MassDistribution
from .quadrature import TimeGrid, closed_form, fourier_numeric

TREATMENTS = ("rest", "naive_boost", "heuristic_spacetime", "wavepacket_exact",
              "wavepacket_approx")


@dataclass(frozen=True)
class Boost:
    v: float
    gamma: float = field(init=False)

    def __post_init__(self):
        if not (math.isfinite(self.v) and 0.0 <= self.v < 1.0):
            raise InvalidParameters(f"speed must satisfy 0 <= v < 1, got {self.v}")
        # 1/sqrt((1-v)(1+v)) keeps precision as v -> 1
        object.__setattr__(self, "gamma", 1.0 / math.sqrt((1.0 - self.v) * (1.0 + self.v)))

    @classmethod
    def from_gamma(cls, gamma: float) -> "Boost":
        if not gamma >= 1.0:
            raise InvalidParameters(f"gamma must be >= 1, got {gamma}")
        return cls(math.sqrt(1.0 - 1.0 / gamma**2))


REST = Boost(0.0)


@dataclass(frozen=True)
class SurvivalCurve:
    grid: TimeGrid
    values: np.ndarray
    error_estimates: np.ndarray
    treatment: str

    @property
    def times(self) -> np.ndarray:
        return self.grid.times()


def amplitude_at(w: MassDistribution, t: float, tol: Optional[float] = None,
                 method: str = "auto") -> tuple[complex, float]:
    """F(t) and its error for any real t, using F(-t) = conj F(t)."""
    if method == "auto":
        exact = closed_form(w, t)
        if exact is not None:
            return exact, 0.0
    elif method != "numeric":
        raise InvalidParameters(f"unknown method {method!r}")
    res = fourier_numeric(w, abs(t), tol)
    value = res.value if t >= 0 else res.value.conjugate()
    return value, res.abs_error_estimate


def _probability(w, times, tol, method) -> tuple[np.ndarray, np.ndarray]:
    vals = np.empty(len(times))
    errs = np.empty(len(times))
    for i, t in enumerate(times):
        a, e = amplitude_at(w, float(t), tol, method)
        vals[i] = abs(a) ** 2
        errs[i] = 2.0 * abs(a) * e + e * e
    return vals, errs


def survival_rest(w: MassDistribution, grid: TimeGrid, tol: Optional[float] = None,
                  method: str = "auto") -> SurvivalCurve:
    vals, errs = _probability(w, grid.times(), tol, method)
    return SurvivalCurve(grid, vals, errs, "rest")


def survival_naive_boost(w: MassDistribution, boost: Boost, grid: TimeGrid,
                         tol: Optional[float] = None, method: str = "auto") -> SurvivalCurve:
    """Time-only evolution of the boosted state: each mass eigenstate picks up
    energy gamma*m, so the rest curve is read at gamma*t (too fast a decay)."""
    vals, errs = _probability(w, boost.gamma * grid.times(), tol, method)
    return SurvivalCurve(grid, vals, errs, "naive_boost")


def survival_heuristic(w: MassDistribution, boost: Boost, grid: TimeGrid,
                       tol: Optional[float] = None, method: str = "auto") -> SurvivalCurve:
    vals, errs = _probability(w, grid.times() / boost.gamma, tol, method)
    return SurvivalCurve(grid, vals, errs, "heuristic_spacetime")


def spacetime_amplitude(w: MassDistribution, boost: Boost, t: float, x_parallel: float,
                        tol: Optional[float] = None, method: str = "auto") -> complex:
    """Amplitude with time and space evolution, F(gamma (t - v x)).

    Along the worldline x = v t the argument collapses to t / gamma.
    """
    value, _ = amplitude_at(w, boost.gamma * (t - boost.v * x_parallel), tol, method)
    return value
