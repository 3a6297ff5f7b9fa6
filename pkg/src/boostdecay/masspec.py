"""Mass (rest-frame energy) distributions |rho(m)|^2.

Three families are supported:

* ``breit_wigner``            Lorentzian over the whole real line
* ``breit_wigner_truncated``  Lorentzian cut off below a threshold mass
                              (a spectrum bounded from below)
* ``gaussian``                normal distribution, finite mean and variance

All quantities are in natural units with a single free energy scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Optional

import numpy as np
from scipy import special

from .errors import InvalidParameters, NonNormalizable

FWHM_PER_SIGMA = 2.0 * math.sqrt(2.0 * math.log(2.0))


class Family(str, Enum):
    BREIT_WIGNER = "breit_wigner"
    BREIT_WIGNER_TRUNCATED = "breit_wigner_truncated"
    GAUSSIAN = "gaussian"


@dataclass(frozen=True)
class MassDistribution:
    """Parametric mass density.

    For the Gaussian family ``Gamma`` holds the full width at half maximum
    (used by the regime checks) and ``sigma_m`` the standard deviation.
    ``norm_const`` multiplies the bare density so that it integrates to one
    over its support; use :func:`normalize` or the constructors below rather
    than setting it by hand.
    """

    family: Family
    M: float
    Gamma: float
    sigma_m: Optional[float] = None
    m_threshold: Optional[float] = None
    norm_const: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not (math.isfinite(self.M) and self.M > 0):
            raise InvalidParameters(f"M must be positive and finite, got {self.M}")
        if not (math.isfinite(self.Gamma) and self.Gamma > 0):
            raise InvalidParameters(f"Gamma must be positive and finite, got {self.Gamma}")
        if self.family is Family.GAUSSIAN:
            if self.sigma_m is None or not self.sigma_m > 0:
                raise InvalidParameters("gaussian family needs sigma_m > 0")
        elif self.sigma_m is not None:
            raise InvalidParameters("sigma_m is only meaningful for the gaussian family")
        if self.family is Family.BREIT_WIGNER_TRUNCATED:
            if self.m_threshold is None or not math.isfinite(self.m_threshold):
                raise InvalidParameters("truncated Breit-Wigner needs a finite m_threshold")
            if not self.m_threshold < self.M:
                raise InvalidParameters(
                    f"m_threshold ({self.m_threshold}) must lie below M ({self.M})"
                )
        elif self.m_threshold is not None:
            raise InvalidParameters("m_threshold is only meaningful for the truncated family")
        if not (math.isfinite(self.norm_const) and self.norm_const > 0):
            raise InvalidParameters("norm_const must be positive")

    @property
    def scale(self) -> float:
        """Natural width used to make integration variables dimensionless."""
        if self.family is Family.GAUSSIAN:
            return self.sigma_m
        return self.Gamma

    @property
    def support(self) -> tuple[float, float]:
        if self.family is Family.BREIT_WIGNER_TRUNCATED:
            return (self.m_threshold, math.inf)
        return (-math.inf, math.inf)

    @property
    def has_finite_variance(self) -> bool:
        return self.family is Family.GAUSSIAN

    def pdf(self, m):
        return pdf(self, m)

    def cdf(self, m):
        return cdf(self, m)


def breit_wigner(M: float, Gamma: float) -> MassDistribution:
    return MassDistribution(Family.BREIT_WIGNER, M, Gamma)


def truncated_breit_wigner(M: float, Gamma: float, m_threshold: float = 0.0) -> MassDistribution:
    return normalize(MassDistribution(Family.BREIT_WIGNER_TRUNCATED, M, Gamma,
                                      m_threshold=m_threshold))


def gaussian(M: float, sigma_m: float) -> MassDistribution:
    return MassDistribution(Family.GAUSSIAN, M, FWHM_PER_SIGMA * sigma_m, sigma_m=sigma_m)


def _lorentzian(m, M, Gamma):
    return (Gamma / (2.0 * np.pi)) / ((m - M) ** 2 + 0.25 * Gamma**2)


def _lorentzian_cdf(m, M, Gamma):
    return 0.5 + np.arctan(2.0 * (m - M) / Gamma) / np.pi


def pdf(dist: MassDistribution, m):
    """|rho(m)|^2; zero outside the support."""
    m = np.asarray(m, dtype=float)
    if dist.family is Family.GAUSSIAN:
        z = (m - dist.M) / dist.sigma_m
        out = np.exp(-0.5 * z * z) / (math.sqrt(2.0 * math.pi) * dist.sigma_m)
    else:
        out = _lorentzian(m, dist.M, dist.Gamma)
        if dist.family is Family.BREIT_WIGNER_TRUNCATED:
            out = np.where(m >= dist.m_threshold, out, 0.0)
    out = dist.norm_const * out
    return out if out.ndim else float(out)


def cdf(dist: MassDistribution, m):
    """Cumulative probability below ``m``."""
    m = np.asarray(m, dtype=float)
    if dist.family is Family.GAUSSIAN:
        out = special.ndtr((m - dist.M) / dist.sigma_m)
    elif dist.family is Family.BREIT_WIGNER:
        out = _lorentzian_cdf(m, dist.M, dist.Gamma)
    else:
        lo = _lorentzian_cdf(dist.m_threshold, dist.M, dist.Gamma)
        out = np.clip(_lorentzian_cdf(m, dist.M, dist.Gamma) - lo, 0.0, None)
        out = dist.norm_const * out
    return out if out.ndim else float(out)


def normalize(dist: MassDistribution) -> MassDistribution:
    """Return ``dist`` with ``norm_const`` chosen so the density integrates to one."""
    if dist.family is Family.BREIT_WIGNER_TRUNCATED:
        # arctan form of the upper-tail mass avoids cancellation when the
        # threshold sits far below M
        mass = 1.0 - math.atan2(dist.Gamma, 2.0 * (dist.M - dist.m_threshold)) / math.pi
    else:
        mass = 1.0
    if not (math.isfinite(mass) and mass > 0):
        raise NonNormalizable(f"support mass is {mass} for {dist}")
    return replace(dist, norm_const=1.0 / mass)


@dataclass(frozen=True)
class Moments:
    mean: Optional[float]  # None: mean does not exist
    fwhm: float


def moments(dist: MassDistribution) -> Moments:
    """Mean and FWHM.

    Neither Breit-Wigner family has a mean: the full line lacks absolute
    convergence and the truncated tail m * m^-2 diverges logarithmically.
    """
    if dist.family is Family.GAUSSIAN:
        return Moments(mean=dist.M, fwhm=FWHM_PER_SIGMA * dist.sigma_m)
    return Moments(mean=None, fwhm=dist.Gamma)


def standardized(dist: MassDistribution) -> tuple[Callable, float, float]:
    """Density in the dimensionless offset ``s = (m - M) / scale``.

    Returns ``(g, s_lo, s_hi)`` with ``g(s) = scale * pdf(M + scale*s)`` so that
    ``g`` integrates to one over ``[s_lo, s_hi]``.  Inside the support ``g`` is
    evaluated from the closed form directly; it does not apply the
    threshold cut, callers integrate from ``s_lo``.
    """
    c = dist.norm_const
    if dist.family is Family.GAUSSIAN:
        k = c / math.sqrt(2.0 * math.pi)

        def g(s):
            return k * np.exp(-0.5 * s * s)

        return g, -math.inf, math.inf

    k = c / (2.0 * math.pi)

    def g(s):
        return k / (s * s + 0.25)

    if dist.family is Family.BREIT_WIGNER_TRUNCATED:
        return g, (dist.m_threshold - dist.M) / dist.Gamma, math.inf
    return g, -math.inf, math.inf


def tail_window(dist: MassDistribution, tail_mass: float) -> tuple[float, float]:
    """Smallest symmetric-probability window in ``s`` leaving ``tail_mass`` outside."""
    g, s_lo, _ = standardized(dist)
    half = 0.5 * tail_mass
    if dist.family is Family.GAUSSIAN:
        s = float(-special.ndtri(half))
        return -s, s
    # one-sided Lorentzian tail above s: atan(1/(2s)) / pi * norm_const
    s = 0.5 / math.tan(math.pi * half / dist.norm_const)
    if math.isfinite(s_lo):
        return s_lo, s
    return -s, s
