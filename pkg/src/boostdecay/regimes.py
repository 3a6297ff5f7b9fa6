"""Measurability conditions  Gamma << sigma_p << M  and the resulting error budget.

"Much smaller" is quantified by :class:`RegimeThresholds`: a ratio below
``ok`` passes, one at or above ``violated`` fails, anything between is
marginal.  The position-space chain  1/M << sigma_x << tau  carries the same
information through sigma_x = 1/sigma_p (minimum-uncertainty packet) and
tau = 1/Gamma.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

from scipy.constants import physical_constants

from .errors import InvalidParameters
from .masspec import MassDistribution

HBARC_MEV_FM = physical_constants["reduced Planck constant times c in MeV fm"][0]
FM_PER_CM = 1e13
MEV_PER_EV = 1e-6

VERDICTS = ("ok", "marginal", "violated")


@dataclass(frozen=True)
class RegimeThresholds:
    ok: float = 0.01
    violated: float = 0.1

    def __post_init__(self):
        if not 0 < self.ok <= self.violated:
            raise InvalidParameters("thresholds must satisfy 0 < ok <= violated")


def classify(ratio: float, thresholds: RegimeThresholds = RegimeThresholds()) -> str:
    if ratio < thresholds.ok:
        return "ok"
    if ratio < thresholds.violated:
        return "marginal"
    return "violated"


def _worst(*verdicts: str) -> str:
    return max(verdicts, key=VERDICTS.index)


@dataclass(frozen=True)
class RegimeReport:
    M: float
    Gamma: float
    sigma_p: float
    v: float
    ratio_width: float       # Gamma / sigma_p
    ratio_packet: float      # sigma_p / M
    sigma_x: float
    tau: float
    verdict_width: str
    verdict_packet: str
    verdict: str
    predicted_gap: float            # finite-variance mass spectra, (v Gamma / 2 sigma_p)^2
    predicted_gap_lorentzian: float  # Lorentzian spectra, v Gamma / (sqrt(pi) sigma_p)
    thresholds: RegimeThresholds = field(default_factory=RegimeThresholds)

    @property
    def position_ratios(self) -> tuple[float, float]:
        """(1/M) / sigma_x and sigma_x / tau."""
        return (1.0 / self.M) / self.sigma_x, self.sigma_x / self.tau

    def to_dict(self) -> dict:
        d = asdict(self)
        d["thresholds"] = asdict(self.thresholds)
        return d


def check_regime(M: float, Gamma: float, sigma_p: float, v: float = 0.0,
                 thresholds: Optional[RegimeThresholds] = None) -> RegimeReport:
    for name, val in (("M", M), ("Gamma", Gamma), ("sigma_p", sigma_p)):
        if not (math.isfinite(val) and val > 0):
            raise InvalidParameters(f"{name} must be positive, got {val}")
    if not 0.0 <= v < 1.0:
        raise InvalidParameters(f"speed must satisfy 0 <= v < 1, got {v}")
    thresholds = thresholds or RegimeThresholds()
    ratio_width = Gamma / sigma_p
    ratio_packet = sigma_p / M
    vw = classify(ratio_width, thresholds)
    vp = classify(ratio_packet, thresholds)
    return RegimeReport(
        M=M, Gamma=Gamma, sigma_p=sigma_p, v=v,
        ratio_width=ratio_width, ratio_packet=ratio_packet,
        sigma_x=1.0 / sigma_p, tau=1.0 / Gamma,
        verdict_width=vw, verdict_packet=vp, verdict=_worst(vw, vp),
        predicted_gap=(v * ratio_width / 2.0) ** 2,
        predicted_gap_lorentzian=v * ratio_width / math.sqrt(math.pi),
        thresholds=thresholds,
    )


def check_regime_lab(M_MeV: float, Gamma_eV: float, sigma_x_cm: float, v: float = 0.0,
                     thresholds: Optional[RegimeThresholds] = None) -> RegimeReport:
    """Same check from laboratory units; the report is expressed in MeV."""
    sigma_p = HBARC_MEV_FM / (sigma_x_cm * FM_PER_CM)
    return check_regime(M_MeV, Gamma_eV * MEV_PER_EV, sigma_p, v, thresholds)


def predicted_gap(dist: MassDistribution, sigma_p: float, v: float) -> float:
    """Leading-order size of max_t |exact - approx| for the given spectrum.

    A finite-variance spectrum only sees the curvature of the momentum
    overlap, giving a quadratic gap.  A Lorentzian spectrum has so much weight
    at |m - m'| >> Gamma that the overlap cut removes a fraction of order
    v Gamma / sigma_p from the normalization, a linear gap.
    """
    rep = check_regime(dist.M, dist.Gamma, sigma_p, v)
    if dist.has_finite_variance:
        return rep.predicted_gap
    return rep.predicted_gap_lorentzian


@dataclass(frozen=True)
class GapRow:
    sigma_p: float
    ratio_width: float
    measured_gap: float
    predicted_gap: float
    error_estimate: float


def gap_scan(dist: MassDistribution, sigma_ps: Sequence[float], v: float, grid,
             tol: Optional[float] = None, dimension: int = 3) -> list[GapRow]:
    """max_t |exact - approx| for each packet width."""
    from .amplitude import Boost
    from .wavepacket import (MomentumPacket, WavepacketScenario, survival_wavepacket_approx,
                             survival_wavepacket_exact)

    rows = []
    boost = Boost(v)
    for sp in sigma_ps:
        scn = WavepacketScenario(dist, MomentumPacket(sp), boost, dimension, warn=False)
        exact = survival_wavepacket_exact(scn, grid, tol)
        approx = survival_wavepacket_approx(scn, grid, tol)
        diff = abs(exact.values - approx.values)
        i = int(diff.argmax())
        rows.append(GapRow(sigma_p=sp, ratio_width=dist.Gamma / sp,
                           measured_gap=float(diff[i]),
                           predicted_gap=predicted_gap(dist, sp, v),
                           error_estimate=float(exact.error_estimates[i]
                                                + approx.error_estimates[i])))
    return rows
