"""Survival probability of unstable quantum systems at rest and in relativistic motion."""

__version__ = "0.1.0"

from .amplitude import (Boost, SurvivalCurve, spacetime_amplitude, survival_heuristic,
                        survival_naive_boost, survival_rest)
from .errors import (GridTooSmall, InvalidParameters, NonNormalizable, QuadratureNonConvergence,
                     ScenarioError, UnsupportedShape)
from .masspec import (Family, MassDistribution, breit_wigner, gaussian, moments, normalize,
                      pdf, truncated_breit_wigner)
from .quadrature import (OscillatoryResult, TimeGrid, fourier_grid, fourier_point,
                         riemann_oracle)
from .regimes import RegimeReport, check_regime, check_regime_lab, gap_scan
from .wavepacket import (MomentumPacket, WavepacketScenario, brute_force_spatial, lorentz_map,
                         overlap_factor, survival_wavepacket_approx, survival_wavepacket_exact)

__all__ = [
    "Boost", "SurvivalCurve", "spacetime_amplitude", "survival_heuristic", "survival_naive_boost",
    "survival_rest", "GridTooSmall", "InvalidParameters", "NonNormalizable",
    "QuadratureNonConvergence", "ScenarioError", "UnsupportedShape", "Family", "MassDistribution",
    "breit_wigner", "gaussian", "moments", "normalize", "pdf", "truncated_breit_wigner",
    "OscillatoryResult", "TimeGrid", "fourier_grid", "fourier_point", "riemann_oracle",
    "RegimeReport", "check_regime", "check_regime_lab", "gap_scan", "MomentumPacket",
    "WavepacketScenario", "brute_force_spatial", "lorentz_map", "overlap_factor",
    "survival_wavepacket_approx", "survival_wavepacket_exact",
]
