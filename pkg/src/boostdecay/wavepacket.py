"""Survival probability of a boosted wave packet.

The rest-frame state is a superposition over mass m and momentum p with
weights |rho(m)|^2 and n(p) = |phi(p)|^2 (Gaussian, per-axis variance
sigma_p^2).  In the moving frame each component carries the Lorentz-mapped
energy and momentum; squaring the space-time amplitude and integrating over
position leaves a double integral over (m, m') weighted by the momentum
overlap n * n(. + v (m - m')).  Writing Delta = m - m', only the mass
autocorrelation C(Delta) survives:

    N(tau) = integral C(Delta) O(v Delta) exp(-i Delta tau) dDelta,
    P(t)   = N(t / gamma) / N(0),

with O the overlap normalised to one at zero shift.  The approximate
treatment sets O = 1, which factorises into |F(t / gamma)|^2.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import integrate

from .amplitude import Boost, SurvivalCurve, survival_heuristic
from .errors import GridTooSmall, InvalidParameters, UnsupportedShape
from .masspec import Family, MassDistribution, standardized
from .quadrature import TimeGrid, default_tol, halfline_transform
from .regimes import RegimeReport, check_regime


class RegimeWarning(UserWarning):
    pass


@dataclass(frozen=True)
class MomentumPacket:
    sigma_p: float
    shape: str = "gaussian"

    def __post_init__(self):
        if not (math.isfinite(self.sigma_p) and self.sigma_p > 0):
            raise InvalidParameters(f"sigma_p must be positive, got {self.sigma_p}")
        if self.shape != "gaussian":
            raise UnsupportedShape(f"only gaussian packets are supported, got {self.shape!r}")

    def amplitude(self, p):
        """phi(p) in three dimensions; ``p`` has a trailing axis of length 3."""
        p = np.asarray(p, dtype=float)
        p2 = np.sum(p * p, axis=-1)
        return (2 * np.pi) ** -0.75 * self.sigma_p**-1.5 * np.exp(-p2 / (4 * self.sigma_p**2))

    def density(self, p, dimension: int = 1):
        """n(p) = |phi(p)|^2 in ``dimension`` dimensions.

        For dimension 1 ``p`` is a plain array of momenta, otherwise the last
        axis holds the components.
        """
        p = np.asarray(p, dtype=float)
        p2 = p * p if dimension == 1 else np.sum(p * p, axis=-1)
        norm = (2 * np.pi * self.sigma_p**2) ** (-dimension / 2)
        return norm * np.exp(-p2 / (2 * self.sigma_p**2))


@dataclass(frozen=True)
class WavepacketScenario:
    dist: MassDistribution
    packet: MomentumPacket
    boost: Boost
    dimension: int = 3
    warn: bool = True
    regime: RegimeReport = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.dimension not in (1, 2, 3):
            raise InvalidParameters(f"dimension must be 1, 2 or 3, got {self.dimension}")
        rep = check_regime(self.dist.M, self.dist.Gamma, self.packet.sigma_p, self.boost.v)
        object.__setattr__(self, "regime", rep)
        if self.warn and rep.verdict != "ok":
            warnings.warn(
                f"measurability conditions {rep.verdict}: Gamma/sigma_p={rep.ratio_width:.3g}, "
                f"sigma_p/M={rep.ratio_packet:.3g}", RegimeWarning, stacklevel=3)


def lorentz_map(m, p_parallel, p_perp, boost: Boost, approximate: bool = False):
    """Energy and momentum in the frame where the packet moves with speed v.

    With ``approximate`` the rest-frame energy sqrt(m^2 + p^2) is replaced by m,
    valid for sigma_p << M.  Returns ``(E, k_parallel, k_perp)``.
    """
    m = np.asarray(m, dtype=float)
    if np.any(m <= 0):
        raise InvalidParameters("mass must be positive")
    p_parallel = np.asarray(p_parallel, dtype=float)
    p_perp = np.asarray(p_perp, dtype=float)
    if approximate:
        e_rest = m + 0.0 * p_parallel
    else:
        e_rest = np.sqrt(m * m + p_parallel**2 + np.sum(p_perp**2, axis=-1))
    g, v = boost.gamma, boost.v
    return g * (e_rest + v * p_parallel), g * (p_parallel + v * e_rest), p_perp


def overlap_factor(packet: MomentumPacket, delta, dimension: int = 3):
    """Integral of n(p) n(p + delta e_parallel) over d-dimensional momentum."""
    if packet.shape != "gaussian":
        raise UnsupportedShape(packet.shape)
    s2 = packet.sigma_p**2
    delta = np.asarray(delta, dtype=float)
    out = (4 * np.pi * s2) ** (-dimension / 2) * np.exp(-delta**2 / (4 * s2))
    return out if out.ndim else float(out)


# --- mass autocorrelation ---------------------------------------------------

_INNER_EPSREL = 1e-12


def _scaled_autocorrelation(dist: MassDistribution, method: str = "auto"):
    """C in the offset variable D = Delta / scale (so it integrates to one).

    Returns ``(c, rel_err)`` where ``rel_err()`` is the worst relative error
    of the inner integrals evaluated so far (zero for closed forms).
    """
    if method == "auto":
        if dist.family is Family.BREIT_WIGNER:
            # two Lorentzians of half width 1/2 convolve to half width 1
            return lambda d: (1.0 / np.pi) / (d * d + 1.0), lambda: 0.0
        if dist.family is Family.GAUSSIAN:
            return lambda d: np.exp(-0.25 * d * d) / (2.0 * math.sqrt(math.pi)), lambda: 0.0
    elif method != "numeric":
        raise InvalidParameters(f"unknown method {method!r}")

    g, s_lo, _ = standardized(dist)
    lo = s_lo if math.isfinite(s_lo) else -np.inf
    worst = [_INNER_EPSREL]

    def c(d):
        # d >= 0, so s + d stays inside the support whenever s does; split at
        # both peaks so narrow lines far from the threshold are not missed
        f = lambda s: g(s) * g(s + d)  # noqa: E731
        edges = [lo] + [e for e in (-d, 0.0) if e > lo] + [np.inf]
        val = err = 0.0
        for a, b in zip(edges[:-1], edges[1:]):
            if b > a:
                res = integrate.quad(f, a, b, epsabs=1e-16, epsrel=_INNER_EPSREL, limit=200,
                                     full_output=1)
                val, err = val + res[0], err + res[1]
        if val > 0:
            worst[0] = max(worst[0], err / val)
        return val

    return c, lambda: worst[0]


def autocorrelation(dist: MassDistribution, delta: float, method: str = "auto") -> float:
    """C(Delta) = integral of |rho(m + Delta)|^2 |rho(m)|^2 dm."""
    c, _ = _scaled_autocorrelation(dist, method)
    return c(abs(delta) / dist.scale) / dist.scale


def double_mass_integral(dist: MassDistribution, tau: float, shift: float = 0.0,
                         tol: Optional[float] = None, method: str = "auto"):
    """Integral over (m, m') of |rho(m)|^2 |rho(m')|^2 exp(-i (m-m') tau) exp(-(shift (m-m'))^2).

    Swapping m and m' conjugates the integrand, so the result is real and
    equals twice the cosine transform over Delta >= 0.  Returns
    ``(value, abs_error, evaluations)``.
    """
    tol = default_tol() if tol is None else tol
    c, inner_rel = _scaled_autocorrelation(dist, method)
    k = shift * dist.scale
    omega = abs(tau) * dist.scale

    def f(d):
        return 2.0 * c(d) * math.exp(-(k * d) ** 2)

    # the integrand is even in Delta, so the sine part vanishes
    val, err, neval = halfline_transform(f, omega, tol, tau, cos_only=True)
    val = val.real
    # inner relative error integrates against a kernel of total weight <= 1
    return float(val), float(err + inner_rel()), int(neval)


def _ratio_curve(dist, taus, shift, tol, method):
    n0, e0, _ = double_mass_integral(dist, 0.0, shift, tol, method)
    vals = np.empty(len(taus))
    errs = np.empty(len(taus))
    for i, tau in enumerate(taus):
        if tau == 0.0:
            vals[i], errs[i] = 1.0, 0.0
            continue
        n, e, _ = double_mass_integral(dist, float(tau), shift, tol, method)
        vals[i] = n / n0
        errs[i] = (e + abs(vals[i]) * e0) / n0
    return vals, errs


def survival_wavepacket_exact(scn: WavepacketScenario, grid: TimeGrid,
                              tol: Optional[float] = None, method: str = "auto") -> SurvivalCurve:
    """Position-integrated survival probability with the full momentum overlap."""
    shift = scn.boost.v / (2.0 * scn.packet.sigma_p)
    vals, errs = _ratio_curve(scn.dist, grid.times() / scn.boost.gamma, shift, tol, method)
    return SurvivalCurve(grid, vals, errs, "wavepacket_exact")


def survival_wavepacket_approx(scn: WavepacketScenario, grid: TimeGrid,
                               tol: Optional[float] = None, method: str = "auto") -> SurvivalCurve:
    """Narrow-width limit: the overlap is frozen at zero shift and the double
    mass integral factorises into |F(t / gamma)|^2."""
    curve = survival_heuristic(scn.dist, scn.boost, grid, tol, method)
    return SurvivalCurve(grid, curve.values, curve.error_estimates, "wavepacket_approx")


def double_mass_survival(dist: MassDistribution, times, tol: Optional[float] = None,
                         method: str = "numeric") -> tuple[np.ndarray, np.ndarray]:
    """P at the given (already dilated) times from the unfactorised double mass
    integral with no overlap cut.  Cross-check for the factorised form."""
    vals = np.empty(len(times))
    errs = np.empty(len(times))
    for i, tau in enumerate(np.asarray(times, dtype=float)):
        vals[i], errs[i], _ = double_mass_integral(dist, float(tau), 0.0, tol, method)
    return vals, errs


def spatial_norm(scn: WavepacketScenario, tol: Optional[float] = None) -> float:
    """Integral over position of |A(t=0, x)|^2 for the full d-dimensional packet."""
    shift = scn.boost.v / (2.0 * scn.packet.sigma_p)
    n0, _, _ = double_mass_integral(scn.dist, 0.0, shift, tol)
    return ((2 * np.pi) ** scn.dimension / scn.boost.gamma
            * overlap_factor(scn.packet, 0.0, scn.dimension) * n0)


# --- brute-force spatial oracle ---------------------------------------------

@dataclass(frozen=True)
class SpatialGrid:
    """Discretisation for :func:`brute_force_spatial`.

    ``x_half_width`` is in units of 1/(gamma sigma_p), the packet's contracted
    width; ``mass_span`` in units of the mass scale (Lorentzians only).
    """
    x_half_width: float = 7.0
    n_x: int = 241
    n_p: int = 161
    p_span: float = 8.0
    mass_span: float = 1e4
    mass_step: float = 0.1
    leak_tol: float = 1e-8


_MASS_CHUNK = 4096


def _mass_nodes(dist: MassDistribution, spec: SpatialGrid, max_phase_rate: float):
    g, s_lo, _ = standardized(dist)
    if dist.family is Family.GAUSSIAN:
        a, b = -8.0, 8.0
    else:
        a = max(s_lo, -spec.mass_span) if math.isfinite(s_lo) else -spec.mass_span
        b = spec.mass_span
    h = min(spec.mass_step, math.pi / (8.0 * max(max_phase_rate, 1e-300)))
    n = math.ceil((b - a) / h)
    h = (b - a) / n
    s = a + (np.arange(n) + 0.5) * h
    return s * dist.scale, g(s) * h


def spatial_integral(scn: WavepacketScenario, t: float, spec: SpatialGrid = SpatialGrid()):
    """Integral over x of |A(t, x)|^2 with A summed directly over a tensor grid
    of masses and parallel momenta.  Returns ``(value, leak_fraction)``."""
    if scn.dimension != 1:
        raise InvalidParameters("the spatial oracle integrates the parallel axis only (dimension=1)")
    gam, v, sp = scn.boost.gamma, scn.boost.v, scn.packet.sigma_p
    half = spec.x_half_width / (gam * sp)
    x = v * t + np.linspace(-half, half, spec.n_x)

    # Approximate map E = gamma (m + v p), k = gamma (p + v m) is affine, so
    # E t - k x = gamma m (t - v x) + gamma p (v t - x) and the tensor sum
    # factorises.  The common carrier gamma M (t - v x) has unit modulus and
    # is dropped.
    tm = gam * (t - v * x)
    tp = gam * (v * t - x)
    u, wm = _mass_nodes(scn.dist, spec, np.max(np.abs(tm)) * scn.dist.scale)
    hp = 2.0 * spec.p_span * sp / spec.n_p
    p = -spec.p_span * sp + (np.arange(spec.n_p) + 0.5) * hp
    wp = scn.packet.density(p, 1) * hp

    mass_sum = np.zeros(x.size, dtype=complex)
    for i in range(0, u.size, _MASS_CHUNK):
        uu = u[i:i + _MASS_CHUNK]
        mass_sum += np.exp(-1j * np.outer(tm, uu)) @ wm[i:i + _MASS_CHUNK]
    mom_sum = np.exp(-1j * np.outer(tp, p)) @ wp
    dens = np.abs(mass_sum * mom_sum) ** 2

    total = integrate.trapezoid(dens, x)
    band = max(1, spec.n_x // 10)
    edge = integrate.trapezoid(dens[:band + 1], x[:band + 1]) + \
        integrate.trapezoid(dens[-band - 1:], x[-band - 1:])
    return float(total), float(edge / total)


def brute_force_spatial(scn: WavepacketScenario, t: float,
                        spec: SpatialGrid = SpatialGrid()) -> float:
    """Survival probability from direct position integration of |A(t, x)|^2.

    Independent of the analytic delta-function reduction used by
    :func:`survival_wavepacket_exact`.  Raises :class:`GridTooSmall` when the
    outer tenth of the x-window on either side holds more than
    ``spec.leak_tol`` of the probability.
    """
    num, leak_t = spatial_integral(scn, t, spec)
    den, leak_0 = spatial_integral(scn, 0.0, spec)
    leak = max(leak_t, leak_0)
    if leak > spec.leak_tol:
        raise GridTooSmall(f"x-window edge holds {leak:.3g} of |A|^2 (limit {spec.leak_tol:g})")
    return num / den
