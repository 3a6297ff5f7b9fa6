"""Fourier-type integrals F(t) = integral of w(m) exp(-i m t) dm.

The production engine factors out the carrier exp(-i M t) and integrates the
remaining envelope in the dimensionless offset s = (m - M) / scale with
QUADPACK's QAWF routine (semi-infinite Fourier integrals, cycle-by-cycle with
epsilon extrapolation).  A deliberately naive midpoint-rule oracle lives next
to it for cross-checking.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate, special

from .errors import InvalidParameters, QuadratureNonConvergence
from .masspec import Family, MassDistribution, standardized, tail_window

DEFAULT_TOL = 1e-9
TOL_ENV_VAR = "BOOSTDECAY_QUAD_TOL"
EVAL_BUDGET = 1_000_000

# QAWF: up to _LIMLST cycles, each with at most _LIMIT subintervals
# (21-point Kronrod rule per subinterval), which caps one call near EVAL_BUDGET.
_LIMLST = 200
_LIMIT = 200


def default_tol() -> float:
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise InvalidParameters(f"{TOL_ENV_VAR}={raw!r} is not a number") from None
    if not tol > 0:
        raise InvalidParameters(f"{TOL_ENV_VAR} must be positive, got {tol}")
    return tol


@dataclass(frozen=True)
class OscillatoryResult:
    value: complex
    abs_error_estimate: float
    evaluations: int
    method: str  # closed_form | phase_extracted_adaptive | fft_grid | riemann_oracle


@dataclass(frozen=True)
class TimeGrid:
    t_start: float
    t_stop: float
    n_points: int
    spacing: str = "uniform"

    def __post_init__(self):
        if self.spacing not in ("uniform", "log"):
            raise InvalidParameters(f"spacing must be 'uniform' or 'log', got {self.spacing!r}")
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise InvalidParameters("n_points must be an integer >= 2")
        object.__setattr__(self, "n_points", int(self.n_points))
        if not (math.isfinite(self.t_start) and self.t_start >= 0):
            raise InvalidParameters("t_start must be >= 0")
        if not (math.isfinite(self.t_stop) and self.t_stop > self.t_start):
            raise InvalidParameters("t_stop must exceed t_start")
        if self.spacing == "log" and self.t_start <= 0:
            raise InvalidParameters("log spacing needs t_start > 0")

    def times(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.t_start, self.t_stop, self.n_points)
        return np.linspace(self.t_start, self.t_stop, self.n_points)


def closed_form(w: MassDistribution, t: float) -> Optional[complex]:
    """Exact transform when the family has one, else None.  Any real t."""
    if w.family is Family.BREIT_WIGNER:
        return complex(np.exp(-1j * w.M * t - 0.5 * w.Gamma * abs(t)))
    if w.family is Family.GAUSSIAN:
        return complex(np.exp(-1j * w.M * t - 0.5 * (w.sigma_m * t) ** 2))
    return None


_HEAD = 64.0  # the envelope peak lives in r < _HEAD (scaled units)
_REMAINDER_END = 1e4
# below this scaled frequency the envelope transform differs from its
# omega = 0 value by far less than any tolerance, and QUADPACK's moment
# tables misbehave on subnormal frequencies
_OMEGA_FLOOR = 1e-150
# QAWF is trusted above this frequency; below it a tail of unknown form is
# integrated on a finite range and the rest bounded by L f(L) (valid for
# tails decaying at least as fast as 1/r^2)
_QAWF_MIN_OMEGA = 1e-4
_TAIL_END_MAX = 1e16


def _weighted(f, w: float, tol: float, t: float, a: float, b: float,
              cos_only: bool = False) -> tuple[complex, float, int]:
    """Integral of f(r) exp(-i w r) over [a, b) for w > 0 (QAWO / QAWF)."""
    out = []
    for weight in ("cos",) if cos_only else ("cos", "sin"):
        kw = dict(limlst=_LIMLST) if b == np.inf else dict(epsrel=0.0)
        res = integrate.quad(f, a, b, weight=weight, wvar=w, epsabs=0.5 * tol,
                             limit=_LIMIT, full_output=1, **kw)
        val, err, info = res[0], res[1], res[2]
        if err > 0.5 * tol:
            raise QuadratureNonConvergence(
                f"{weight} transform at t={t}: error {err:.3g} > tol {0.5 * tol:.3g}",
                t=t, abs_error=err)
        out.append((val, err, info["neval"]))
    if cos_only:
        return complex(out[0][0]), out[0][1], out[0][2]
    (c, ec, nc), (s, es, ns) = out
    return complex(c, -s), ec + es, nc + ns


def halfline_transform(f, omega: float, tol: float, t: float, upper: float = np.inf,
                       asymptote: Optional[float] = None,
                       cos_only: bool = False) -> tuple[complex, float, int]:
    """Integral of f(r) exp(-i omega r) over r in [0, upper), for f peaked near 0.

    QAWF's first cycle has length pi/omega, so at small omega it can step
    straight over the peak at r ~ 0.  The head [0, _HEAD) therefore goes to
    QAWO and only the slowly varying tail to QAWF.  QAWF also loses long
    1/r^2 tails at small omega.  When f(r) = asymptote / (r^2 + 1/4) exactly
    (Lorentzian envelopes) the tail is the closed-form transform of
    asymptote/r^2 plus an r^-4 remainder on a finite interval; otherwise small
    frequencies integrate the tail on a finite range and bound the rest.
    ``t`` only labels errors; ``cos_only`` skips the sine part (even
    integrands).  Returns ``(value, abs_error, evaluations)``.
    """
    if abs(omega) < _OMEGA_FLOOR:
        omega = 0.0
    if omega == 0.0:
        val = err = 0.0
        nev = 0
        pieces = [(0.0, min(upper, _HEAD))] + ([(_HEAD, upper)] if upper > _HEAD else [])
        for a, b in pieces:
            pts = [p for p in (1.0, 8.0) if a < p < b] if b != np.inf else None
            res = integrate.quad(f, a, b, epsabs=0.5 * tol, epsrel=0.0, limit=_LIMIT,
                                 points=pts or None, full_output=1)
            val, err, nev = val + res[0], err + res[1], nev + res[2]["neval"]
        if err > tol:
            raise QuadratureNonConvergence(
                f"envelope integral at t={t}: error {err:.3g} > tol {tol:.3g}", t=t, abs_error=err)
        return complex(val), err, nev

    w = abs(omega)
    if upper <= _HEAD:
        val, err, nev = _weighted(f, w, tol, t, 0.0, upper, cos_only=cos_only)
    else:
        head, e1, n1 = _weighted(f, w, 0.5 * tol, t, 0.0, _HEAD, cos_only=cos_only)
        if upper == np.inf and asymptote is not None:
            k = asymptote

            def remainder(r):
                return -k / (4.0 * r * r * (r * r + 0.25))

            tail, e2, n2 = _weighted(remainder, w, 0.25 * tol, t, _HEAD, _REMAINDER_END,
                                     cos_only=cos_only)
            tail += k * _inverse_square_tail(w, _HEAD)
            e2 += k / (12.0 * _REMAINDER_END**3)
        elif upper == np.inf and w < _QAWF_MIN_OMEGA:
            end = 1e6
            while end * abs(f(end)) > 0.125 * tol and end < _TAIL_END_MAX:
                end *= 10.0
            bound = end * abs(f(end))
            if bound > 0.125 * tol:
                raise QuadratureNonConvergence(
                    f"tail at t={t} decays too slowly: {bound:.3g} beyond r={end:g}",
                    t=t, abs_error=bound)
            # one decade per call, so no single rule samples mostly the far end
            edges = np.geomspace(_HEAD, end, int(round(math.log10(end / _HEAD))) + 2)
            tail, e2, n2 = complex(0.0), bound, 0
            share = 0.25 * tol / (edges.size - 1)
            for a, b in zip(edges[:-1], edges[1:]):
                v_, e_, n_ = _weighted(f, w, share, t, a, b, cos_only=cos_only)
                tail, e2, n2 = tail + v_, e2 + e_, n2 + n_
        elif upper == np.inf:
            # shift so QAWF starts at zero: tail = exp(-i w H) * int f(H + u) exp(-i w u) du
            # (both parts: the phase factor mixes them)
            tail, e2, n2 = _weighted(lambda u: f(_HEAD + u), w, 0.5 * tol, t, 0.0, np.inf)
            tail *= complex(math.cos(w * _HEAD), -math.sin(w * _HEAD))
        else:
            tail, e2, n2 = _weighted(f, w, 0.5 * tol, t, _HEAD, upper, cos_only=cos_only)
        val, err, nev = head + tail, e1 + e2, n1 + n2
    if cos_only:
        val = complex(val.real)
    if omega < 0:
        val = val.conjugate()
    return val, err, nev


def fourier_numeric(w: MassDistribution, t: float, tol: Optional[float] = None) -> OscillatoryResult:
    """Phase-extracted adaptive evaluation.  Accepts negative t (used by tests
    of conjugate symmetry and by the space-time amplitude)."""
    tol = default_tol() if tol is None else tol
    g, s_lo, _ = standardized(w)
    omega = w.scale * t
    if abs(omega) < _OMEGA_FLOOR:
        omega = 0.0
    carrier = np.exp(-1j * w.M * t)
    # split at the peak (s = 0) so each piece has its maximum at an endpoint;
    # below the peak integrate in r = -s
    k = None if w.has_finite_variance else w.norm_const / (2.0 * math.pi)
    up, e1, n1 = halfline_transform(g, omega, 0.5 * tol, t, asymptote=k)
    down, e2, n2 = halfline_transform(lambda r: g(-r), -omega, 0.5 * tol, t, upper=-s_lo, asymptote=k)
    val, err, nev = up + down, e1 + e2, n1 + n2
    if nev > EVAL_BUDGET:
        raise QuadratureNonConvergence(f"evaluation budget exceeded at t={t}", t=t, abs_error=err)
    return OscillatoryResult(complex(carrier * val), float(err), int(nev),
                             "phase_extracted_adaptive")


def fourier_point(w: MassDistribution, t: float, tol: Optional[float] = None,
                  method: str = "auto") -> OscillatoryResult:
    """Survival amplitude F(t) for t >= 0.

    ``method`` is ``auto`` (closed form when the family has one),
    ``numeric`` (always the adaptive engine) or ``oracle``.
    """
    if not (math.isfinite(t) and t >= 0):
        raise InvalidParameters(f"t must be finite and >= 0, got {t}")
    if method == "auto":
        exact = closed_form(w, t)
        if exact is not None:
            return OscillatoryResult(exact, 0.0, 1, "closed_form")
        return fourier_numeric(w, t, tol)
    if method == "numeric":
        return fourier_numeric(w, t, tol)
    if method == "oracle":
        return riemann_oracle(w, t)
    raise InvalidParameters(f"unknown method {method!r}")


def fourier_grid(w: MassDistribution, grid: TimeGrid, tol: Optional[float] = None,
                 method: str = "auto") -> list[OscillatoryResult]:
    """One :class:`OscillatoryResult` per grid time.

    ``method='fft'`` uses a single FFT over a discretized density (uniform
    grids only); its error estimates include the clipped tail mass and a
    step-doubling discretization estimate.
    """
    ts = grid.times()
    if method == "fft":
        if grid.spacing != "uniform":
            raise InvalidParameters("the FFT path needs a uniform grid")
        return fourier_fft(w, ts)
    return [fourier_point(w, float(t), tol, method) for t in ts]


def amplitudes(w: MassDistribution, times, tol: Optional[float] = None,
               method: str = "auto") -> tuple[np.ndarray, np.ndarray]:
    """Vector form of :func:`fourier_point` for non-negative times."""
    res = [fourier_point(w, float(t), tol, method) for t in np.asarray(times, dtype=float)]
    return (np.array([r.value for r in res], dtype=complex),
            np.array([r.abs_error_estimate for r in res]))


_FFT_MAX_POINTS = 1 << 24


def fourier_fft(w: MassDistribution, times, tail_mass: float = 1e-5,
                step: float = 0.05) -> list[OscillatoryResult]:
    ts = np.asarray(times, dtype=float)
    if ts.size < 2:
        raise InvalidParameters("the FFT path needs at least two times")
    dts = np.diff(ts)
    if not np.allclose(dts, dts[0], rtol=1e-9, atol=0.0) or dts[0] <= 0:
        raise InvalidParameters("the FFT path needs uniformly increasing times")

    g, s_lo, _ = standardized(w)
    a, b = tail_window(w, tail_mass)
    omegas = w.scale * ts
    d_omega = w.scale * dts[0]
    h = min(step, math.pi / (4.0 * max(abs(omegas[-1]), 1e-300)))
    r = max(1, math.ceil((b - a) * d_omega / (2.0 * math.pi)))
    n = math.ceil(2.0 * math.pi * r / (d_omega * h))
    n += n % 2
    if n > _FFT_MAX_POINTS:
        raise InvalidParameters(f"time step too small for the FFT path ({n} points needed)")

    def transform(n_cells):
        hh = 2.0 * math.pi * r / (n_cells * d_omega)
        s = a + (np.arange(n_cells) + 0.5) * hh
        y = g(s) * np.exp(-1j * omegas[0] * s)
        spec = np.fft.fft(y)
        idx = (np.arange(ts.size) * r) % n_cells
        k = np.arange(ts.size)
        return hh * spec[idx] * np.exp(-1j * k * d_omega * s[0])

    fine = transform(n)
    coarse = transform(n // 2)
    err = np.abs(fine - coarse) / 3.0 + tail_mass
    vals = np.exp(-1j * w.M * ts) * fine
    return [OscillatoryResult(complex(v), float(e), int(1.5 * n), "fft_grid")
            for v, e in zip(vals, err)]


# --- independent oracle -----------------------------------------------------

_ORACLE_SPAN = 1000.0
_ORACLE_TAIL_TARGET = 1e-13
_GAUSS_SPAN = 7.5
_CHUNK = 1 << 20


def _inverse_square_tail(omega: float, s: float) -> complex:
    """Integral of exp(-i omega u) / u^2 over u in [s, inf), s > 0."""
    if omega == 0.0:
        return complex(1.0 / s)
    w = abs(omega)
    x = w * s
    si, ci = special.sici(x)
    c2 = math.cos(x) / s - w * (0.5 * math.pi - si)
    s2 = math.sin(x) / s - w * ci
    sign = 1.0 if omega > 0 else -1.0
    return complex(c2, -sign * s2)


def _midpoint(g, a: float, b: float, n: int, omega: float) -> complex:
    h = (b - a) / n
    total = 0.0 + 0.0j
    for start in range(0, n, _CHUNK):
        s = a + (np.arange(start, min(n, start + _CHUNK)) + 0.5) * h
        total += np.sum(g(s) * np.exp(-1j * omega * s))
    return h * total


def _tail_remainder_bound(c: float, span: float, omega: float) -> float:
    # r(s) = g(s) - c/s^2 = c / (4 s^2 (s^2 + 1/4)), positive and decreasing:
    # integrating by parts once gives 2 r(span) / |omega|
    flat = c / (12.0 * span**3)
    if omega == 0.0:
        return flat
    return min(flat, c / (2.0 * span**4 * abs(omega)))


def riemann_oracle(w: MassDistribution, t: float, n: Optional[int] = None,
                   span: Optional[float] = None) -> OscillatoryResult:
    """Midpoint Riemann sum with one step-halving and Richardson extrapolation.

    Gaussian densities are summed over +-7.5 sigma.  Lorentzian densities are
    summed over ``[s_lo, span]`` (or ``[-span, span]``) and the part beyond the
    window is added from the exact transform of its 1/s^2 asymptote (sine and
    cosine integrals).  The default span shrinks with frequency while keeping
    the bound on the neglected remainder near 1e-13.  Any real t.
    """
    g, s_lo, _ = standardized(w)
    omega = w.scale * t
    if abs(omega) < _OMEGA_FLOOR:
        omega = 0.0
    if w.family is Family.GAUSSIAN:
        a, b = -_GAUSS_SPAN, _GAUSS_SPAN
        tail = 0.0
        tail_err = 2.0 * special.ndtr(-_GAUSS_SPAN)
    else:
        c = w.norm_const / (2.0 * math.pi)
        if span is None:
            span = _ORACLE_SPAN
            if omega != 0.0:
                span = (c / (2.0 * _ORACLE_TAIL_TARGET * abs(omega))) ** 0.25
                span = min(_ORACLE_SPAN, max(20.0, span))
        a = s_lo if math.isfinite(s_lo) else -span
        b = span
        tail = c * _inverse_square_tail(omega, span)
        tail_err = _tail_remainder_bound(c, span, omega)
        if not math.isfinite(s_lo):
            tail += c * _inverse_square_tail(-omega, span)
            tail_err *= 2.0
    if n is None:
        h = min(0.05, 0.125 / max(abs(omega), 1e-300))
        n = math.ceil((b - a) / h)
    if n < 2:
        raise InvalidParameters("riemann_oracle needs n >= 2")
    coarse = _midpoint(g, a, b, n, omega)
    fine = _midpoint(g, a, b, 2 * n, omega)
    value = (4.0 * fine - coarse) / 3.0 + tail
    err = abs(fine - coarse) / 3.0 + tail_err
    return OscillatoryResult(complex(np.exp(-1j * w.M * t) * value), float(err), 3 * n,
                             "riemann_oracle")


def riemann_halving_errors(w: MassDistribution, t: float, n: int, exact: complex) -> tuple[float, float]:
    """Plain midpoint errors at n and 2n cells against a known value (no extrapolation)."""
    g, s_lo, _ = standardized(w)
    omega = w.scale * t
    a, b = (-_GAUSS_SPAN, _GAUSS_SPAN) if w.family is Family.GAUSSIAN else (
        s_lo if math.isfinite(s_lo) else -_ORACLE_SPAN, _ORACLE_SPAN)
    tail = 0.0
    if w.family is not Family.GAUSSIAN:
        c = w.norm_const / (2.0 * math.pi)
        tail = c * _inverse_square_tail(omega, b)
        if not math.isfinite(s_lo):
            tail += c * _inverse_square_tail(-omega, -a)
    base = exact * np.exp(1j * w.M * t)
    return (abs(_midpoint(g, a, b, n, omega) + tail - base),
            abs(_midpoint(g, a, b, 2 * n, omega) + tail - base))
