"""Asymptotic rate/distance curves for codes with locality and availability.

Upper bounds: Singleton-, Plotkin-, and linear-programming-type curves, plus
two availability curves.  Lower bounds: random parity-block GV curves for one
and two recovering sets (minimized over the enumerator variable s), and an
expander-graph existence curve for t >= 2 solved from a two-equation system
in (gamma, delta).

All values are binary64; exponent-heavy quantities are evaluated through
ratios or logs so no intermediate overflows for the supported parameter
ranges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

import numpy as np

from .enumerators import (
    incidence_enumerator_exact,
    incidence_enumerator_formula,
)
from .errors import DomainError

BISECT_TOL = 1e-12
SYSTEM_TOL = 1e-10


@dataclass(frozen=True)
class AsymptoticPoint:
    bound: str
    q: int
    r: int
    t: int
    delta: float
    value: float
    aux: tuple = ()
    flags: tuple = ()


# -- entropy functions ------------------------------------------------------


def entropy_q(x: float, q: int = 2) -> float:
    """q-ary entropy -x log_q(x/(q-1)) - (1-x) log_q(1-x) on [0, 1]."""
    if q < 2:
        raise DomainError("need q >= 2")
    if x < -1e-15 or x > 1 + 1e-15:
        raise DomainError(f"entropy argument {x} outside [0, 1]")
    x = min(1.0, max(0.0, x))
    lq = math.log(q)
    out = 0.0
    if 0.0 < x:
        out -= x * math.log(x / (q - 1)) / lq
    if x < 1.0:
        out -= (1 - x) * math.log(1 - x) / lq
    return out


def lp_entropy(x: float, q: int) -> float:
    """Entropy of the LP-bound substitution argument, on [0, (q-1)/q]."""
    hi = (q - 1) / q
    if x < -1e-15 or x > hi + 1e-12:
        raise DomainError(f"lp_entropy argument {x} outside [0, {hi}]")
    x = min(hi, max(0.0, x))
    inner = (q - 1 - x * (q - 2) - 2 * math.sqrt((q - 1) * x * (1 - x))) / q
    inner = min(hi, max(0.0, inner))
    return entropy_q(inner, q)


# -- upper bounds -----------------------------------------------------------


def _check_delta(delta):
    if delta < 0 or delta > 1:
        raise DomainError("delta must lie in [0, 1]")


def singleton_rate(r: int, delta: float) -> float:
    _check_delta(delta)
    return (r / (r + 1)) * (1 - delta)


def plotkin_rate(r: int, delta: float, q: int) -> float:
    _check_delta(delta)
    return max(0.0, (r / (r + 1)) * (1 - delta * q / (q - 1)))


def lp_rate(r: int, delta: float, q: int, grid: int = 2000) -> AsymptoticPoint:
    """min over tau in [0, 1/(r+1)] of tau r + (1 - tau(r+1)) f(delta / (1 - tau(r+1))).

    The tau -> 1/(r+1) endpoint contributes r/(r+1); arguments past the
    Plotkin radius contribute zero entropy.  Dense grid plus golden-section
    refinement around the best grid point.
    """
    _check_delta(delta)
    hi = (q - 1) / q

    def term(tau):
        mu = 1.0 - tau * (r + 1)
        if mu <= 1e-15:
            return r / (r + 1)
        x = delta / mu
        f = lp_entropy(x, q) if x <= hi else 0.0
        return tau * r + mu * f

    taus = [i / (grid * (r + 1)) for i in range(grid + 1)]
    vals = [term(t) for t in taus]
    best = min(range(len(taus)), key=lambda i: vals[i])
    lo = taus[max(0, best - 1)]
    up = taus[min(len(taus) - 1, best + 1)]
    tau_star, value = _golden(term, lo, up)
    if vals[best] < value:
        tau_star, value = taus[best], vals[best]
    return AsymptoticPoint("lp", q, r, 1, delta, max(0.0, value), aux=(tau_star,))


def expansion_singleton_rate(r: int, t: int, delta: float) -> float:
    """Availability Singleton curve (1 - delta) r^t (r-1) / (r^{t+1} - 1)."""
    _check_delta(delta)
    if r < 2 or t < 1:
        raise DomainError("need r >= 2 and t >= 1")
    return (r**t * (r - 1) / (r ** (t + 1) - 1)) * (1 - delta)


def generalized_singleton_rate(r: int, t: int, delta: float) -> float:
    """Availability curve (1 - delta)(t(r-1)+1) / (tr+1)."""
    _check_delta(delta)
    if r < 1 or t < 1:
        raise DomainError("need r >= 1 and t >= 1")
    return ((t * (r - 1) + 1) / (t * r + 1)) * (1 - delta)


# -- GV-type lower bounds ----------------------------------------------------


def _spc_log_b(s: float, r: int, q: int) -> float:
    # log of the single parity-check enumerator at s, via log-sum-exp
    t1 = (r + 1) * math.log1p((q - 1) * s)
    if s >= 1.0:
        return t1 - math.log(q)
    t2 = math.log(q - 1) + (r + 1) * math.log1p(-s)
    m = max(t1, t2)
    return m + math.log(math.exp(t1 - m) + math.exp(t2 - m)) - math.log(q)


def _spc_f(s: float, r: int, q: int) -> float:
    a = 1.0 + (q - 1) * s
    rho = (1.0 - s) / a
    return s * (q - 1) * (1.0 - rho**r) / (a * (1.0 + (q - 1) * rho ** (r + 1)))


def gv_rate(r: int, delta: float, q: int) -> AsymptoticPoint:
    """GV curve r/(r+1) - min_s {log_q b(s)/(r+1) - delta log_q s}.

    The objective's stationary condition f(s) = delta has a unique root on
    (0, 1] because f is strictly increasing with f(1) = (q-1)/q; bisection
    solves it to |f(s*) - delta| <= 1e-12.
    """
    _check_delta(delta)
    if r < 1 or q < 2:
        raise DomainError("need r >= 1 and q >= 2")
    peak = r / (r + 1)
    if delta <= 0:
        return AsymptoticPoint("gv", q, r, 1, delta, peak, aux=(0.0,))
    if delta >= (q - 1) / q:
        return AsymptoticPoint("gv", q, r, 1, delta, 0.0, aux=(1.0,))
    ulo, uhi = math.log(1e-300), 0.0
    for _ in range(300):
        mid = 0.5 * (ulo + uhi)
        if _spc_f(math.exp(mid), r, q) < delta:
            ulo = mid
        else:
            uhi = mid
    s = math.exp(0.5 * (ulo + uhi))
    lq = math.log(q)
    minimum = _spc_log_b(s, r, q) / ((r + 1) * lq) - delta * math.log(s) / lq
    value = min(peak, max(0.0, peak - minimum))
    return AsymptoticPoint("gv", q, r, 1, delta, value, aux=(s,))


def _golden(fn, lo, hi, iters: int = 120):
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - phi * (b - a)
    d = a + phi * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = fn(d)
        if b - a < 1e-15 * max(1.0, abs(a)):
            break
    x = 0.5 * (a + b)
    return x, fn(x)


_G2_CACHE = {}
_G2_GRID = {}


def _two_set_enumerator(r: int, q: int):
    """Exact enumerator backing the two-set GV curve.

    The composition formula is used in characteristic 2, where it provably
    equals the block code's enumerator; for odd q the formula describes a
    different code (deleted-row independence), so the exact brute-force
    enumerator is used instead.
    """
    key = (r, q)
    if key not in _G2_CACHE:
        if q % 2 == 0:
            _G2_CACHE[key] = incidence_enumerator_formula(r, q)
        else:
            _G2_CACHE[key] = incidence_enumerator_exact(r, q)
    return _G2_CACHE[key]


def _two_set_grid(r: int, q: int, grid: int):
    key = (r, q, grid)
    if key not in _G2_GRID:
        g = _two_set_enumerator(r, q)
        pts = np.exp(np.log(1e-12) * (1.0 - np.arange(grid + 1) / grid))
        coeffs = np.array([float(c) for c in g.coeffs])
        log_g = np.log(np.polynomial.polynomial.polyval(pts, coeffs))
        _G2_GRID[key] = (pts, log_g, np.log(pts))
    return _G2_GRID[key]


def gv2_rate(r: int, delta: float, q: int, grid: int = 10**4) -> AsymptoticPoint:
    """Two-recovering-set GV curve r/(r+2) - min_s objective.

    No unimodality proof is available for this enumerator, so the
    minimization brackets on a dense geometric grid and refines by
    golden section.
    """
    _check_delta(delta)
    if r < 1 or q < 2:
        raise DomainError("need r >= 1 and q >= 2")
    peak = r / (r + 2)
    big_n = comb(r + 2, 2)
    g = _two_set_enumerator(r, q)
    lq = math.log(q)

    def objective(s):
        return math.log(g.evaluate_float(s)) / (big_n * lq) - delta * math.log(s) / lq

    if delta <= 0:
        return AsymptoticPoint("gv2", q, r, 2, delta, peak, aux=(0.0,))
    pts, log_g, log_pts = _two_set_grid(r, q, grid)
    vals = log_g / (big_n * lq) - delta * log_pts / lq
    best = int(np.argmin(vals))
    lo = pts[max(0, best - 1)]
    hi = pts[min(len(pts) - 1, best + 1)]
    s_star, minimum = _golden(objective, lo, hi)
    if vals[best] < minimum:
        s_star, minimum = float(pts[best]), float(vals[best])
    value = min(peak, max(0.0, peak - minimum))
    return AsymptoticPoint("gv2", q, r, 2, delta, value, aux=(float(s_star),))


# -- expander-graph existence curve -----------------------------------------


def _h2(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def _expander_gap(delta: float, gamma: float, r: int, t: int) -> float:
    """Left side of the degree/expansion equation at (delta, gamma)."""
    gq = gamma * (r + 1)
    return (
        (t - 1) / t * _h2(delta)
        - _h2(delta * gq) / (r + 1)
        - delta * gq * _h2(1.0 / gq)
    )


def _delta2(gamma: float, r: int, t: int, grid: int = 240):
    """Largest positive root in delta of the expansion equation at gamma.

    The gap is positive for small delta (its leading term carries the factor
    (t-1)/t - gamma > 0 in range) and negative at the domain end, so a sign
    change always exists; a geometric grid guards against multiple roots and
    the last bracket is bisected.
    """
    gq = gamma * (r + 1)
    if gq <= 1.0 + 1e-13:
        return 1.0, False
    dmax = min(1.0, 1.0 / gq)
    lo_log, hi_log = math.log(1e-12), math.log(dmax)
    pts = [math.exp(lo_log + (hi_log - lo_log) * i / grid) for i in range(grid + 1)]
    vals = [_expander_gap(d, gamma, r, t) for d in pts]
    brackets = [i for i in range(grid) if vals[i] > 0.0 >= vals[i + 1]]
    if not brackets:
        # equation has no positive root left of dmax: treat as collapsed
        return 0.0, False
    multiple = len(brackets) > 1
    i = brackets[-1]
    lo, hi = pts[i], pts[i + 1]
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if _expander_gap(mid, gamma, r, t) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-14:
            break
    return 0.5 * (lo + hi), multiple


def max_rate(r: int, t: int) -> float:
    return 1.0 - t / (r + 1)


def expander_distance(r: int, t: int, rate: float) -> AsymptoticPoint:
    """Relative distance achieved by expander-based codes at the given rate.

    Solves delta(1 - t gamma) = 1 - t/(r+1) - rate together with the
    expansion equation for gamma in [1/(r+1), 1/t); the first function of
    gamma increases and the second decreases, so the crossing is unique.
    At the maximum rate the system degenerates to the trivial corner
    delta = 0; the largest distance with a known solution (the horizontal
    extension level) is reported in the diagnostics.
    """
    if not (2 <= t <= r):
        raise DomainError("need r >= t >= 2")
    rmax = max_rate(r, t)
    if rate < -1e-12 or rate > rmax + 1e-12:
        raise DomainError(f"rate must lie in [0, {rmax}]")
    gamma_lo = 1.0 / (r + 1)
    if rate >= rmax - 1e-12:
        level, gamma_star = _continuation_level(r, t)
        return AsymptoticPoint(
            "expander", 0, r, t, 0.0, rate, aux=(gamma_star, level), flags=("max-rate-corner",)
        )
    if rate <= 1e-15:
        return AsymptoticPoint("expander", 0, r, t, 1.0, 0.0, aux=(gamma_lo, 1.0))

    gap = rmax - rate

    def diff(gamma):
        d1 = gap / (1.0 - t * gamma)
        d2, _ = _delta2(gamma, r, t)
        return d1 - d2

    lo = gamma_lo
    hi = 1.0 / t - 1e-12
    flags = []
    if diff(hi) < 0.0:
        # no crossing below 1/t: only the horizontal extension applies
        level, gamma_star = _continuation_level(r, t)
        return AsymptoticPoint(
            "expander", 0, r, t, level, rate, aux=(gamma_star, level), flags=("horizontal-extension",)
        )
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if diff(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < SYSTEM_TOL * 1e-2:
            break
    gamma = 0.5 * (lo + hi)
    delta = gap / (1.0 - t * gamma)
    d2, multiple = _delta2(gamma, r, t)
    if multiple:
        flags.append("multiple-roots")
    return AsymptoticPoint("expander", 0, r, t, delta, rate, aux=(gamma, d2), flags=tuple(flags))


_LEVEL_CACHE = {}


def _continuation_level(r: int, t: int):
    """Distance level of the horizontal extension, from rates just below max."""
    if (r, t) not in _LEVEL_CACHE:
        point = expander_distance(r, t, max_rate(r, t) - 1e-3)
        _LEVEL_CACHE[(r, t)] = (point.delta, point.aux[0])
    return _LEVEL_CACHE[(r, t)]


def expander_rate(r: int, t: int, delta: float) -> AsymptoticPoint:
    """Rate at a target relative distance.

    Works in the gamma parametrization of the same two-equation system: the
    expansion root decreases in gamma, so gamma solves delta2(gamma) = delta
    by bisection and the degree equation then yields the rate directly.
    """
    _check_delta(delta)
    if not (2 <= t <= r):
        raise DomainError("need r >= t >= 2")
    rmax = max_rate(r, t)
    level, _ = _continuation_level(r, t)
    if delta <= level:
        return AsymptoticPoint("expander", 0, r, t, delta, rmax, flags=("horizontal-extension",))
    if delta >= 1.0:
        gamma = 1.0 / (r + 1)
        return AsymptoticPoint("expander", 0, r, t, delta, 0.0, aux=(gamma, 1.0))
    lo = 1.0 / (r + 1)
    hi = 1.0 / t - 1e-12
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if _delta2(mid, r, t)[0] > delta:
            lo = mid
        else:
            hi = mid
        if hi - lo < SYSTEM_TOL * 1e-2:
            break
    gamma = 0.5 * (lo + hi)
    d2, _ = _delta2(gamma, r, t)
    rate = max(0.0, rmax - delta * (1.0 - t * gamma))
    return AsymptoticPoint("expander", 0, r, t, delta, rate, aux=(gamma, d2))


# -- curve emission ----------------------------------------------------------


def curve_table(bounds, q: int, r: int, t: int, step: float):
    """Deterministic (bound, delta) |-> value samples over delta in [0, 1]."""
    if not 0 < step <= 0.1:
        raise DomainError("step must lie in (0, 0.1]")
    deltas = []
    i = 0
    while True:
        d = round(i * step, 12)
        if d >= 1.0:
            deltas.append(1.0)
            break
        deltas.append(d)
        i += 1
    rows = []
    for name in bounds:
        fn = _CURVES.get(name)
        if fn is None:
            raise DomainError(f"unknown bound '{name}'; valid: {sorted(_CURVES)}")
        for d in deltas:
            rows.append(fn(q, r, t, d))
    rows.sort(key=lambda p: (p.bound, p.delta))
    return rows


_CURVES = {
    "singleton": lambda q, r, t, d: AsymptoticPoint("singleton", q, r, 1, d, singleton_rate(r, d)),
    "plotkin": lambda q, r, t, d: AsymptoticPoint("plotkin", q, r, 1, d, plotkin_rate(r, d, q)),
    "lp": lambda q, r, t, d: lp_rate(r, d, q),
    "gv": lambda q, r, t, d: gv_rate(r, d, q),
    "gv2": lambda q, r, t, d: gv2_rate(r, d, q),
    "sa": lambda q, r, t, d: AsymptoticPoint("sa", q, r, t, d, expansion_singleton_rate(r, t, d)),
    "at1": lambda q, r, t, d: AsymptoticPoint("at1", q, r, t, d, generalized_singleton_rate(r, t, d)),
    "expander": lambda q, r, t, d: expander_rate(r, t, d),
}

CURVE_NAMES = tuple(sorted(_CURVES))
