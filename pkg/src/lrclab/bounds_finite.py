"""Finite-length bounds for codes with locality r and availability t.

Every bound here returns an exact integer or Fraction; the random-ensemble
existence bound verifies its float minimizer with exact rational arithmetic
before certifying a distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .enumerators import single_parity_enumerator
from .errors import DomainError

# -- Singleton-type bounds ----------------------------------------------


def _ceil_div(a, b):
    return -(-a // b)


def singleton_bound(n: int, k: int, r: int) -> int:
    """Distance bound n - k - ceil(k/r) + 2 for locality r."""
    if not 1 <= r <= k <= n:
        raise DomainError("need 1 <= r <= k <= n")
    return n - k - _ceil_div(k, r) + 2


def rate_bound(r: int, t: int) -> Fraction:
    """Rate cap 1 / prod_{j=1}^t (1 + 1/(jr)) for t disjoint recovering sets."""
    if r < 1 or t < 1:
        raise DomainError("need r >= 1 and t >= 1")
    prod = Fraction(1)
    for j in range(1, t + 1):
        prod *= 1 + Fraction(1, j * r)
    return 1 / prod


def distance_bound(n: int, k: int, r: int, t: int) -> int:
    """Distance bound n - sum_{i=0}^t floor((k-1)/r^i)."""
    if k < 1 or r < 1 or t < 1 or n < k:
        raise DomainError("need n >= k >= 1, r >= 1, t >= 1")
    return n - sum((k - 1) // r**i for i in range(t + 1))


def singleton_bound_t(n: int, k: int, r: int, t: int) -> int:
    """Distance bound n - k + 2 - ceil((t(k-1)+1) / (t(r-1)+1))."""
    if k < 1 or r < 1 or t < 1 or n < k:
        raise DomainError("need n >= k >= 1, r >= 1, t >= 1")
    return n - k + 2 - _ceil_div(t * (k - 1) + 1, t * (r - 1) + 1)


# -- shortening bound -----------------------------------------------------


@dataclass(frozen=True)
class KqOracle:
    """Integer upper bound on the dimension of a length-n distance-d code."""

    name: str
    fn: object

    def __call__(self, n: int, d: int) -> int:
        if n < d or n <= 0:
            return 0
        val = self.fn(n, d)
        if val is None:
            raise DomainError(f"oracle {self.name} undefined at (n={n}, d={d})")
        return max(0, int(val))


def kq_singleton() -> KqOracle:
    return KqOracle("singleton", lambda n, d: n - d + 1)


def _ilog(q, m):
    # largest e with q^e <= m (m >= 1)
    e = 0
    v = q
    while v <= m:
        e += 1
        v *= q
    return e


def kq_plotkin(q: int) -> KqOracle:
    """Plotkin bound with the standard shortening step, floored to an int."""

    def fn(n, d):
        # largest length where the bound applies: (1 - 1/q) n0 < d
        n0 = min(n, _ceil_div(d * q, q - 1) - 1)
        m0 = (d * q) // (d * q - (q - 1) * n0)
        return (n - n0) + _ilog(q, m0)

    return KqOracle("plotkin", fn)


def kq_sphere_packing(q: int) -> KqOracle:
    def fn(n, d):
        e = (d - 1) // 2
        vol = sum(comb(n, i) * (q - 1) ** i for i in range(e + 1))
        # largest k with q^k * vol <= q^n
        return n - _ceil_div_log(q, vol)

    return KqOracle("sphere-packing", fn)


def _ceil_div_log(q, v):
    # smallest e with q^e >= v
    e = 0
    acc = 1
    while acc < v:
        acc *= q
        e += 1
    return e


def kq_table(table: dict) -> KqOracle:
    return KqOracle("table", lambda n, d: table.get((n, d)))


ORACLES = {
    "singleton": lambda q: kq_singleton(),
    "plotkin": kq_plotkin,
    "sphere-packing": kq_sphere_packing,
}


def shortening_bound(n: int, d: int, r: int, q: int, oracle: KqOracle) -> int:
    """Largest k consistent with k <= s r + k_q(n - s(r+1), d) for all s.

    The admissible range of s depends on k itself, so the scan descends over
    candidate k and returns the first value that satisfies its own range.
    """
    if not 1 <= d <= n or r < 1:
        raise DomainError("need 1 <= d <= n and r >= 1")
    for k0 in range(n, 0, -1):
        smax = min(_ceil_div(n, r + 1), _ceil_div(k0, r))
        if all(k0 <= s * r + oracle(n - s * (r + 1), d) for s in range(1, smax + 1)):
            return k0
    return 0


# -- random-ensemble existence bounds -------------------------------------


def gv_distance_classic(n: int, k: int, r: int, q: int) -> int:
    """Largest d with sum_{i<=d-2} C(n-1,i)(q-1)^i < q^(n-k-ceil(n/(r+1)))."""
    if k < 1 or r < 1 or q < 2 or n < k:
        raise DomainError("need n >= k >= 1, r >= 1, q >= 2")
    rhs = q ** max(0, n - k - _ceil_div(n, r + 1))
    if n - k - _ceil_div(n, r + 1) <= 0:
        return 1
    best = 1
    acc = 0
    for d in range(2, n + 1):
        acc += comb(n - 1, d - 2) * (q - 1) ** (d - 2)
        if acc < rhs:
            best = d
        else:
            break
    return best


def _spc_minimizer(r: int, q: int, target: float) -> float:
    """Float s in (0, 1] where the parity-block exponent is stationary.

    Solves f(s) = target for the strictly increasing f(s) = s b'(s) /
    ((r+1) b(s)); clamps to 1 when target >= (q-1)/q.
    """
    if target >= (q - 1) / q:
        return 1.0
    ulo, uhi = math.log(1e-30), 0.0
    for _ in range(200):
        mid = 0.5 * (ulo + uhi)
        if _spc_f(math.exp(mid), r, q) < target:
            ulo = mid
        else:
            uhi = mid
    return math.exp(0.5 * (ulo + uhi))


def _spc_f(s: float, r: int, q: int) -> float:
    # s b'(s) / ((r+1) b(s)) for the single parity-check enumerator
    a = 1.0 + (q - 1) * s
    bb = 1.0 - s
    rho = bb / a
    num = s * (q - 1) * (1.0 - rho**r)
    den = a * (1.0 + (q - 1) * rho ** (r + 1))
    return num / den


def gv_distance(n: int, k: int, r: int, q: int) -> int:
    """Largest d certified by the parity-block random-ensemble argument.

    Certifies d when d q^{k - nr/(r+1)} b(s)^{n/(r+1)} / s^d < 1 at some
    s in (0, 1]; the candidate s comes from a float minimization and the
    final inequality is re-checked in exact rationals at a nearby rational
    s, so the certificate never depends on float rounding.
    """
    if n % (r + 1) != 0:
        raise DomainError("need (r+1) | n")
    if not r < k < r * n // (r + 1):
        raise DomainError("need r < k < rn/(r+1)")
    if q < 2:
        raise DomainError("need q >= 2")
    b = single_parity_enumerator(r, q)
    blocks = n // (r + 1)
    power_gap = n * r // (r + 1) - k
    for d in range(n - 1, 1, -1):
        s_float = _spc_minimizer(r, q, d / n)
        # quick float screen before the exact check
        log_val = (
            math.log(d)
            - power_gap * math.log(q)
            + blocks * math.log(b.evaluate_float(s_float))
            - d * math.log(s_float)
        )
        if log_val > 0.5:
            continue
        s = Fraction(max(1, min(10**6, round(s_float * 10**6))), 10**6)
        lhs = d * b.evaluate(s) ** blocks
        rhs = q**power_gap * s**d
        if lhs < rhs:
            return d
    return 1


# -- product-rate envelope -------------------------------------------------


def rate_envelope(r: int, t: int):
    """Root-form rate cap and the exact product cap, with the sandwich check.

    Returns ((t+1)^(-1/r) as a float, 1/prod as a Fraction) and raises if
    the exact sandwich (t+1) <= prod^r <= (t+1)(1+1/r)^r fails.
    """
    if r < 1 or t < 0:
        raise DomainError("need r >= 1 and t >= 0")
    prod = Fraction(1)
    for j in range(1, t + 1):
        prod *= 1 + Fraction(1, j * r)
    if not envelope_holds(r, t):
        raise DomainError("product envelope violated")  # pragma: no cover
    return (t + 1) ** (-1.0 / r), 1 / prod


def envelope_holds(r: int, t: int) -> bool:
    """Exact check of (t+1) <= prod(1+1/(jr))^r <= (t+1)(1+1/r)^r."""
    prod = Fraction(1)
    for j in range(1, t + 1):
        prod *= 1 + Fraction(1, j * r)
    powered = prod**r
    return (t + 1) <= powered <= (t + 1) * (1 + Fraction(1, r)) ** r
