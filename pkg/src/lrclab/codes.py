"""Linear codes, exact minimum distance, weight enumerators, MacWilliams.

All enumerator coefficients are exact Python integers.  Enumeration runs on
whichever side of the code (primal or dual) is small enough, falling back to
a column-subset rank scan when both sides are too large to enumerate but the
length is short.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from . import gf
from ._kernels import _enum_py
from ._kernels import min_weight as _kernel_min_weight
from ._kernels import weight_counts as _kernel_weight_counts
from .errors import DomainError, InconsistentEnumerator, TooLarge

ENUM_CAP = 2**28
SUBSET_BUDGET = 2**22
SUBSET_WORK_BUDGET = 2**27  # element operations across all batched eliminations


@dataclass(frozen=True)
class LinearCode:
    """A q-ary linear code held as a full-rank generator / parity-check pair."""

    field: gf.Field
    generator: np.ndarray
    parity: np.ndarray

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def q(self) -> int:
        return self.field.q

    def __repr__(self):
        return f"LinearCode[{self.n},{self.k}]_{self.q}"


def _full_rank_rows(f, mat):
    red, pivots = gf.rref(f, mat)
    return red[: len(pivots)]


def code_from_parity(f: gf.Field, parity) -> LinearCode:
    """Code = null space of the given parity rows; redundant rows dropped."""
    h = gf.as_matrix(f, parity)
    h = _full_rank_rows(f, h)
    g = gf.nullspace(f, h)
    return LinearCode(f, g, h)


def code_from_generator(f: gf.Field, generator) -> LinearCode:
    g = gf.as_matrix(f, generator)
    g = _full_rank_rows(f, g)
    h = gf.nullspace(f, g)
    return LinearCode(f, g, h)


@dataclass(frozen=True)
class WeightEnumerator:
    """Coefficients A_0..A_n of the weight enumerator, exact integers."""

    n: int
    q: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.n + 1:
            raise DomainError("coefficient vector must have length n+1")
        if self.coeffs[0] < 1 or any(c < 0 for c in self.coeffs):
            raise DomainError("coefficients must be non-negative with A_0 >= 1")

    def code_size(self) -> int:
        return sum(self.coeffs)

    def min_positive_weight(self):
        for w in range(1, self.n + 1):
            if self.coeffs[w]:
                return w
        return None

    def evaluate(self, s):
        """Exact polynomial value at s (Fraction in, Fraction out)."""
        acc = Fraction(0)
        power = Fraction(1)
        for c in self.coeffs:
            acc += c * power
            power *= s
        return acc

    def evaluate_float(self, s: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * s + float(c)
        return acc


def macwilliams(enum: WeightEnumerator, code_size: int) -> WeightEnumerator:
    """Dual enumerator via the q-ary MacWilliams identity, exact."""
    if enum.code_size() != code_size:
        raise DomainError("code_size must equal the coefficient sum")
    n, q = enum.n, enum.q
    acc = [0] * (n + 1)
    for w, a in enumerate(enum.coeffs):
        if a == 0:
            continue
        # (1-s)^w (1+(q-1)s)^{n-w}
        left = [comb(w, i) * (-1) ** i for i in range(w + 1)]
        right = [comb(n - w, j) * (q - 1) ** j for j in range(n - w + 1)]
        for i, ci in enumerate(left):
            if ci == 0:
                continue
            for j, cj in enumerate(right):
                acc[i + j] += a * ci * cj
    out = []
    for c in acc:
        quot, rem = divmod(c, code_size)
        if rem != 0 or quot < 0:
            raise InconsistentEnumerator(
                "transform produced a negative or fractional coefficient"
            )
        out.append(quot)
    return WeightEnumerator(n, q, tuple(out))


# -- enumeration ------------------------------------------------------


def _kernel_args(code, rows):
    f = code.field
    return (
        np.ascontiguousarray(rows, dtype=np.uint16),
        f.q,
        np.ascontiguousarray(f.add_table),
        np.ascontiguousarray(f.mul_table),
        np.ascontiguousarray(f.neg_table),
    )


def _counts_to_enum(counts, n, q):
    return WeightEnumerator(n, q, tuple(int(c) for c in counts))


def weight_enumerator(code: LinearCode, cap: int = ENUM_CAP) -> WeightEnumerator:
    """Exact enumerator; enumerates the smaller of code and dual."""
    n, k, q = code.n, code.k, code.q
    if q**k <= cap:
        counts = _kernel_weight_counts(*_kernel_args(code, code.generator))
        return _counts_to_enum(counts, n, q)
    if q ** (n - k) <= cap:
        counts = _kernel_weight_counts(*_kernel_args(code, code.parity))
        dual = _counts_to_enum(counts, n, q)
        return macwilliams(dual, q ** (n - k))
    raise TooLarge(f"q^min(k, n-k) = {q**min(k, n - k)} exceeds cap {cap}")


def min_distance(code: LinearCode, cap: int = ENUM_CAP, subset_budget: int = SUBSET_BUDGET) -> int:
    """Exact minimum nonzero codeword weight; n+1 for the zero code."""
    n, k, q = code.n, code.k, code.q
    if k == 0:
        return n + 1
    if q**k <= cap:
        return int(_kernel_min_weight(*_kernel_args(code, code.generator)))
    if q ** (n - k) <= cap:
        enum = weight_enumerator(code, cap)
        return enum.min_positive_weight()
    return _min_distance_subsets(code, subset_budget)


def _level_has_deficient(f, mat, n, j, bound):
    """True when some j-subset of columns has rank < bound; chunked batches."""
    if j == 0:
        return bound > 0
    rows = mat.shape[0]
    chunk = max(256, (1 << 22) // max(1, rows * j))
    it = itertools.combinations(range(n), j)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return False
        combos = np.array(block, dtype=np.intp)
        stack = mat[:, combos].transpose(1, 0, 2)
        if np.any(gf.batch_rank_lt(f, stack, bound)):
            return True


def _min_distance_subsets(code, budget):
    """d via batched column-subset ranks; scans the cheaper side of the code."""
    f = code.field
    n, k = code.n, code.k
    visited = 0
    work = 0
    if k <= n - k:
        # largest J with rank(G_J) < k gives d = n - |J|
        g = code.generator
        for j in range(n - 1, -1, -1):
            visited += math.comb(n, j)
            work += math.comb(n, j) * k * max(1, j)
            if visited > budget or work > SUBSET_WORK_BUDGET:
                raise TooLarge("column-subset scan budget exhausted")
            if _level_has_deficient(f, g, n, j, k):
                return n - j
        return n  # no proper zero set at all
    h = code.parity
    for w in range(1, n + 1):
        visited += math.comb(n, w)
        work += math.comb(n, w) * (n - k) * w
        if visited > budget or work > SUBSET_WORK_BUDGET:
            raise TooLarge("column-subset scan budget exhausted")
        if _level_has_deficient(f, h, n, w, w):
            return w
    raise DomainError("unreachable: nonzero code has a minimum weight")


def span_blocks(f: gf.Field, rows, cap: int = ENUM_CAP):
    """Yields the row space of ``rows`` as (block, n) uint16 arrays.

    Every vector of the span appears exactly once per spanning message, in a
    deterministic order; used by exhaustive verifiers and low-weight search.
    """
    rows = np.ascontiguousarray(rows, dtype=np.uint16)
    k, n = rows.shape
    if f.q**k > cap:
        raise TooLarge(f"q^k = {f.q**k} exceeds cap {cap}")
    if k == 0:
        yield np.zeros((1, n), dtype=np.uint16)
        return
    add_t = np.ascontiguousarray(f.add_table)
    mul_t = np.ascontiguousarray(f.mul_table)
    neg = np.ascontiguousarray(f.neg_table)
    start = _enum_py._split(k, f.q)
    low = _enum_py._low_block(rows, f.q, add_t, mul_t, start).astype(np.intp)
    for word in _enum_py._odometer(rows[:start], f.q, add_t, mul_t, neg, start):
        yield add_t[word[None, :].astype(np.intp), low].astype(np.uint16)


def words_of_weight_at_most(f: gf.Field, rows, wmax: int, cap: int = ENUM_CAP) -> np.ndarray:
    """All nonzero vectors of the row space with weight <= wmax."""
    rows = np.ascontiguousarray(rows, dtype=np.uint16)
    found = []
    for block in span_blocks(f, rows, cap):
        w = np.count_nonzero(block, axis=1)
        keep = (w > 0) & (w <= wmax)
        if np.any(keep):
            found.append(block[keep])
    if not found:
        return np.zeros((0, rows.shape[1]), dtype=np.uint16)
    stacked = np.concatenate(found, axis=0)
    return np.unique(stacked, axis=0)
