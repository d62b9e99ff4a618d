"""Closed-form weight enumerators used by the random-ensemble bounds.

Two families appear: the [r+1, r] single parity-check block, and the block
whose parity-check matrix is the edge-vertex incidence matrix of a complete
graph on r+2 vertices with the last vertex row deleted.
"""

from __future__ import annotations

from math import comb, factorial

import numpy as np

from . import gf
from .codes import WeightEnumerator, macwilliams, _counts_to_enum, _kernel_weight_counts
from .errors import DomainError, InconsistentEnumerator, TooLarge


def single_parity_enumerator(r: int, q: int) -> WeightEnumerator:
    """Enumerator of the [r+1, r] single parity-check code over GF(q).

    Equals (1/q) * ((1 + (q-1)s)^{r+1} + (q-1)(1-s)^{r+1}), expanded in
    exact integers.
    """
    if r < 1 or q < 2:
        raise DomainError("need r >= 1 and q >= 2")
    n = r + 1
    coeffs = []
    for i in range(n + 1):
        c = comb(n, i) * ((q - 1) ** i + (q - 1) * (-1) ** i)
        quot, rem = divmod(c, q)
        if rem:
            raise InconsistentEnumerator("single parity enumerator not integral")
        coeffs.append(quot)
    return WeightEnumerator(n, q, tuple(coeffs))


def complete_graph_incidence(r: int, drop_last_row: bool = True) -> np.ndarray:
    """Edge-vertex incidence matrix of the complete graph on r+2 vertices.

    Columns are edges (u, v), u < v, in lexicographic order; with
    ``drop_last_row`` the highest-indexed vertex row is deleted, leaving the
    (r+1) x C(r+2, 2) parity-check block.
    """
    v = r + 2
    edges = [(a, b) for a in range(v) for b in range(a + 1, v)]
    mat = np.zeros((v, len(edges)), dtype=np.uint16)
    for col, (a, b) in enumerate(edges):
        mat[a, col] = 1
        mat[b, col] = 1
    return mat[:-1] if drop_last_row else mat


def _poly_pow_coeffs(base0: int, base1: int, power: int):
    # coefficients of (base0 + base1*s)^power
    return [comb(power, i) * base0 ** (power - i) * base1**i for i in range(power + 1)]


def incidence_enumerator_formula(r: int, q: int, comp_cap: int = 2_000_000) -> WeightEnumerator:
    """Composition-sum formula for the incidence-block code enumerator.

    Sums (1 + (q-1)s)^{N-E} (1-s)^E over all coefficient compositions of the
    r+2 vertex rows, where E counts the nonzero edge coordinates, and divides
    by q^{r+2}.  Matches the brute-force enumerator in characteristic 2; in
    odd characteristic it describes the null space of the full incidence
    matrix instead (the deleted row is independent there), which the tests
    record rather than assert.
    """
    if r < 1 or q < 2:
        raise DomainError("need r >= 1 and q >= 2")
    if comb(r + 1 + q, q - 1) > comp_cap:
        raise TooLarge("too many coefficient compositions at this q")
    f = gf.field(q)
    m = r + 2
    n = comb(m, 2)
    pair_of = [int(f.neg(a)) for a in range(q)]

    # tally compositions by the resulting codeword weight E
    count_by_weight = {}
    comp = [0] * q

    def rec(label, remaining):
        if label == q - 1:
            comp[label] = remaining
            zeros = comb(comp[0], 2)
            for a in range(1, q):
                b = pair_of[a]
                if b == a:
                    zeros += comb(comp[a], 2)
                elif a < b:
                    zeros += comp[a] * comp[b]
            weight = n - zeros
            mult = factorial(m)
            for c in comp:
                mult //= factorial(c)
            count_by_weight[weight] = count_by_weight.get(weight, 0) + mult
            return
        for c in range(remaining + 1):
            comp[label] = c
            rec(label + 1, remaining - c)

    rec(0, m)

    acc = [0] * (n + 1)
    for e, mult in count_by_weight.items():
        left = _poly_pow_coeffs(1, q - 1, n - e)
        right = _poly_pow_coeffs(1, -1, e)
        for i, ci in enumerate(left):
            for j, cj in enumerate(right):
                acc[i + j] += mult * ci * cj
    denom = q**m
    out = []
    for c in acc:
        quot, rem = divmod(c, denom)
        if rem or quot < 0:
            raise InconsistentEnumerator("incidence formula not integral")
        out.append(quot)
    return WeightEnumerator(n, q, tuple(out))


def incidence_enumerator_binary(r: int) -> WeightEnumerator:
    """Binary closed form: (1/2^{r+2}) sum_i C(r+2,i) (1+s)^{N-i(r+2-i)} (1-s)^{i(r+2-i)}."""
    m = r + 2
    n = comb(m, 2)
    acc = [0] * (n + 1)
    for i in range(m + 1):
        e = i * (m - i)
        left = _poly_pow_coeffs(1, 1, n - e)
        right = _poly_pow_coeffs(1, -1, e)
        for a, ca in enumerate(left):
            for b, cb in enumerate(right):
                acc[a + b] += comb(m, i) * ca * cb
    denom = 2**m
    out = []
    for c in acc:
        quot, rem = divmod(c, denom)
        if rem or quot < 0:
            raise InconsistentEnumerator("binary incidence form not integral")
        out.append(quot)
    return WeightEnumerator(n, 2, tuple(out))


def incidence_enumerator_exact(r: int, q: int, cap: int = 2**24) -> WeightEnumerator:
    """Brute-force enumerator of the code with the incidence parity block.

    Enumerates the dual (row space of the block, q^{r+1} words) and applies
    the MacWilliams transform; exact for every q.
    """
    if q ** (r + 1) > cap:
        raise TooLarge(f"dual enumeration needs q^(r+1) = {q**(r+1)} words")
    f = gf.field(q)
    h0 = complete_graph_incidence(r)
    counts = _kernel_weight_counts(
        np.ascontiguousarray(h0, dtype=np.uint16),
        q,
        np.ascontiguousarray(f.add_table),
        np.ascontiguousarray(f.mul_table),
        np.ascontiguousarray(f.neg_table),
    )
    dual = _counts_to_enum(counts, h0.shape[1], q)
    return macwilliams(dual, q ** (r + 1))
