"""Exact arithmetic and dense linear algebra over GF(q) for q = p^m <= 4096.

A field element is an integer in [0, q); its base-p digits are the
coefficients of the element in the polynomial basis.  Extension fields
reduce modulo the lexicographically smallest monic irreducible polynomial of
degree m over GF(p), comparing coefficient tuples from the constant term
upward, so a given q always yields identical arithmetic across runs.

All operations accept plain Python ints or NumPy integer arrays and are
pure; ``Field`` instances are immutable after construction and safe to share
between threads.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import DomainError, NotPrimePower

MAX_ORDER = 4096


def _prime_power(q):
    if q < 2:
        raise NotPrimePower(f"q={q} is not a prime power")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    m = 0
    rest = q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise NotPrimePower(f"q={q} is not a prime power")
    return p, m


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_mod(a, mod, p):
    a = list(a)
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    a = a[:dm]
    while len(a) < dm:
        a.append(0)
    return a


def _monic_polys(p, degree):
    # low-to-high coefficient tuples, lexicographic order
    for packed in range(p**degree):
        coeffs = []
        x = packed
        for _ in range(degree):
            coeffs.append(x % p)
            x //= p
        yield coeffs + [1]


def _is_irreducible(poly, p):
    degree = len(poly) - 1
    for d in range(1, degree // 2 + 1):
        for g in _monic_polys(p, d):
            r = _poly_mod(poly, g, p) if len(poly) > len(g) else None
            # _poly_mod reduces poly by g; remainder zero => divisible
            if r is not None and not any(r[: len(g) - 1]):
                return False
    return True


def _canonical_poly(p, m):
    for cand in _monic_polys(p, m):
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise DomainError(f"no irreducible polynomial of degree {m} over GF({p})")


class Field:
    """Arithmetic over GF(q); element-wise ops broadcast over ndarrays."""

    def __init__(self, q):
        if q > MAX_ORDER:
            raise DomainError(f"q={q} exceeds supported maximum {MAX_ORDER}")
        p, m = _prime_power(q)
        self.q = q
        self.p = p
        self.m = m
        self.poly = _canonical_poly(p, m) if m > 1 else (0, 1)
        self._add_table = None
        self._mul_table = None
        self._inv_table = None
        if m > 1:
            self._build_log_tables()

    # -- construction ------------------------------------------------

    def _int_to_poly(self, a):
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def _poly_to_int(self, coeffs):
        out = 0
        for c in reversed(coeffs):
            out = out * self.p + c
        return out

    def _mul_int(self, a, b):
        prod = _poly_mul(self._int_to_poly(a), self._int_to_poly(b), self.p)
        return self._poly_to_int(_poly_mod(prod, self.poly, self.p))

    def _build_log_tables(self):
        q = self.q
        for g in range(2, q):
            exp = np.zeros(q - 1, dtype=np.uint16)
            e = 1
            ok = True
            for i in range(q - 1):
                exp[i] = e
                e = self._mul_int(e, g)
                if e == 1 and i != q - 2:
                    ok = False
                    break
            if ok and e == 1:
                log = np.zeros(q, dtype=np.int64)
                log[exp] = np.arange(q - 1)
                self._exp = exp
                self._log = log
                return
        raise DomainError(f"no generator found for GF({self.q})")

    # -- scalar/array element operations -------------------------------

    def add(self, a, b):
        if self.m == 1:
            if _is_array(a, b):
                return (np.asarray(a, dtype=np.int64) + np.asarray(b, dtype=np.int64)) % self.p
            return (int(a) + int(b)) % self.p
        if self.p == 2:
            if _is_array(a, b):
                return np.bitwise_xor(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
            return int(a) ^ int(b)
        return self._digitwise(a, b, 1)

    def sub(self, a, b):
        if self.m == 1:
            if _is_array(a, b):
                return (np.asarray(a, dtype=np.int64) - np.asarray(b, dtype=np.int64)) % self.p
            return (int(a) - int(b)) % self.p
        if self.p == 2:
            return self.add(a, b)
        return self._digitwise(a, b, -1)

    def _digitwise(self, a, b, sign):
        arr = _is_array(a, b)
        a = np.asarray(a, dtype=np.int64) if arr else int(a)
        b = np.asarray(b, dtype=np.int64) if arr else int(b)
        out = np.zeros(np.broadcast_shapes(np.shape(a), np.shape(b)), dtype=np.int64) if arr else 0
        pk = 1
        for _ in range(self.m):
            da = (a // pk) % self.p
            db = (b // pk) % self.p
            out = out + ((da + sign * db) % self.p) * pk
            pk *= self.p
        return out

    def neg(self, a):
        if self.p == 2:
            return a if _is_array(a) else int(a)
        if self.m == 1:
            if _is_array(a):
                return (self.p - np.asarray(a, dtype=np.int64)) % self.p
            return (self.p - int(a)) % self.p
        return self._digitwise(0, a, -1)

    def mul(self, a, b):
        if self.m == 1:
            if _is_array(a, b):
                return (np.asarray(a, dtype=np.int64) * np.asarray(b, dtype=np.int64)) % self.p
            return (int(a) * int(b)) % self.p
        if _is_array(a, b):
            a = np.asarray(a, dtype=np.int64)
            b = np.asarray(b, dtype=np.int64)
            res = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)].astype(np.int64)
            zero = (a == 0) | (b == 0)
            return np.where(zero, 0, res)
        a, b = int(a), int(b)
        if a == 0 or b == 0:
            return 0
        return int(self._exp[(int(self._log[a]) + int(self._log[b])) % (self.q - 1)])

    def inv(self, a):
        if _is_array(a):
            a = np.asarray(a, dtype=np.int64)
            if np.any(a == 0):
                raise DomainError("zero has no inverse")
            if self.m == 1:
                flat = [pow(int(x), self.p - 2, self.p) for x in a.ravel()]
                return np.array(flat, dtype=np.int64).reshape(a.shape)
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)].astype(np.int64)
        a = int(a)
        if a == 0:
            raise DomainError("zero has no inverse")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return int(self._exp[(self.q - 1 - int(self._log[a])) % (self.q - 1)])

    # -- dense lookup tables for the enumeration kernels ----------------

    @property
    def add_table(self):
        if self._add_table is None:
            q = self.q
            table = np.empty((q, q), dtype=np.uint16)
            cols = np.arange(q, dtype=np.int64)
            chunk = max(1, (1 << 22) // q)
            for lo in range(0, q, chunk):
                hi = min(q, lo + chunk)
                rows = np.arange(lo, hi, dtype=np.int64)
                table[lo:hi] = self.add(rows[:, None], cols[None, :]).astype(np.uint16)
            table.setflags(write=False)
            self._add_table = table
        return self._add_table

    @property
    def mul_table(self):
        if self._mul_table is None:
            q = self.q
            table = np.empty((q, q), dtype=np.uint16)
            cols = np.arange(q, dtype=np.int64)
            chunk = max(1, (1 << 22) // q)
            for lo in range(0, q, chunk):
                hi = min(q, lo + chunk)
                rows = np.arange(lo, hi, dtype=np.int64)
                table[lo:hi] = self.mul(rows[:, None], cols[None, :]).astype(np.uint16)
            table.setflags(write=False)
            self._mul_table = table
        return self._mul_table

    @property
    def neg_table(self):
        vals = self.neg(np.arange(self.q, dtype=np.int64))
        return np.asarray(vals, dtype=np.uint16)

    @property
    def inv_table(self):
        if self._inv_table is None:
            table = np.zeros(self.q, dtype=np.uint16)
            if self.m == 1:
                for a in range(1, self.q):
                    table[a] = pow(a, self.p - 2, self.p)
            else:
                idx = np.arange(1, self.q, dtype=np.int64)
                table[1:] = self._exp[(self.q - 1 - self._log[idx]) % (self.q - 1)]
            table.setflags(write=False)
            self._inv_table = table
        return self._inv_table

    def __repr__(self):
        return f"GF({self.q})"

    def __reduce__(self):
        return (field, (self.q,))


def _is_array(*vals):
    return any(isinstance(v, np.ndarray) for v in vals)


@lru_cache(maxsize=None)
def field(q: int) -> Field:
    """Cached field constructor; q must be a prime power in [2, 4096]."""
    return Field(q)


# -- matrices ----------------------------------------------------------


def as_matrix(f: Field, rows) -> np.ndarray:
    mat = np.array(rows, dtype=np.int64)
    if mat.ndim != 2:
        raise DomainError("matrix must be two-dimensional")
    if mat.size and (mat.min() < 0 or mat.max() >= f.q):
        raise DomainError(f"entries must lie in [0, {f.q})")
    return mat.astype(np.uint16)


def rref(f: Field, mat: np.ndarray):
    """Reduced row echelon form and pivot columns."""
    a = np.array(mat, dtype=np.int64, copy=True)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        v = int(a[r, c])
        if v != 1:
            a[r] = f.mul(a[r], f.inv(v))
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            a[others] = f.sub(a[others], f.mul(a[others, c][:, None], a[r][None, :]))
        pivots.append(c)
        r += 1
    return a.astype(np.uint16), pivots


def rank(f: Field, mat: np.ndarray) -> int:
    return len(rref(f, mat)[1])


def batch_rank_lt(f: Field, stack: np.ndarray, bound: int) -> np.ndarray:
    """Per-slice check rank < bound for a (batch, rows, cols) stack.

    Data-parallel Gaussian elimination: all slices advance one pivot column
    at a time, so the cost is O(cols) vectorised passes regardless of the
    batch size.
    """
    a = stack.astype(np.int64, copy=True)
    nbatch, rows, cols = a.shape
    inv_t = f.inv_table.astype(np.int64)
    next_row = np.zeros(nbatch, dtype=np.int64)
    rows_idx = np.arange(rows, dtype=np.int64)
    for c in range(cols):
        if np.all(next_row >= bound):
            break
        eligible = (a[:, :, c] != 0) & (rows_idx[None, :] >= next_row[:, None])
        act = np.flatnonzero(eligible.any(axis=1) & (next_row < rows))
        if act.size == 0:
            continue
        piv = eligible[act].argmax(axis=1)
        cur = next_row[act]
        pivot_rows = a[act, piv, :].copy()
        a[act, piv, :] = a[act, cur, :]
        a[act, cur, :] = pivot_rows
        inv = inv_t[pivot_rows[:, c]]
        col_vals = a[act, :, c]
        factors = f.mul(col_vals, inv[:, None])
        elim = (rows_idx[None, :] > cur[:, None]) & (col_vals != 0)
        delta = f.mul(factors[:, :, None], pivot_rows[:, None, :])
        reduced = f.sub(a[act], delta)
        a[act] = np.where(elim[:, :, None], reduced, a[act])
        next_row[act] = cur + 1
    return next_row < bound


def nullspace(f: Field, mat: np.ndarray) -> np.ndarray:
    """Basis of the right null space, one vector per row (may be empty)."""
    red, pivots = rref(f, mat)
    cols = mat.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.uint16)
    for row, fc in enumerate(free):
        basis[row, fc] = 1
        for i, pc in enumerate(pivots):
            basis[row, pc] = f.neg(int(red[i, fc]))
    return basis


def matmul(f: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if f.m == 1:
        return ((a.astype(np.int64) @ b.astype(np.int64)) % f.p).astype(np.uint16)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for i in range(a.shape[1]):
        out = f.add(out, f.mul(a[:, i].astype(np.int64)[:, None], b[i].astype(np.int64)[None, :]))
    return out.astype(np.uint16)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.uint16)
