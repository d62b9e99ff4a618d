"""NumPy enumeration kernels (fallback backend).

Splits the message space into a vectorised low block and a lexicographic
odometer over the remaining digits; the counts are exact and identical to
the compiled backend.
"""

import math

import numpy as np

BLOCK_BITS = 16


def _split(k, q):
    digits = max(1, int(BLOCK_BITS / math.log2(q)))
    return max(0, k - digits)


def _low_block(rows, q, add_t, mul_t, start):
    n = rows.shape[1]
    words = np.zeros((1, n), dtype=np.uint16)
    for i in range(start, rows.shape[0]):
        scaled = mul_t[np.arange(q, dtype=np.intp)[:, None], rows[i][None, :].astype(np.intp)]
        words = add_t[words[:, None, :].astype(np.intp), scaled[None, :, :].astype(np.intp)]
        words = words.reshape(-1, n)
    return words


def _odometer(rows, q, add_t, mul_t, neg, nhigh):
    """Yields the word spanned by each high-digit message, in lex order."""
    n = rows.shape[1]
    word = np.zeros(n, dtype=np.uint16)
    if nhigh == 0:
        yield word
        return
    digits = [0] * nhigh
    sub_t = add_t[:, neg.astype(np.intp)]
    while True:
        yield word
        i = nhigh - 1
        while i >= 0 and digits[i] == q - 1:
            i -= 1
        if i < 0:
            return
        for j in range(i, nhigh):
            old = digits[j]
            new = old + 1 if j == i else 0
            digits[j] = new
            diff = int(sub_t[new, old])
            if diff:
                word = add_t[word.astype(np.intp), mul_t[diff, rows[j].astype(np.intp)]]


def weight_counts(rows, q, add_t, mul_t, neg):
    """Exact codeword-weight histogram of the row space, length n+1."""
    k, n = rows.shape
    counts = np.zeros(n + 1, dtype=np.uint64)
    if k == 0:
        counts[0] = 1
        return counts
    start = _split(k, q)
    low = _low_block(rows, q, add_t, mul_t, start).astype(np.intp)
    for word in _odometer(rows[:start], q, add_t, mul_t, neg, start):
        full = add_t[word[None, :].astype(np.intp), low]
        w = np.count_nonzero(full, axis=1)
        counts += np.bincount(w, minlength=n + 1).astype(np.uint64)
    return counts


def min_weight(rows, q, add_t, mul_t, neg):
    """Minimum nonzero weight in the row space; n+1 if the space is {0}."""
    k, n = rows.shape
    if k == 0:
        return n + 1
    best = n + 1
    start = _split(k, q)
    low = _low_block(rows, q, add_t, mul_t, start).astype(np.intp)
    for word in _odometer(rows[:start], q, add_t, mul_t, neg, start):
        full = add_t[word[None, :].astype(np.intp), low]
        w = np.count_nonzero(full, axis=1)
        nz = w[w > 0]
        if nz.size:
            m = int(nz.min())
            if m < best:
                best = m
                if best == 1:
                    return 1
    return best
