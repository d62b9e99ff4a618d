# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels.

Walks the q-ary reflected Gray sequence over message digits, so every step
updates the running codeword through exactly one generator row and only on
that row's support.  Binary codes take a packed-word XOR/popcount path.
Outputs are bit-identical to the NumPy fallback.
"""

import numpy as np

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #define lrclab_popcountll(x) __builtin_popcountll(x)
    #else
    static int lrclab_popcountll(unsigned long long x) {
        int c = 0;
        while (x) { x &= x - 1; ++c; }
        return c;
    }
    #endif
    """
    int lrclab_popcountll(unsigned long long x) nogil


def _pack_binary(rows):
    arr = np.asarray(rows, dtype=np.uint16)
    k, n = arr.shape
    nwords = max(1, (n + 63) // 64)
    packed = np.zeros((k, nwords), dtype=np.uint64)
    for i in range(k):
        bits = np.flatnonzero(arr[i])
        for b in bits:
            packed[i, b >> 6] |= np.uint64(1) << np.uint64(b & 63)
    return packed, nwords


def _weight_counts_q2(const unsigned short[:, ::1] rows):
    cdef Py_ssize_t k = rows.shape[0]
    cdef Py_ssize_t n = rows.shape[1]
    counts_arr = np.zeros(n + 1, dtype=np.uint64)
    cdef unsigned long long[::1] counts = counts_arr
    packed_arr, nwords_py = _pack_binary(rows)
    cdef unsigned long long[:, ::1] packed = packed_arr
    cdef Py_ssize_t nwords = nwords_py
    word_arr = np.zeros(nwords, dtype=np.uint64)
    cdef unsigned long long[::1] word = word_arr
    focus_arr = np.arange(k + 1, dtype=np.int64)
    cdef long long[::1] f = focus_arr
    cdef Py_ssize_t j, w
    cdef int wt = 0
    while True:
        counts[wt] += 1
        j = f[0]
        f[0] = 0
        if j == k:
            break
        # binary Gray: every step toggles, so the focus update is static
        f[j] = f[j + 1]
        f[j + 1] = j + 1
        wt = 0
        for w in range(nwords):
            word[w] ^= packed[j, w]
            wt += lrclab_popcountll(word[w])
    return counts_arr


def _min_weight_q2(const unsigned short[:, ::1] rows):
    cdef Py_ssize_t k = rows.shape[0]
    cdef Py_ssize_t n = rows.shape[1]
    packed_arr, nwords_py = _pack_binary(rows)
    cdef unsigned long long[:, ::1] packed = packed_arr
    cdef Py_ssize_t nwords = nwords_py
    word_arr = np.zeros(nwords, dtype=np.uint64)
    cdef unsigned long long[::1] word = word_arr
    focus_arr = np.arange(k + 1, dtype=np.int64)
    cdef long long[::1] f = focus_arr
    cdef Py_ssize_t j, w
    cdef int wt = 0
    cdef int best = <int> (n + 1)
    while True:
        if 0 < wt < best:
            best = wt
            if best == 1:
                return 1
        j = f[0]
        f[0] = 0
        if j == k:
            break
        f[j] = f[j + 1]
        f[j + 1] = j + 1
        wt = 0
        for w in range(nwords):
            word[w] ^= packed[j, w]
            wt += lrclab_popcountll(word[w])
    return best


def weight_counts(const unsigned short[:, ::1] rows, int q,
                  const unsigned short[:, ::1] add_t, const unsigned short[:, ::1] mul_t,
                  const unsigned short[::1] neg):
    """Exact codeword-weight histogram of the row space, length n+1."""
    cdef Py_ssize_t k = rows.shape[0]
    cdef Py_ssize_t n = rows.shape[1]
    if q == 2 and k > 0:
        return _weight_counts_q2(rows)
    counts_arr = np.zeros(n + 1, dtype=np.uint64)
    cdef unsigned long long[::1] counts = counts_arr
    if k == 0:
        counts[0] = 1
        return counts_arr

    word_arr = np.zeros(n, dtype=np.uint16)
    cdef unsigned short[::1] word = word_arr

    # flattened per-row supports
    supports = [np.flatnonzero(np.asarray(rows[i])).astype(np.int64) for i in range(k)]
    offs_arr = np.zeros(k + 1, dtype=np.int64)
    for i in range(k):
        offs_arr[i + 1] = offs_arr[i] + supports[i].size
    cols_arr = np.concatenate(supports) if offs_arr[k] else np.zeros(0, dtype=np.int64)
    cdef long long[::1] offs = offs_arr
    cdef long long[::1] cols = cols_arr

    digits_arr = np.zeros(k, dtype=np.int64)
    focus_arr = np.arange(k + 1, dtype=np.int64)
    dir_arr = np.ones(k, dtype=np.int64)
    cdef long long[::1] a = digits_arr
    cdef long long[::1] f = focus_arr
    cdef long long[::1] o = dir_arr

    cdef Py_ssize_t j, t, c
    cdef int wt = 0
    cdef int old, new, diff
    cdef unsigned short ov, nv

    while True:
        counts[wt] += 1
        j = f[0]
        f[0] = 0
        if j == k:
            break
        old = <int> a[j]
        new = old + <int> o[j]
        a[j] = new
        if new == 0 or new == q - 1:
            o[j] = -o[j]
            f[j] = f[j + 1]
            f[j + 1] = j + 1
        diff = add_t[new, neg[old]]
        for t in range(offs[j], offs[j + 1]):
            c = cols[t]
            ov = word[c]
            nv = add_t[ov, mul_t[diff, rows[j, c]]]
            word[c] = nv
            if ov == 0:
                if nv != 0:
                    wt += 1
            elif nv == 0:
                wt -= 1
    return counts_arr


def min_weight(const unsigned short[:, ::1] rows, int q,
               const unsigned short[:, ::1] add_t, const unsigned short[:, ::1] mul_t,
               const unsigned short[::1] neg):
    """Minimum nonzero weight in the row space; n+1 if the space is {0}."""
    cdef Py_ssize_t k = rows.shape[0]
    cdef Py_ssize_t n = rows.shape[1]
    if k == 0:
        return n + 1
    if q == 2:
        return _min_weight_q2(rows)

    word_arr = np.zeros(n, dtype=np.uint16)
    cdef unsigned short[::1] word = word_arr

    supports = [np.flatnonzero(np.asarray(rows[i])).astype(np.int64) for i in range(k)]
    offs_arr = np.zeros(k + 1, dtype=np.int64)
    for i in range(k):
        offs_arr[i + 1] = offs_arr[i] + supports[i].size
    cols_arr = np.concatenate(supports) if offs_arr[k] else np.zeros(0, dtype=np.int64)
    cdef long long[::1] offs = offs_arr
    cdef long long[::1] cols = cols_arr

    digits_arr = np.zeros(k, dtype=np.int64)
    focus_arr = np.arange(k + 1, dtype=np.int64)
    dir_arr = np.ones(k, dtype=np.int64)
    cdef long long[::1] a = digits_arr
    cdef long long[::1] f = focus_arr
    cdef long long[::1] o = dir_arr

    cdef Py_ssize_t j, t, c
    cdef int wt = 0
    cdef int best = <int> (n + 1)
    cdef int old, new, diff
    cdef unsigned short ov, nv

    while True:
        if 0 < wt < best:
            best = wt
            if best == 1:
                return 1
        j = f[0]
        f[0] = 0
        if j == k:
            break
        old = <int> a[j]
        new = old + <int> o[j]
        a[j] = new
        if new == 0 or new == q - 1:
            o[j] = -o[j]
            f[j] = f[j + 1]
            f[j + 1] = j + 1
        diff = add_t[new, neg[old]]
        for t in range(offs[j], offs[j + 1]):
            c = cols[t]
            ov = word[c]
            nv = add_t[ov, mul_t[diff, rows[j, c]]]
            word[c] = nv
            if ov == 0:
                if nv != 0:
                    wt += 1
            elif nv == 0:
                wt -= 1
    return best
