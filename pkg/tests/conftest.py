import itertools

import numpy as np
import pytest

from lrclab import codes, gf
from lrclab.rng import substream

# parity-check matrix of the length-6 shortened binary code used throughout
H6 = np.array(
    [
        [0, 0, 0, 1, 1, 1],
        [0, 1, 1, 0, 0, 1],
        [1, 0, 1, 0, 1, 0],
    ],
    dtype=np.uint16,
)

HAMMING_74 = np.array(
    [
        [0, 0, 0, 1, 1, 1, 1],
        [0, 1, 1, 0, 0, 1, 1],
        [1, 0, 1, 0, 1, 0, 1],
    ],
    dtype=np.uint16,
)


@pytest.fixture
def code633():
    return codes.code_from_parity(gf.field(2), H6)


@pytest.fixture
def hamming():
    return codes.code_from_parity(gf.field(2), HAMMING_74)


def brute_force_enumerator(field, generator):
    """Message-space oracle for weight counts, independent of the kernels."""
    k, n = generator.shape
    counts = [0] * (n + 1)
    for msg in itertools.product(range(field.q), repeat=k):
        word = [0] * n
        for i, m in enumerate(msg):
            if m:
                for j in range(n):
                    word[j] = field.add(word[j], field.mul(m, int(generator[i, j])))
        counts[sum(1 for x in word if x)] += 1
    return tuple(counts)


def random_code(q, n, k_target, seed):
    f = gf.field(q)
    rng = substream(seed, "test-code")
    mat = rng.integers(0, q, size=(k_target, n), dtype=np.uint16)
    return codes.code_from_generator(f, mat)
