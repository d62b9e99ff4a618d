"""Deterministic random substreams.

Streams use the Philox counter-based generator keyed through a SeedSequence
of (seed, crc32(label), index), so every (seed, stage, index) triple yields
the same draw order on every run and results never depend on scheduling.
"""

import zlib

import numpy as np

_MASK = (1 << 64) - 1


def substream(seed: int, label: str, index: int = 0) -> np.random.Generator:
    entropy = [int(seed) & _MASK, zlib.crc32(label.encode("utf-8")), int(index) & _MASK]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))
