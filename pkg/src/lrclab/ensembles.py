"""Random code ensembles with locality structure.

Three families: block-diagonal single parity checks plus uniform rows
(single recovering set), block-diagonal complete-graph incidence blocks plus
uniform rows (two recovering sets), and an expander-graph pipeline for
general availability t over large alphabets.

Sampling is driven by named Philox substreams keyed off the EnsembleSpec
seed, so a sample is a pure function of its spec.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import gf
from .bounds_asym import expander_distance
from .codes import LinearCode, code_from_parity, min_distance
from .enumerators import complete_graph_incidence
from .errors import DomainError, RetryExhausted
from .graphs import BipartiteGraph, ExpanderReport, expansion_report, has_four_cycle, random_biregular
from .locality import LocalityProfile, locality_profile
from .rng import substream

KINDS = ("single", "double", "expander")


@dataclass(frozen=True)
class EnsembleSpec:
    kind: str
    n: int
    k: int
    r: int
    q: int
    t: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"kind must be one of {KINDS}")
        if self.n < 1 or self.k < 0 or self.r < 1 or self.q < 2:
            raise DomainError("need n >= 1, k >= 0, r >= 1, q >= 2")


@dataclass(frozen=True)
class EnsembleSample:
    spec: EnsembleSpec
    parity: np.ndarray
    code: LinearCode

    @property
    def k_actual(self) -> int:
        return self.code.k


def repeated_block_rows(block: np.ndarray, copies: int, n: int) -> np.ndarray:
    rows, width = block.shape
    out = np.zeros((rows * copies, n), dtype=np.uint16)
    for c in range(copies):
        out[c * rows : (c + 1) * rows, c * width : (c + 1) * width] = block
    return out


def sample_single(spec: EnsembleSpec) -> EnsembleSample:
    """Parity checks: one all-ones row per (r+1)-block, plus uniform rows."""
    n, k, r, q = spec.n, spec.k, spec.r, spec.q
    if spec.kind != "single":
        raise DomainError("spec.kind must be 'single'")
    if n % (r + 1) != 0:
        raise DomainError("need (r+1) | n")
    blocks = n // (r + 1)
    if not 1 <= k <= n - blocks:
        raise DomainError(f"need 1 <= k <= rn/(r+1) = {n - blocks}")
    upper = repeated_block_rows(np.ones((1, r + 1), dtype=np.uint16), blocks, n)
    extra = n - k - blocks
    rng = substream(spec.seed, "single-uniform")
    lower = rng.integers(0, q, size=(extra, n), dtype=np.uint16)
    parity = np.concatenate([upper, lower], axis=0)
    return EnsembleSample(spec, parity, code_from_parity(gf.field(q), parity))


def sample_double(spec: EnsembleSpec) -> EnsembleSample:
    """Parity checks: complete-graph incidence blocks, plus uniform rows."""
    n, k, r, q = spec.n, spec.k, spec.r, spec.q
    if spec.kind != "double":
        raise DomainError("spec.kind must be 'double'")
    width = math.comb(r + 2, 2)
    if n % width != 0:
        raise DomainError(f"need C(r+2,2) = {width} to divide n")
    m = n // width
    if not 1 <= k <= n - m * (r + 1):
        raise DomainError(f"need 1 <= k <= {n - m * (r + 1)}")
    upper = repeated_block_rows(complete_graph_incidence(r), m, n)
    extra = n - k - m * (r + 1)
    rng = substream(spec.seed, "double-uniform")
    lower = rng.integers(0, q, size=(extra, n), dtype=np.uint16)
    parity = np.concatenate([upper, lower], axis=0)
    return EnsembleSample(spec, parity, code_from_parity(gf.field(q), parity))


def random_support_matrix(sets, q: int, nrows: int, rng) -> np.ndarray:
    """Columns with uniform nonzero entries on prescribed row supports.

    Needs q >= len(sets) + 2 so the union-bound failure rate s/(q-1) of the
    full-rank event stays below one.
    """
    if q < len(sets) + 2:
        raise DomainError(f"need q >= {len(sets) + 2} for {len(sets)} columns")
    out = np.zeros((nrows, len(sets)), dtype=np.uint16)
    for col, support in enumerate(sets):
        for row in sorted(support):
            if not 0 <= row < nrows:
                raise DomainError("support row out of range")
            out[row, col] = int(rng.integers(1, q))
    return out


def subfamily_hall_ok(sets, max_size: int) -> bool:
    """Every subfamily of size <= max_size covers at least its own size."""
    sets = [set(s) for s in sets]
    for size in range(1, max_size + 1):
        for combo in itertools.combinations(range(len(sets)), size):
            union = set().union(*(sets[i] for i in combo))
            if len(union) < size:
                return False
    return True


@dataclass(frozen=True)
class ExpanderSample:
    spec: EnsembleSpec
    graph: BipartiteGraph
    parity: np.ndarray
    code: LinearCode
    delta: float
    gamma: float
    distance: int
    distance_target: int
    distance_ok: bool
    hall_ok: bool
    profile: LocalityProfile
    expander: ExpanderReport | None
    graph_attempts: int

    @property
    def rate(self) -> Fraction:
        return Fraction(self.code.k, self.code.n)


def sample_expander(spec: EnsembleSpec, max_graph_attempts: int = 10**4, check_expansion: bool = True) -> ExpanderSample:
    """Full pipeline: 4-cycle-free biregular graph -> Hall family -> random
    full-support columns -> code; measures distance and locality."""
    n, k, r, t, q = spec.n, spec.k, spec.r, spec.t, spec.q
    if spec.kind != "expander":
        raise DomainError("spec.kind must be 'expander'")
    if not 2 <= t <= r:
        raise DomainError("need r >= t >= 2")
    if (n * t) % (r + 1) != 0:
        raise DomainError("need (r+1) | nt")
    rate = k / n
    point = expander_distance(r, t, rate)
    delta, gamma = point.delta, point.aux[0]

    graph = None
    attempts = 0
    for attempt in range(max_graph_attempts):
        attempts = attempt + 1
        g = random_biregular(n, t, r + 1, substream(spec.seed, "graph", attempt))
        if not has_four_cycle(g):
            graph = g
            break
    if graph is None:
        raise RetryExhausted("no 4-cycle-free graph found")

    p = graph.right_n
    if n - k < p:
        raise DomainError("rate exceeds 1 - t/(r+1): not enough parity rows")
    shared = set(range(p, n - k))
    sets = [set(graph.adj[i]) | shared for i in range(n)]

    target = math.ceil(delta * n - 1e-9)
    hall_ok = subfamily_hall_ok(sets, min(n, int(delta * n)))
    parity = random_support_matrix(sets, q, n - k, substream(spec.seed, "columns"))
    code = code_from_parity(gf.field(q), parity)
    dist = min_distance(code)
    profile = locality_profile(code, r, t)
    report = None
    if check_expansion and n <= 30:
        report = expansion_report(graph, delta, gamma)
    return ExpanderSample(
        spec,
        graph,
        parity,
        code,
        delta,
        gamma,
        dist,
        target,
        dist >= target,
        hall_ok,
        profile,
        report,
        attempts,
    )
