"""Recovering sets, locality profiles, recovery graphs, and closures.

A recovering set for coordinate i is a set R of other coordinates whose
restriction determines the value at i across the whole code.  For linear
codes this is equivalent to a dual codeword h with h_i != 0 supported inside
R + {i}; a dual word of weight w therefore certifies a recovering set of
size w - 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import gf
from .codes import LinearCode, span_blocks, words_of_weight_at_most
from .errors import BudgetExceeded, DomainError, LrcError, TooLarge
from .rng import substream

VERIFY_CAP = 2**24
DUAL_ENUM_CAP = 2**20
SUBSET_BUDGET = 10**4
PACKING_NODE_BUDGET = 10**6


# -- verification ------------------------------------------------------


def is_recovering_set(code: LinearCode, i: int, members, cap: int = VERIFY_CAP) -> bool:
    """Exhaustive check that the restriction to ``members`` determines x_i.

    Works for any code given as a generator (linearity is not used); caps at
    q^k enumerated codewords.
    """
    members = sorted(set(members))
    _check_coordinate(code.n, i, members)
    q, k = code.q, code.k
    if q**k > cap:
        raise TooLarge(f"q^k = {q**k} exceeds verification cap {cap}")
    if q ** (len(members) + 1) > 2**62:
        raise TooLarge("restriction keys do not fit a 64-bit integer")
    powers = q ** np.arange(len(members), dtype=np.int64)
    pairs = []
    for block in span_blocks(code.field, code.generator, cap):
        keys = block[:, members].astype(np.int64) @ powers
        vals = block[:, i].astype(np.int64)
        pairs.append(np.stack([keys, vals], axis=1))
    allp = np.unique(np.concatenate(pairs, axis=0), axis=0)
    # distinct (key, value) rows sharing a key mean the restriction is ambiguous
    return np.unique(allp[:, 0]).size == allp.shape[0]


def recovery_witness(code: LinearCode, i: int, members):
    """Dual codeword h with h_i != 0 and supp(h) within members + {i}, if any."""
    members = sorted(set(members))
    _check_coordinate(code.n, i, members)
    cols = sorted(members + [i])
    pos = cols.index(i)
    basis = gf.nullspace(code.field, code.generator[:, cols])
    for row in basis:
        if row[pos]:
            h = np.zeros(code.n, dtype=np.uint16)
            h[cols] = row
            return tuple(int(x) for x in h)
    return None


def _check_coordinate(n, i, members):
    if not 0 <= i < n:
        raise DomainError(f"coordinate {i} out of range")
    if i in members:
        raise DomainError("a recovering set may not contain its own coordinate")
    if any(not 0 <= j < n for j in members):
        raise DomainError("recovering set member out of range")


# -- locality profile ---------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    coordinate: int
    members: frozenset
    witness: tuple

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def witness_weight(self) -> int:
        return sum(1 for x in self.witness if x)


@dataclass(frozen=True)
class LocalityProfile:
    ok: bool
    r: int
    t: int
    certificates: tuple = ()
    failed_coordinate: int | None = None
    heuristic: bool = False


def _candidate_sets(code, r, dual_cap, subset_budget):
    """Per-coordinate minimal recovering sets of size <= r, with witnesses.

    A coordinate with a weight-1 dual word (identically-zero column) is
    recoverable from any set; it is marked with an empty-set candidate.
    """
    n, k, q = code.n, code.k, code.q
    cands = [dict() for _ in range(n)]
    if q ** (n - k) <= dual_cap:
        words = words_of_weight_at_most(code.field, code.parity, r + 1, dual_cap)
        for word in words:
            supp = np.flatnonzero(word)
            for i in supp:
                members = frozenset(int(j) for j in supp if j != i)
                if members not in cands[int(i)]:
                    cands[int(i)][members] = tuple(int(x) for x in word)
    else:
        for i in range(n):
            others = [j for j in range(n) if j != i]
            visited = 0
            for w in range(0, r + 1):
                for combo in itertools.combinations(others, w):
                    visited += 1
                    if visited > subset_budget:
                        raise BudgetExceeded(
                            f"candidate search for coordinate {i} exceeded {subset_budget} subsets"
                        )
                    if any(known <= frozenset(combo) for known in cands[i]):
                        continue
                    witness = recovery_witness(code, i, combo)
                    if witness is not None:
                        members = frozenset(
                            j for j in np.flatnonzero(np.array(witness)) if j != i
                        )
                        cands[i].setdefault(frozenset(int(j) for j in members), witness)
    # keep only inclusion-minimal candidates, deterministic order
    out = []
    for i in range(n):
        sets = sorted(cands[i].items(), key=lambda kv: (len(kv[0]), tuple(sorted(kv[0]))))
        minimal = []
        for members, witness in sets:
            if not any(prev[0] < members for prev in minimal):
                minimal.append((members, witness))
        out.append(minimal)
    return out


def _pack_disjoint(options, t, node_budget=PACKING_NODE_BUDGET):
    """Exact search for t pairwise disjoint sets among the given options.

    Returns (choice, exact): ``choice`` is None when no packing exists; if
    the node budget trips, falls back to a greedy pass and reports
    exact=False.
    """
    nodes = 0
    chosen = []

    def rec(start):
        nonlocal nodes
        if len(chosen) == t:
            return True
        if t - len(chosen) > len(options) - start:
            return False
        for idx in range(start, len(options)):
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceeded("packing budget")
            s = options[idx][0]
            if all(not (s & c[0]) for c in chosen):
                chosen.append(options[idx])
                if rec(idx + 1):
                    return True
                chosen.pop()
        return False

    try:
        found = rec(0)
        return (list(chosen) if found else None), True
    except BudgetExceeded:
        greedy = []
        for opt in options:
            if all(not (opt[0] & g[0]) for g in greedy):
                greedy.append(opt)
                if len(greedy) == t:
                    return greedy, False
        return None, False


def locality_profile(
    code: LinearCode,
    r: int,
    t: int,
    dual_cap: int = DUAL_ENUM_CAP,
    subset_budget: int = SUBSET_BUDGET,
) -> LocalityProfile:
    """Find t pairwise-disjoint recovering sets of size <= r per coordinate.

    Candidates come from an exact low-weight dual-codeword search; the
    packing step is exact unless its node budget trips, in which case a
    greedy packing is attempted and flagged.  Failure reports the first
    coordinate that provably lacks t disjoint sets.
    """
    if r < 1 or t < 1:
        raise DomainError("need r >= 1 and t >= 1")
    cands = _candidate_sets(code, r, dual_cap, subset_budget)
    per_coord = []
    heuristic = False
    for i in range(code.n):
        options = cands[i]
        if options and not options[0][0]:
            # identically-zero coordinate: any t disjoint singletons work
            if code.n - 1 < t:
                return LocalityProfile(False, r, t, failed_coordinate=i)
            witness = options[0][1]
            others = [j for j in range(code.n) if j != i][:t]
            per_coord.append(
                tuple(Certificate(i, frozenset([j]), witness) for j in others)
            )
            continue
        choice, exact = _pack_disjoint(options, t)
        if choice is None:
            if exact:
                return LocalityProfile(False, r, t, failed_coordinate=i)
            raise BudgetExceeded(f"packing for coordinate {i} was not exact")
        heuristic |= not exact
        per_coord.append(
            tuple(Certificate(i, members, witness) for members, witness in choice)
        )
    return LocalityProfile(True, r, t, certificates=tuple(per_coord), heuristic=heuristic)


# -- recovery graph and closure -----------------------------------------


@dataclass(frozen=True)
class RecoveryGraph:
    """Per-vertex recovering sets.

    Closure accepts any collection; the permutation-coloring statistics
    additionally need each vertex's sets pairwise disjoint (see
    ``check_disjoint``), which profile-built graphs satisfy by construction.
    """

    n: int
    sets: tuple

    def __post_init__(self):
        if len(self.sets) != self.n:
            raise DomainError("one sets tuple required per vertex")
        for v, groups in enumerate(self.sets):
            for s in groups:
                if not s:
                    raise DomainError("recovering sets must be non-empty")
                if v in s:
                    raise DomainError("a vertex may not appear in its own set")
                if any(not 0 <= u < self.n for u in s):
                    raise DomainError("set member out of range")

    def check_disjoint(self):
        for groups in self.sets:
            seen = set()
            for s in groups:
                if seen & s:
                    raise DomainError("recovering sets of one vertex must be disjoint")
                seen |= s

    @property
    def t(self):
        counts = {len(groups) for groups in self.sets}
        return counts.pop() if len(counts) == 1 else None


def graph_from_profile(profile: LocalityProfile, n: int) -> RecoveryGraph:
    if not profile.ok:
        raise DomainError("cannot build a recovery graph from a failed profile")
    return RecoveryGraph(
        n, tuple(tuple(c.members for c in certs) for certs in profile.certificates)
    )


def graph_from_code(code: LinearCode, max_set_size=None, cap: int = DUAL_ENUM_CAP) -> RecoveryGraph:
    """Recovery graph holding every minimal recovering set of bounded size."""
    wmax = code.n if max_set_size is None else max_set_size + 1
    words = words_of_weight_at_most(code.field, code.parity, wmax, cap)
    per_vertex = [set() for _ in range(code.n)]
    for word in words:
        supp = np.flatnonzero(word)
        for i in supp:
            members = frozenset(int(j) for j in supp if j != i)
            if members:
                per_vertex[int(i)].add(members)
    sets = []
    for v in range(code.n):
        minimal = []
        for s in sorted(per_vertex[v], key=lambda s: (len(s), tuple(sorted(s)))):
            if not any(prev < s for prev in minimal):
                minimal.append(s)
        sets.append(tuple(minimal))
    return RecoveryGraph(code.n, tuple(sets))


@dataclass(frozen=True)
class ClosureResult:
    closed: frozenset
    order: tuple
    ratio: Fraction


def closure(graph: RecoveryGraph, seeds) -> ClosureResult:
    """Fixed point of: color v when one of its sets is fully colored.

    The closed set is order-independent; the recorded order comes from
    ascending-index sweeps, so it is reproducible.
    """
    seeds = sorted(set(seeds))
    if not seeds:
        raise DomainError("seed set must be non-empty")
    if any(not 0 <= v < graph.n for v in seeds):
        raise DomainError("seed out of range")
    colored = set(seeds)
    order = list(seeds)
    changed = True
    while changed:
        changed = False
        for v in range(graph.n):
            if v in colored:
                continue
            if any(s <= colored for s in graph.sets[v]):
                colored.add(v)
                order.append(v)
                changed = True
    return ClosureResult(frozenset(colored), tuple(order), Fraction(len(colored), len(seeds)))


@dataclass(frozen=True)
class ClosureSearch:
    seeds: frozenset
    result: ClosureResult
    exact: bool


def best_closure_search(graph: RecoveryGraph, budget: int, exhaustive_cap: int = 10**6) -> ClosureSearch:
    """Maximizes |Cl(S)| over |S| <= budget; exact when C(n, budget) is small."""
    if budget < 1:
        raise DomainError("budget must be >= 1")
    n = graph.n
    if budget >= n:
        seeds = frozenset(range(n))
        return ClosureSearch(seeds, closure(graph, seeds), True)
    if math.comb(n, budget) <= exhaustive_cap:
        best = None
        for combo in itertools.combinations(range(n), budget):
            res = closure(graph, combo)
            if best is None or len(res.closed) > len(best.result.closed):
                best = ClosureSearch(frozenset(combo), res, True)
        return best
    # greedy: grow the seed set one vertex at a time by marginal closure
    seeds = []
    for _ in range(budget):
        best_v, best_size = None, -1
        for v in range(n):
            if v in seeds:
                continue
            size = len(closure(graph, seeds + [v]).closed)
            if size > best_size:
                best_v, best_size = v, size
        seeds.append(best_v)
    return ClosureSearch(frozenset(seeds), closure(graph, seeds), False)


def distance_certificate(code: LinearCode, seeds, graph: RecoveryGraph | None = None):
    """Upper bound n - |Cl(S)| on the distance, valid whenever |S| <= k-1."""
    seeds = set(seeds)
    if len(seeds) > code.k - 1:
        return None
    if graph is None:
        graph = graph_from_code(code)
    return code.n - len(closure(graph, seeds).closed)


# -- expansion-ratio arithmetic ------------------------------------------


def expansion_ratio_floor(r: int, t: int) -> Fraction:
    """Guaranteed closure expansion ratio e_t = sum_{i<=t} r^-i."""
    if r < 1 or t < 0:
        raise DomainError("need r >= 1 and t >= 0")
    if r == 1:
        return Fraction(t + 1)
    return Fraction(r ** (t + 1) - 1, r ** (t + 1) - r**t)


def floor_sum_identity(m: int, r: int, t: int) -> bool:
    """Checks floor(m/r^t) r^t e_t + sum a_i r^i e_i == sum_{i<=t} floor(m/r^i)."""
    if r < 2 or m < 0 or t < 0:
        raise DomainError("need r >= 2, m >= 0, t >= 0")
    digits = []
    x = m
    while x:
        digits.append(x % r)
        x //= r
    lhs = Fraction(m // r**t) * r**t * expansion_ratio_floor(r, t)
    for i in range(min(t, len(digits))):
        lhs += digits[i] * r**i * expansion_ratio_floor(r, i)
    rhs = sum(Fraction(m // r**i) for i in range(t + 1))
    return lhs == rhs


# -- random-permutation coloring experiment --------------------------------


@dataclass(frozen=True)
class ColoringExperiment:
    trials: int
    mean: float
    std_error: float
    fractions: tuple


def coloring_experiment(graph: RecoveryGraph, trials: int, seed: int, probes: int = 2) -> ColoringExperiment:
    """Random-permutation coloring: color v when it beats one full set.

    A vertex v receives a color when some recovering set's members all come
    earlier in a uniform random permutation.  Each trial also probes random
    subsets of the colored set for a vertex missing a color there, which the
    colored set must always contain.
    """
    if trials <= 0:
        raise DomainError("trials must be positive")
    graph.check_disjoint()
    n = graph.n
    fractions = []
    for trial in range(trials):
        rng = substream(seed, "perm-color", trial)
        tau = rng.permutation(n)
        colored = []
        for v in range(n):
            if any(max(tau[u] for u in s) < tau[v] for s in graph.sets[v]):
                colored.append(v)
        fractions.append(len(colored) / n)
        for _ in range(probes):
            if not colored:
                break
            size = int(rng.integers(1, len(colored) + 1))
            probe = set(rng.choice(colored, size=size, replace=False).tolist())
            ok = any(
                any(not (s & probe) for s in graph.sets[v]) for v in probe
            )
            if not ok:
                raise LrcError("colored-set probe found no vertex missing a color")
    arr = np.array(fractions)
    stderr = float(arr.std(ddof=1) / math.sqrt(trials)) if trials > 1 else float("inf")
    return ColoringExperiment(trials, float(arr.mean()), stderr, tuple(fractions))


def random_uniform_recovery_graph(n: int, r: int, t: int, seed: int) -> RecoveryGraph:
    """Random graph with t disjoint size-r recovering sets per vertex."""
    if t * r > n - 1:
        raise DomainError("need t*r <= n-1 distinct other vertices")
    rng = substream(seed, "uniform-graph")
    sets = []
    for v in range(n):
        others = np.array([u for u in range(n) if u != v])
        picks = rng.choice(others, size=t * r, replace=False)
        sets.append(tuple(frozenset(int(u) for u in picks[j * r : (j + 1) * r]) for j in range(t)))
    return RecoveryGraph(n, tuple(sets))
