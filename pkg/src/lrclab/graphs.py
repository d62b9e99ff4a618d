"""Biregular bipartite graphs, expansion testing, matchings, Hall checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DomainError, RetryExhausted, TooLarge


@dataclass(frozen=True)
class BipartiteGraph:
    """(left_degree, right_degree)-biregular simple bipartite graph."""

    left_n: int
    right_n: int
    left_degree: int
    right_degree: int
    adj: tuple  # per-left-vertex sorted right neighbours

    def right_neighbors(self):
        out = [set() for _ in range(self.right_n)]
        for v, nbrs in enumerate(self.adj):
            for u in nbrs:
                out[u].add(v)
        return out


def random_biregular(left_n: int, left_degree: int, right_degree: int, rng, max_retries: int = 10**4) -> BipartiteGraph:
    """Configuration-model sample, rejected and redrawn until simple."""
    if (left_n * left_degree) % right_degree != 0:
        raise DomainError("right_degree must divide left_n * left_degree")
    right_n = left_n * left_degree // right_degree
    left_stubs = [v for v in range(left_n) for _ in range(left_degree)]
    right_stubs = [v for v in range(right_n) for _ in range(right_degree)]
    for _ in range(max_retries):
        perm = rng.permutation(len(right_stubs))
        pairs = {(left_stubs[i], right_stubs[int(p)]) for i, p in enumerate(perm)}
        if len(pairs) != len(left_stubs):
            continue  # multi-edge
        adj = [[] for _ in range(left_n)]
        for l, r in pairs:
            adj[l].append(r)
        return BipartiteGraph(
            left_n, right_n, left_degree, right_degree, tuple(tuple(sorted(a)) for a in adj)
        )
    raise RetryExhausted(f"no simple graph in {max_retries} configuration draws")


def has_four_cycle(g: BipartiteGraph) -> bool:
    """True when two left vertices share two right neighbours."""
    seen = set()
    for nbrs in g.adj:
        for pair in itertools.combinations(nbrs, 2):
            if pair in seen:
                return True
            seen.add(pair)
    return False


@dataclass(frozen=True)
class ExpanderReport:
    gamma: float
    delta: float
    is_expander: bool
    witness: tuple | None
    four_cycle_free: bool


def expansion_report(g: BipartiteGraph, delta: float, gamma: float, subset_budget: int = 1 << 22) -> ExpanderReport:
    """Exhaustively verifies |N(T)| >= gamma * t * |T| for |T| <= delta * n."""
    n, t = g.left_n, g.left_degree
    tmax = int(delta * n)
    total = sum(_ncr(n, size) for size in range(1, tmax + 1))
    if total > subset_budget:
        raise TooLarge(f"{total} subsets exceed the exhaustive budget")
    witness = None
    for size in range(1, tmax + 1):
        for combo in itertools.combinations(range(n), size):
            nbrs = set()
            for v in combo:
                nbrs.update(g.adj[v])
            if len(nbrs) + 1e-9 < gamma * t * size:
                witness = combo
                break
        if witness:
            break
    return ExpanderReport(gamma, delta, witness is None, witness, not has_four_cycle(g))


def _ncr(n, k):
    import math

    return math.comb(n, k)


# -- matchings and Hall's condition ----------------------------------------


def maximum_matching(sets):
    """Kuhn's algorithm; returns {family index: matched element}."""
    match_of_elem = {}
    match_of_set = {}

    def try_augment(i, visited):
        for x in sets[i]:
            if x in visited:
                continue
            visited.add(x)
            if x not in match_of_elem or try_augment(match_of_elem[x], visited):
                match_of_elem[x] = i
                match_of_set[i] = x
                return True
        return False

    for i in range(len(sets)):
        try_augment(i, set())
    return match_of_set


@dataclass(frozen=True)
class HallResult:
    ok: bool
    sdr: tuple | None
    violator: tuple | None


def hall_check(sets) -> HallResult:
    """Hall's condition via matching: an SDR exists iff no subfamily is deficient.

    On failure returns the deficient subfamily reached by alternating paths
    from an unmatched set (its union is one smaller than its size).
    """
    import sys

    sets = [set(s) for s in sets]
    if len(sets) > 10**4 or sum(len(s) for s in sets) > 10**7:
        raise TooLarge("family too large for the matching-based check")
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * len(sets) + 1000))
    try:
        match = maximum_matching(sets)
    finally:
        sys.setrecursionlimit(limit)
    if len(match) == len(sets):
        return HallResult(True, tuple(match[i] for i in range(len(sets))), None)
    unmatched = next(i for i in range(len(sets)) if i not in match)
    elem_owner = {x: i for i, x in match.items()}
    reachable = {unmatched}
    while True:
        elems = set().union(*(sets[i] for i in reachable))
        new = {elem_owner[x] for x in elems if x in elem_owner} - reachable
        if not new:
            break
        reachable |= new
    return HallResult(False, None, tuple(sorted(reachable)))
