import pytest

from lrclab.errors import DomainError, TooLarge
from lrclab.graphs import (
    BipartiteGraph,
    expansion_report,
    hall_check,
    has_four_cycle,
    maximum_matching,
    random_biregular,
)
from lrclab.rng import substream


def test_biregular_degrees_and_handshake():
    g = random_biregular(4, 2, 4, substream(1, "g"))
    assert g.right_n == 2
    assert all(len(a) == 2 for a in g.adj)
    right = g.right_neighbors()
    assert all(len(s) == 4 for s in right)
    assert sum(len(a) for a in g.adj) == 8


def test_biregular_determinism():
    a = random_biregular(12, 2, 4, substream(9, "g"))
    b = random_biregular(12, 2, 4, substream(9, "g"))
    assert a.adj == b.adj


def test_biregular_simple():
    for seed in range(6):
        g = random_biregular(10, 3, 5, substream(seed, "simple"))
        for nbrs in g.adj:
            assert len(set(nbrs)) == len(nbrs)


def test_biregular_divisibility():
    with pytest.raises(DomainError):
        random_biregular(5, 2, 4, substream(0, "g"))


def test_four_cycle_detection():
    square = BipartiteGraph(2, 2, 2, 2, ((0, 1), (0, 1)))
    assert has_four_cycle(square)
    path = BipartiteGraph(2, 3, 2, 1, ((0, 1), (1, 2)))
    assert not has_four_cycle(path)


def test_low_gamma_always_expands():
    # gamma <= 1/(r+1): every subset has at least t|T|/(r+1) neighbours
    for seed in range(5):
        g = random_biregular(12, 2, 4, substream(seed, "exp"))
        rep = expansion_report(g, delta=1.0, gamma=1 / 4)
        assert rep.is_expander
        assert rep.witness is None


def test_expansion_witness():
    # both left vertices share both right vertices: gamma = 1 fails at |T| = 2
    square = BipartiteGraph(2, 2, 2, 2, ((0, 1), (0, 1)))
    rep = expansion_report(square, delta=1.0, gamma=1.0)
    assert not rep.is_expander
    assert rep.witness == (0, 1)
    assert not rep.four_cycle_free


def test_expansion_budget():
    g = random_biregular(28, 2, 4, substream(3, "big"))
    with pytest.raises(TooLarge):
        expansion_report(g, delta=1.0, gamma=0.25, subset_budget=10)


def test_hall_examples():
    res = hall_check([{1}, {1}])
    assert not res.ok and res.violator == (0, 1)
    res = hall_check([{1, 2}, {2, 3}, {3, 1}])
    assert res.ok
    assert len(set(res.sdr)) == 3
    assert all(res.sdr[i] in s for i, s in enumerate([{1, 2}, {2, 3}, {3, 1}]))


def test_hall_deficiency_union():
    sets = [{0}, {1}, {0, 1}, {5, 6}]
    res = hall_check(sets)
    assert not res.ok
    union = set().union(*(sets[i] for i in res.violator))
    assert len(union) < len(res.violator)


def test_maximum_matching_size():
    sets = [{0, 1}, {1, 2}, {2, 0}, {3}]
    match = maximum_matching(sets)
    assert len(match) == 4
    assert len(set(match.values())) == 4
