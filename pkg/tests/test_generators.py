import random
from collections import Counter
from itertools import combinations

import numpy as np
import pytest

from coxtour import (
    EnumerationGuardError,
    GeneratorKind,
    InvalidScoreError,
    RootSystem,
    ScoreVector,
    Tournament,
    build_interchange_graph,
    count_generators,
    degree,
    find_generators,
    half,
    interchange_neighbors,
    is_neutral_subset,
    loop,
    neg,
    pos,
    positive_roots,
    score,
    standard_score,
)
from coxtour.core import oriented_root
from coxtour.generators import weighted_counts
from coxtour.oracle import all_codes, fibers

from conftest import random_tournament

SMALL = [("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 3), ("D", 4)]


def brute_neutral_triples(t):
    """All 3-edge zero-sum subsets, found without templates."""
    return {frozenset(c) for c in combinations(positive_roots(t.system), 3) if is_neutral_subset(t, c)}


def norm2(s):
    return sum(v * v for v in s.values)


def test_all_wins_has_no_generators():
    for family, n in SMALL:
        assert find_generators(Tournament.all_wins(RootSystem(family, n))) == []


def test_d3_cyclic_copy():
    t = Tournament.from_outcomes(RootSystem("D", 3), {neg(2, 1): 0, neg(3, 1): 1, neg(3, 2): 0})
    gens = find_generators(t)
    assert [g.kind for g in gens] == [GeneratorKind.CYCLIC]


def test_b2_neutral_pair():
    t = Tournament.from_outcomes(RootSystem("B", 2), {neg(2, 1): 1, pos(2, 1): 1, half(1): 1, half(2): 0})
    assert score(t).to_strings() == ["1/2", "1/2"]
    gens = find_generators(t)
    assert len(gens) == 1
    assert gens[0].support == frozenset({neg(2, 1), half(1), half(2)})
    assert gens[0].label == "pair-competitive"


def test_c2_clover_has_multiplicity_two():
    t = Tournament.from_outcomes(RootSystem("C", 2), {neg(2, 1): 1, pos(2, 1): 1, loop(2): 0})
    nbrs = interchange_neighbors(t)
    assert any(mult == 2 for _, mult in nbrs)
    assert count_generators(t).clovers == 1


@pytest.mark.parametrize("family,n", SMALL)
def test_template_scan_matches_brute_force(family, n):
    system = RootSystem(family, n)
    rng = random.Random(family + str(n))
    codes = range(2 ** system.num_positive_roots) if system.num_positive_roots <= 9 else [
        rng.getrandbits(system.num_positive_roots) for _ in range(300)
    ]
    for code in codes:
        t = Tournament.from_code(system, code)
        assert {g.support for g in find_generators(t)} == brute_neutral_triples(t)


@pytest.mark.parametrize(
    "family,n,values,expected",
    [
        ("D", 3, [1, 0, 0], 2),
        ("B", 2, ["1/2", "1/2"], 1),
        ("A", 3, [0, 0, 0], 1),
        ("A", 4, ["-1/2", "-1/2", "1/2", "1/2"], 2),
        ("D", 5, [3, -2, -1, 0, 0], 8),
    ],
)
def test_degree_examples(family, n, values, expected):
    assert degree(RootSystem(family, n), ScoreVector.from_values(values)) == expected


@pytest.mark.parametrize("family,n", SMALL)
def test_degree_of_weyl_vector_is_zero(family, n):
    system = RootSystem(family, n)
    assert degree(system, standard_score(system)) == 0


def test_degree_rejects_invalid_scores():
    with pytest.raises(InvalidScoreError):
        degree(RootSystem("D", 3), ScoreVector.from_values([0, 0, 0]))


@pytest.mark.parametrize("family,n", SMALL)
def test_degree_equals_weighted_count_on_every_fiber(family, n):
    system = RootSystem(family, n)
    top = norm2(standard_score(system))
    for s, codes in fibers(system).items():
        d = degree(system, s)
        assert 2 * d == top - norm2(s)
        for code in codes[:50]:
            assert count_generators(Tournament.from_code(system, int(code))).weighted_total == d


@pytest.mark.parametrize("family,n", SMALL)
def test_batch_counts_match_per_tournament_counts(family, n):
    system = RootSystem(family, n)
    codes = all_codes(system)[:512]
    batch = weighted_counts(system, codes)
    for code, w in zip(codes, batch):
        assert count_generators(Tournament.from_code(system, int(code))).weighted_total == w


@pytest.mark.parametrize("family", "BCD")
def test_balanced_triangle_orientation(family):
    # the two collaborative games split one win, one loss
    system = RootSystem(family, 4)
    rng = random.Random(family)
    for _ in range(300):
        t = random_tournament(system, rng)
        for g in find_generators(t):
            if g.kind is GeneratorKind.BALANCED:
                pos_edges = [e for e in g.support if e.kind.value == "pos"]
                assert sorted(t[e] for e in pos_edges) == [0, 1]
            total = sum(oriented_root(t, e) for e in g.support)
            assert not np.any(total)


@pytest.mark.parametrize("family", "BC")
def test_at_most_one_pair_or_clover_per_pair_of_players(family):
    system = RootSystem(family, 4)
    rng = random.Random(family)
    for _ in range(300):
        t = random_tournament(system, rng)
        per_pair = Counter(
            frozenset(p for e in g.support for p in e.players)
            for g in find_generators(t)
            if g.kind in (GeneratorKind.PAIR, GeneratorKind.CLOVER)
        )
        assert all(c <= 1 for c in per_pair.values())


@pytest.mark.parametrize("family,n,counter", [("D", 4, ("cyclic", "balanced")), ("B", 3, ("cyclic", "balanced", "pairs"))])
def test_per_family_count_identities(family, n, counter):
    system = RootSystem(family, n)
    top = norm2(standard_score(system))
    for code in range(0, 2 ** system.num_positive_roots, 7):
        t = Tournament.from_code(system, code)
        c = count_generators(t).to_json()
        assert 2 * sum(c[k] for k in counter) == top - norm2(score(t))


def test_c_count_identity_doubles_clovers():
    system = RootSystem("C", 3)
    top = norm2(standard_score(system))
    for code in range(2 ** 9):
        t = Tournament.from_code(system, code)
        c = count_generators(t)
        assert 2 * (c.cyclic + c.balanced + 2 * c.clovers) == top - norm2(score(t))


def test_clover_labels():
    system = RootSystem("C", 2)
    labels = Counter(g.label for code in range(16) for g in find_generators(Tournament.from_code(system, code)))
    assert set(labels) == {"clover-at-net-winner", "clover-at-net-loser"}


def test_pair_labels():
    system = RootSystem("B", 2)
    labels = {g.label for code in range(16) for g in find_generators(Tournament.from_code(system, code))}
    assert labels == {"pair-competitive", "pair-collaborative-won", "pair-collaborative-lost"}


def test_interchange_graph_d3_example():
    system = RootSystem("D", 3)
    graph = build_interchange_graph(system, ScoreVector.from_values([1, 0, 0]))
    assert graph.is_regular(2)
    assert graph.is_connected()
    for e in graph.edges:
        assert score(graph.vertices[e.u]) == score(graph.vertices[e.v])


def test_interchange_graph_of_weyl_vector_is_single_vertex():
    system = RootSystem("C", 3)
    graph = build_interchange_graph(system, standard_score(system))
    assert len(graph.vertices) == 1 and graph.edges == []


def test_interchange_graph_a4_example():
    system = RootSystem("A", 4)
    s = ScoreVector.from_values(["-1/2", "-1/2", "1/2", "1/2"])
    graph = build_interchange_graph(system, s)
    assert graph.is_regular(2)


@pytest.mark.parametrize("family,n", [("B", 3), ("C", 3), ("D", 4)])
def test_every_fiber_graph_regular(family, n):
    system = RootSystem(family, n)
    for s in fibers(system):
        graph = build_interchange_graph(system, s)
        assert graph.is_regular(degree(system, s))


def test_dot_output_repeats_clover_edges():
    system = RootSystem("C", 2)
    t = Tournament.from_outcomes(system, {neg(2, 1): 1, pos(2, 1): 1, loop(2): 0})
    graph = build_interchange_graph(system, score(t))
    doubles = [e for e in graph.edges if e.multiplicity == 2]
    assert doubles
    dot = graph.to_dot()
    e = doubles[0]
    assert dot.count(f"  {e.u} -- {e.v} ") == 2


def test_graph_guard():
    with pytest.raises(EnumerationGuardError):
        build_interchange_graph(RootSystem("B", 5), standard_score(RootSystem("B", 5)))
