from itertools import product

import pytest

from coxtour import EnumerationGuardError, PreconditionError, RootSystem, ScoreVector, Tournament, score
from coxtour.landau import majorize
from coxtour.oracle import (
    achieved_scores,
    achieved_win_vectors,
    enumerate_tournaments,
    fiber,
    fibers,
    lattice_score_set,
    permutahedron_points,
    prefix_partition,
)


@pytest.mark.parametrize("family,n,count", [("D", 3, 64), ("B", 2, 16), ("A", 3, 8)])
def test_enumeration_counts(family, n, count):
    ts = list(enumerate_tournaments(RootSystem(family, n)))
    assert len(ts) == count
    assert len({t.bits for t in ts}) == count
    assert [t.bits for t in ts] == sorted(t.bits for t in ts)


def test_prefix_blocks_partition_enumeration():
    system = RootSystem("C", 2)
    blocks = [t.bits for p in prefix_partition(system, 2) for t in enumerate_tournaments(system, prefix=p)]
    assert blocks == [t.bits for t in enumerate_tournaments(system)]
    with pytest.raises(PreconditionError):
        list(enumerate_tournaments(system, prefix="2"))


def test_guard():
    with pytest.raises(EnumerationGuardError):
        next(enumerate_tournaments(RootSystem("D", 6)))


def test_a3_win_vectors():
    assert achieved_win_vectors(3) == {(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0), (1, 1, 1)}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_permutahedron_equals_win_vectors(n):
    assert permutahedron_points(n) == achieved_win_vectors(n)


def test_permutahedron_small_cases():
    assert permutahedron_points(2) == {(0, 1), (1, 0)}
    assert len(permutahedron_points(3)) == 7
    assert [len(permutahedron_points(n)) for n in range(1, 6)] == [1, 2, 7, 38, 291]


def test_permutahedron_against_definition():
    n = 4
    box = {w for w in product(range(n), repeat=n) if majorize(list(w), list(range(n)))}
    assert permutahedron_points(n) == box


@pytest.mark.parametrize("family,n", [("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 3), ("D", 4), ("A", 4)])
def test_lattice_set_equals_achieved(family, n):
    system = RootSystem(family, n)
    assert lattice_score_set(system) == achieved_scores(system)


def test_lattice_set_d3_membership():
    lattice = lattice_score_set(RootSystem("D", 3))
    assert ScoreVector.from_values([1, 0, 0]) in lattice
    assert ScoreVector.from_values([0, 0, 0]) not in lattice


def test_achieved_scores_against_pure_python():
    system = RootSystem("B", 3)
    assert achieved_scores(system) == {score(t) for t in enumerate_tournaments(system)}


@pytest.mark.parametrize("family,n", [("B", 3), ("C", 3), ("D", 4)])
def test_fibers_partition(family, n):
    system = RootSystem(family, n)
    parts = fibers(system)
    assert sum(len(c) for c in parts.values()) == 2 ** system.num_positive_roots
    s, codes = next(iter(parts.items()))
    assert [t.code for t in fiber(system, s)] == sorted(int(c) for c in codes)
    assert all(score(Tournament.from_code(system, int(c))) == s for c in codes)
