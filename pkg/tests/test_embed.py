import random
from fractions import Fraction
from math import comb

import pytest

from coxtour import (
    PreconditionError,
    RootSystem,
    Tournament,
    count_generators,
    embed,
    embed_B,
    embed_C,
    embed_D,
    neg,
    score,
    theta,
)
from coxtour.embed import cyclic_triangle_count, is_antisymmetric, theta_closed_form
from coxtour.landau import win_vector


def triangles_from_wins(host):
    """Classical count: C(N,3) minus the transitive triples at each apex."""
    return comb(host.system.n, 3) - sum(comb(w, 2) for w in win_vector(host))


def expected_host_score(t):
    s = list(score(t).values)
    tail = [] if t.system.family.value == "B" else [Fraction(0)]
    return tuple(s + [-v for v in s] + tail)


def test_theta_examples():
    assert theta(RootSystem("B", 2)) == Fraction(5, 4)
    assert theta(RootSystem("A", 4)) == Fraction(5, 2) == 2 * theta(RootSystem("B", 2))
    assert theta(RootSystem("C", 2)) == Fraction(5, 2)
    assert 2 * theta(RootSystem("C", 2)) == theta(RootSystem("A", 5)) == 5
    assert theta(RootSystem("D", 3)) == Fraction(5, 2)
    assert theta(RootSystem("A", 7)) - 9 == 2 * theta(RootSystem("D", 3))


@pytest.mark.parametrize("n", range(1, 51))
def test_theta_identities(n):
    a = lambda m: theta(RootSystem("A", m))  # noqa: E731
    assert 2 * theta(RootSystem("B", n)) == a(2 * n)
    assert 2 * theta(RootSystem("C", n)) == a(2 * n + 1)
    if n >= 2:
        assert 2 * theta(RootSystem("D", n)) == a(2 * n + 1) - n * n


@pytest.mark.parametrize("family", "ABCD")
@pytest.mark.parametrize("n", [2, 3, 7, 20])
def test_theta_closed_forms(family, n):
    system = RootSystem(family, n)
    assert theta(system) == theta_closed_form(system)


def test_all_wins_b2_host():
    emb = embed_B(Tournament.all_wins(RootSystem("B", 2)))
    assert score(emb.host).to_strings() == ["1/2", "3/2", "-1/2", "-3/2"]
    assert cyclic_triangle_count(emb.host) == 0


def test_all_wins_d3_host_has_nine_triangles():
    emb = embed_D(Tournament.all_wins(RootSystem("D", 3)))
    assert score(emb.host).to_strings() == ["0", "1", "2", "0", "-1", "-2", "0"]
    assert cyclic_triangle_count(emb.host) == 9 == triangles_from_wins(emb.host)


def test_cyclic_d3_host_has_eleven_triangles():
    t = Tournament.from_outcomes(RootSystem("D", 3), {neg(2, 1): 0, neg(3, 1): 1, neg(3, 2): 0})
    assert score(t).to_strings() == ["1", "1", "1"]
    assert cyclic_triangle_count(embed_D(t).host) == 11


def test_all_wins_c2_host():
    emb = embed_C(Tournament.all_wins(RootSystem("C", 2)))
    assert score(emb.host).to_strings() == ["1", "2", "-1", "-2", "0"]
    assert cyclic_triangle_count(emb.host) == 0


@pytest.mark.parametrize("family,n", [("B", 1), ("B", 2), ("B", 3), ("C", 1), ("C", 2), ("C", 3), ("D", 2), ("D", 3)])
def test_embedding_laws_exhaustive(family, n):
    system = RootSystem(family, n)
    for code in range(2 ** system.num_positive_roots):
        t = Tournament.from_code(system, code)
        emb = embed(t)
        assert score(emb.host).values == expected_host_score(t)
        host_triangles = cyclic_triangle_count(emb.host)
        assert host_triangles == triangles_from_wins(emb.host)
        c = count_generators(t)
        if family == "B":
            assert is_antisymmetric(emb)
            assert host_triangles == 2 * c.weighted_total
        elif family == "C":
            assert host_triangles == 2 * (c.cyclic + c.balanced + 2 * c.clovers)
        else:
            assert host_triangles == 2 * (c.cyclic + c.balanced) + n * n


def test_player_map_and_json():
    emb = embed_D(Tournament.all_wins(RootSystem("D", 2)))
    out = emb.to_json()
    assert out["playerMap"] == [1, 2, -1, -2, 5]
    assert out["host"]["n"] == 5
    assert out["host"]["score"][-1] == "0"


def test_embed_rejects_wrong_family():
    with pytest.raises(PreconditionError):
        embed(Tournament.all_wins(RootSystem("A", 3)))
    with pytest.raises(PreconditionError):
        embed_B(Tournament.all_wins(RootSystem("C", 2)))


def test_b4_hosts_are_antisymmetric():
    rng = random.Random(3)
    system = RootSystem("B", 4)
    for _ in range(50):
        t = Tournament(system, tuple(rng.getrandbits(1) for _ in range(system.num_positive_roots)))
        assert is_antisymmetric(embed_B(t))
