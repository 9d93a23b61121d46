"""Embeddings of B, C and D tournaments into classical tournaments.

Host players are numbered ``i -> i``, ``-i -> n + i`` and, for C and D, the
extra player ``2n + 1``.  The host score is ``(s, -s)`` or ``(s, -s, 0)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any

from .core import (
    EdgeKind,
    Family,
    RootSystem,
    SignedPermutation,
    Tournament,
    apply_signed_permutation,
    positive_roots,
    weyl_norm2_doubled,
)
from .errors import PreconditionError
from .jsonio import tournament_to_json


def theta(system: RootSystem) -> Fraction:
    """Half the squared length of the Weyl vector."""
    return Fraction(weyl_norm2_doubled(system.family, system.n), 8)


def theta_closed_form(system: RootSystem) -> Fraction:
    n = system.n
    if system.family is Family.A:
        return Fraction(n * (n - 1) * (n + 1), 24)
    if system.family is Family.B:
        return Fraction(n * (2 * n - 1) * (2 * n + 1), 24)
    if system.family is Family.C:
        return Fraction(n * (n + 1) * (2 * n + 1), 12)
    return Fraction(n * (n - 1) * (2 * n - 1), 12)


@dataclass(frozen=True)
class EmbeddedTournament:
    """Classical host tournament plus the signed label of each host player."""

    source: Tournament
    host: Tournament
    player_map: tuple[int, ...]

    def to_json(self) -> dict[str, Any]:
        return {
            "source": tournament_to_json(self.source),
            "host": tournament_to_json(self.host, include_score=True),
            "playerMap": list(self.player_map),
        }


class _Host:
    def __init__(self, n: int, extra: bool):
        self.n = n
        self.size = 2 * n + (1 if extra else 0)
        self.extra = 2 * n + 1
        self.result: dict[tuple[int, int], int] = {}

    def slot(self, label: int) -> int:
        return label if label > 0 else self.n - label

    def beats(self, winner: int, loser: int) -> None:
        """Record a host game between signed labels (or the extra player)."""
        a = winner if winner == self.extra else self.slot(winner)
        b = loser if loser == self.extra else self.slot(loser)
        key = (max(a, b), min(a, b))
        if key in self.result:
            raise PreconditionError(f"host game {key} assigned twice")
        self.result[key] = 1 if a > b else 0

    def tournament(self) -> Tournament:
        system = RootSystem(Family.A, self.size)
        return Tournament(system, tuple(self.result[(e.i, e.j)] for e in positive_roots(system)))

    def player_map(self) -> tuple[int, ...]:
        labels = list(range(1, self.n + 1)) + [-i for i in range(1, self.n + 1)]
        if self.size > 2 * self.n:
            labels.append(self.extra)
        return tuple(labels)


def _embed_pair_games(t: Tournament, host: _Host) -> None:
    for e, w in zip(positive_roots(t.system), t.outcomes):
        i, j = e.i, e.j
        if e.kind is EdgeKind.NEG:
            if w:
                host.beats(i, j)
                host.beats(-j, -i)
            else:
                host.beats(j, i)
                host.beats(-i, -j)
        elif e.kind is EdgeKind.POS:
            if w:
                host.beats(i, -j)
                host.beats(j, -i)
            else:
                host.beats(-j, i)
                host.beats(-i, j)


def _require(t: Tournament, family: Family) -> None:
    if t.system.family is not family:
        raise PreconditionError(f"expected a {family.value}_n tournament, got {t.system}")


def embed_B(t: Tournament) -> EmbeddedTournament:
    """Antisymmetric host on ``2n`` players; the half edge of ``i`` becomes ``i`` vs ``-i``."""
    _require(t, Family.B)
    host = _Host(t.system.n, extra=False)
    _embed_pair_games(t, host)
    for e, w in zip(positive_roots(t.system), t.outcomes):
        if e.kind is EdgeKind.HALF:
            host.beats(e.i, -e.i) if w else host.beats(-e.i, e.i)
    return EmbeddedTournament(t, host.tournament(), host.player_map())


def embed_D(t: Tournament) -> EmbeddedTournament:
    """Host on ``2n + 1`` players with a cyclic triangle ``i -> -i -> x -> i`` per player."""
    _require(t, Family.D)
    n = t.system.n
    host = _Host(n, extra=True)
    _embed_pair_games(t, host)
    for i in range(1, n + 1):
        host.beats(i, -i)
        host.beats(-i, host.extra)
        host.beats(host.extra, i)
    return EmbeddedTournament(t, host.tournament(), host.player_map())


def embed_C(t: Tournament) -> EmbeddedTournament:
    """Host on ``2n + 1`` players; a won loop at ``i`` becomes ``i -> -i``, ``i -> x``, ``x -> -i``."""
    _require(t, Family.C)
    host = _Host(t.system.n, extra=True)
    _embed_pair_games(t, host)
    for e, w in zip(positive_roots(t.system), t.outcomes):
        if e.kind is EdgeKind.LOOP:
            i, x = e.i, host.extra
            if w:
                host.beats(i, -i)
                host.beats(i, x)
                host.beats(x, -i)
            else:
                host.beats(-i, i)
                host.beats(x, i)
                host.beats(-i, x)
    return EmbeddedTournament(t, host.tournament(), host.player_map())


def embed(t: Tournament) -> EmbeddedTournament:
    family = t.system.family
    if family is Family.B:
        return embed_B(t)
    if family is Family.C:
        return embed_C(t)
    if family is Family.D:
        return embed_D(t)
    raise PreconditionError("type A tournaments are already classical")


def cyclic_triangle_count(t: Tournament) -> int:
    """Number of cyclic triangles in a classical tournament, by scanning triples."""
    if t.system.family is not Family.A:
        raise PreconditionError("cyclic_triangle_count expects a type A tournament")
    n = t.system.n
    beats = [[False] * (n + 1) for _ in range(n + 1)]
    for e, w in zip(positive_roots(t.system), t.outcomes):
        if w:
            beats[e.i][e.j] = True
        else:
            beats[e.j][e.i] = True
    count = 0
    for a, b, c in combinations(range(1, n + 1), 3):
        if (beats[a][b] and beats[b][c] and beats[c][a]) or (beats[b][a] and beats[c][b] and beats[a][c]):
            count += 1
    return count


def is_antisymmetric(emb: EmbeddedTournament) -> bool:
    """Swapping ``i <-> -i`` and reversing every game gives back the host."""
    n = emb.source.system.n
    swap = SignedPermutation(tuple(list(range(n + 1, 2 * n + 1)) + list(range(1, n + 1))))
    relabeled = apply_signed_permutation(emb.host, swap)
    return tuple(1 - w for w in relabeled.outcomes) == emb.host.outcomes
