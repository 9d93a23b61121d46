"""Score-sequence classification and witness construction.

Membership test: ``|s|`` weakly sub-majorized by the Weyl vector plus a
lattice and a sum-parity condition depending on the family.  Construction
for C and D runs::

    |s| --lift--> z --parity--> z' --Landau--> classical tournament
        --> D/C tournament with score z' --even jumps--> |s| --signs--> s

and type B is reduced to type D after fixing the half-edge games.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Any, Sequence

from .core import (
    EdgeKind,
    Family,
    RootSystem,
    ScoreVector,
    Tournament,
    half,
    lattice_parity,
    loop,
    neg,
    pos,
    positive_roots,
    score,
    standard_score,
    wins,
)
from .errors import InvalidScoreError, InvariantViolation, PreconditionError

STAGES = ("lift", "parity", "signs", "evenJumps", "baseA", "baseD", "baseC", "halfEdges")


# ---------------------------------------------------------------------------
# majorization


def _check_lengths(x: Sequence[int], y: Sequence[int]) -> None:
    if len(x) != len(y):
        raise PreconditionError(f"length mismatch: {len(x)} vs {len(y)}")


def weak_submajorize(x: Sequence[int], y: Sequence[int]) -> bool:
    """True iff every prefix sum of ``sorted(x, desc)`` is at most that of ``y``."""
    _check_lengths(x, y)
    sx = sy = 0
    for a, b in zip(sorted(x, reverse=True), sorted(y, reverse=True)):
        sx += a
        sy += b
        if sx > sy:
            return False
    return True


def majorize(x: Sequence[int], y: Sequence[int]) -> bool:
    """``x`` is majorized by ``y``: weakly sub-majorized with equal totals."""
    return weak_submajorize(x, y) and sum(x) == sum(y)


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class ScoreVerdict:
    valid: bool
    reason: str | None
    conditions: dict[str, bool]

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"valid": self.valid}
        if self.reason is not None:
            out["reason"] = self.reason
        out["conditions"] = dict(self.conditions)
        return out


def check_score_sequence(system: RootSystem, s: ScoreVector) -> ScoreVerdict:
    """Evaluate every membership condition; never raises on bad scores.

    ``reason`` names the first failing condition in the order
    lattice, parity, (sub)majorization.
    """
    if s.n != system.n:
        return ScoreVerdict(False, "length", {"length": False})
    conditions: dict[str, bool] = {}
    want = lattice_parity(system)
    conditions["lattice"] = all(d % 2 == want for d in s.doubled)
    if system.family is Family.A:
        # win vector w = s + (n-1)/2 must be majorized by (0, 1, ..., n-1)
        w2 = [d + system.n - 1 for d in s.doubled]
        conditions["majorization"] = conditions["lattice"] and majorize(
            [v // 2 for v in w2], list(range(system.n))
        )
    else:
        if system.family is not Family.B:
            target = sum(standard_score(system).doubled) // 2
            total = sum(s.doubled) // 2 if conditions["lattice"] else None
            conditions["parity"] = total is not None and (total - target) % 2 == 0
        conditions["submajorization"] = weak_submajorize(
            [abs(d) for d in s.doubled], list(standard_score(system).doubled)
        )
    reason = next((name for name, ok in conditions.items() if not ok), None)
    return ScoreVerdict(reason is None, reason, conditions)


def is_score_sequence(system: RootSystem, s: ScoreVector) -> bool:
    """Membership of ``s`` in the score set of the complete Phi-graph.

    Raises :class:`InvalidScoreError` if ``s`` has the wrong length or does
    not lie on the family's half-integer/integer lattice.
    """
    verdict = check_score_sequence(system, s)
    if verdict.reason in ("length", "lattice"):
        raise InvalidScoreError(verdict.reason, f"{s} is not a well-formed {system} score vector")
    return verdict.valid


# ---------------------------------------------------------------------------
# lemma chain


def lift_to_majorization(x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
    """Raise entries of ``x`` until it is majorized by ``y``.

    Repeatedly increments the smallest coordinate (leftmost on ties) so the
    result ``z`` satisfies ``x <= z`` entrywise and ``z`` majorized by ``y``.
    """
    if not weak_submajorize(x, y):
        raise PreconditionError(f"{tuple(x)} is not weakly sub-majorized by {tuple(y)}")
    z = list(x)
    for _ in range(sum(y) - sum(z)):
        k = z.index(min(z))
        z[k] += 1
    return tuple(z)


def match_parity(x: Sequence[int], z: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
    """Adjust ``z`` by +-1 so that each entry has the parity of ``x``.

    With ``z`` sorted descending (stable), the mismatched positions get
    -1, +1, -1, +1, ... in order.  Total is preserved.  This repair keeps
    ``z'`` majorized by ``y`` when ``y`` is a unit staircase such as a Weyl
    vector; for arbitrary ``y`` it can fail and a PreconditionError is raised.
    """
    _check_lengths(x, z)
    _check_lengths(z, y)
    if any(a > b for a, b in zip(x, z)) or not majorize(z, y):
        raise PreconditionError(f"need x <= z majorized by y, got x={tuple(x)}, z={tuple(z)}, y={tuple(y)}")
    if (sum(x) - sum(y)) % 2:
        raise PreconditionError("sum(x) and sum(y) differ in parity")
    order = sorted(range(len(z)), key=lambda k: -z[k])
    mismatched = [k for k in order if (x[k] - z[k]) % 2]
    zp = list(z)
    for rank, k in enumerate(mismatched):
        zp[k] += -1 if rank % 2 == 0 else 1
    if any(a > b for a, b in zip(x, zp)) or not majorize(zp, y):
        raise PreconditionError(f"parity repair of z={tuple(z)} leaves the polytope of y={tuple(y)}")
    return tuple(zp)


def _require_cd(t: Tournament, what: str) -> None:
    if t.system.family not in (Family.C, Family.D):
        raise PreconditionError(f"{what} is defined for families C and D, not {t.system.family.value}")


def _flip(outcomes: list[int], index: dict, edges) -> None:
    for e in edges:
        k = index[e]
        outcomes[k] = 1 - outcomes[k]


def _pair_edges(i: int, j: int):
    a, b = max(i, j), min(i, j)
    return (neg(a, b), pos(a, b))


def negate_players(t: Tournament, players: Sequence[int]) -> Tournament:
    """Negate the scores of ``players`` and leave everyone else unchanged.

    For each listed player ``i``, reverses both games against every opponent
    that nets zero from ``i`` and, in type C, the loop of ``i``.
    """
    _require_cd(t, "negate_players")
    n = t.system.n
    index = {e: k for k, e in enumerate(positive_roots(t.system))}
    outcomes = list(t.outcomes)
    for i in sorted(set(players)):
        current = Tournament(t.system, tuple(outcomes))
        for j in range(1, n + 1):
            if j != i and wins(current, EdgeKind.NEG, i, j) == wins(current, EdgeKind.POS, i, j):
                _flip(outcomes, index, _pair_edges(i, j))
        if t.system.family is Family.C:
            _flip(outcomes, index, [loop(i)])
    return Tournament(t.system, tuple(outcomes))


def apply_signs(t: Tournament, s: ScoreVector) -> Tournament:
    """Turn a tournament with score ``|s|`` into one with score ``s``."""
    _require_cd(t, "apply_signs")
    if score(t) != abs(s):
        raise PreconditionError(f"tournament score {score(t)} is not |s| = {abs(s)}")
    return negate_players(t, [i for i, d in enumerate(s.doubled, start=1) if d < 0])


def reduce_even_jumps(t: Tournament, s: ScoreVector) -> Tournament:
    """Lower each player's score by an even amount to reach ``s``.

    Player ``i`` reverses both games against the ``(z_i - s_i)/2`` smallest
    opponents it beats twice (its loop counts as a last opponent in type C).
    """
    _require_cd(t, "reduce_even_jumps")
    z = score(t)
    if s.n != z.n:
        raise PreconditionError("length mismatch")
    for a, b in zip(s.doubled, z.doubled):
        if not 0 <= a <= b or (b - a) % 4:
            raise PreconditionError(f"need 0 <= s <= z with s = z (mod 2); s={s}, z={z}")
    n = t.system.n
    index = {e: k for k, e in enumerate(positive_roots(t.system))}
    outcomes = list(t.outcomes)
    for i in range(1, n + 1):
        need = (z.doubled[i - 1] - s.doubled[i - 1]) // 4
        if not need:
            continue
        current = Tournament(t.system, tuple(outcomes))
        gains = [
            j for j in range(1, n + 1)
            if j != i and wins(current, EdgeKind.NEG, i, j) and wins(current, EdgeKind.POS, i, j)
        ]
        if t.system.family is Family.C and current[loop(i)]:
            gains.append(None)
        if len(gains) < need:
            raise InvariantViolation(f"player {i} gains from {len(gains)} opponents, needs {need}")
        for j in gains[:need]:
            _flip(outcomes, index, [loop(i)] if j is None else _pair_edges(i, j))
    return Tournament(t.system, tuple(outcomes))


def construct_A_win(w: Sequence[int]) -> Tournament:
    """Classical tournament whose win vector is exactly ``w``.

    Havel-Hakimi style: the remaining player with the largest requirement
    loses to the others with the largest requirements and beats the rest.
    """
    n = len(w)
    if not majorize(list(w), list(range(n))):
        raise InvalidScoreError("majorization", f"{tuple(w)} is not majorized by {tuple(range(n))}")
    need = {p: int(w[p - 1]) for p in range(1, n + 1)}
    beats: set[tuple[int, int]] = set()
    while need:
        v = max(need, key=lambda p: (need[p], -p))
        others = sorted((p for p in need if p != v), key=lambda p: (-need[p], p))
        losses = len(others) - need[v]
        if not 0 <= losses <= len(others):
            raise InvariantViolation(f"player {v} needs {need[v]} wins among {len(others)} opponents")
        for p in others[:losses]:
            beats.add((p, v))
            need[p] -= 1
        for p in others[losses:]:
            beats.add((v, p))
        del need[v]
    system = RootSystem(Family.A, n)
    t = Tournament(system, tuple(1 if (e.i, e.j) in beats else 0 for e in positive_roots(system)))
    got = win_vector(t)
    if got != tuple(w):
        raise InvariantViolation(f"constructed win vector {got} != {tuple(w)}")
    return t


def win_vector(t: Tournament) -> tuple[int, ...]:
    """Number of wins of each player in a classical (type A) tournament."""
    if t.system.family is not Family.A:
        raise PreconditionError("win vectors are defined for type A")
    n = t.system.n
    return tuple((d + n - 1) // 2 for d in score(t).doubled)


# ---------------------------------------------------------------------------
# full construction


@dataclass
class ConstructionTrace:
    """Ordered record of the intermediates produced by :func:`construct`."""

    stages: list[tuple[str, Any]] = field(default_factory=list)

    def record(self, name: str, value: Any) -> None:
        if name not in STAGES:
            raise ValueError(f"unknown stage {name!r}")
        self.stages.append((name, value))

    def __getitem__(self, name: str) -> Any:
        for stage, value in reversed(self.stages):
            if stage == name:
                return value
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(stage == name for stage, _ in self.stages)

    @property
    def names(self) -> list[str]:
        return [stage for stage, _ in self.stages]

    def to_json(self) -> list[dict[str, Any]]:
        out = []
        for name, value in self.stages:
            if isinstance(value, Tournament):
                out.append({
                    "stage": name,
                    "tournament": {"family": value.system.family.value, "n": value.system.n, "bits": value.bits},
                    "score": score(value).to_strings(),
                })
            else:
                out.append({"stage": name, "vector": [str(v) for v in value]})
        return out


def _d_from_classical(a: Tournament, family: Family) -> Tournament:
    """Competitive games copied from ``a``, collaborative games all won."""
    system = RootSystem(family, a.system.n)
    outcomes = {}
    for e in positive_roots(system):
        if e.kind is EdgeKind.NEG:
            outcomes[e] = a[e]
        else:
            outcomes[e] = 1
    return Tournament.from_outcomes(system, outcomes)


def _construct_cd(system: RootSystem, s: ScoreVector, trace: ConstructionTrace) -> Tournament:
    x = [abs(v) for v in s.as_ints()]
    y = list(standard_score(system).as_ints())
    z = lift_to_majorization(x, y)
    trace.record("lift", z)
    zp = match_parity(x, z, y)
    trace.record("parity", zp)
    if system.family is Family.D:
        base_a = construct_A_win(zp)
        trace.record("baseA", base_a)
        base = _d_from_classical(base_a, Family.D)
        trace.record("baseD", base)
    else:
        base_a = construct_A_win([v - 1 for v in zp])
        trace.record("baseA", base_a)
        base = _d_from_classical(base_a, Family.C)
        trace.record("baseC", base)
    if score(base).as_ints() != zp:
        raise InvariantViolation(f"base tournament scores {score(base)}, expected {zp}")
    reduced = reduce_even_jumps(base, ScoreVector.from_values(x))
    trace.record("evenJumps", reduced)
    signed = apply_signs(reduced, s)
    trace.record("signs", signed)
    return signed


def _construct_b(system: RootSystem, s: ScoreVector, trace: ConstructionTrace) -> Tournament:
    n = system.n
    eps = [1 if d > 0 else -1 for d in s.doubled]
    order = sorted(range(n), key=lambda k: (abs(s.doubled[k]), k))
    target2 = [d - e for d, e in zip(s.doubled, eps)]
    half_wins = [1 if e > 0 else 0 for e in eps]
    if (sum(target2) // 2 - comb(n, 2)) % 2:
        first = order[0]
        target2[first] = s.doubled[first] + eps[first]
        half_wins[first] = 1 - half_wins[first]
    target = tuple(v // 2 for v in target2)
    trace.record("halfEdges", target)
    outcomes = {half(i): half_wins[i - 1] for i in range(1, n + 1)}
    if n >= 2:
        d_part = _construct_cd(RootSystem(Family.D, n), ScoreVector.from_values(target), trace)
        for e, w in zip(d_part.edges(), d_part.outcomes):
            outcomes[e] = w
    return Tournament.from_outcomes(system, outcomes)


def construct(system: RootSystem, s: ScoreVector) -> tuple[Tournament, ConstructionTrace]:
    """Build a tournament on the complete Phi-graph with score ``s``.

    Raises :class:`InvalidScoreError` naming the violated condition when
    ``s`` is not a score sequence.  The output is checked before returning.
    """
    verdict = check_score_sequence(system, s)
    if not verdict.valid:
        raise InvalidScoreError(verdict.reason, f"{s} is not a {system} score sequence ({verdict.reason})")
    trace = ConstructionTrace()
    if system.family is Family.A:
        t = construct_A_win([(d + system.n - 1) // 2 for d in s.doubled])
        trace.record("baseA", t)
    elif system.family is Family.B:
        t = _construct_b(system, s, trace)
    else:
        t = _construct_cd(system, s, trace)
    if score(t) != s:
        raise InvariantViolation(f"construct({system}, {s}) produced score {score(t)}")
    return t, trace
