"""Neutral generators, the degree formula and Coxeter interchange graphs.

A generator copy is a three-edge set whose oriented roots sum to zero.
Four support shapes occur:

* cyclic triangle: ``neg`` on all three pairs of a triple;
* balanced triangle: one ``neg`` and two ``pos`` on a triple;
* neutral pair (B): ``neg`` or ``pos`` on a pair plus both half edges;
* neutral clover (C): ``neg``, ``pos`` and one loop on a pair, weight 2.

Reversing any copy preserves the score, and the weighted number of copies in
a tournament equals ``(|s_Phi|^2 - |s|^2) / 2``.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any

import numpy as np

from . import _kernels
from .core import (
    EdgeKind,
    Family,
    RootSystem,
    ScoreVector,
    SignedEdge,
    Tournament,
    edge_index,
    half,
    loop,
    neg,
    pos,
    reverse,
    root_matrix,
    score,
    standard_score,
)
from .errors import InvalidScoreError, InvariantViolation
from .landau import check_score_sequence
from .oracle import check_guard, fiber


class GeneratorKind(str, enum.Enum):
    CYCLIC = "cyclic_triangle"
    BALANCED = "balanced_triangle"
    PAIR = "neutral_pair"
    CLOVER = "neutral_clover"


WEIGHTS = {GeneratorKind.CYCLIC: 1, GeneratorKind.BALANCED: 1, GeneratorKind.PAIR: 1, GeneratorKind.CLOVER: 2}


@dataclass(frozen=True)
class Template:
    kind: GeneratorKind
    edges: tuple[SignedEdge, SignedEdge, SignedEdge]


@dataclass(frozen=True)
class GeneratorCopy:
    kind: GeneratorKind
    support: frozenset[SignedEdge]
    label: str

    @property
    def weight(self) -> int:
        return WEIGHTS[self.kind]


@dataclass(frozen=True)
class GeneratorCounts:
    cyclic: int = 0
    balanced: int = 0
    pairs: int = 0
    clovers: int = 0

    @property
    def weighted_total(self) -> int:
        return self.cyclic + self.balanced + self.pairs + 2 * self.clovers

    def to_json(self) -> dict[str, int]:
        return {
            "cyclic": self.cyclic,
            "balanced": self.balanced,
            "pairs": self.pairs,
            "clovers": self.clovers,
            "weightedTotal": self.weighted_total,
        }


@lru_cache(maxsize=None)
def generator_templates(system: RootSystem) -> tuple[Template, ...]:
    """Every candidate generator support of ``system``."""
    n = system.n
    out = []
    for k, j, i in combinations(range(1, n + 1), 3):
        out.append(Template(GeneratorKind.CYCLIC, (neg(i, j), neg(i, k), neg(j, k))))
        if system.family is not Family.A:
            out.append(Template(GeneratorKind.BALANCED, (neg(i, j), pos(i, k), pos(j, k))))
            out.append(Template(GeneratorKind.BALANCED, (pos(i, j), neg(i, k), pos(j, k))))
            out.append(Template(GeneratorKind.BALANCED, (pos(i, j), pos(i, k), neg(j, k))))
    for j, i in combinations(range(1, n + 1), 2):
        if system.family is Family.B:
            out.append(Template(GeneratorKind.PAIR, (neg(i, j), half(i), half(j))))
            out.append(Template(GeneratorKind.PAIR, (pos(i, j), half(i), half(j))))
        elif system.family is Family.C:
            out.append(Template(GeneratorKind.CLOVER, (neg(i, j), pos(i, j), loop(i))))
            out.append(Template(GeneratorKind.CLOVER, (neg(i, j), pos(i, j), loop(j))))
    return tuple(out)


def _zero_sum(system: RootSystem, edges, outcomes) -> bool:
    total = np.zeros(system.n, dtype=np.int64)
    for e, w in zip(edges, outcomes):
        total += (2 * w - 1) * e.root_vector(system.n)
    return not total.any()


@lru_cache(maxsize=None)
def template_table(system: RootSystem) -> tuple[np.ndarray, np.ndarray]:
    """Kernel inputs: ``(T, 3)`` edge indices and ``(T, 8)`` weights per bit pattern."""
    templates = generator_templates(system)
    idx = edge_index(system)
    edges = np.array([[idx[e] for e in t.edges] for t in templates], dtype=np.int64).reshape(-1, 3)
    table = np.zeros((len(templates), 8), dtype=np.int64)
    for r, t in enumerate(templates):
        for pattern in range(8):
            bits = ((pattern >> 2) & 1, (pattern >> 1) & 1, pattern & 1)
            if _zero_sum(system, t.edges, bits):
                table[r, pattern] = WEIGHTS[t.kind]
    edges.setflags(write=False)
    table.setflags(write=False)
    return edges, table


def _label(t: Tournament, template: Template) -> str:
    if template.kind is GeneratorKind.CYCLIC:
        return "cyclic"
    if template.kind is GeneratorKind.BALANCED:
        return "balanced"
    first = template.edges[0]
    if template.kind is GeneratorKind.PAIR:
        if first.kind is EdgeKind.NEG:
            return "pair-competitive"
        return "pair-collaborative-won" if t[first] else "pair-collaborative-lost"
    # the loop owner nets +-1 from the pair; the other player nets 0
    owner = template.edges[2].i
    sign_neg = 2 * t[first] - 1
    net = sign_neg * (1 if owner == first.i else -1) + (2 * t[template.edges[1]] - 1)
    return "clover-at-net-winner" if net > 0 else "clover-at-net-loser"


def find_generators(t: Tournament) -> list[GeneratorCopy]:
    """All zero-sum generator copies in ``t``, in template order."""
    out = []
    for template in generator_templates(t.system):
        outcomes = [t[e] for e in template.edges]
        if _zero_sum(t.system, template.edges, outcomes):
            out.append(GeneratorCopy(template.kind, frozenset(template.edges), _label(t, template)))
    return out


def count_generators(t: Tournament) -> GeneratorCounts:
    tally = {kind: 0 for kind in GeneratorKind}
    for g in find_generators(t):
        tally[g.kind] += 1
    return GeneratorCounts(
        tally[GeneratorKind.CYCLIC], tally[GeneratorKind.BALANCED], tally[GeneratorKind.PAIR], tally[GeneratorKind.CLOVER]
    )


def weighted_counts(system: RootSystem, codes: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Weighted generator count for each code, via the batch kernel."""
    edges, table = template_table(system)
    return _kernels.weighted_generator_counts(codes, system.num_positive_roots, edges, table, backend=backend)


def degree(system: RootSystem, s: ScoreVector) -> int:
    """``(|s_Phi|^2 - |s|^2) / 2`` in exact integer arithmetic."""
    verdict = check_score_sequence(system, s)
    if not verdict.valid:
        raise InvalidScoreError(verdict.reason, f"{s} is not a {system} score sequence ({verdict.reason})")
    numerator = standard_score(system).norm2_doubled - s.norm2_doubled
    if numerator < 0 or numerator % 8:
        raise InvariantViolation(f"degree of {s} in {system} is {numerator}/8, not a non-negative integer")
    return numerator // 8


def interchange_neighbors(t: Tournament) -> list[tuple[Tournament, int]]:
    """One ``(neighbor, multiplicity)`` per generator copy in ``t``."""
    return [(reverse(t, g.support), g.weight) for g in find_generators(t)]


# ---------------------------------------------------------------------------
# interchange graphs


@dataclass(frozen=True)
class InterchangeEdge:
    u: int
    v: int
    multiplicity: int
    kind: GeneratorKind


@dataclass
class InterchangeGraph:
    """Multigraph on one score fiber; ``u`` and ``v`` index ``vertices``."""

    system: RootSystem
    score: ScoreVector
    vertices: list[Tournament]
    edges: list[InterchangeEdge]

    def degrees(self) -> list[int]:
        deg = [0] * len(self.vertices)
        for e in self.edges:
            deg[e.u] += e.multiplicity
            deg[e.v] += e.multiplicity
        return deg

    def is_regular(self, d: int | None = None) -> bool:
        deg = set(self.degrees())
        if d is not None:
            return deg <= {d}
        return len(deg) <= 1

    def components(self) -> int:
        adj: list[list[int]] = [[] for _ in self.vertices]
        for e in self.edges:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
        seen = [False] * len(self.vertices)
        count = 0
        for start in range(len(self.vertices)):
            if seen[start]:
                continue
            count += 1
            seen[start] = True
            queue = deque([start])
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        queue.append(y)
        return count

    def is_connected(self) -> bool:
        return self.components() <= 1

    def to_json(self) -> dict[str, Any]:
        return {
            "family": self.system.family.value,
            "n": self.system.n,
            "score": self.score.to_strings(),
            "vertices": [v.bits for v in self.vertices],
            "edges": [
                {"u": e.u, "v": e.v, "multiplicity": e.multiplicity, "kind": e.kind.value} for e in self.edges
            ],
        }

    def to_dot(self) -> str:
        lines = [f'graph "IntGr_{self.system}" {{']
        for k, v in enumerate(self.vertices):
            lines.append(f'  {k} [label="{v.bits}"];')
        for e in self.edges:
            for _ in range(e.multiplicity):
                lines.append(f'  {e.u} -- {e.v} [label="{e.kind.value}"];')
        lines.append("}")
        return "\n".join(lines)


def build_interchange_graph(system: RootSystem, s: ScoreVector, force: bool = False) -> InterchangeGraph:
    """Interchange multigraph of the fiber of ``s``; clover moves are double edges."""
    verdict = check_score_sequence(system, s)
    if not verdict.valid:
        raise InvalidScoreError(verdict.reason, f"{s} is not a {system} score sequence ({verdict.reason})")
    check_guard(system, force)
    vertices = fiber(system, s, force=force)
    position = {v.outcomes: k for k, v in enumerate(vertices)}
    arcs: dict[tuple[int, int], tuple[int, GeneratorKind]] = {}
    for u, t in enumerate(vertices):
        for g in find_generators(t):
            nb = reverse(t, g.support)
            v = position.get(nb.outcomes)
            if v is None or v == u:
                raise InvariantViolation(f"move {sorted(map(str, g.support))} leaves the fiber of {s}")
            if (u, v) in arcs:
                raise InvariantViolation("two generator copies give the same neighbor")
            arcs[(u, v)] = (g.weight, g.kind)
    edges = []
    for (u, v), (mult, kind) in sorted(arcs.items()):
        back = arcs.get((v, u))
        if back is None or back[0] != mult:
            raise InvariantViolation(f"interchange move {u}->{v} has no matching reverse move")
        if u < v:
            edges.append(InterchangeEdge(u, v, mult, kind))
    return InterchangeGraph(system, s, vertices, edges)
