"""Root systems, signed edges, tournaments and exact score arithmetic.

Scores are stored doubled (``2 * s``) so that half-integer scores of type B
and even-rank type A stay in integer arithmetic.  Players are 1-indexed.

Canonical edge order for a system of rank ``n``::

    for i in 2..n, for j in 1..i-1:  neg(i, j), pos(i, j)   # pos omitted in A
    for i in 1..n:                   half(i) (B) or loop(i) (C)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from operator import mul
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import PreconditionError


class Family(str, enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"


class EdgeKind(str, enum.Enum):
    NEG = "neg"
    POS = "pos"
    HALF = "half"
    LOOP = "loop"


@dataclass(frozen=True)
class RootSystem:
    """A classical root system given by family and number of players.

    For family A, ``n`` counts players, so ``RootSystem("A", 3)`` is A_2.
    """

    family: Family
    n: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool):
            raise PreconditionError(f"rank must be an integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        minimum = 2 if self.family is Family.D else 1
        if self.n < minimum:
            raise PreconditionError(f"{self.family.value}_n needs n >= {minimum}, got n={self.n}")

    @property
    def num_positive_roots(self) -> int:
        n = self.n
        if self.family is Family.A:
            return n * (n - 1) // 2
        if self.family is Family.D:
            return n * (n - 1)
        return n * n

    def __str__(self) -> str:
        return f"{self.family.value}{self.n}"


@dataclass(frozen=True)
class SignedEdge:
    """A signed edge of the complete Phi-graph.

    ``neg(i, j)`` has root ``e_i - e_j``, ``pos(i, j)`` has ``e_i + e_j``
    (both with ``i > j``), ``half(i)`` has ``e_i`` and ``loop(i)`` has ``2 e_i``.
    """

    kind: EdgeKind
    i: int
    j: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", EdgeKind(self.kind))
        if self.kind in (EdgeKind.NEG, EdgeKind.POS):
            if not self.i > self.j >= 1:
                raise PreconditionError(f"{self.kind.value} edge needs i > j >= 1, got ({self.i}, {self.j})")
        elif self.i < 1 or self.j != 0:
            raise PreconditionError(f"{self.kind.value} edge needs a single player i >= 1")

    @property
    def players(self) -> tuple[int, ...]:
        return (self.i, self.j) if self.j else (self.i,)

    @property
    def coefficients(self) -> tuple[tuple[int, int], ...]:
        """Sparse root vector as ``(player, coefficient)`` pairs."""
        if self.kind is EdgeKind.NEG:
            return ((self.i, 1), (self.j, -1))
        if self.kind is EdgeKind.POS:
            return ((self.i, 1), (self.j, 1))
        if self.kind is EdgeKind.HALF:
            return ((self.i, 1),)
        return ((self.i, 2),)

    def root_vector(self, n: int) -> np.ndarray:
        v = np.zeros(n, dtype=np.int64)
        for p, c in self.coefficients:
            v[p - 1] = c
        return v

    def __str__(self) -> str:
        if self.j:
            return f"{self.kind.value}({self.i},{self.j})"
        return f"{self.kind.value}({self.i})"


def neg(i: int, j: int) -> SignedEdge:
    return SignedEdge(EdgeKind.NEG, i, j)


def pos(i: int, j: int) -> SignedEdge:
    return SignedEdge(EdgeKind.POS, i, j)


def half(i: int) -> SignedEdge:
    return SignedEdge(EdgeKind.HALF, i)


def loop(i: int) -> SignedEdge:
    return SignedEdge(EdgeKind.LOOP, i)


@lru_cache(maxsize=None)
def positive_roots(system: RootSystem) -> tuple[SignedEdge, ...]:
    """Positive roots of ``system`` as signed edges, in canonical edge order."""
    edges = []
    for i in range(2, system.n + 1):
        for j in range(1, i):
            edges.append(neg(i, j))
            if system.family is not Family.A:
                edges.append(pos(i, j))
    if system.family is Family.B:
        edges.extend(half(i) for i in range(1, system.n + 1))
    elif system.family is Family.C:
        edges.extend(loop(i) for i in range(1, system.n + 1))
    return tuple(edges)


@lru_cache(maxsize=None)
def edge_index(system: RootSystem) -> Mapping[SignedEdge, int]:
    return {e: k for k, e in enumerate(positive_roots(system))}


@lru_cache(maxsize=None)
def root_matrix(system: RootSystem) -> np.ndarray:
    """Read-only ``(num_edges, n)`` integer matrix of root vectors."""
    edges = positive_roots(system)
    m = np.zeros((len(edges), system.n), dtype=np.int64)
    for k, e in enumerate(edges):
        for p, c in e.coefficients:
            m[k, p - 1] = c
    m.setflags(write=False)
    return m


# ---------------------------------------------------------------------------
# scores


def _format_half(d: int) -> str:
    return str(d // 2) if d % 2 == 0 else f"{d}/2"


@dataclass(frozen=True)
class ScoreVector:
    """Exact score vector stored as ``doubled = 2 * s``."""

    doubled: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "doubled", tuple(int(d) for d in self.doubled))

    @classmethod
    def from_values(cls, values: Iterable[int | str | Fraction]) -> "ScoreVector":
        """Build from integers, Fractions or strings like ``"3"``, ``"-3/2"``."""
        doubled = []
        for v in values:
            twice = 2 * Fraction(v)
            if twice.denominator != 1:
                raise PreconditionError(f"score entry {v!r} is not a multiple of 1/2")
            doubled.append(int(twice))
        return cls(tuple(doubled))

    @property
    def n(self) -> int:
        return len(self.doubled)

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(d, 2) for d in self.doubled)

    @property
    def norm2_doubled(self) -> int:
        """``||2s||^2``, i.e. four times the squared norm."""
        return sum(d * d for d in self.doubled)

    def is_integral(self) -> bool:
        return all(d % 2 == 0 for d in self.doubled)

    def as_ints(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise PreconditionError(f"score {self} has half-integer entries")
        return tuple(d // 2 for d in self.doubled)

    def to_strings(self) -> list[str]:
        return [_format_half(d) for d in self.doubled]

    def __abs__(self) -> "ScoreVector":
        return ScoreVector(tuple(abs(d) for d in self.doubled))

    def __neg__(self) -> "ScoreVector":
        return ScoreVector(tuple(-d for d in self.doubled))

    def __sub__(self, other: "ScoreVector") -> "ScoreVector":
        return ScoreVector(tuple(a - b for a, b in zip(self.doubled, other.doubled)))

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_strings()) + ")"


def standard_score(system: RootSystem) -> ScoreVector:
    """Weyl vector ``s_Phi``: the score of the all-wins tournament."""
    n = system.n
    if system.family is Family.A:
        return ScoreVector(tuple(2 * k - (n - 1) for k in range(n)))
    shift = _WEYL_SHIFT[system.family.value]
    return ScoreVector(tuple(2 * k + shift for k in range(n)))


_WEYL_SHIFT = {"B": 1, "C": 2, "D": 0}


def weyl_norm2_doubled(family: Family | str, n: int) -> int:
    """``||2 s_Phi||^2`` straight from the entries of the Weyl vector.

    Skips :class:`RootSystem` validation, so ``D_1`` (empty) gives 0.
    """
    f = getattr(family, "value", family)
    if f == "A":
        entries = range(1 - n, n, 2)
    else:
        shift = _WEYL_SHIFT[f]
        entries = range(shift, 2 * n + shift, 2)
    return sum(map(mul, entries, entries))


def lattice_parity(system: RootSystem) -> int:
    """Required parity of every doubled score entry for ``system``."""
    if system.family is Family.B:
        return 1
    if system.family is Family.A:
        return (system.n - 1) % 2
    return 0


# ---------------------------------------------------------------------------
# tournaments


@dataclass(frozen=True)
class Tournament:
    """One win/loss bit per positive root, in canonical edge order."""

    system: RootSystem
    outcomes: tuple[int, ...]

    def __post_init__(self):
        outcomes = tuple(int(w) for w in self.outcomes)
        if len(outcomes) != self.system.num_positive_roots:
            raise PreconditionError(
                f"{self.system} needs {self.system.num_positive_roots} outcomes, got {len(outcomes)}"
            )
        if any(w not in (0, 1) for w in outcomes):
            raise PreconditionError("outcomes must be 0 or 1")
        object.__setattr__(self, "outcomes", outcomes)

    @classmethod
    def from_bits(cls, system: RootSystem, bits: str) -> "Tournament":
        if set(bits) - {"0", "1"}:
            raise PreconditionError(f"bitstring may only contain 0 and 1: {bits!r}")
        return cls(system, tuple(int(b) for b in bits))

    @classmethod
    def from_code(cls, system: RootSystem, code: int) -> "Tournament":
        m = system.num_positive_roots
        if not 0 <= code < (1 << m):
            raise PreconditionError(f"code {code} out of range for {m} edges")
        return cls(system, tuple((code >> (m - 1 - k)) & 1 for k in range(m)))

    @classmethod
    def from_outcomes(cls, system: RootSystem, outcomes: Mapping[SignedEdge, int], default: int = 1) -> "Tournament":
        idx = edge_index(system)
        unknown = [e for e in outcomes if e not in idx]
        if unknown:
            raise PreconditionError(f"edges not in {system}: {', '.join(map(str, unknown))}")
        return cls(system, tuple(int(outcomes.get(e, default)) for e in positive_roots(system)))

    @classmethod
    def all_wins(cls, system: RootSystem) -> "Tournament":
        return cls(system, (1,) * system.num_positive_roots)

    @classmethod
    def all_losses(cls, system: RootSystem) -> "Tournament":
        return cls(system, (0,) * system.num_positive_roots)

    @property
    def bits(self) -> str:
        return "".join(map(str, self.outcomes))

    @property
    def code(self) -> int:
        """Integer whose binary expansion (MSB = first edge) is ``bits``."""
        c = 0
        for w in self.outcomes:
            c = (c << 1) | w
        return c

    def __getitem__(self, edge: SignedEdge) -> int:
        try:
            return self.outcomes[edge_index(self.system)[edge]]
        except KeyError:
            raise PreconditionError(f"{edge} is not an edge of {self.system}") from None

    def edges(self) -> tuple[SignedEdge, ...]:
        return positive_roots(self.system)


def _pair_edge(kind: EdgeKind, i: int, j: int) -> SignedEdge:
    return SignedEdge(kind, max(i, j), min(i, j))


def wins(t: Tournament, kind: EdgeKind, i: int, j: int) -> int:
    """Outcome of the ``kind`` game between ``i`` and ``j`` seen from ``i``.

    Uses ``w_ji^- = 1 - w_ij^-`` and ``w_ji^+ = w_ij^+``.
    """
    w = t[_pair_edge(kind, i, j)]
    if kind is EdgeKind.NEG and i < j:
        return 1 - w
    return w


def score(t: Tournament) -> ScoreVector:
    """``s(T) = sum_e (w_e - 1/2) e``, returned doubled and exact."""
    doubled = [0] * t.system.n
    for e, w in zip(positive_roots(t.system), t.outcomes):
        sign = 1 if w else -1
        for p, c in e.coefficients:
            doubled[p - 1] += sign * c
    return ScoreVector(tuple(doubled))


def oriented_root(t: Tournament, edge: SignedEdge) -> np.ndarray:
    """``(2 w_e - 1) e`` as an integer vector."""
    return (2 * t[edge] - 1) * edge.root_vector(t.system.n)


def _check_edges(system: RootSystem, edges: Iterable[SignedEdge]) -> list[int]:
    idx = edge_index(system)
    out = []
    for e in edges:
        if e not in idx:
            raise PreconditionError(f"{e} is not an edge of {system}")
        out.append(idx[e])
    return out


def reverse(t: Tournament, edges: Iterable[SignedEdge]) -> Tournament:
    """Flip the outcome of every game in ``edges``."""
    flip = set(_check_edges(t.system, edges))
    return Tournament(t.system, tuple(1 - w if k in flip else w for k, w in enumerate(t.outcomes)))


def is_neutral_subset(t: Tournament, edges: Iterable[SignedEdge]) -> bool:
    """True iff the oriented roots of ``edges`` sum to zero."""
    roots = root_matrix(t.system)
    total = np.zeros(t.system.n, dtype=np.int64)
    for k in set(_check_edges(t.system, edges)):
        total += (2 * t.outcomes[k] - 1) * roots[k]
    return not total.any()


# ---------------------------------------------------------------------------
# signed permutations


@dataclass(frozen=True)
class SignedPermutation:
    """Signed permutation given by the images ``(phi(1), ..., phi(n))``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(abs(x) for x in images) != list(range(1, len(images) + 1)):
            raise PreconditionError(f"{images} is not a signed permutation")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    @property
    def negative_count(self) -> int:
        return sum(1 for x in self.images if x < 0)

    def __call__(self, i: int) -> int:
        return self.images[i - 1] if i > 0 else -self.images[-i - 1]

    def in_weyl_group(self, family: Family | str) -> bool:
        family = Family(family)
        if family is Family.A:
            return self.negative_count == 0
        if family is Family.D:
            return self.negative_count % 2 == 0
        return True

    def act(self, doubled: Sequence[int]) -> tuple[int, ...]:
        """Apply to a vector: ``e_i -> sgn(phi(i)) e_|phi(i)|``."""
        out = [0] * self.n
        for i, v in enumerate(doubled, start=1):
            img = self.images[i - 1]
            out[abs(img) - 1] = v if img > 0 else -v
        return tuple(out)


def _positive_root_of(coeffs: dict[int, int]) -> tuple[SignedEdge, int]:
    """Return ``(edge, sign)`` with ``sign * root(edge)`` equal to ``coeffs``."""
    items = sorted(coeffs.items(), reverse=True)
    if len(items) == 1:
        (p, c), = items
        return (half(p) if abs(c) == 1 else loop(p)), (1 if c > 0 else -1)
    (p, cp), (q, cq) = items
    edge = neg(p, q) if cp * cq < 0 else pos(p, q)
    return edge, (1 if cp > 0 else -1)


def apply_signed_permutation(t: Tournament, phi: SignedPermutation) -> Tournament:
    """Relabel players by ``phi``; ``score(phi . t) == phi . score(t)``."""
    system = t.system
    if phi.n != system.n:
        raise PreconditionError(f"permutation acts on {phi.n} players, tournament has {system.n}")
    if not phi.in_weyl_group(system.family):
        raise PreconditionError(f"{phi.images} is not in the Weyl group of {system}")
    outcomes: dict[SignedEdge, int] = {}
    for e, w in zip(positive_roots(system), t.outcomes):
        coeffs = {}
        for p, c in e.coefficients:
            img = phi(p)
            coeffs[abs(img)] = c if img > 0 else -c
        image, sign = _positive_root_of(coeffs)
        outcomes[image] = 1 if (2 * w - 1) * sign > 0 else 0
    return Tournament.from_outcomes(system, outcomes)
