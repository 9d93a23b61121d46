"""Brute-force ground truth by exhaustive enumeration.

Everything here is deliberately naive: tournaments are enumerated bit by bit
and lattice points are enumerated box by box, so the other modules can be
checked against sets that do not depend on their own logic.
"""

from __future__ import annotations

import itertools
from typing import Iterator

import numpy as np

from . import _kernels
from .core import Family, RootSystem, ScoreVector, Tournament, lattice_parity, root_matrix, standard_score
from .errors import EnumerationGuardError, PreconditionError
from .landau import check_score_sequence, majorize

GUARD_BITS = 24
LATTICE_MAX_RANK = 8
PERMUTAHEDRON_MAX_N = 6


def check_guard(system: RootSystem, force: bool = False) -> None:
    m = system.num_positive_roots
    if m > GUARD_BITS and not force:
        raise EnumerationGuardError(
            f"{system} has {m} positive roots; exhaustive enumeration is limited to "
            f"{GUARD_BITS} bits (pass force=True / --force to override)"
        )


def enumerate_tournaments(system: RootSystem, prefix: str = "", force: bool = False) -> Iterator[Tournament]:
    """Yield all tournaments whose bitstring starts with ``prefix``, in increasing order."""
    check_guard(system, force)
    m = system.num_positive_roots
    if len(prefix) > m or set(prefix) - {"0", "1"}:
        raise PreconditionError(f"bad prefix {prefix!r} for {m} edges")
    free = m - len(prefix)
    base = int(prefix, 2) << free if prefix else 0
    for low in range(1 << free):
        yield Tournament.from_code(system, base | low)


def prefix_partition(system: RootSystem, depth: int) -> list[str]:
    """All bit prefixes of length ``depth``; their blocks partition the enumeration."""
    depth = min(depth, system.num_positive_roots)
    return ["".join(bits) for bits in itertools.product("01", repeat=depth)]


def all_codes(system: RootSystem, force: bool = False) -> np.ndarray:
    check_guard(system, force)
    return np.arange(1 << system.num_positive_roots, dtype=np.int64)


def score_table(system: RootSystem, force: bool = False, backend: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    """``(codes, doubled_scores)`` for every tournament of ``system``."""
    codes = all_codes(system, force)
    return codes, _kernels.doubled_scores(codes, root_matrix(system), backend=backend)


def achieved_scores(system: RootSystem, force: bool = False, backend: str | None = None) -> set[ScoreVector]:
    _, scores = score_table(system, force, backend)
    return {ScoreVector(tuple(row)) for row in np.unique(scores, axis=0).tolist()}


def achieved_win_vectors(n: int, force: bool = False) -> set[tuple[int, ...]]:
    """Win vectors of all classical tournaments on ``n`` players."""
    return {tuple((d + n - 1) // 2 for d in s.doubled) for s in achieved_scores(RootSystem(Family.A, n), force)}


def fibers(system: RootSystem, force: bool = False, backend: str | None = None) -> dict[ScoreVector, np.ndarray]:
    """Partition all tournament codes by score."""
    codes, scores = score_table(system, force, backend)
    uniq, inverse = np.unique(scores, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    order = np.argsort(inverse, kind="stable")
    bounds = np.searchsorted(inverse[order], np.arange(len(uniq) + 1))
    return {
        ScoreVector(tuple(row)): codes[order[bounds[k]:bounds[k + 1]]]
        for k, row in enumerate(uniq.tolist())
    }


def fiber(system: RootSystem, s: ScoreVector, force: bool = False) -> list[Tournament]:
    """All tournaments with score ``s``, in increasing code order."""
    codes, scores = score_table(system, force)
    mask = np.all(scores == np.asarray(s.doubled, dtype=np.int64), axis=1)
    return [Tournament.from_code(system, int(c)) for c in codes[mask]]


def _distinct_permutations(items: list[int]) -> Iterator[tuple[int, ...]]:
    a = sorted(items)
    n = len(a)
    while True:
        yield tuple(a)
        k = n - 2
        while k >= 0 and a[k] >= a[k + 1]:
            k -= 1
        if k < 0:
            return
        j = n - 1
        while a[j] <= a[k]:
            j -= 1
        a[k], a[j] = a[j], a[k]
        a[k + 1:] = reversed(a[k + 1:])


def _box_values(system: RootSystem) -> list[int]:
    bound = max(standard_score(system).doubled)
    parity = lattice_parity(system)
    return [v for v in range(-bound, bound + 1) if v % 2 == parity]


def lattice_score_set(system: RootSystem) -> set[ScoreVector]:
    """All box lattice points satisfying the family's membership conditions.

    Candidates are generated as descending absolute-value profiles, then
    expanded over permutations and signs; every candidate is filtered by
    :func:`check_score_sequence`.
    """
    if system.n > LATTICE_MAX_RANK:
        raise EnumerationGuardError(f"lattice enumeration is limited to rank {LATTICE_MAX_RANK}")
    values = _box_values(system)
    if system.family is Family.A:
        profiles = itertools.combinations_with_replacement(values, system.n)
        signed = (p for profile in profiles for p in _distinct_permutations(list(profile)))
    else:
        mags = sorted({abs(v) for v in values})
        cap = sorted(standard_score(system).doubled, reverse=True)
        signed = (
            p
            for profile in _submajorized_profiles(mags, cap)
            for perm in _distinct_permutations(list(profile))
            for p in _sign_patterns(perm)
        )
    out = set()
    for doubled in signed:
        s = ScoreVector(doubled)
        if check_score_sequence(system, s).valid:
            out.add(s)
    return out


def _submajorized_profiles(mags: list[int], cap: list[int]) -> Iterator[tuple[int, ...]]:
    """Descending tuples from ``mags`` whose prefix sums stay under ``cap``'s."""
    n = len(cap)
    limits = list(itertools.accumulate(cap))

    def rec(prefix: list[int], total: int, upper: int):
        k = len(prefix)
        if k == n:
            yield tuple(prefix)
            return
        for v in mags:
            if v > upper:
                break
            if total + v <= limits[k]:
                prefix.append(v)
                yield from rec(prefix, total + v, v)
                prefix.pop()

    yield from rec([], 0, max(mags))


def _sign_patterns(values: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    choices = [(v, -v) if v else (0,) for v in values]
    return itertools.product(*choices)


def permutahedron_points(n: int) -> set[tuple[int, ...]]:
    """Integer points majorized by ``(0, 1, ..., n-1)``, by scanning the box."""
    if not 1 <= n <= PERMUTAHEDRON_MAX_N:
        raise EnumerationGuardError(f"permutahedron_points supports 1 <= n <= {PERMUTAHEDRON_MAX_N}")
    w = list(range(n))
    return {p for p in itertools.product(range(n), repeat=n) if majorize(list(p), w)}
