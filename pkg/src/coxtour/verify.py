"""Exhaustive and randomized verification suites.

Each check returns a :class:`CheckResult`; a failing result always carries a
counterexample that can be replayed through the CLI.
"""

from __future__ import annotations

import random
import time
import timeit
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Callable

import numpy as np

from . import oracle
from .core import RootSystem, ScoreVector, Tournament, score, standard_score, weyl_norm2_doubled
from .embed import cyclic_triangle_count, embed, is_antisymmetric, theta, theta_closed_form
from .generators import build_interchange_graph, count_generators, degree, weighted_counts
from .jsonio import tournament_to_json
from .landau import (
    construct,
    lift_to_majorization,
    majorize,
    match_parity,
    negate_players,
    reduce_even_jumps,
    weak_submajorize,
)

CLASSIFICATION_RANKS = [("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 3), ("D", 4)]
FORCED_RANKS = [("D", 5)]
CLASSICAL_RANKS = [("A", n) for n in range(1, 6)]
EMBEDDING_RANKS = [("B", 3), ("C", 2), ("D", 3)]
FUZZ_TRIALS = 10_000
THETA_MAX_N = 50
THETA_TIME_LIMIT = 1e-3
WINS_MAX_N = 5


@dataclass
class CheckResult:
    name: str
    family: str | None
    rank: int | None
    status: str
    elapsed: float = 0.0
    detail: str = ""
    counterexample: Any = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def line(self) -> str:
        where = f" {self.family}{self.rank}" if self.family else ""
        tag = "PASS" if self.passed else "FAIL"
        text = f"[{tag}] {self.name}{where}: {self.detail} ({self.elapsed:.2f}s)"
        if self.counterexample is not None:
            text += f" counterexample={self.counterexample}"
        return text


@dataclass
class VerifyReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict[str, Any]:
        return {"ok": self.ok, "checks": [asdict(r) for r in self.results]}


def _timed(name: str, family: str | None, rank: int | None, fn: Callable[[], tuple[bool, str, Any]]) -> CheckResult:
    start = time.perf_counter()
    ok, detail, counterexample = fn()
    return CheckResult(name, family, rank, "pass" if ok else "fail", time.perf_counter() - start, detail,
                       None if ok else counterexample)


# ---------------------------------------------------------------------------
# criteria


def check_classification(family: str, n: int, force: bool = False) -> CheckResult:
    system = RootSystem(family, n)

    def run():
        achieved = oracle.achieved_scores(system, force=force)
        lattice = oracle.lattice_score_set(system)
        extra, missing = achieved - lattice, lattice - achieved
        if extra or missing:
            bad = next(iter(sorted(extra | missing, key=lambda s: s.doubled)))
            side = "achieved but rejected" if bad in extra else "accepted but never achieved"
            return False, f"{len(extra)} achieved-only, {len(missing)} lattice-only", {"score": bad.to_strings(), "issue": side}
        return True, f"{len(achieved)} score sequences, sets equal", None

    return _timed("classification", family, n, run)


def check_soundness(family: str, n: int) -> CheckResult:
    system = RootSystem(family, n)

    def run():
        targets = sorted(oracle.lattice_score_set(system), key=lambda s: s.doubled)
        for s in targets:
            try:
                t, _ = construct(system, s)
            except Exception as exc:  # reported as a counterexample
                return False, f"construct raised {exc!r}", {"score": s.to_strings()}
            if score(t) != s:
                return False, "score mismatch", {"score": s.to_strings(), "tournament": tournament_to_json(t)}
        return True, f"{len(targets)} constructions reproduce their score", None

    return _timed("soundness", family, n, run)


def check_worked_example() -> CheckResult:
    def run():
        s = ScoreVector.from_values([3, -2, -1, 0, 0])
        t, trace = construct(RootSystem("D", 5), s)
        got = (trace["lift"], trace["parity"], score(t))
        ok = got == ((3, 2, 2, 2, 1), (3, 2, 1, 2, 2), s)
        return ok, f"lift={got[0]} parity={got[1]} score={got[2]}", {"trace": trace.to_json()}

    return _timed("worked-example", "D", 5, run)


def check_regularity(family: str, n: int, backend: str | None = None) -> CheckResult:
    system = RootSystem(family, n)

    def run():
        codes, scores = oracle.score_table(system, backend=backend)
        counts = weighted_counts(system, codes, backend=backend)
        expected8 = standard_score(system).norm2_doubled - (scores ** 2).sum(axis=1)
        bad = np.nonzero(counts * 8 != expected8)[0]
        if bad.size:
            t = Tournament.from_code(system, int(codes[bad[0]]))
            return False, f"{bad.size} tournaments off the degree formula", tournament_to_json(t, include_score=True)
        fibers = len(np.unique(scores, axis=0))
        return True, f"{codes.size} tournaments in {fibers} fibers match the degree formula", None

    return _timed("regularity", family, n, run)


def check_interchange(family: str, n: int) -> CheckResult:
    system = RootSystem(family, n)

    def run():
        connected = total = 0
        for s in sorted(oracle.achieved_scores(system), key=lambda s: s.doubled):
            graph = build_interchange_graph(system, s)
            d = degree(system, s)
            if not graph.is_regular(d):
                return False, f"fiber {s} is not {d}-regular", {"score": s.to_strings(), "degrees": graph.degrees()}
            total += 1
            connected += graph.is_connected()
        return True, f"{total} fibers regular; connected: {connected}/{total}", None

    return _timed("interchange", family, n, run)


def check_embedding(family: str, n: int) -> CheckResult:
    system = RootSystem(family, n)

    def run():
        count = 0
        for t in oracle.enumerate_tournaments(system):
            emb = embed(t)
            s = score(t).doubled
            host = score(emb.host).doubled
            law = host[:n] == s and host[n:2 * n] == tuple(-v for v in s) and all(v == 0 for v in host[2 * n:])
            gens = count_generators(t)
            if family == "D":
                expected = 2 * (gens.cyclic + gens.balanced) + n * n
            else:
                expected = 2 * gens.weighted_total
            triangles = cyclic_triangle_count(emb.host)
            anti = family != "B" or is_antisymmetric(emb)
            if not (law and anti and triangles == expected):
                return False, f"law={law} antisymmetric={anti} triangles={triangles} expected={expected}", emb.to_json()
            count += 1
        return True, f"{count} embeddings satisfy score law and triangle count", None

    return _timed("embedding", family, n, run)


def theta_identities_hold(max_n: int = THETA_MAX_N) -> bool:
    """``2 th(B_n) = th(A_2n-1)``, ``2 th(C_n) = th(A_2n)``, ``2 th(D_n) = th(A_2n) - n^2``.

    Works on exact numerators over the common denominator 8.
    """
    for n in range(1, max_n + 1):
        b = weyl_norm2_doubled("B", n)
        c = weyl_norm2_doubled("C", n)
        d = weyl_norm2_doubled("D", n)
        a_odd = weyl_norm2_doubled("A", 2 * n)
        a_even = weyl_norm2_doubled("A", 2 * n + 1)
        if not (2 * b == a_odd and 2 * c == a_even and 2 * d == a_even - 8 * n * n):
            return False
    return True


def check_theta(max_n: int = THETA_MAX_N) -> CheckResult:
    def run():
        best = min(timeit.repeat(lambda: theta_identities_hold(max_n), number=1, repeat=20))
        if not theta_identities_hold(max_n):
            bad = next(n for n in range(1, max_n + 1) if not theta_identities_hold(n))
            return False, f"identity fails at n={bad}", {"n": bad}
        for n in range(1, max_n + 1):
            for f, k in (("A", 2 * n), ("A", 2 * n + 1), ("B", n), ("C", n), ("D", n + 1)):
                system = RootSystem(f, k)
                if theta(system) != theta_closed_form(system):
                    return False, f"closed form differs for {system}", {"system": str(system)}
        if best >= THETA_TIME_LIMIT:
            return False, f"identities took {best * 1e3:.3f} ms", {"seconds": best}
        return True, f"identities exact for n=1..{max_n} in {best * 1e3:.3f} ms; closed forms agree", None

    return _timed("theta-identities", None, None, run)


def check_wins(max_n: int = WINS_MAX_N) -> CheckResult:
    def run():
        sizes = []
        for n in range(1, max_n + 1):
            achieved = oracle.achieved_win_vectors(n)
            points = oracle.permutahedron_points(n)
            if achieved != points:
                return False, f"mismatch at n={n}", {"n": n, "diff": sorted(achieved ^ points)[:5]}
            sizes.append(len(points))
        ok = max_n < 3 or sizes[2] == 7
        return ok, f"win vectors = lattice points for n=1..{max_n}, sizes {sizes}", {"sizes": sizes}

    return _timed("win-lattice", "A", max_n, run)


# --- fuzzing ---------------------------------------------------------------


def _random_dominated(rng: random.Random, y: list[int], floor: int | None = None) -> list[int]:
    """A random vector entrywise below a permutation of ``y``."""
    x = y[:]
    rng.shuffle(x)
    x = [v - rng.randint(0, 3) for v in x]
    if floor is not None:
        x = [max(floor, v) for v in x]
    return x


def fuzz_lift(trials: int = FUZZ_TRIALS, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)

    def run():
        for _ in range(trials):
            n = rng.randint(1, 8)
            y = [rng.randint(-3, 9) for _ in range(n)]
            if rng.random() < 0.5:
                x = _random_dominated(rng, y)
            else:
                x = [rng.randint(-4, 9) for _ in range(n)]
                if not weak_submajorize(x, y):
                    x = _random_dominated(rng, y)
            z = lift_to_majorization(x, y)
            if any(a > b for a, b in zip(x, z)) or not majorize(z, y):
                return False, "postcondition violated", {"x": x, "y": y, "z": z}
        return True, f"{trials} random inputs, x <= z majorized by y", None

    return _timed("fuzz-lift", None, None, run)


def _random_parity_input(rng: random.Random) -> tuple[list[int], list[int]]:
    n = rng.randint(1, 8)
    family = rng.choice("CD") if n >= 2 else "C"
    system = RootSystem(family, n)
    y = list(standard_score(system).as_ints())
    if rng.random() < 0.5:
        bits = tuple(rng.getrandbits(1) for _ in range(system.num_positive_roots))
        x = [abs(v) for v in score(Tournament(system, bits)).as_ints()]
    else:
        x = _random_dominated(rng, y, floor=0)
        if (sum(x) - sum(y)) % 2:
            positive = [k for k, v in enumerate(x) if v > 0]
            if positive:
                x[rng.choice(positive)] -= 1
            else:
                x[0] += 1
    return x, y


def fuzz_parity(trials: int = FUZZ_TRIALS, seed: int = 1) -> CheckResult:
    rng = random.Random(seed)

    def run():
        done = 0
        while done < trials:
            x, y = _random_parity_input(rng)
            if not weak_submajorize(x, y) or (sum(x) - sum(y)) % 2:
                continue
            z = lift_to_majorization(x, y)
            zp = match_parity(x, z, y)
            if (any(a > b for a, b in zip(x, zp)) or not majorize(zp, y)
                    or any((a - b) % 2 for a, b in zip(x, zp))):
                return False, "postcondition violated", {"x": x, "z": z, "y": y, "z'": zp}
            done += 1
        return True, f"{trials} random inputs, x <= z' majorized by y with matching parity", None

    return _timed("fuzz-parity", None, None, run)


def fuzz_even_jumps(trials: int = FUZZ_TRIALS, seed: int = 2) -> CheckResult:
    rng = random.Random(seed)

    def run():
        for _ in range(trials):
            n = rng.randint(1, 8)
            family = rng.choice("CD") if n >= 2 else "C"
            system = RootSystem(family, n)
            t0 = Tournament(system, tuple(rng.getrandbits(1) for _ in range(system.num_positive_roots)))
            t = negate_players(t0, [i for i, d in enumerate(score(t0).doubled, start=1) if d < 0])
            z = score(t).as_ints()
            s = ScoreVector.from_values([v - 2 * rng.randint(0, v // 2) for v in z])
            out = reduce_even_jumps(t, s)
            if score(out) != s:
                return False, "score mismatch", {"tournament": tournament_to_json(t), "s": s.to_strings()}
        return True, f"{trials} random tournaments reach the requested score", None

    return _timed("fuzz-even-jumps", None, None, run)


# ---------------------------------------------------------------------------
# suites


def suite_tasks(force: bool = False) -> list[tuple[str, tuple]]:
    """``(function name, args)`` pairs; picklable so suites can run in worker processes."""
    ranks = CLASSIFICATION_RANKS + (FORCED_RANKS if force else [])
    tasks: list[tuple[str, tuple]] = []
    tasks += [("check_classification", (f, n, force)) for f, n in ranks]
    tasks += [("check_soundness", (f, n)) for f, n in ranks]
    tasks += [("check_worked_example", ())]
    tasks += [("check_regularity", (f, n)) for f, n in CLASSIFICATION_RANKS + CLASSICAL_RANKS]
    tasks += [("check_interchange", (f, n)) for f, n in CLASSIFICATION_RANKS + CLASSICAL_RANKS]
    tasks += [("check_embedding", (f, n)) for f, n in EMBEDDING_RANKS]
    tasks += [("check_theta", ()), ("check_wins", ())]
    tasks += [("fuzz_lift", ()), ("fuzz_parity", ()), ("fuzz_even_jumps", ())]
    return tasks


def _run_task(task: tuple[str, tuple]) -> CheckResult:
    name, args = task
    return globals()[name](*args)


def run_verify(force: bool = False, jobs: int = 1) -> VerifyReport:
    tasks = suite_tasks(force)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(t) for t in tasks]
    return VerifyReport(results)
