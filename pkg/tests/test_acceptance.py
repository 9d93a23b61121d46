"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Lines for the individual checks are collected and echoed again in the
terminal summary so the full report survives output capture.
"""

import time

from coxtour import verify

from conftest import ACCEPTANCE_LINES


def _gate(label, results, extra_ok=True, note=""):
    ok = extra_ok and all(r.passed for r in results)
    tag = "PASS" if ok else "FAIL"
    summary = f"[{tag}] {label}" + (f" ({note})" if note else "")
    print(summary)
    ACCEPTANCE_LINES.append(summary)
    for r in results:
        print("    " + r.line())
        ACCEPTANCE_LINES.append("    " + r.line())
    failures = [r.line() for r in results if not r.passed]
    assert ok, "\n".join(failures) or note


def test_criterion_1_classification():
    start = time.perf_counter()
    results = [verify.check_classification(f, n) for f, n in verify.CLASSIFICATION_RANKS]
    elapsed = time.perf_counter() - start
    _gate("1 classification equivalence", results, elapsed < 30, f"{elapsed:.1f}s at default guards, limit 30s")


def test_criterion_1_classification_forced_d5():
    results = [verify.check_classification(f, n, force=True) for f, n in verify.FORCED_RANKS]
    _gate("1 classification equivalence, forced ranks", results)


def test_criterion_2_constructive_soundness():
    ranks = verify.CLASSIFICATION_RANKS + verify.FORCED_RANKS
    results = [verify.check_soundness(f, n) for f, n in ranks] + [verify.check_worked_example()]
    _gate("2 constructive soundness and worked example", results)


def test_criterion_3_degree_regularity():
    ranks = verify.CLASSIFICATION_RANKS + verify.CLASSICAL_RANKS
    _gate("3 degree regularity", [verify.check_regularity(f, n) for f, n in ranks])


def test_criterion_4_interchange_graphs():
    ranks = verify.CLASSIFICATION_RANKS + verify.CLASSICAL_RANKS
    _gate("4 interchange graphs regular (connectivity informational)",
          [verify.check_interchange(f, n) for f, n in ranks])


def test_criterion_5_embeddings():
    _gate("5 embedding correspondences", [verify.check_embedding(f, n) for f, n in verify.EMBEDDING_RANKS])


def test_criterion_6_theta_identities():
    _gate("6 theta identities n=1..50 under 1 ms", [verify.check_theta()])


def test_criterion_7_win_vectors():
    _gate("7 win-vector lattice points", [verify.check_wins()])


def test_criterion_8_property_fuzzing():
    _gate("8 property fuzzing", [verify.fuzz_lift(), verify.fuzz_parity(), verify.fuzz_even_jumps()])
