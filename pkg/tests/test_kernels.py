import os
import subprocess
import sys

import numpy as np
import pytest

from coxtour import RootSystem, Tournament, score
from coxtour import _kernels
from coxtour.core import root_matrix
from coxtour.generators import template_table

SYSTEMS = [RootSystem(f, n) for f, n in [("A", 5), ("B", 3), ("C", 3), ("D", 4)]]
needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not available")


@pytest.mark.parametrize("system", SYSTEMS, ids=str)
def test_numpy_scores_match_python(system):
    codes = np.arange(0, 2 ** system.num_positive_roots, 13, dtype=np.int64)
    got = _kernels.doubled_scores(codes, root_matrix(system), backend="numpy")
    want = np.array([score(Tournament.from_code(system, int(c))).doubled for c in codes])
    assert (got == want).all()


@needs_numba
@pytest.mark.parametrize("system", SYSTEMS, ids=str)
def test_backends_agree(system):
    codes = np.arange(2 ** system.num_positive_roots, dtype=np.int64)
    roots = root_matrix(system)
    assert (
        _kernels.doubled_scores(codes, roots, backend="numba") == _kernels.doubled_scores(codes, roots, backend="numpy")
    ).all()
    edges, table = template_table(system)
    m = system.num_positive_roots
    a = _kernels.weighted_generator_counts(codes, m, edges, table, backend="numba")
    b = _kernels.weighted_generator_counts(codes, m, edges, table, backend="numpy")
    assert (a == b).all()


def test_chunking_boundary():
    system = RootSystem("D", 5)
    codes = np.arange(_kernels._CHUNK - 3, _kernels._CHUNK + 3, dtype=np.int64)
    got = _kernels.doubled_scores(codes, root_matrix(system), backend="numpy")
    want = np.array([score(Tournament.from_code(system, int(c))).doubled for c in codes])
    assert (got == want).all()


def test_unknown_backend():
    with pytest.raises(ValueError):
        _kernels.doubled_scores(np.zeros(1, dtype=np.int64), root_matrix(SYSTEMS[0]), backend="cuda")


def test_env_flag_selects_numpy():
    env = dict(os.environ, COXTOUR_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from coxtour import _kernels; print(_kernels.BACKEND, _kernels.HAVE_NUMBA)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.split() == ["numpy", "False"]


def test_benchmark_script_runs():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    out = subprocess.run(
        [sys.executable, os.path.join(root, "benchmarks", "bench_kernels.py"), "C", "3", "--repeat", "1"],
        capture_output=True, text=True, check=True,
    )
    assert "generator counts" in out.stdout
