"""Batch kernels over tournament codes.

A tournament with ``m`` edges is packed into an int64 code whose most
significant of ``m`` bits is the first edge in canonical order.  Two hot
loops are provided, each with a numba and a pure-numpy implementation:

* ``doubled_scores``: ``2 s(T)`` for every code.
* ``weighted_generator_counts``: weighted number of neutral generator copies,
  looked up from a per-template table indexed by the template's 3-bit pattern.

Set ``COXTOUR_DISABLE_NUMBA=1`` to force the numpy path.
"""

from __future__ import annotations

import os

import numpy as np

_CHUNK = 1 << 16

_disabled = os.environ.get("COXTOUR_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _disabled:
        raise ImportError("numba disabled by COXTOUR_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def unpack_codes(codes: np.ndarray, m: int) -> np.ndarray:
    """``(N, m)`` uint8 outcome matrix for a vector of codes."""
    shifts = np.arange(m - 1, -1, -1, dtype=np.int64)
    return ((codes[:, None] >> shifts) & 1).astype(np.uint8)


# --- numpy -----------------------------------------------------------------


def doubled_scores_numpy(codes: np.ndarray, roots: np.ndarray) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    m, n = roots.shape
    out = np.empty((codes.shape[0], n), dtype=np.int64)
    for start in range(0, codes.shape[0], _CHUNK):
        bits = unpack_codes(codes[start:start + _CHUNK], m).astype(np.int64)
        out[start:start + _CHUNK] = (2 * bits - 1) @ roots
    return out


def weighted_generator_counts_numpy(codes: np.ndarray, m: int, templates: np.ndarray, table: np.ndarray) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    out = np.zeros(codes.shape[0], dtype=np.int64)
    if templates.shape[0] == 0:
        return out
    rows = np.arange(templates.shape[0])
    for start in range(0, codes.shape[0], _CHUNK):
        bits = unpack_codes(codes[start:start + _CHUNK], m)
        pattern = (bits[:, templates[:, 0]].astype(np.int64) << 2) | (bits[:, templates[:, 1]] << 1) | bits[:, templates[:, 2]]
        out[start:start + _CHUNK] = table[rows, pattern].sum(axis=1)
    return out


# --- numba -----------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _doubled_scores_nb(codes, roots):
        m, n = roots.shape
        out = np.zeros((codes.shape[0], n), dtype=np.int64)
        for r in range(codes.shape[0]):
            c = codes[r]
            for k in range(m):
                sign = 2 * ((c >> (m - 1 - k)) & 1) - 1
                for p in range(n):
                    out[r, p] += sign * roots[k, p]
        return out

    @njit(cache=True)
    def _weighted_generator_counts_nb(codes, m, templates, table):
        out = np.zeros(codes.shape[0], dtype=np.int64)
        for r in range(codes.shape[0]):
            c = codes[r]
            total = 0
            for t in range(templates.shape[0]):
                p = (((c >> (m - 1 - templates[t, 0])) & 1) << 2) \
                    | (((c >> (m - 1 - templates[t, 1])) & 1) << 1) \
                    | ((c >> (m - 1 - templates[t, 2])) & 1)
                total += table[t, p]
            out[r] = total
        return out

    def doubled_scores_numba(codes: np.ndarray, roots: np.ndarray) -> np.ndarray:
        return _doubled_scores_nb(np.ascontiguousarray(codes, dtype=np.int64), np.ascontiguousarray(roots, dtype=np.int64))

    def weighted_generator_counts_numba(codes: np.ndarray, m: int, templates: np.ndarray, table: np.ndarray) -> np.ndarray:
        return _weighted_generator_counts_nb(
            np.ascontiguousarray(codes, dtype=np.int64),
            np.int64(m),
            np.ascontiguousarray(templates, dtype=np.int64),
            np.ascontiguousarray(table, dtype=np.int64),
        )


def _pick(backend: str | None):
    backend = backend or BACKEND
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is unavailable or disabled")
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    return backend


def doubled_scores(codes: np.ndarray, roots: np.ndarray, backend: str | None = None) -> np.ndarray:
    if _pick(backend) == "numba":
        return doubled_scores_numba(codes, roots)
    return doubled_scores_numpy(codes, roots)


def weighted_generator_counts(
    codes: np.ndarray, m: int, templates: np.ndarray, table: np.ndarray, backend: str | None = None
) -> np.ndarray:
    if _pick(backend) == "numba":
        return weighted_generator_counts_numba(codes, m, templates, table)
    return weighted_generator_counts_numpy(codes, m, templates, table)
