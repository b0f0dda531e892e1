"""Hot numeric kernels for the similarity scan over the embedding matrix.

Two interchangeable implementations of the same dense score scan: a
numba-compiled loop (default whenever numba is importable) and a pure-numpy
path.  Set ``QIRK_KERNEL=numpy`` or ``QIRK_KERNEL=numba`` to force one;
``benchmarks/bench_kernels.py`` compares them.

numba is imported lazily so CLI start-up does not pay for the JIT machinery
when the numpy path is selected.
"""

from __future__ import annotations

import os

import numpy as np

_ENV_VAR = "QIRK_KERNEL"

_active: str | None = None
_numba_scores = None


def _scores_numpy(matrix: np.ndarray, query: np.ndarray) -> np.ndarray:
    return (matrix @ query).astype(np.float64)


def _build_numba_scores():
    import numba
    from numba import njit, prange

    # The portable threading layer; the TBB probe warns on older TBB builds.
    numba.config.THREADING_LAYER = "workqueue"

    @njit(cache=True, parallel=True)
    def scores(matrix, query):  # pragma: no cover - compiled
        n, d = matrix.shape
        out = np.empty(n, dtype=np.float64)
        for i in prange(n):
            acc = 0.0
            for j in range(d):
                acc += matrix[i, j] * query[j]
            out[i] = acc
        return out

    return scores


def _select() -> str:
    forced = os.environ.get(_ENV_VAR, "").strip().lower()
    if forced and forced not in ("numba", "numpy"):
        raise ValueError(f"{_ENV_VAR} must be 'numba' or 'numpy', got {forced!r}")
    if forced == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if forced == "numba":
            raise RuntimeError("QIRK_KERNEL=numba but numba is not installed")
        return "numpy"
    return "numba"


def active_kernel() -> str:
    """Name of the scan implementation in use ('numba' or 'numpy')."""
    global _active, _numba_scores
    if _active is None:
        _active = _select()
        if _active == "numba":
            _numba_scores = _build_numba_scores()
    return _active


def reset_kernel() -> None:
    """Drop the cached selection (re-reads the environment on next use)."""
    global _active, _numba_scores
    _active = None
    _numba_scores = None


def similarity_scores(matrix: np.ndarray, query: np.ndarray) -> np.ndarray:
    """Dot product of every matrix row with the query, as float64.

    Rows and query are unit-normalized upstream, so this is cosine
    similarity.  ``matrix`` is (n, d) float32 C-contiguous, ``query`` (d,)
    float32.
    """
    if matrix.shape[0] == 0:
        return np.empty(0, dtype=np.float64)
    if active_kernel() == "numba":
        return _numba_scores(matrix, query)
    return _scores_numpy(matrix, query)


def warmup() -> str:
    """Trigger JIT compilation outside any timed path; returns the kernel name."""
    m = np.zeros((2, 4), dtype=np.float32)
    q = np.zeros(4, dtype=np.float32)
    similarity_scores(m, q)
    return active_kernel()
