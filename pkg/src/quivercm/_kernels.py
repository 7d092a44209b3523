"""Mod-p row reduction kernels.

Two interchangeable backends: a numba @njit kernel (default) and a
vectorized pure-numpy one.  Set QUIVERCM_NO_NUMBA=1 before import to force
the numpy path; `set_backend()` switches at runtime (used by the benchmark
and by tests that exercise both paths).

All matrices are int64 numpy arrays with entries normalized to [0, p).
Entries and the modulus must satisfy p**2 * max(dim) < 2**63, which holds
comfortably for every prime this package accepts (p < 2**20).
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False


def _rref_numpy(a: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray, int]:
    """Reduced row echelon form over GF(p), vectorized numpy version."""
    a = np.ascontiguousarray(a % p)
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        if np.any(col):
            a -= np.outer(col, a[r])
            a %= p
        pivots.append(c)
        r += 1
    return a, np.array(pivots, dtype=np.int64), r


def _rref_loops(a, p):  # compiled by numba below; same contract as _rref_numpy
    m, n = a.shape
    pivots = np.empty(n if n < m else m, dtype=np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        pr = -1
        for i in range(r, m):
            if a[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(n):
                t = a[r, j]
                a[r, j] = a[pr, j]
                a[pr, j] = t
        # modular inverse by binary exponentiation
        base = a[r, c]
        e = p - 2
        inv = 1
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for j in range(c, n):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(m):
            if i != r and a[i, c] != 0:
                f = a[i, c]
                for j in range(c, n):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        pivots[r] = c
        r += 1
    return a, pivots[:r], r


if _HAVE_NUMBA:
    _rref_numba = njit(cache=True)(_rref_loops)


def _rref_numba_entry(a: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray, int]:
    a = np.ascontiguousarray(a % p)
    return _rref_numba(a, p)


_BACKENDS = {"numpy": _rref_numpy}
if _HAVE_NUMBA:
    _BACKENDS["numba"] = _rref_numba_entry

_env_off = os.environ.get("QUIVERCM_NO_NUMBA", "") in ("1", "true", "yes")
_active = "numpy" if (_env_off or not _HAVE_NUMBA) else "numba"


def set_backend(name: str) -> None:
    """Select 'numba' or 'numpy' row-reduction backend."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; have {sorted(_BACKENDS)}")
    _active = name


def get_backend() -> str:
    return _active


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray, int]:
    """Return (rref, pivot column indices, rank) of `a` over GF(p)."""
    if a.size == 0:
        return a.copy() % p if a.size else a.copy(), np.empty(0, dtype=np.int64), 0
    return _BACKENDS[_active](a.astype(np.int64, copy=True), p)
