"""Exact dense linear algebra over GF(p) and over the rationals.

GF(p) matrices are int64 numpy arrays with entries in [0, p); rational
matrices are object arrays of `fractions.Fraction`.  The coefficient field
is fixed per session (default GF(101)) and passed explicitly to every
operation.  All operations are pure; matrices are never mutated in place.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._kernels import rref_mod


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class GF:
    """The prime field GF(p)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p >= 1 << 20:
            raise ValueError(f"p={p} too large for the int64 kernels")
        self.p = p

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    # -- array constructors ------------------------------------------------
    def zeros(self, m: int, n: int) -> np.ndarray:
        return np.zeros((m, n), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def array(self, data) -> np.ndarray:
        return np.array(data, dtype=np.int64) % self.p

    def normalize(self, a: np.ndarray) -> np.ndarray:
        return a % self.p

    def rand(self, rng: np.random.Generator, m: int, n: int) -> np.ndarray:
        return rng.integers(0, self.p, size=(m, n), dtype=np.int64)

    # -- arithmetic ---------------------------------------------------------
    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        # float64 BLAS path is exact while p^2 * inner < 2^53 (entries are
        # normalized to [0, p)); tiny products stay on int64 to avoid the
        # conversion overhead
        inner = a.shape[1]
        if a.shape[0] * inner * b.shape[1] < 4096:
            return (a @ b) % self.p
        if self.p * self.p * max(inner, 1) < (1 << 53):
            return ((a.astype(np.float64) @ b.astype(np.float64)) % self.p).astype(
                np.int64
            )
        return (a @ b) % self.p

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.kron(a, b) % self.p

    def neg(self, a: np.ndarray) -> np.ndarray:
        return (-a) % self.p

    def inv_scalar(self, x: int) -> int:
        return pow(int(x) % self.p, self.p - 2, self.p)

    def rref(self, a: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
        return rref_mod(a, self.p)


class RationalField:
    """The field of rationals; matrices are object arrays of Fraction."""

    p = None

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def zeros(self, m: int, n: int) -> np.ndarray:
        a = np.empty((m, n), dtype=object)
        a[:] = Fraction(0)
        return a

    def eye(self, n: int) -> np.ndarray:
        a = self.zeros(n, n)
        for i in range(n):
            a[i, i] = Fraction(1)
        return a

    def array(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        out = np.empty(arr.shape, dtype=object)
        for idx in np.ndindex(arr.shape):
            out[idx] = Fraction(arr[idx])
        return out

    def normalize(self, a: np.ndarray) -> np.ndarray:
        return a

    def rand(self, rng: np.random.Generator, m: int, n: int) -> np.ndarray:
        ints = rng.integers(-20, 21, size=(m, n))
        out = np.empty((m, n), dtype=object)
        for i in range(m):
            for j in range(n):
                out[i, j] = Fraction(int(ints[i, j]))
        return out

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return a @ b

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.kron(a, b)

    def neg(self, a: np.ndarray) -> np.ndarray:
        return -a

    def inv_scalar(self, x):
        return Fraction(1) / Fraction(x)

    def rref(self, a: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
        a = a.astype(object)
        for idx in np.ndindex(a.shape):
            a[idx] = Fraction(a[idx])
        m, n = a.shape
        pivots = []
        r = 0
        for c in range(n):
            if r == m:
                break
            pr = next((i for i in range(r, m) if a[i, c] != 0), None)
            if pr is None:
                continue
            if pr != r:
                a[[r, pr]] = a[[pr, r]]
            a[r] = a[r] / a[r, c]
            for i in range(m):
                if i != r and a[i, c] != 0:
                    a[i] = a[i] - a[i, c] * a[r]
            pivots.append(c)
            r += 1
        return a, np.array(pivots, dtype=np.int64), r


QQ = RationalField()


def parse_field(spec: str):
    """Parse a field spec: 'p=101' (prime field) or 'Q' (rationals)."""
    spec = spec.strip()
    if spec in ("Q", "QQ"):
        return QQ
    if spec.startswith("p="):
        return GF(int(spec[2:]))
    raise ValueError(f"bad field spec {spec!r}; expected 'p=<prime>' or 'Q'")


def field_name(field) -> str:
    return "Q" if field.p is None else f"p={field.p}"


def rank(field, a: np.ndarray) -> int:
    return field.rref(a)[2]


def kernel_cols(field, a: np.ndarray) -> np.ndarray:
    """Basis of {x : a x = 0} as the columns of an (n, k) matrix."""
    m, n = a.shape
    if n == 0:
        return field.zeros(0, 0)
    if m == 0:
        return field.eye(n)
    r, pivots, rk = field.rref(a)
    return _kernel_from_rref(field, r, pivots, rk, n)


def _kernel_from_rref(field, r, pivots, rk: int, n: int) -> np.ndarray:
    free = np.array(
        [c for c in range(n) if c not in set(pivots.tolist())], dtype=np.int64
    )
    ker = field.zeros(n, len(free))
    if len(free) == 0:
        return ker
    one = 1 if field.p is not None else Fraction(1)
    ker[free, np.arange(len(free))] = one
    if rk:
        ker[pivots, :] = field.neg(r[:rk][:, free])
    return ker


def rref_rank_kernel(field, a: np.ndarray) -> tuple[int, list[np.ndarray]]:
    """Rank and a kernel basis (list of column vectors) of `a`."""
    ker = kernel_cols(field, a)
    return rank(field, a), [ker[:, j].copy() for j in range(ker.shape[1])]


@dataclass
class LinearSolution:
    """Solution set of a x = b: particular solution plus kernel span."""

    consistent: bool
    particular: np.ndarray | None  # (n, rhs) or None when inconsistent
    kernel: np.ndarray | None  # columns span ker(a)


def solve_linear(field, a: np.ndarray, b: np.ndarray, want_kernel: bool = True) -> LinearSolution:
    """Solve a x = b for each column of b; never raises on inconsistency.

    The kernel comes from the same row reduction (the pivots of the
    augmented matrix in the coefficient columns are the pivots of `a`).
    """
    if b.ndim == 1:
        b = b.reshape(-1, 1)
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"row mismatch: {a.shape} vs {b.shape}")
    m, n = a.shape
    k = b.shape[1]
    aug = np.concatenate([a, b], axis=1)
    r, pivots, rk = field.rref(aug)
    if any(c >= n for c in pivots.tolist()):
        return LinearSolution(False, None, None)
    x = field.zeros(n, k)
    piv_arr = np.asarray(pivots, dtype=np.int64)
    if rk:
        x[piv_arr, :] = r[:rk, n:]
    kernel = _kernel_from_rref(field, r[:, :n], piv_arr, rk, n) if want_kernel else None
    return LinearSolution(True, x, kernel)


def kronecker(field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return field.kron(a, b)


def inverse(field, a: np.ndarray) -> np.ndarray | None:
    """Inverse of a square matrix, or None if singular."""
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError("not square")
    if n == 0:
        return field.zeros(0, 0)
    sol = solve_linear(field, a, field.eye(n))
    if not sol.consistent or rank(field, a) < n:
        return None
    return sol.particular


def is_invertible(field, a: np.ndarray) -> bool:
    return a.shape[0] == a.shape[1] and rank(field, a) == a.shape[0]


def column_space_basis(field, a: np.ndarray) -> np.ndarray:
    """Subset of columns of `a` forming a basis of its column space."""
    _, pivots, _ = field.rref(a)
    return a[:, pivots.tolist()] if len(pivots) else field.zeros(a.shape[0], 0)


def row_space_basis(field, a: np.ndarray) -> np.ndarray:
    """Echelonized basis of the row space, one row per basis vector."""
    r, _, rk = field.rref(a)
    return r[:rk]


def in_span(field, rows: np.ndarray, vec: np.ndarray) -> bool:
    """Whether `vec` lies in the row space of `rows`."""
    if rows.shape[0] == 0:
        return not np.any(vec)
    return rank(field, rows) == rank(field, np.vstack([rows, vec.reshape(1, -1)]))
