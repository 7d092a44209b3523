"""Univariate polynomial arithmetic over GF(p).

Polynomials are 1-D int64 numpy arrays of coefficients, lowest degree
first, normalized so the leading coefficient is nonzero (the zero
polynomial is the empty array).  Only what the endomorphism-ring
machinery needs: gcd, powmod, squarefree/distinct-degree/equal-degree
splitting, and minimal polynomials of matrices.
"""

from __future__ import annotations

import numpy as np

from .linalg import GF, kernel_cols, solve_linear


def trim(a: np.ndarray) -> np.ndarray:
    nz = np.nonzero(a)[0]
    return a[: nz[-1] + 1] if nz.size else a[:0]


def deg(a: np.ndarray) -> int:
    return len(a) - 1  # -1 for the zero polynomial


def add(p: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] += a
    out[: len(b)] += b
    return trim(out % p)


def mul(p: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return a[:0]
    return trim(np.convolve(a, b) % p)


def divmod_poly(p: int, a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    a = a.copy()
    q = np.zeros(max(len(a) - len(b) + 1, 0), dtype=np.int64)
    inv = pow(int(b[-1]), p - 2, p)
    while len(a) >= len(b) and len(a):
        shift = len(a) - len(b)
        c = (a[-1] * inv) % p
        q[shift] = c
        a[shift:] = (a[shift:] - c * b) % p
        a = trim(a)
    return trim(q), a


def mod(p: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return divmod_poly(p, a, b)[1]


def monic(p: int, a: np.ndarray) -> np.ndarray:
    if len(a) == 0:
        return a
    return (a * pow(int(a[-1]), p - 2, p)) % p


def gcd(p: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a, b = trim(a % p), trim(b % p)
    while len(b):
        a, b = b, mod(p, a, b)
    return monic(p, a)


def powmod(p: int, base: np.ndarray, e: int, m: np.ndarray) -> np.ndarray:
    result = np.array([1], dtype=np.int64)
    base = mod(p, base, m)
    while e > 0:
        if e & 1:
            result = mod(p, mul(p, result, base), m)
        base = mod(p, mul(p, base, base), m)
        e >>= 1
    return result


def derivative(p: int, a: np.ndarray) -> np.ndarray:
    if len(a) <= 1:
        return a[:0]
    return trim((a[1:] * np.arange(1, len(a), dtype=np.int64)) % p)


def squarefree_part_split(p: int, f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split monic f as (g, h) with g squarefree, h = f / g-ish cofactor.

    Returns (squarefree part, cofactor gcd(f, f')).  In characteristic p a
    vanishing derivative means f is a p-th power; the caller never hits
    that case for minimal polynomials of matrices of size < p.
    """
    d = derivative(p, f)
    if len(d) == 0:
        raise ArithmeticError("polynomial has zero derivative (degree >= p)")
    g = gcd(p, f, d)
    sqfree, _ = divmod_poly(p, f, g)
    return monic(p, sqfree), g


def _equal_degree_split(p: int, f: np.ndarray, d: int, rng: np.random.Generator) -> np.ndarray:
    """Cantor-Zassenhaus: a proper monic factor of squarefree f, all of
    whose irreducible factors have degree d (requires deg f > d, p odd)."""
    n = deg(f)
    while True:
        a = rng.integers(0, p, size=n, dtype=np.int64)
        a = trim(a)
        if deg(a) < 1:
            continue
        g = gcd(p, a, f)
        if 0 < deg(g) < n:
            return g
        b = powmod(p, a, (p**d - 1) // 2, f)
        g = gcd(p, add(p, b, np.array([p - 1], dtype=np.int64)), f)
        if 0 < deg(g) < n:
            return g


def factor(p: int, f: np.ndarray, rng: np.random.Generator) -> list[tuple[np.ndarray, int]]:
    """Full factorization of monic f into (irreducible, multiplicity) pairs."""
    if p == 2:
        raise NotImplementedError("factorization implemented for odd p only")
    f = monic(p, trim(f % p))
    if deg(f) < 1:
        return []
    result: list[tuple[np.ndarray, int]] = []
    # square-free decomposition by repeated gcd with the derivative
    stack = [(f, 1)]
    squarefrees: list[tuple[np.ndarray, int]] = []
    while stack:
        g, m = stack.pop()
        if deg(g) < 1:
            continue
        sq, cof = squarefree_part_split(p, g)
        if deg(sq) >= 1:
            squarefrees.append((sq, m))
        if deg(cof) >= 1:
            stack.append((cof, m + 1))
    # merge repeated squarefree parts: an irreducible u dividing f with
    # multiplicity m shows up in the squarefree part at every level <= m
    for sq, m in squarefrees:
        for irr in _factor_squarefree(p, sq, rng):
            for i, (u, mult) in enumerate(result):
                if len(u) == len(irr) and np.array_equal(u, irr):
                    result[i] = (u, mult + 1)
                    break
            else:
                result.append((irr, 1))
    return result


def _factor_squarefree(p: int, f: np.ndarray, rng: np.random.Generator) -> list[np.ndarray]:
    """Irreducible factors of a monic squarefree f (distinct+equal degree)."""
    out: list[np.ndarray] = []
    x = np.array([0, 1], dtype=np.int64)
    h = x.copy()
    rest = f
    d = 0
    while deg(rest) > 0:
        d += 1
        if deg(rest) < 2 * d:
            out.append(monic(p, rest))
            break
        h = powmod(p, h, p, rest)
        g = gcd(p, add(p, h, np.array([0, p - 1], dtype=np.int64)), rest)
        if deg(g) > 0:
            # g = product of all degree-d irreducible factors
            pieces = [g]
            while pieces:
                piece = pieces.pop()
                if deg(piece) == d:
                    out.append(monic(p, piece))
                else:
                    split = _equal_degree_split(p, piece, d, rng)
                    pieces.append(split)
                    pieces.append(divmod_poly(p, piece, split)[0])
            rest = divmod_poly(p, rest, g)[0]
            h = mod(p, h, rest)
    return out


def coprime_split(p: int, f: np.ndarray, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray] | None:
    """Split monic f = g * h with gcd(g, h) = 1, both nonconstant.

    Returns None when f is primary (a power of a single irreducible).
    """
    facs = factor(p, f, rng)
    if len(facs) <= 1:
        return None
    g = np.array([1], dtype=np.int64)
    u, m = facs[0]
    for _ in range(m):
        g = mul(p, g, u)
    h, r = divmod_poly(p, f, g)
    assert len(r) == 0
    return g, h


def eval_poly_matrix(field: GF, f: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Evaluate f at a square matrix by Horner's rule."""
    n = a.shape[0]
    out = field.zeros(n, n)
    for c in f[::-1]:
        out = field.matmul(out, a)
        out[np.diag_indices(n)] = (out[np.diag_indices(n)] + int(c)) % field.p
    return out


def minimal_polynomial(field: GF, a: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Monic minimal polynomial of a square matrix over GF(p).

    Takes lcms of Krylov-local minimal polynomials of random vectors until
    the candidate annihilates the matrix.  The local minimal polynomial is
    read off a single row reduction of the Krylov matrix: its degree is the
    first non-pivot column.
    """
    p = field.p
    n = a.shape[0]
    if n == 0:
        return np.array([1], dtype=np.int64)
    m = np.array([1], dtype=np.int64)
    for _ in range(n + 4):
        if deg(m) >= 1 and not np.any(eval_poly_matrix(field, m, a)):
            return m
        v = rng.integers(0, p, size=(n, 1), dtype=np.int64)
        if not np.any(v):
            continue
        vecs = [v]
        for _ in range(n + 1):
            vecs.append(field.matmul(a, vecs[-1]))
        kry = np.concatenate(vecs, axis=1)
        _, pivots, _ = field.rref(kry)
        piv = set(int(c) for c in pivots)
        k = next(i for i in range(n + 2) if i not in piv)
        sol = solve_linear(field, kry[:, :k], kry[:, k : k + 1])
        assert sol.consistent
        local = np.zeros(k + 1, dtype=np.int64)
        local[:k] = (-sol.particular[:, 0]) % p
        local[k] = 1
        m = lcm(p, m, local)
    if not np.any(eval_poly_matrix(field, m, a)):
        return m
    raise ArithmeticError("minimal polynomial computation failed to converge")


def lcm(p: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if deg(a) < 1:
        return monic(p, b) if len(b) else b
    if deg(b) < 1:
        return monic(p, a)
    g = gcd(p, a, b)
    q, _ = divmod_poly(p, a, g)
    return monic(p, mul(p, q, b))
