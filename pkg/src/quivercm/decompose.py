"""Krull-Schmidt decomposition and certified isomorphism testing.

Splitting strategy: random endomorphisms are split along coprime factors
of their minimal polynomials (primary decomposition); when no random
element splits, the endomorphism ring is certified local through its
Jacobson radical.  The radical is the kernel of the trace form of the
action on the module, which is valid over GF(p) only when p exceeds the
module's total dimension; the computed radical is always re-verified to
be nilpotent, and too-small fields raise instead of silently lying.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import polys
from .linalg import inverse, kernel_cols, solve_linear
from .rep import (
    ModuleMap,
    Representation,
    direct_sum,
    hom_space,
    identity_map,
    kernel_of_map,
)


class FieldTooSmall(ValueError):
    """p <= dim M: the trace-form radical is not certified."""


class SplitBudgetExceeded(RuntimeError):
    """Random splitting failed to resolve a non-local endomorphism ring."""


def total_matrix(f: ModuleMap) -> np.ndarray:
    """Block-diagonal action of an endomorphism on the total space."""
    fld = f.source.field
    n = f.source.total_dim()
    out = fld.zeros(n, n)
    off = 0
    for v in f.source.algebra.vertices:
        d = f.source.dims[v]
        out[off : off + d, off : off + d] = f.blocks[v]
        off += d
    return out


def poly_of_endo(f: ModuleMap, poly: np.ndarray) -> ModuleMap:
    """Evaluate a polynomial at an endomorphism, vertexwise by Horner."""
    fld = f.source.field
    blocks = {}
    for v in f.source.algebra.vertices:
        d = f.source.dims[v]
        acc = fld.zeros(d, d)
        for c in poly[::-1]:
            acc = fld.matmul(acc, f.blocks[v])
            acc[np.diag_indices(d)] = (acc[np.diag_indices(d)] + int(c)) % fld.p
        blocks[v] = acc
    return ModuleMap(f.source, f.source, blocks)


def random_combo(maps: list[ModuleMap], rng: np.random.Generator) -> ModuleMap:
    fld = maps[0].source.field
    coefs = rng.integers(0, fld.p, size=len(maps))
    out = maps[0].scale(int(coefs[0]))
    for c, f in zip(coefs[1:], maps[1:]):
        out = out.add(f.scale(int(c)))
    return out


def end_radical(end_basis: list[ModuleMap]) -> np.ndarray:
    """Coordinates (columns) of the Jacobson radical of End(M) in the
    given basis, via the trace form; requires p > dim M."""
    m = end_basis[0].source
    fld = m.field
    if fld.p is not None and fld.p <= m.total_dim():
        raise FieldTooSmall(
            f"radical computation needs p > dim M = {m.total_dim()}, have p = {fld.p}"
        )
    mats = [total_matrix(f) for f in end_basis]
    k = len(mats)
    gram = fld.zeros(k, k)
    for i in range(k):
        for j in range(i, k):
            t = int(np.trace(fld.matmul(mats[i], mats[j])) % fld.p)
            gram[i, j] = t
            gram[j, i] = t
    rad = kernel_cols(fld, gram)
    _assert_nilpotent(fld, mats, rad)
    return rad


def _assert_nilpotent(fld, mats, rad_coords) -> None:
    """Iterated nilpotency check on the computed radical subspace."""
    if rad_coords.shape[1] == 0:
        return
    n = mats[0].shape[0]
    span = [
        sum((int(rad_coords[i, j]) * mats[i] for i in range(len(mats))), fld.zeros(n, n))
        % fld.p
        for j in range(rad_coords.shape[1])
    ]
    cur = span
    for _ in range(n + 1):
        if not cur:
            return
        nxt_rows = []
        for a in cur:
            for b in span:
                prod = fld.matmul(a, b)
                if np.any(prod):
                    nxt_rows.append(prod.reshape(-1))
        if not nxt_rows:
            return
        basis_rows, _, rk = fld.rref(np.stack(nxt_rows))
        cur = [basis_rows[i].reshape(n, n) for i in range(rk)]
    raise ArithmeticError("trace-form radical is not nilpotent; field too small?")


def _try_primary_split(
    m: Representation, end_basis: list[ModuleMap], rng: np.random.Generator, tries: int
) -> tuple[tuple[Representation, ModuleMap], tuple[Representation, ModuleMap]] | None:
    """Split m along coprime factors of a random endomorphism's minimal
    polynomial; returns ((part, inclusion), (part, inclusion)) or None."""
    fld = m.field
    candidates = list(end_basis) if len(end_basis) <= tries // 2 else []
    while len(candidates) < tries:
        candidates.append(random_combo(end_basis, rng))
    for f in candidates:
        a = total_matrix(f)
        mp = polys.minimal_polynomial(fld, a, rng)
        if polys.deg(mp) < 2:
            continue
        split = polys.coprime_split(fld.p, mp, rng)
        if split is None:
            continue
        g, h = split
        part1 = kernel_of_map(poly_of_endo(f, g))
        part2 = kernel_of_map(poly_of_endo(f, h))
        if part1[0].total_dim() and part2[0].total_dim():
            assert part1[0].total_dim() + part2[0].total_dim() == m.total_dim()
            return part1, part2
    return None


@dataclass
class Summand:
    rep: Representation
    multiplicity: int
    end_over_rad_dim: int

    @property
    def absolutely_indecomposable(self) -> bool:
        return self.end_over_rad_dim == 1


def end_over_rad_dim(m: Representation, end_basis=None) -> int:
    """dim End(M)/rad End(M); equals 1 exactly for absolutely
    indecomposable M (assuming M is indecomposable)."""
    ends = end_basis if end_basis is not None else hom_space(m, m)
    if len(ends) == 1:
        return 1
    return len(ends) - end_radical(ends).shape[1]


def strip_projective_summands(
    m: Representation, rng: np.random.Generator | None = None
) -> tuple[Representation, dict[str, int]]:
    """Split off all projective direct summands without a full
    Krull-Schmidt run; returns (remainder, counts per vertex).

    P(v) splits off M exactly when some composite P(v) -> M -> P(v) is a
    unit of the local ring End(P(v)), i.e. has nonzero idempotent
    coefficient; maps P(v) -> M cost nothing (Yoneda columns).
    """
    from .rep import (
        identity_map,
        kernel_of_map,
        projective_module,
        projective_slots,
    )

    alg = m.algebra
    fld = m.field
    stripped: dict[str, int] = {v: 0 for v in alg.vertices}
    cur = m
    progress = True
    while progress and cur.total_dim():
        progress = False
        for v in alg.vertices:
            if cur.dims[v] == 0:
                continue
            p = projective_module(alg, v)
            gen_col = projective_slots(alg, v)[alg.idempotent_index(v)][1]
            back = hom_space(cur, p)
            if not back:
                continue
            found = None
            for g in back:
                coefs = g.blocks[v][gen_col, :]
                nz = np.nonzero(coefs)[0]
                if nz.size:
                    found = (g, int(nz[0]))
                    break
            if found is None:
                continue
            g, col = found
            f = _yoneda_map(alg, v, cur, col)
            h = g.compose(f)  # unit of End(P(v))
            hinv = invert_endo(h)
            # idempotent onto the P(v) summand; its kernel is a complement
            e = f.compose(hinv).compose(g)
            ker, _ = kernel_of_map(e)
            assert ker.total_dim() + p.total_dim() == cur.total_dim()
            cur = ker
            stripped[v] += 1
            progress = True
    return cur, stripped


def _yoneda_map(alg, v: str, m: Representation, col: int) -> ModuleMap:
    """The map P(v) -> M sending the idempotent generator to the col-th
    basis vector of M_v (the generator's image determines the whole map)."""
    from .rep import ModuleMap, projective_module, projective_slots

    fld = m.field
    p = projective_module(alg, v)
    gen = fld.zeros(m.dims[v], 1)
    gen[col, 0] = 1
    blocks = {w: fld.zeros(m.dims[w], p.dims[w]) for w in alg.vertices}
    for i, (w, c) in projective_slots(alg, v).items():
        vec = fld.matmul(m.word_matrix(alg.basis[i].word, v), gen)
        blocks[w][:, c : c + 1] = vec
    return ModuleMap(p, m, blocks)


def split_indecomposables(
    m: Representation, rng: np.random.Generator
) -> list[tuple[Representation, int]]:
    """Indecomposable pieces of m as (rep, dim End/rad) pairs.

    The radical certificate is computed first (it settles the common
    indecomposable case with one Gram kernel); pieces too large for the
    trace form (dim >= p) are split heuristically and reported with
    End/rad dim 0 when they resist splitting, which only happens past the
    knitting dimension caps.
    """
    if m.total_dim() == 0:
        return []
    stack = [m]
    out: list[tuple[Representation, int]] = []
    while stack:
        cur = stack.pop()
        ends = hom_space(cur, cur)
        if len(ends) == 1:
            out.append((cur, 1))
            continue
        try:
            sdim = len(ends) - end_radical(ends).shape[1]
        except FieldTooSmall:
            sdim = None
        if sdim == 1:
            out.append((cur, 1))
            continue
        split = _try_primary_split(cur, ends, rng, 60)
        if split is not None:
            stack.extend([split[0][0], split[1][0]])
            continue
        split = _try_primary_split(cur, ends, rng, 240)
        if split is not None:
            stack.extend([split[0][0], split[1][0]])
            continue
        out.append((cur, sdim if sdim is not None else 0))
    return out


def decompose(m: Representation, rng: np.random.Generator | None = None) -> list[Summand]:
    """Krull-Schmidt decomposition with multiplicities and End/rad dims."""
    rng = rng if rng is not None else np.random.default_rng(0)
    pieces = split_indecomposables(m, rng)
    groups: list[Summand] = []
    for rep, sdim in pieces:
        for g in groups:
            if is_isomorphic(g.rep, rep, rng)[0]:
                g.multiplicity += 1
                break
        else:
            groups.append(Summand(rep, 1, sdim))
    assert sum(g.rep.total_dim() * g.multiplicity for g in groups) == m.total_dim()
    return groups


def is_isomorphic(
    m: Representation,
    n: Representation,
    rng: np.random.Generator | None = None,
    trials: int = 25,
) -> tuple[bool, ModuleMap | None]:
    """Certified isomorphism test; returns an invertible intertwiner on yes.

    Random invertible search first.  The deterministic fallback is exact:
    for local End(m) a composite n -> m -> n outside rad End(m) is a unit
    (hence yields an isomorphism) and all composites inside the radical
    certify non-isomorphism; non-local endomorphism rings fall back to
    matching Krull-Schmidt decompositions.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    if m.dim_vector() != n.dim_vector():
        return False, None
    if m.total_dim() == 0:
        return True, ModuleMap(m, n, {})
    if m is n:
        return True, identity_map(m)
    homs = hom_space(m, n)
    if not homs:
        return False, None
    for _ in range(trials):
        f = random_combo(homs, rng)
        if f.is_isomorphism():
            return True, f
    back = hom_space(n, m)
    if not back:
        return False, None
    ends = hom_space(m, m)
    rad = end_radical(ends)
    local = (len(ends) - rad.shape[1]) == 1
    if not local:
        return _iso_by_decomposition(m, n, rng)
    end_flat = np.stack([e.flatten() for e in ends])
    for g in back:
        for f in homs:
            comp = g.compose(f)  # composite m -> n -> m
            u = _coords_in_basis(m.field, end_flat, comp.flatten())
            if u is None:
                raise ArithmeticError("composite escaped End(m) span")
            if not _in_col_span(m.field, rad, u):
                # unit of the local ring End(m): f is split mono, and equal
                # dimension vectors force it to be an isomorphism
                assert f.is_isomorphism()
                return True, f
    return False, None


def _iso_by_decomposition(m, n, rng):
    ms = split_indecomposables(m, rng)
    ns = split_indecomposables(n, rng)
    if len(ms) != len(ns):
        return False, None
    used = [False] * len(ns)
    for rep, _ in ms:
        found = False
        for j, (rep2, _) in enumerate(ns):
            if used[j]:
                continue
            if is_isomorphic(rep, rep2, rng)[0]:
                used[j] = True
                found = True
                break
        if not found:
            return False, None
    # multisets match, so the modules are isomorphic; hunt harder for an
    # explicit certificate (isomorphisms are dense in Hom over GF(p))
    homs = hom_space(m, n)
    for _ in range(200):
        f = random_combo(homs, rng)
        if f.is_isomorphism():
            return True, f
    return True, None


def _coords_in_basis(fld, basis_rows: np.ndarray, vec: np.ndarray) -> np.ndarray | None:
    sol = solve_linear(fld, basis_rows.T, vec.reshape(-1, 1))
    return sol.particular[:, 0] if sol.consistent else None


def _in_col_span(fld, cols: np.ndarray, vec: np.ndarray) -> bool:
    if cols.shape[1] == 0:
        return not np.any(vec)
    return solve_linear(fld, cols, vec.reshape(-1, 1)).consistent


def invert_endo(f: ModuleMap) -> ModuleMap:
    fld = f.source.field
    blocks = {}
    for v in f.source.algebra.vertices:
        inv = inverse(fld, f.blocks[v])
        if inv is None:
            raise ArithmeticError("endomorphism not invertible")
        blocks[v] = inv
    return ModuleMap(f.target, f.source, blocks)
