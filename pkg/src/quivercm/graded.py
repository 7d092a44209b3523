"""Z-graded modules over a positively graded bound quiver algebra.

A graded module is stored as finite-support slice data.  All nontrivial
operations route through a covering algebra: the bound quiver whose
vertices are (vertex, degree) pairs inside a window, with arrows raising
the degree by their grading.  Degree-0 morphisms, graded projective
covers, syzygies and decompositions are then ordinary module operations
over the covering algebra, with windows padded so that no projective
support is cut off.
"""

from __future__ import annotations

import numpy as np

from .algebra import BoundQuiverAlgebra, build_algebra_table
from .quiver import AlgebraPresentation, Arrow, Quiver, Relation
from . import rep as repmod
from .rep import Representation


class GradedRepresentation:
    __slots__ = ("algebra", "dims", "mats")

    def __init__(
        self,
        algebra: BoundQuiverAlgebra,
        dims: dict[tuple[str, int], int],
        mats: dict[tuple[str, int], np.ndarray] | None = None,
    ):
        self.algebra = algebra
        self.dims = {k: int(v) for k, v in dims.items() if v}
        self.mats = {}
        fld = algebra.field
        mats = mats or {}
        for a in algebra.arrows:
            for (v, d), dim_src in self.dims.items():
                if v != a.source:
                    continue
                tgt_dim = self.dims.get((a.target, d + a.degree), 0)
                m = mats.get((a.label, d))
                if m is None:
                    m = fld.zeros(tgt_dim, dim_src)
                if m.shape != (tgt_dim, dim_src):
                    raise ValueError(
                        f"slice ({a.label}, {d}): shape {m.shape}, expected {(tgt_dim, dim_src)}"
                    )
                if tgt_dim and dim_src:
                    self.mats[(a.label, d)] = fld.normalize(m)

    @property
    def field(self):
        return self.algebra.field

    def support(self) -> tuple[int, int] | None:
        if not self.dims:
            return None
        degs = [d for (_, d) in self.dims]
        return min(degs), max(degs)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def slice_dims(self, d: int) -> dict[str, int]:
        return {v: self.dims.get((v, d), 0) for v in self.algebra.vertices}

    def is_zero(self) -> bool:
        return not self.dims

    def __repr__(self) -> str:
        sup = self.support()
        return f"<GradedRep dim={self.total_dim()} support={sup}>"


# -- covering algebras ------------------------------------------------------------


def _cover_vertex(v: str, d: int) -> str:
    return f"{v}~{d}"


def covering_algebra(alg: BoundQuiverAlgebra, lo: int, hi: int) -> BoundQuiverAlgebra:
    """Truncated Z-covering: vertices (v, d) for lo <= d <= hi, arrows
    raising degree by their grading, relations lifted at every admissible
    start degree."""
    cache = getattr(alg, "_cover_cache", None)
    if cache is None:
        cache = {}
        alg._cover_cache = cache
    key = (lo, hi)
    if key in cache:
        return cache[key]
    q = alg.quiver
    verts = tuple(_cover_vertex(v, d) for d in range(lo, hi + 1) for v in q.vertices)
    arrows = []
    for d in range(lo, hi + 1):
        for a in q.arrows:
            if lo <= d + a.degree <= hi:
                arrows.append(
                    Arrow(f"{a.label}~{d}", _cover_vertex(a.source, d), _cover_vertex(a.target, d + a.degree), 0)
                )
    rels = []
    for rel in alg.presentation.relations:
        g = sum(q.arrow(l).degree for l in rel.terms[0][1])
        for d in range(lo, hi - g + 1):
            terms = []
            for coef, w in rel.terms:
                cur = d
                lifted = []
                for lbl in w:
                    lifted.append(f"{lbl}~{cur}")
                    cur += q.arrow(lbl).degree
                terms.append((coef, tuple(lifted)))
            rels.append(Relation(tuple(terms)))
    pres = AlgebraPresentation(
        Quiver(verts, tuple(arrows)),
        tuple(rels),
        alg.field,
        name=f"{alg.presentation.name or 'A'}~[{lo},{hi}]",
    )
    cover = build_algebra_table(pres, alg.max_path_length)
    cover._base_algebra = alg
    cover._window = (lo, hi)
    cover._vertex_of = {_cover_vertex(v, d): (v, d) for v in q.vertices for d in range(lo, hi + 1)}
    cache[key] = cover
    return cover


def window_for(*xs: GradedRepresentation, pad_above: int = 0) -> tuple[int, int]:
    los, his = [], []
    for x in xs:
        sup = x.support()
        if sup is not None:
            los.append(sup[0])
            his.append(sup[1])
    if not los:
        return (0, 0)
    return min(los), max(his) + pad_above


def to_covering(x: GradedRepresentation, window: tuple[int, int]) -> Representation:
    lo, hi = window
    sup = x.support()
    if sup is not None and (sup[0] < lo or sup[1] > hi):
        raise ValueError("window does not contain the support")
    cover = covering_algebra(x.algebra, lo, hi)
    dims = {_cover_vertex(v, d): n for (v, d), n in x.dims.items()}
    mats = {f"{a}~{d}": m for (a, d), m in x.mats.items()}
    return Representation(cover, dims, mats, check=False)


def from_covering(r: Representation) -> GradedRepresentation:
    cover = r.algebra
    base = getattr(cover, "_base_algebra", None)
    if base is None:
        raise ValueError("representation is not over a covering algebra")
    dims = {}
    for cv, n in r.dims.items():
        if n:
            dims[cover._vertex_of[cv]] = n
    mats = {}
    for a in cover.arrows:
        v, d = cover._vertex_of[a.source]
        lbl = a.label.rsplit("~", 1)[0]
        if dims.get((v, d)) and r.mats[a.label].shape[0]:
            mats[(lbl, d)] = r.mats[a.label]
    return GradedRepresentation(base, dims, mats)


# -- functors ---------------------------------------------------------------------


def grade_shift(x: GradedRepresentation, i: int) -> GradedRepresentation:
    """X(i) with X(i)_j = X_{j+i}: slices move down by i."""
    if i == 0:
        return x
    dims = {(v, d - i): n for (v, d), n in x.dims.items()}
    mats = {(a, d - i): m for (a, d), m in x.mats.items()}
    return GradedRepresentation(x.algebra, dims, mats)


def truncate(x: GradedRepresentation, i: int, side: str) -> GradedRepresentation:
    """Degreewise truncation: '>=' keeps the submodule X_{>=i}, '<=' the
    quotient X/X_{>=i+1}; needs nonnegative arrow degrees (checked at
    presentation time)."""
    if side not in (">=", "<="):
        raise ValueError("side must be '>=' or '<='")
    if side == ">=":
        keep = lambda d: d >= i
    else:
        keep = lambda d: d <= i
    dims = {(v, d): n for (v, d), n in x.dims.items() if keep(d)}
    mats = {}
    for (a, d), m in x.mats.items():
        deg = x.algebra.quiver.arrow(a).degree
        if keep(d) and keep(d + deg):
            mats[(a, d)] = m
    return GradedRepresentation(x.algebra, dims, mats)


def forget(x: GradedRepresentation, a: int = 1):
    """Forgetful functor: a = 0 returns x, a = 1 the underlying ungraded
    module, a >= 2 the Z/aZ-graded bundle over the cyclic covering."""
    if a == 0:
        return x
    if a == 1:
        return _forget_to_modulus(x, None)
    return _forget_to_modulus(x, a)


def cyclic_covering_algebra(alg: BoundQuiverAlgebra, a: int) -> BoundQuiverAlgebra:
    cache = getattr(alg, "_cyclic_cover_cache", None)
    if cache is None:
        cache = {}
        alg._cyclic_cover_cache = cache
    if a in cache:
        return cache[a]
    q = alg.quiver
    verts = tuple(_cover_vertex(v, r) for r in range(a) for v in q.vertices)
    arrows = []
    for r in range(a):
        for ar in q.arrows:
            arrows.append(
                Arrow(
                    f"{ar.label}~{r}",
                    _cover_vertex(ar.source, r),
                    _cover_vertex(ar.target, (r + ar.degree) % a),
                    0,
                )
            )
    rels = []
    for rel in alg.presentation.relations:
        for r in range(a):
            terms = []
            for coef, w in rel.terms:
                cur = r
                lifted = []
                for lbl in w:
                    lifted.append(f"{lbl}~{cur}")
                    cur = (cur + q.arrow(lbl).degree) % a
                terms.append((coef, tuple(lifted)))
            rels.append(Relation(tuple(terms)))
    pres = AlgebraPresentation(
        Quiver(verts, tuple(arrows)),
        tuple(rels),
        alg.field,
        name=f"{alg.presentation.name or 'A'}~Z/{a}",
    )
    cover = build_algebra_table(pres, alg.max_path_length)
    cover._base_algebra = alg
    cover._modulus = a
    cache[a] = cover
    return cover


def _forget_to_modulus(x: GradedRepresentation, a: int | None):
    alg = x.algebra
    fld = alg.field
    sup = x.support()
    if sup is None:
        if a is None:
            return repmod.zero_rep(alg)
        return repmod.zero_rep(cyclic_covering_algebra(alg, a))
    lo, hi = sup
    # group slice degrees per collapsed vertex
    if a is None:
        groups = {v: [(v, d) for d in range(lo, hi + 1) if (v, d) in x.dims] for v in alg.vertices}
        target_alg = alg
        vname = {v: v for v in alg.vertices}
    else:
        target_alg = cyclic_covering_algebra(alg, a)
        groups = {}
        vname = {}
        for v in alg.vertices:
            for r in range(a):
                key = (v, r)
                groups[key] = [
                    (v, d) for d in range(lo, hi + 1) if d % a == r and (v, d) in x.dims
                ]
                vname[key] = _cover_vertex(v, r)
    offsets: dict[tuple[str, int], int] = {}
    dims_out: dict[str, int] = {}
    for gkey, slices in groups.items():
        total = 0
        for sl in slices:
            offsets[sl] = total
            total += x.dims[sl]
        dims_out[vname[gkey]] = total
    mats_out: dict[str, np.ndarray] = {}
    for ar in alg.arrows:
        if a is None:
            pairs = [(ar.label, vname[ar.source], vname[ar.target], None)]
        else:
            pairs = [
                (f"{ar.label}~{r}", _cover_vertex(ar.source, r), _cover_vertex(ar.target, (r + ar.degree) % a), r)
                for r in range(a)
            ]
        for out_label, sv, tv, r in pairs:
            block = fld.zeros(dims_out.get(tv, 0), dims_out.get(sv, 0))
            for (lbl, d), m in x.mats.items():
                if lbl != ar.label:
                    continue
                if r is not None and d % a != r:
                    continue
                so = offsets.get((ar.source, d))
                to = offsets.get((ar.target, d + ar.degree))
                if so is None or to is None:
                    continue
                block[to : to + m.shape[0], so : so + m.shape[1]] = m
            mats_out[out_label] = block
    return Representation(target_alg, dims_out, mats_out, check=False)


# -- standard graded modules --------------------------------------------------------


def graded_regular(alg: BoundQuiverAlgebra) -> GradedRepresentation:
    """The algebra as a graded right module over itself: slice (v, d) is
    spanned by the basis paths into v of degree d."""
    fld = alg.field
    slot: dict[int, tuple[str, int, int]] = {}
    dims: dict[tuple[str, int], int] = {}
    for i, b in enumerate(alg.basis):
        key = (b.target, b.degree)
        slot[i] = (b.target, b.degree, dims.get(key, 0))
        dims[key] = dims.get(key, 0) + 1
    mats: dict[tuple[str, int], np.ndarray] = {}
    for a in alg.arrows:
        for d in {deg for (v, deg) in dims if v == a.source}:
            src = [i for i, b in enumerate(alg.basis) if b.target == a.source and b.degree == d]
            tgt_dim = dims.get((a.target, d + a.degree), 0)
            m = fld.zeros(tgt_dim, len(src))
            for col, i in enumerate(src):
                for c, k in alg.right_mult_arrow(i, a.label):
                    m[slot[k][2], col] = c
            mats[(a.label, d)] = m
    return GradedRepresentation(alg, dims, mats)


def graded_simple(alg: BoundQuiverAlgebra, v: str, d: int = 0) -> GradedRepresentation:
    return GradedRepresentation(alg, {(v, d): 1}, {})


def graded_shifted_projective(alg: BoundQuiverAlgebra, v: str, d: int = 0) -> GradedRepresentation:
    """e_v A generated in degree d, i.e. P(v)(-d)."""
    fld = alg.field
    paths = alg.basis_indices(source=v)
    dims: dict[tuple[str, int], int] = {}
    slot: dict[int, int] = {}
    for i in paths:
        b = alg.basis[i]
        key = (b.target, b.degree + d)
        slot[i] = dims.get(key, 0)
        dims[key] = dims.get(key, 0) + 1
    mats: dict[tuple[str, int], np.ndarray] = {}
    for a in alg.arrows:
        degrees = {alg.basis[i].degree + d for i in paths if alg.basis[i].target == a.source}
        for dd in degrees:
            src = [i for i in paths if alg.basis[i].target == a.source and alg.basis[i].degree + d == dd]
            tgt_dim = dims.get((a.target, dd + a.degree), 0)
            m = fld.zeros(tgt_dim, len(src))
            for col, i in enumerate(src):
                for c, k in alg.right_mult_arrow(i, a.label):
                    m[slot[k], col] = c
            mats[(a.label, dd)] = m
    return GradedRepresentation(alg, dims, mats)


def graded_direct_sum(xs: list[GradedRepresentation]) -> GradedRepresentation:
    if not xs:
        raise ValueError("empty graded direct sum")
    alg = xs[0].algebra
    fld = alg.field
    dims: dict[tuple[str, int], int] = {}
    for x in xs:
        for k, n in x.dims.items():
            dims[k] = dims.get(k, 0) + n
    mats: dict[tuple[str, int], np.ndarray] = {}
    keys = {k for x in xs for k in x.mats}
    for (a, d) in keys:
        ar = alg.quiver.arrow(a)
        rows = dims.get((ar.target, d + ar.degree), 0)
        cols = dims.get((ar.source, d), 0)
        m = fld.zeros(rows, cols)
        ro = co = 0
        for x in xs:
            xr = x.dims.get((ar.target, d + ar.degree), 0)
            xc = x.dims.get((ar.source, d), 0)
            blk = x.mats.get((a, d))
            if blk is not None:
                m[ro : ro + xr, co : co + xc] = blk
            ro += xr
            co += xc
        mats[(a, d)] = m
    return GradedRepresentation(alg, dims, mats)


# -- graded homological machinery ----------------------------------------------------


def graded_hom_dim(x: GradedRepresentation, y: GradedRepresentation) -> int:
    """Dimension of the degree-0 morphism space."""
    if x.is_zero() or y.is_zero():
        return 0
    win = window_for(x, y)
    return repmod.hom_dim(to_covering(x, win), to_covering(y, win))


def graded_syzygy(x: GradedRepresentation) -> GradedRepresentation:
    """Kernel of the minimal graded projective cover."""
    if x.is_zero():
        return x
    win = window_for(x, pad_above=x.algebra.max_degree)
    cov = to_covering(x, win)
    return from_covering(_reembed(repmod.syzygy(cov), cov.algebra))


def graded_cover_dims(x: GradedRepresentation) -> int:
    win = window_for(x, pad_above=x.algebra.max_degree)
    p, _ = repmod.projective_cover(to_covering(x, win))
    return p.total_dim()


def graded_is_projective(x: GradedRepresentation) -> bool:
    if x.is_zero():
        return True
    return graded_cover_dims(x) == x.total_dim()


def _reembed(r: Representation, cover: BoundQuiverAlgebra) -> Representation:
    """Ensure a rep constructed over `cover` is tagged with that algebra."""
    if r.algebra is cover:
        return r
    return Representation(cover, r.dims, r.mats, check=False)


def graded_iso(x: GradedRepresentation, y: GradedRepresentation, rng=None) -> bool:
    from .decompose import is_isomorphic

    if {k: v for k, v in x.dims.items()} != {k: v for k, v in y.dims.items()}:
        return False
    if x.is_zero():
        return True
    win = window_for(x, y)
    return is_isomorphic(to_covering(x, win), to_covering(y, win), rng)[0]


def graded_nonprojective_part(x: GradedRepresentation, rng=None) -> GradedRepresentation:
    """Strip graded-projective direct summands."""
    from .decompose import decompose

    if x.is_zero():
        return x
    win = window_for(x, pad_above=x.algebra.max_degree)
    cov = to_covering(x, win)
    keep: list[GradedRepresentation] = []
    for s in decompose(cov, rng):
        piece = from_covering(_reembed(s.rep, cov.algebra))
        if not graded_is_projective(piece):
            keep.extend([piece] * s.multiplicity)
    if not keep:
        return GradedRepresentation(x.algebra, {}, {})
    return graded_direct_sum(keep)


def graded_stable_hom_dim(x: GradedRepresentation, y: GradedRepresentation) -> int:
    """dim of degree-0 Hom modulo maps factoring through graded projectives."""
    if x.is_zero() or y.is_zero():
        return 0
    lo = min(window_for(x)[0], window_for(y)[0])
    hi = max(window_for(x)[1], window_for(y)[1]) + x.algebra.max_degree
    cov_x = to_covering(x, (lo, hi))
    cov_y = to_covering(y, (lo, hi))
    from .ar import stable_hom_dim

    return stable_hom_dim(cov_x, cov_y)
