"""Right modules over a bound quiver algebra as quiver representations.

A representation assigns to each vertex v a column space K^{d_v} and to
each arrow a a matrix of shape (d_target, d_source) acting on column
vectors.  Words act left to right, so the matrix of the path a.b is
X_b @ X_a.  Module maps are per-vertex matrices commuting with all arrow
matrices.  Everything is immutable after construction and all operations
are pure, so concurrent use of independent computations is safe.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .algebra import BoundQuiverAlgebra
from .linalg import column_space_basis, inverse, kernel_cols, rank, solve_linear


class Representation:
    __slots__ = ("algebra", "dims", "mats")

    def __init__(
        self,
        algebra: BoundQuiverAlgebra,
        dims: dict[str, int],
        mats: dict[str, np.ndarray] | None = None,
        check: bool = True,
    ):
        self.algebra = algebra
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        fld = algebra.field
        self.mats = {}
        mats = mats or {}
        for a in algebra.arrows:
            m = mats.get(a.label)
            shape = (self.dims[a.target], self.dims[a.source])
            if m is None:
                m = fld.zeros(*shape)
            if m.shape != shape:
                raise ValueError(
                    f"arrow {a.label}: matrix shape {m.shape}, expected {shape}"
                )
            self.mats[a.label] = fld.normalize(m)
        if check:
            bad = violated_relations(self)
            if bad:
                raise ValueError(f"relations violated: {bad}")

    # -- basic data ----------------------------------------------------------
    @property
    def field(self):
        return self.algebra.field

    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.algebra.vertices)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def word_matrix(self, word: tuple[str, ...], source: str) -> np.ndarray:
        """Matrix of a path acting on this module (identity for empty word)."""
        fld = self.field
        if not word:
            return fld.eye(self.dims[source])
        out = self.mats[word[0]]
        for lbl in word[1:]:
            out = fld.matmul(self.mats[lbl], out)
        return out

    def __repr__(self) -> str:
        return f"<Rep dim={self.dim_vector()}>"


def violated_relations(x: Representation) -> list[str]:
    """Labels of relations whose evaluation on x is nonzero."""
    bad = []
    for rel in x.algebra.presentation.relations:
        first = rel.terms[0][1]
        src = x.algebra.quiver.arrow(first[0]).source
        tgt = x.algebra.quiver.arrow(first[-1]).target
        acc = x.field.zeros(x.dims[tgt], x.dims[src])
        for coef, w in rel.terms:
            c = _scalar(x.field, coef)
            acc = x.field.normalize(acc + c * x.word_matrix(w, src))
        if np.any(acc != 0):
            bad.append(" ".join("." .join(w) for _, w in rel.terms))
    return bad


def check_representation(x: Representation) -> tuple[bool, list[str]]:
    bad = violated_relations(x)
    return (not bad, bad)


def _scalar(fld, coef):
    if fld.p is None:
        return coef
    num = coef.numerator % fld.p
    den = pow(coef.denominator % fld.p, fld.p - 2, fld.p)
    return (num * den) % fld.p


def _one(fld):
    return 1 if fld.p is not None else Fraction(1)


class ModuleMap:
    __slots__ = ("source", "target", "blocks")

    def __init__(
        self,
        source: Representation,
        target: Representation,
        blocks: dict[str, np.ndarray],
        check: bool = False,
    ):
        self.source = source
        self.target = target
        fld = source.field
        self.blocks = {}
        for v in source.algebra.vertices:
            b = blocks.get(v)
            shape = (target.dims[v], source.dims[v])
            if b is None:
                b = fld.zeros(*shape)
            if b.shape != shape:
                raise ValueError(f"vertex {v}: block shape {b.shape}, expected {shape}")
            self.blocks[v] = fld.normalize(b)
        if check and not self.is_intertwiner():
            raise ValueError("blocks do not commute with the arrow matrices")

    def is_intertwiner(self) -> bool:
        fld = self.source.field
        for a in self.source.algebra.arrows:
            lhs = fld.matmul(self.blocks[a.target], self.source.mats[a.label])
            rhs = fld.matmul(self.target.mats[a.label], self.blocks[a.source])
            if lhs.shape != rhs.shape or np.any(lhs != rhs):
                return False
        return True

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other (other: X -> Y, self: Y -> Z)."""
        if other.target is not self.source and other.target.dims != self.source.dims:
            raise ValueError("composition mismatch")
        fld = self.source.field
        return ModuleMap(
            other.source,
            self.target,
            {v: fld.matmul(self.blocks[v], other.blocks[v]) for v in self.blocks},
        )

    def add(self, other: "ModuleMap") -> "ModuleMap":
        fld = self.source.field
        return ModuleMap(
            self.source,
            self.target,
            {v: fld.normalize(self.blocks[v] + other.blocks[v]) for v in self.blocks},
        )

    def scale(self, c) -> "ModuleMap":
        fld = self.source.field
        return ModuleMap(
            self.source, self.target, {v: fld.normalize(self.blocks[v] * c) for v in self.blocks}
        )

    def is_zero(self) -> bool:
        return all(not np.any(b) for b in self.blocks.values())

    def is_injective(self) -> bool:
        return all(
            rank(self.source.field, b) == b.shape[1] for b in self.blocks.values()
        )

    def is_surjective(self) -> bool:
        return all(
            rank(self.source.field, b) == b.shape[0] for b in self.blocks.values()
        )

    def is_isomorphism(self) -> bool:
        return (
            self.source.dim_vector() == self.target.dim_vector()
            and self.is_injective()
        )

    def flatten(self) -> np.ndarray:
        """All blocks concatenated into one coefficient vector."""
        parts = [self.blocks[v].reshape(-1) for v in self.source.algebra.vertices]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def __repr__(self) -> str:
        return f"<ModuleMap {self.source.dim_vector()} -> {self.target.dim_vector()}>"


def map_from_flat(m: Representation, n: Representation, flat: np.ndarray) -> ModuleMap:
    blocks = {}
    off = 0
    for v in m.algebra.vertices:
        size = n.dims[v] * m.dims[v]
        blocks[v] = flat[off : off + size].reshape(n.dims[v], m.dims[v])
        off += size
    return ModuleMap(m, n, blocks)


def zero_map(m: Representation, n: Representation) -> ModuleMap:
    return ModuleMap(m, n, {})


def identity_map(m: Representation) -> ModuleMap:
    fld = m.field
    return ModuleMap(m, m, {v: fld.eye(m.dims[v]) for v in m.dims})


def zero_rep(algebra: BoundQuiverAlgebra) -> Representation:
    return Representation(algebra, {}, check=False)


# -- hom spaces ----------------------------------------------------------------


def hom_space(m: Representation, n: Representation) -> list[ModuleMap]:
    """Basis of the space of module maps m -> n.

    The intertwiner conditions are imposed one arrow at a time against the
    running kernel, which keeps the row-reduction sizes close to the actual
    Hom dimension instead of the full unknown count.
    """
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    fld = m.field
    verts = m.algebra.vertices
    offsets = {}
    off = 0
    for v in verts:
        offsets[v] = off
        off += n.dims[v] * m.dims[v]
    total = off
    if total == 0:
        return []
    arrows = sorted(
        m.algebra.arrows, key=lambda a: -(m.dims[a.source] * n.dims[a.target])
    )
    kbasis = None  # columns span the running solution space; None = everything
    for a in arrows:
        s, t = a.source, a.target
        n_rows = n.dims[t] * m.dims[s]
        if n_rows == 0:
            continue
        block = fld.zeros(n_rows, total)
        # f_t @ M_a  contributes (I_{n_t} (x) M_a^T) acting on vec(f_t)
        if m.dims[t] and n.dims[t]:
            left = fld.kron(fld.eye(n.dims[t]), m.mats[a.label].T)
            block[:, offsets[t] : offsets[t] + n.dims[t] * m.dims[t]] = left
        # -N_a @ f_s contributes -(N_a (x) I_{m_s}) acting on vec(f_s)
        if m.dims[s] and n.dims[s]:
            right = fld.kron(n.mats[a.label], fld.eye(m.dims[s]))
            sl = slice(offsets[s], offsets[s] + n.dims[s] * m.dims[s])
            block[:, sl] = fld.normalize(block[:, sl] - right)
        reduced = block if kbasis is None else fld.matmul(block, kbasis)
        z = kernel_cols(fld, reduced)
        if z.shape[1] == 0:
            return []
        kbasis = z if kbasis is None else fld.matmul(kbasis, z)
    if kbasis is None:
        kbasis = fld.eye(total)
    return [map_from_flat(m, n, kbasis[:, j]) for j in range(kbasis.shape[1])]


def hom_dim(m: Representation, n: Representation) -> int:
    return len(hom_space(m, n))


# -- direct sums, sub/quotient machinery ---------------------------------------


def direct_sum(reps: list[Representation]) -> tuple[Representation, list[ModuleMap], list[ModuleMap]]:
    """Direct sum with the canonical inclusions and projections."""
    if not reps:
        raise ValueError("empty direct sum; use zero_rep")
    alg = reps[0].algebra
    fld = reps[0].field
    dims = {v: sum(r.dims[v] for r in reps) for v in alg.vertices}
    mats = {}
    for a in alg.arrows:
        blocks = [r.mats[a.label] for r in reps]
        mats[a.label] = _block_diag(fld, blocks, dims[a.target], dims[a.source])
    total = Representation(alg, dims, mats, check=False)
    one = _one(fld)
    incls, projs = [], []
    for i, r in enumerate(reps):
        inc_blocks, proj_blocks = {}, {}
        for v in alg.vertices:
            before = sum(rr.dims[v] for rr in reps[:i])
            inc = fld.zeros(dims[v], r.dims[v])
            prj = fld.zeros(r.dims[v], dims[v])
            for j in range(r.dims[v]):
                inc[before + j, j] = one
                prj[j, before + j] = one
            inc_blocks[v], proj_blocks[v] = inc, prj
        incls.append(ModuleMap(r, total, inc_blocks))
        projs.append(ModuleMap(total, r, proj_blocks))
    return total, incls, projs


def _block_diag(fld, blocks, rows, cols):
    out = fld.zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def sub_representation(
    n: Representation, cols: dict[str, np.ndarray]
) -> tuple[Representation, ModuleMap]:
    """Subrepresentation spanned by the given (independent) columns, which
    must be closed under the arrow action; returns (sub, inclusion)."""
    fld = n.field
    alg = n.algebra
    dims = {v: cols[v].shape[1] for v in alg.vertices}
    mats = {}
    for a in alg.arrows:
        img = fld.matmul(n.mats[a.label], cols[a.source])
        if dims[a.target] == 0:
            if np.any(img):
                raise ValueError(f"columns not arrow-closed at {a.label}")
            mats[a.label] = fld.zeros(0, dims[a.source])
            continue
        sol = solve_linear(fld, cols[a.target], img)
        if not sol.consistent:
            raise ValueError(f"columns not arrow-closed at {a.label}")
        mats[a.label] = sol.particular
    sub = Representation(alg, dims, mats, check=False)
    return sub, ModuleMap(sub, n, {v: cols[v] for v in alg.vertices})


def quotient_representation(
    n: Representation, cols: dict[str, np.ndarray]
) -> tuple[Representation, ModuleMap]:
    """Quotient of n by the arrow-closed subspace spanned by `cols`;
    returns (quotient, projection)."""
    fld = n.field
    alg = n.algebra
    proj_blocks, sections = {}, {}
    dims = {}
    for v in alg.vertices:
        w = cols[v]
        nv = n.dims[v]
        chosen = []
        cur = w
        r0 = rank(fld, cur) if nv else 0
        for j in range(nv):
            e = fld.zeros(nv, 1)
            e[j, 0] = _one(fld)
            cand = np.concatenate([cur, e], axis=1)
            if rank(fld, cand) > r0:
                cur = cand
                r0 += 1
                chosen.append(e)
        full = np.concatenate([w] + chosen, axis=1) if (w.shape[1] + len(chosen)) else fld.zeros(nv, 0)
        dims[v] = len(chosen)
        if nv == 0:
            proj_blocks[v] = fld.zeros(0, 0)
            sections[v] = fld.zeros(0, 0)
            continue
        inv = inverse(fld, full)
        proj_blocks[v] = inv[w.shape[1] :, :]
        sections[v] = np.concatenate(chosen, axis=1) if chosen else fld.zeros(nv, 0)
    mats = {}
    for a in alg.arrows:
        mats[a.label] = fld.matmul(
            proj_blocks[a.target], fld.matmul(n.mats[a.label], sections[a.source])
        )
    quo = Representation(alg, dims, mats, check=False)
    return quo, ModuleMap(n, quo, proj_blocks)


def kernel_of_map(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    fld = f.source.field
    cols = {v: kernel_cols(fld, f.blocks[v]) for v in f.source.algebra.vertices}
    return sub_representation(f.source, cols)


def image_of_map(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    """Image as a subrepresentation of the target; returns (image, inclusion)."""
    fld = f.source.field
    cols = {v: column_space_basis(fld, f.blocks[v]) for v in f.source.algebra.vertices}
    return sub_representation(f.target, cols)


def cokernel_of_map(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    fld = f.source.field
    cols = {v: column_space_basis(fld, f.blocks[v]) for v in f.source.algebra.vertices}
    return quotient_representation(f.target, cols)


# -- standard modules -----------------------------------------------------------


def simple_module(alg: BoundQuiverAlgebra, v: str) -> Representation:
    return Representation(alg, {v: 1}, check=False)


def projective_module(alg: BoundQuiverAlgebra, v: str) -> Representation:
    """P(v) = e_v A: basis paths starting at v, arrows acting by right
    multiplication.  Also records the path-basis layout on the rep."""
    key = ("proj", v)
    cached = _alg_cache(alg).get(key)
    if cached is not None:
        return cached
    fld = alg.field
    paths = alg.basis_indices(source=v)
    slot = {}
    dims = {w: 0 for w in alg.vertices}
    for i in paths:
        w = alg.basis[i].target
        slot[i] = (w, dims[w])
        dims[w] += 1
    mats = {}
    for a in alg.arrows:
        mat = fld.zeros(dims[a.target], dims[a.source])
        for i in paths:
            if alg.basis[i].target != a.source:
                continue
            _, col = slot[i]
            for c, k in alg.right_mult_arrow(i, a.label):
                _, row = slot[k]
                mat[row, col] = c
        mats[a.label] = mat
    rep = Representation(alg, dims, mats, check=False)
    _alg_cache(alg)[key] = rep
    _alg_cache(alg)[("proj_slots", v)] = slot
    return rep


def projective_slots(alg: BoundQuiverAlgebra, v: str) -> dict[int, tuple[str, int]]:
    """basis index -> (vertex, coordinate) layout of P(v)."""
    projective_module(alg, v)
    return _alg_cache(alg)[("proj_slots", v)]


def injective_module(alg: BoundQuiverAlgebra, v: str) -> Representation:
    key = ("inj", v)
    cached = _alg_cache(alg).get(key)
    if cached is None:
        cached = dualize(projective_module(alg.opposite, v))
        _alg_cache(alg)[key] = cached
    return cached


def standard_module(alg: BoundQuiverAlgebra, v: str, kind: str) -> Representation:
    if kind == "simple":
        return simple_module(alg, v)
    if kind == "projective":
        return projective_module(alg, v)
    if kind == "injective":
        return injective_module(alg, v)
    raise ValueError(f"unknown kind {kind!r}")


def regular_representation(alg: BoundQuiverAlgebra) -> Representation:
    key = ("regular",)
    cached = _alg_cache(alg).get(key)
    if cached is None:
        total, incls, projs = direct_sum([projective_module(alg, v) for v in alg.vertices])
        _alg_cache(alg)[key] = total
        _alg_cache(alg)[("regular_parts",)] = (incls, projs)
        cached = total
    return cached


def _alg_cache(alg: BoundQuiverAlgebra) -> dict:
    cache = getattr(alg, "_rep_cache", None)
    if cache is None:
        cache = {}
        alg._rep_cache = cache
    return cache


# -- duality and restriction ----------------------------------------------------


def dualize(m: Representation) -> Representation:
    """Standard duality: a right A-module becomes a right A^op-module with
    the same dimension vector and transposed arrow matrices."""
    op = m.algebra.opposite
    mats = {a.label: m.mats[a.label].T.copy() for a in m.algebra.arrows}
    return Representation(op, dict(m.dims), mats, check=False)


def restrict_to_base(m: Representation, base: BoundQuiverAlgebra) -> Representation:
    """Forget the loop action: view a module over the loop extension as a
    module over the base algebra (same spaces, base arrows only)."""
    big = m.algebra
    base_labels = set()
    for a in base.arrows:
        match = [
            b for b in big.arrows if b.label == a.label and (b.source, b.target) == (a.source, a.target)
        ]
        if not match:
            raise ValueError(f"algebra not of loop-extension shape over base: missing {a.label}")
        base_labels.add(a.label)
    extra = [b for b in big.arrows if b.label not in base_labels]
    per_vertex = {v: 0 for v in big.vertices}
    for b in extra:
        if b.source != b.target:
            raise ValueError("algebra not of loop-extension shape: extra non-loop arrow")
        per_vertex[b.source] += 1
    if set(big.vertices) != set(base.vertices) or any(c != 1 for c in per_vertex.values()):
        raise ValueError("algebra not of loop-extension shape over the given base")
    return Representation(base, dict(m.dims), {l: m.mats[l] for l in base_labels}, check=False)


# -- tops, radicals, covers, syzygies --------------------------------------------


def radical_subspace(m: Representation) -> dict[str, np.ndarray]:
    """Columns spanning (m . J)_v = sum of images of arrows into v."""
    fld = m.field
    spans = {}
    for v in m.algebra.vertices:
        pieces = [
            m.mats[a.label]
            for a in m.algebra.arrows
            if a.target == v and m.dims[a.source] and m.dims[v]
        ]
        if pieces:
            spans[v] = column_space_basis(fld, np.concatenate(pieces, axis=1))
        else:
            spans[v] = fld.zeros(m.dims[v], 0)
    return spans


def radical_submodule(m: Representation) -> tuple[Representation, ModuleMap]:
    return sub_representation(m, radical_subspace(m))


def top_of(m: Representation) -> tuple[Representation, ModuleMap]:
    """top(M) = M / M.J with the projection."""
    return quotient_representation(m, radical_subspace(m))


def projective_cover_data(
    m: Representation,
) -> tuple[Representation, ModuleMap, list[str]]:
    """Minimal projective cover plus the list of summand vertices."""
    fld = m.field
    alg = m.algebra
    top, pr = top_of(m)
    # lift each top basis vector to m: solve pr_v x = e_j, any preimage works
    summands = []
    gen_vectors = []  # (vertex, column vector in m_v)
    for v in alg.vertices:
        k = top.dims[v]
        if k == 0:
            continue
        sol = solve_linear(fld, pr.blocks[v], fld.eye(k))
        for j in range(k):
            summands.append(v)
            gen_vectors.append((v, sol.particular[:, j : j + 1]))
    if not summands:
        p = zero_rep(alg)
        return p, ModuleMap(p, m, {}), []
    parts = [projective_module(alg, v) for v in summands]
    p, incls, _ = direct_sum(parts)
    blocks = {w: fld.zeros(m.dims[w], p.dims[w]) for w in alg.vertices}
    for idx, (v, g) in enumerate(gen_vectors):
        slots = projective_slots(alg, v)
        inc = incls[idx]
        for i, (w, col) in slots.items():
            # image of basis path i: act on the generator by the path word
            vec = fld.matmul(m.word_matrix(alg.basis[i].word, v), g)
            # locate this path's coordinate inside the direct sum
            target_col = int(np.nonzero(inc.blocks[w][:, col])[0][0])
            blocks[w][:, target_col : target_col + 1] = vec
    cover = ModuleMap(p, m, blocks)
    if not cover.is_surjective():
        raise AssertionError("projective cover not surjective; top lift failed")
    return p, cover, summands


def projective_cover(m: Representation) -> tuple[Representation, ModuleMap]:
    """Minimal projective cover: P(top) with lifted generators."""
    p, cover, _ = projective_cover_data(m)
    return p, cover


def summand_offsets(alg: BoundQuiverAlgebra, summands: list[str]) -> list[dict[str, int]]:
    """Per-summand starting coordinate inside (+) P(v) at each vertex."""
    offsets = []
    running = {w: 0 for w in alg.vertices}
    for v in summands:
        offsets.append(dict(running))
        for w in alg.vertices:
            running[w] += projective_module(alg, v).dims[w]
    return offsets


def map_from_elements(
    alg: BoundQuiverAlgebra,
    src_summands: list[str],
    tgt_summands: list[str],
    elements: dict[tuple[int, int], np.ndarray],
) -> ModuleMap:
    """Module map (+)_b P(src_b) -> (+)_a P(tgt_a) given by left
    multiplication by elements x_{ab} in e_{tgt_a} A e_{src_b} (coefficient
    vectors over the algebra basis)."""
    fld = alg.field
    src_parts = [projective_module(alg, v) for v in src_summands]
    tgt_parts = [projective_module(alg, v) for v in tgt_summands]
    src = direct_sum(src_parts)[0] if src_parts else zero_rep(alg)
    tgt = direct_sum(tgt_parts)[0] if tgt_parts else zero_rep(alg)
    src_off = summand_offsets(alg, src_summands)
    tgt_off = summand_offsets(alg, tgt_summands)
    blocks = {w: fld.zeros(tgt.dims[w], src.dims[w]) for w in alg.vertices}
    for (a, b), xvec in elements.items():
        if not np.any(xvec):
            continue
        slots_b = projective_slots(alg, src_summands[b])
        slots_a = projective_slots(alg, tgt_summands[a])
        for u_idx, (w, col) in slots_b.items():
            # image of the basis path u under left multiplication by x
            img = fld.zeros(1, alg.dim)[0]
            for xi in np.nonzero(xvec)[0]:
                for c, k in alg.mult_basis(int(xi), u_idx):
                    img[k] = fld.normalize(img[k] + c * xvec[xi])
            for k in np.nonzero(img)[0]:
                bp = alg.basis[int(k)]
                row = tgt_off[a][bp.target] + slots_a[int(k)][1]
                blocks[bp.target][row, src_off[b][w] + col] = img[k]
    return ModuleMap(src, tgt, blocks)


def projective_map_elements(
    f: ModuleMap, src_summands: list[str], tgt_summands: list[str]
) -> dict[tuple[int, int], np.ndarray]:
    """Recover the element matrix x_{ab} in e_{tgt_a} A e_{src_b} of a map
    between explicit direct sums of projectives (inverse of
    map_from_elements)."""
    alg = f.source.algebra
    fld = alg.field
    src_off = summand_offsets(alg, src_summands)
    tgt_off = summand_offsets(alg, tgt_summands)
    elements: dict[tuple[int, int], np.ndarray] = {}
    for b, w in enumerate(src_summands):
        gen_local = projective_slots(alg, w)[alg.idempotent_index(w)][1]
        gen_col = src_off[b][w] + gen_local
        img = f.blocks[w][:, gen_col]
        for a, v in enumerate(tgt_summands):
            xvec = fld.zeros(1, alg.dim)[0]
            slots_a = projective_slots(alg, v)
            for u_idx, (wv, col) in slots_a.items():
                if wv != w:
                    continue
                xvec[u_idx] = img[tgt_off[a][w] + col]
            if np.any(xvec):
                elements[(a, b)] = xvec
    return elements


def opposite_element(alg: BoundQuiverAlgebra, xvec: np.ndarray) -> np.ndarray:
    """Coefficient vector of the same element inside the opposite algebra.

    Reversed basis words are reduced against the opposite algebra's own
    normal forms (the two sides orient binomial relations independently).
    """
    op = alg.opposite
    fld = alg.field
    out = fld.zeros(1, op.dim)[0]
    for i in np.nonzero(xvec)[0]:
        b = alg.basis[int(i)]
        rev = op.element_from_word(b.target, tuple(reversed(b.word)))
        out = fld.normalize(out + rev * xvec[i])
    return out


def syzygy(m: Representation) -> Representation:
    """Kernel of the minimal projective cover (zero for projectives)."""
    _, cover = projective_cover(m)
    ker, _ = kernel_of_map(cover)
    return ker


def syzygy_with_maps(m: Representation) -> tuple[Representation, ModuleMap, Representation, ModuleMap]:
    """(Omega M, inclusion into P, P, cover map P -> M)."""
    p, cover = projective_cover(m)
    ker, incl = kernel_of_map(cover)
    return ker, incl, p, cover


def is_projective(m: Representation) -> bool:
    p, _ = projective_cover(m)
    return p.total_dim() == m.total_dim()


def projective_dimension(m: Representation, cap: int = 32) -> int | None:
    """Length of the minimal projective resolution, None if it exceeds cap."""
    cur = m
    for d in range(cap + 1):
        if is_projective(cur):
            return d
        cur = syzygy(cur)
    return None
