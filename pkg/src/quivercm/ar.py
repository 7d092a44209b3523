"""Auslander-Reiten theory and the enumeration of indecomposable
Gorenstein projective modules.

The translate is the classical DTr computed from a minimal projective
presentation; almost split sequences are realized from the socle of
Ext^1(M, tau M) as a module over End(M).  Knitting closes the node set
under tau, tau^{-1} and middle-term summands, certifying every admitted
module as Gorenstein projective and indecomposable; a produced term that
fails certification aborts with a diagnostic rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import BoundQuiverAlgebra
from .decompose import (
    decompose,
    end_over_rad_dim,
    end_radical,
    is_isomorphic,
)
from .gorenstein import is_gorenstein_projective, minimal_resolution
from .linalg import kernel_cols, rank, solve_linear
from .rep import (
    ModuleMap,
    Representation,
    cokernel_of_map,
    direct_sum,
    dualize,
    hom_space,
    injective_module,
    is_projective,
    kernel_of_map,
    map_from_elements,
    opposite_element,
    projective_cover_data,
    projective_module,
    quotient_representation,
    radical_submodule,
    syzygy_with_maps,
    zero_rep,
)


class KnittingAborted(RuntimeError):
    """A produced AR-sequence term failed GP or indecomposability checks."""


def transpose_tr(m: Representation) -> Representation:
    """Transpose: cokernel of Hom(P_0, A) -> Hom(P_1, A) over A^op."""
    alg = m.algebra
    op = alg.opposite
    if m.total_dim() == 0 or is_projective(m):
        return zero_rep(op)
    res = minimal_resolution(m, 1)
    step = res.steps[0]
    rev_elements = {
        (b, a): opposite_element(alg, xvec) for (a, b), xvec in step.elements.items()
    }
    g = map_from_elements(op, res.summand_lists[0], step.summands, rev_elements)
    tr, _ = cokernel_of_map(g)
    return tr


def tau(m: Representation) -> Representation:
    """AR translate DTr; rejects projective input."""
    if is_projective(m):
        raise ValueError("tau is undefined on projective modules")
    return dualize(transpose_tr(m))


def tau_inverse(m: Representation) -> Representation:
    """Inverse translate TrD; rejects injective input."""
    d = dualize(m)
    if is_projective(d):
        raise ValueError("tau^{-1} is undefined on injective modules")
    return transpose_tr(d)


def translate(m: Representation, direction: str = "forward") -> Representation:
    if direction == "forward":
        return tau(m)
    if direction == "inverse":
        return tau_inverse(m)
    raise ValueError("direction must be 'forward' or 'inverse'")


# -- Ext^1 with realization ----------------------------------------------------


@dataclass
class Ext1Data:
    m: Representation
    n: Representation
    omega: Representation
    incl: ModuleMap  # Omega M -> P
    p: Representation
    cover: ModuleMap  # P -> M
    cover_summands: list[str]
    hom_basis: list[ModuleMap]  # Hom(Omega M, N)
    boundary_rows: np.ndarray  # flattened span of coboundaries
    class_reps: list[int]  # indices into hom_basis giving Ext^1 classes

    @property
    def dim(self) -> int:
        return len(self.class_reps)


def ext1_data(m: Representation, n: Representation) -> Ext1Data:
    p, cover, summands = projective_cover_data(m)
    omega, incl = kernel_of_map(cover)
    hom_basis = hom_space(omega, n)
    fld = m.field
    brows = []
    for g in hom_space(p, n):
        vec = g.compose(incl).flatten()
        if np.any(vec):
            brows.append(vec)
    boundary = np.stack(brows) if brows else fld.zeros(0, max(1, _flat_len(omega, n)))
    # choose hom basis elements whose classes span Ext^1
    reps: list[int] = []
    cur = boundary
    r0 = rank(fld, cur) if cur.shape[0] else 0
    for i, h in enumerate(hom_basis):
        cand = np.concatenate([cur, h.flatten().reshape(1, -1)], axis=0)
        r1 = rank(fld, cand)
        if r1 > r0:
            reps.append(i)
            cur, r0 = cand, r1
    return Ext1Data(m, n, omega, incl, p, cover, summands, hom_basis, boundary, reps)


def _flat_len(m: Representation, n: Representation) -> int:
    return sum(n.dims[v] * m.dims[v] for v in m.algebra.vertices)


def ext1_dim(m: Representation, n: Representation) -> int:
    return ext1_data(m, n).dim


def realize_extension(data: Ext1Data, cocycle: ModuleMap) -> tuple[Representation, ModuleMap, ModuleMap]:
    """Pushout of P <- Omega M -> N: returns (E, left: N -> E, right: E -> M)."""
    fld = data.m.field
    total, incls, _ = direct_sum([data.n, data.p])
    inc_n, inc_p = incls
    # graph subspace {(xi(w), -incl(w))}
    cols = {}
    for v in data.m.algebra.vertices:
        up = cocycle.blocks[v]
        down = fld.neg(data.incl.blocks[v])
        cols[v] = np.concatenate([up, down], axis=0)
        # embed into the direct-sum coordinates
        emb = fld.zeros(total.dims[v], cols[v].shape[1])
        emb[: up.shape[0], :] = up
        emb[up.shape[0] :, :] = down
        cols[v] = emb
    from .linalg import column_space_basis

    cols = {v: column_space_basis(fld, c) for v, c in cols.items()}
    e, proj = quotient_representation(total, cols)
    left = proj.compose(inc_n)
    # right: E -> M induced by (x, y) -> cover(y); solve right o proj = [0 | cover]
    right_blocks = {}
    for v in data.m.algebra.vertices:
        g = np.concatenate(
            [fld.zeros(data.m.dims[v], data.n.dims[v]), data.cover.blocks[v]], axis=1
        )
        sol = solve_linear(fld, proj.blocks[v].T, g.T)
        if not sol.consistent:
            raise ArithmeticError("pushout projection not solvable")
        right_blocks[v] = sol.particular.T
    right = ModuleMap(e, data.m, right_blocks)
    if not (left.is_injective() and right.is_surjective() and right.compose(left).is_zero()):
        raise ArithmeticError("extension realization is not exact")
    if e.total_dim() != data.m.total_dim() + data.n.total_dim():
        raise ArithmeticError("extension has wrong dimension")
    return e, left, right


def section_exists(pi: ModuleMap, target_identity: Representation) -> bool:
    """Whether pi: E -> M admits a module-map section (split epi test)."""
    e, m = pi.source, pi.target
    fld = m.field
    verts = m.algebra.vertices
    offsets, off = {}, 0
    for v in verts:
        offsets[v] = off
        off += e.dims[v] * m.dims[v]
    if off == 0:
        return True
    rows, rhs = [], []
    for a in m.algebra.arrows:
        s, t = a.source, a.target
        n_rows = e.dims[t] * m.dims[s]
        if n_rows == 0:
            continue
        block = fld.zeros(n_rows, off)
        if m.dims[t] and e.dims[t]:
            block[:, offsets[t] : offsets[t] + e.dims[t] * m.dims[t]] = fld.kron(
                fld.eye(e.dims[t]), m.mats[a.label].T
            )
        if m.dims[s] and e.dims[s]:
            sl = slice(offsets[s], offsets[s] + e.dims[s] * m.dims[s])
            block[:, sl] = fld.normalize(
                block[:, sl] - fld.kron(e.mats[a.label], fld.eye(m.dims[s]))
            )
        rows.append(block)
        rhs.append(fld.zeros(n_rows, 1))
    for v in verts:
        n_rows = m.dims[v] * m.dims[v]
        if n_rows == 0:
            continue
        block = fld.zeros(n_rows, off)
        if e.dims[v]:
            block[:, offsets[v] : offsets[v] + e.dims[v] * m.dims[v]] = fld.kron(
                pi.blocks[v], fld.eye(m.dims[v])
            )
        rows.append(block)
        rhs.append(fld.eye(m.dims[v]).reshape(-1, 1))
    system = np.concatenate(rows, axis=0)
    b = np.concatenate(rhs, axis=0)
    return solve_linear(fld, system, b).consistent


def factors_through(pi: ModuleMap, h: ModuleMap) -> bool:
    """Whether h: X -> M factors as pi o g for some g: X -> E."""
    e, m = pi.source, pi.target
    x = h.source
    fld = m.field
    verts = m.algebra.vertices
    offsets, off = {}, 0
    for v in verts:
        offsets[v] = off
        off += e.dims[v] * x.dims[v]
    if off == 0:
        return h.is_zero()
    rows, rhs = [], []
    for a in m.algebra.arrows:
        s, t = a.source, a.target
        n_rows = e.dims[t] * x.dims[s]
        if n_rows == 0:
            continue
        block = fld.zeros(n_rows, off)
        if x.dims[t] and e.dims[t]:
            block[:, offsets[t] : offsets[t] + e.dims[t] * x.dims[t]] = fld.kron(
                fld.eye(e.dims[t]), x.mats[a.label].T
            )
        if x.dims[s] and e.dims[s]:
            sl = slice(offsets[s], offsets[s] + e.dims[s] * x.dims[s])
            block[:, sl] = fld.normalize(
                block[:, sl] - fld.kron(e.mats[a.label], fld.eye(x.dims[s]))
            )
        rows.append(block)
        rhs.append(fld.zeros(n_rows, 1))
    for v in verts:
        n_rows = m.dims[v] * x.dims[v]
        if n_rows == 0:
            continue
        block = fld.zeros(n_rows, off)
        if e.dims[v]:
            block[:, offsets[v] : offsets[v] + e.dims[v] * x.dims[v]] = fld.kron(
                pi.blocks[v], fld.eye(x.dims[v])
            )
        rows.append(block)
        rhs.append(h.blocks[v].reshape(-1, 1))
    system = np.concatenate(rows, axis=0)
    b = np.concatenate(rhs, axis=0)
    return solve_linear(fld, system, b).consistent


@dataclass
class AlmostSplitSequence:
    left: Representation  # tau(M)
    middle: Representation
    right: Representation  # M
    left_map: ModuleMap
    right_map: ModuleMap


def gp_translate(m: Representation, rng: np.random.Generator | None = None) -> Representation:
    """AR translate inside Gproj: the nonprojective part of the special
    right GP-approximation of DTr(m).  Coincides with DTr when that is
    already Gorenstein projective (always over self-injective algebras)."""
    from .gorenstein import is_gorenstein_projective, right_gp_approximation

    from .decompose import strip_projective_summands

    rng = rng if rng is not None else np.random.default_rng(0)
    z = tau(m)
    if is_gorenstein_projective(z, "ext").is_gp:
        return z
    g, _ = right_gp_approximation(z)
    remainder, _ = strip_projective_summands(g, rng)
    nonproj = [
        s.rep for s in decompose(remainder, rng) for _ in range(s.multiplicity)
        if not is_projective(s.rep)
    ]
    if not nonproj:
        raise KnittingAborted(
            f"GP approximation of tau of dim {m.dim_vector()} has no nonprojective part"
        )
    if len(nonproj) > 1:
        raise KnittingAborted(
            f"relative translate of dim {m.dim_vector()} decomposed into "
            f"{[r.dim_vector() for r in nonproj]}; expected one indecomposable"
        )
    return nonproj[0]


def almost_split_sequence(
    m: Representation,
    rng: np.random.Generator | None = None,
    left: Representation | None = None,
) -> AlmostSplitSequence:
    """The AR sequence 0 -> tau M -> E -> M -> 0 for indecomposable
    nonprojective m, from the End(M)-socle of Ext^1(M, tau M).  Passing
    `left` substitutes a different translate (used for the relative AR
    sequences of Gproj, where left = gp_translate(m))."""
    rng = rng if rng is not None else np.random.default_rng(0)
    if is_projective(m):
        raise ValueError("no almost split sequence ends at a projective module")
    tm = left if left is not None else tau(m)
    data = ext1_data(m, tm)
    if data.dim == 0:
        raise ArithmeticError("Ext^1(M, tau M) vanished; input not indecomposable?")
    socle_coords = _ext_socle(data, rng)
    if socle_coords.shape[1] != 1:
        raise ArithmeticError(
            f"degenerate Ext-socle of dimension {socle_coords.shape[1]}; expected 1"
        )
    xi = _combo(data, socle_coords[:, 0])
    e, left, right = realize_extension(data, xi)
    if section_exists(right, m):
        raise ArithmeticError("candidate almost split sequence splits")
    return AlmostSplitSequence(tm, e, m, left, right)


def _combo(data: Ext1Data, coords) -> ModuleMap:
    out = None
    for c, idx in zip(coords, data.class_reps):
        term = data.hom_basis[idx].scale(int(c))
        out = term if out is None else out.add(term)
    return out


def _ext_socle(data: Ext1Data, rng) -> np.ndarray:
    """Coordinates (in the class_reps basis) of the Ext^1 classes killed by
    rad End(M) acting by precomposition with lifted endomorphisms."""
    m = data.m
    fld = m.field
    ends = hom_space(m, m)
    if len(ends) == 1:
        rad_maps: list[ModuleMap] = []
    else:
        rad_coords = end_radical(ends)
        rad_maps = []
        for j in range(rad_coords.shape[1]):
            f = None
            for i, e_map in enumerate(ends):
                term = e_map.scale(int(rad_coords[i, j]))
                f = term if f is None else f.add(term)
            rad_maps.append(f)
    if not rad_maps:
        # End(M) = K: the socle is all of Ext^1, which must be 1-dimensional
        out = fld.zeros(len(data.class_reps), len(data.class_reps))
        for i in range(len(data.class_reps)):
            out[i, i] = 1
        return out
    # basis of Ext^1 classes as flattened vectors with boundary span
    conditions = []
    for phi in rad_maps:
        omega_phi = _lift_to_syzygy(data, phi)
        for ci, idx in enumerate(data.class_reps):
            vec = data.hom_basis[idx].compose(omega_phi).flatten()
            conditions.append((ci, vec))
    # express: for each phi, sum_c x_c (xi_c o Omega phi) must lie in boundaries
    nclasses = len(data.class_reps)
    flat_len = conditions[0][1].shape[0] if conditions else 0
    bnd = data.boundary_rows
    rows_per_phi = len(data.class_reps)
    per_phi = len(rad_maps)
    big_rows = []
    for pi in range(per_phi):
        cols = []
        for ci in range(nclasses):
            cols.append(conditions[pi * rows_per_phi + ci][1])
        mat = np.stack(cols, axis=1)  # flat_len x nclasses
        # x in socle iff mat @ x in rowspan(bnd); append complement-projected rows
        big_rows.append(_mod_boundary(fld, mat, bnd))
    system = np.concatenate(big_rows, axis=0) if big_rows else fld.zeros(0, nclasses)
    return kernel_cols(fld, system)


def _mod_boundary(fld, mat: np.ndarray, bnd: np.ndarray) -> np.ndarray:
    """Rows expressing mat's columns modulo the row space of bnd."""
    if bnd.shape[0] == 0:
        return mat
    # choose a complement projection: rref of bnd gives pivot coordinates
    red, pivots, rk = fld.rref(bnd)
    piv = set(int(c) for c in pivots)
    free = [i for i in range(mat.shape[0]) if i not in piv]
    out = mat.copy()
    # eliminate pivot coordinates using boundary rows
    for r, c in enumerate(pivots):
        factor = out[int(c), :].copy()
        if np.any(factor):
            out = fld.normalize(out - np.outer(red[r], factor))
    return out[free, :] if free else fld.zeros(0, mat.shape[1])


def _lift_to_syzygy(data: Ext1Data, phi: ModuleMap) -> ModuleMap:
    """Restrict a lift P -> P of phi: M -> M to Omega M -> Omega M.

    The lift is built on generators: a module map out of the projective
    cover is determined by the images of the summand generators, so one
    small preimage solve per generator replaces a global intertwiner
    system.
    """
    fld = data.m.field
    psi = lift_through_cover(data.cover, data.cover_summands, phi.compose(data.cover))
    # restrict: incl o chi = psi o incl
    chi_blocks = {}
    for v in data.m.algebra.vertices:
        rhs = fld.matmul(psi.blocks[v], data.incl.blocks[v])
        sol = solve_linear(fld, data.incl.blocks[v], rhs, want_kernel=False)
        if not sol.consistent:
            raise ArithmeticError("syzygy restriction failed")
        chi_blocks[v] = sol.particular
    return ModuleMap(data.omega, data.omega, chi_blocks)


def lift_through_cover(
    cover: ModuleMap, summands: list[str], target: ModuleMap
) -> ModuleMap:
    """psi: P -> Y with cover-agreeing generator images: given target:
    P -> M and the epi cover: Y -> M, produce psi with cover o psi =
    target (P a direct sum of projectives with the given summand list)."""
    from .rep import summand_offsets, projective_slots

    p = cover.source  # Y in the docstring
    x = target.source
    m = cover.target
    alg = m.algebra
    fld = m.field
    offs = summand_offsets(alg, summands)
    blocks = {w: fld.zeros(p.dims[w], x.dims[w]) for w in alg.vertices}
    for b, v in enumerate(summands):
        slots = projective_slots(alg, v)
        gen_local = slots[alg.idempotent_index(v)][1]
        gen_col = offs[b][v] + gen_local
        y = target.blocks[v][:, gen_col : gen_col + 1]
        sol = solve_linear(fld, cover.blocks[v], y, want_kernel=False)
        if not sol.consistent:
            raise ArithmeticError("projective lifting failed on a generator")
        gen_img = sol.particular  # element of Y_v
        for i, (w, col) in slots.items():
            vec = fld.matmul(p.word_matrix(alg.basis[i].word, v), gen_img)
            blocks[w][:, offs[b][w] + col : offs[b][w] + col + 1] = vec
    return ModuleMap(x, p, blocks)


# -- stable homs -----------------------------------------------------------------


def stable_hom(m: Representation, n: Representation) -> tuple[int, list[ModuleMap]]:
    """Hom(M, N) modulo maps factoring through projectives: dimension and
    representatives of a basis of the quotient."""
    homs = hom_space(m, n)
    if not homs:
        return 0, []
    fld = m.field
    p, cover, _ = projective_cover_data(n)
    factoring = []
    for u in hom_space(m, p):
        vec = cover.compose(u).flatten()
        if np.any(vec):
            factoring.append(vec)
    bnd = np.stack(factoring) if factoring else fld.zeros(0, homs[0].flatten().shape[0])
    reps = []
    cur, r0 = bnd, (rank(fld, bnd) if bnd.shape[0] else 0)
    for h in homs:
        cand = np.concatenate([cur, h.flatten().reshape(1, -1)], axis=0)
        r1 = rank(fld, cand)
        if r1 > r0:
            reps.append(h)
            cur, r0 = cand, r1
    return len(reps), reps


def stable_hom_dim(m: Representation, n: Representation) -> int:
    return stable_hom(m, n)[0]


# -- the AR quiver of Gproj -------------------------------------------------------


@dataclass
class ARNode:
    rep: Representation
    projective: bool
    end_over_rad: int
    gp_evidence: dict


@dataclass
class AREdge:
    src: int
    dst: int
    multiplicity: int


@dataclass
class ARQuiver:
    algebra: BoundQuiverAlgebra
    nodes: list[ARNode]
    edges: list[AREdge]
    tau_pairs: dict[int, int]  # node id -> id of tau(node), nonprojectives
    status: str  # 'closed' or 'budget-exceeded'
    diagnostics: list[str] = field(default_factory=list)

    def node_count(self) -> int:
        return len(self.nodes)

    def dim_vector_multiset(self) -> list[tuple[int, ...]]:
        return sorted(n.rep.dim_vector() for n in self.nodes)

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "node_count": len(self.nodes),
            "nodes": [
                {
                    "id": i,
                    "dim_vector": list(n.rep.dim_vector()),
                    "projective": n.projective,
                    "end_over_rad": n.end_over_rad,
                }
                for i, n in enumerate(self.nodes)
            ],
            "edges": [
                {"src": e.src, "dst": e.dst, "multiplicity": e.multiplicity}
                for e in self.edges
            ],
            "tau": {str(k): v for k, v in sorted(self.tau_pairs.items())},
            "diagnostics": self.diagnostics,
        }

    def to_dot(self) -> str:
        lines = ["digraph gproj_ar {", "  rankdir=LR;"]
        for i, n in enumerate(self.nodes):
            shape = "box" if n.projective else "ellipse"
            label = ",".join(str(d) for d in n.rep.dim_vector())
            lines.append(f'  n{i} [shape={shape}, label="({label})"];')
        for e in self.edges:
            attr = f' [label="{e.multiplicity}"]' if e.multiplicity > 1 else ""
            lines.append(f"  n{e.src} -> n{e.dst}{attr};")
        for src, dst in sorted(self.tau_pairs.items()):
            lines.append(f"  n{src} -> n{dst} [style=dashed, arrowhead=none];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _fingerprint(rep: Representation) -> tuple:
    """Cheap isomorphism invariants gating the certified iso test."""
    fld = rep.field
    ranks = tuple(
        (a.label, int(rank(fld, rep.mats[a.label]))) for a in rep.algebra.arrows
    )
    from .rep import radical_subspace

    rad = radical_subspace(rep)
    rad_dims = tuple(rad[v].shape[1] for v in rep.algebra.vertices)
    return (rep.dim_vector(), ranks, rad_dims)


class _NodeStore:
    def __init__(self, alg: BoundQuiverAlgebra, rng, dim_cap: int):
        self.alg = alg
        self.rng = rng
        self.dim_cap = dim_cap
        self.nodes: list[ARNode] = []
        self.buckets: dict[tuple, list[int]] = {}
        self.over_cap = False

    def find(self, rep: Representation, fp: tuple | None = None) -> int | None:
        fp = fp if fp is not None else _fingerprint(rep)
        for i in self.buckets.get(fp, []):
            if is_isomorphic(self.nodes[i].rep, rep, self.rng)[0]:
                return i
        return None

    def admit(self, rep: Representation, context: str, erd: int | None = None) -> int:
        fp = _fingerprint(rep)
        found = self.find(rep, fp)
        if found is not None:
            return found
        if rep.total_dim() > self.dim_cap:
            self.over_cap = True
            raise _DimCapReached
        verdict = is_gorenstein_projective(rep, "ext")
        if not verdict.is_gp:
            raise KnittingAborted(
                f"{context}: produced module dim {rep.dim_vector()} is not "
                f"Gorenstein projective (ext profile {verdict.evidence['ext_dims']})"
            )
        if erd is None or erd <= 0:
            erd = end_over_rad_dim(rep)
        idx = len(self.nodes)
        self.nodes.append(ARNode(rep, is_projective(rep), erd, verdict.evidence))
        self.buckets.setdefault(fp, []).append(idx)
        return idx


class _DimCapReached(Exception):
    pass


def knit_gproj(
    alg: BoundQuiverAlgebra,
    budget: int = 200,
    mode: str = "knit",
    rng: np.random.Generator | None = None,
    dim_cap: int = 64,
    base: BoundQuiverAlgebra | None = None,
    sweep_samples: int = 60,
) -> ARQuiver:
    """Enumerate the AR quiver of the Gorenstein projective modules.

    'knit' mode requires a 1-Gorenstein algebra (checked; pass a witnessed
    override by calling with mode='sweep').  'sweep' additionally seeds the
    closure with random modules whose restriction to the base is
    projective, which covers algebras of higher Gorenstein dimension.
    """
    from .gorenstein import gorenstein_dimension

    rng = rng if rng is not None else np.random.default_rng(0)
    if mode not in ("knit", "sweep"):
        raise ValueError("mode must be 'knit' or 'sweep'")
    if mode == "knit":
        gd = gorenstein_dimension(alg).value
        if gd not in (0, 1):
            raise ValueError(
                f"knitting requires a 1-Gorenstein algebra (G.dim = {gd}); use sweep mode"
            )
    store = _NodeStore(alg, rng, dim_cap)
    diagnostics: list[str] = []
    queue: list[int] = []

    def enqueue(rep: Representation, context: str) -> None:
        idx = store.admit(rep, context)
        node = store.nodes[idx]
        if not node.projective and idx not in processed and idx not in queue:
            queue.append(idx)

    processed: set[int] = set()
    tau_pairs: dict[int, int] = {}
    middles: dict[int, list[int]] = {}

    try:
        for v in alg.vertices:
            p = projective_module(alg, v)
            store.admit(p, "projective seed")
        for v in alg.vertices:
            radp, _ = radical_submodule(projective_module(alg, v))
            for s in decompose(radp, rng):
                if not is_gorenstein_projective(s.rep, "ext").is_gp:
                    # radical summands need not be GP when G.dim >= 2
                    diagnostics.append(
                        f"radical summand of P({v}) dim {s.rep.dim_vector()} not GP; skipped"
                    )
                    continue
                enqueue(s.rep, f"radical of P({v})")
        if mode == "sweep":
            if base is None:
                raise ValueError("sweep mode needs the base algebra")
            for rep in _sweep_samples(alg, base, rng, sweep_samples, dim_cap):
                for s in decompose(rep, rng):
                    enqueue(s.rep, "sweep sample")

        while queue:
            if len(store.nodes) > budget:
                return ARQuiver(alg, store.nodes, [], tau_pairs, "budget-exceeded",
                                diagnostics + ["node budget exceeded"])
            idx = queue.pop(0)
            if idx in processed:
                continue
            processed.add(idx)
            m = store.nodes[idx].rep
            # relative AR sequence ending at m; its left term is the
            # relative translate, whose orbit closure also covers tau^{-1}
            # (tau permutes the nonprojective nodes of a finite quiver)
            left = gp_translate(m, rng)
            seq = almost_split_sequence(m, rng, left=left)
            left_idx = store.admit(seq.left, f"gp-tau of node {idx}")
            tau_pairs[idx] = left_idx
            if not store.nodes[left_idx].projective:
                enqueue(seq.left, f"gp-tau of node {idx}")
            mids = []
            for s in decompose(seq.middle, rng):
                mid_idx = store.admit(
                    s.rep, f"middle term at node {idx}", erd=s.end_over_rad_dim
                )
                mids.extend([mid_idx] * s.multiplicity)
                if not store.nodes[mid_idx].projective:
                    enqueue(s.rep, f"middle term at node {idx}")
            middles[idx] = mids
    except _DimCapReached:
        return ARQuiver(alg, store.nodes, [], tau_pairs, "budget-exceeded",
                        diagnostics + [f"module dimension cap {dim_cap} reached"])

    edges = _edges_from_sequences(store, middles, rng)
    return ARQuiver(alg, store.nodes, edges, tau_pairs, "closed", diagnostics)


def _sweep_samples(alg, base, rng, count, dim_cap):
    """Random modules with projective restriction: a projective base module
    together with a nilpotent endomorphism bounded by the loop degree."""
    k = alg.max_degree + 1
    base_projs = [projective_module(base, v) for v in base.vertices]
    loops = {}
    for a in alg.arrows:
        if all(b.label != a.label for b in base.arrows):
            loops[a.source] = a.label
    out = []
    for _ in range(count):
        mults = [int(rng.integers(0, 3)) for _ in base_projs]
        if not any(mults):
            mults[int(rng.integers(0, len(base_projs)))] = 1
        parts = [p for p, mm in zip(base_projs, mults) for _ in range(mm)]
        n_mod = direct_sum(parts)[0] if parts else None
        if n_mod is None or n_mod.total_dim() > dim_cap:
            continue
        phi = _random_bounded_nilpotent_endo(n_mod, k, rng)
        dims = dict(n_mod.dims)
        mats = {a.label: n_mod.mats[a.label] for a in base.arrows}
        for v, lbl in loops.items():
            mats[lbl] = phi.blocks[v]
        out.append(Representation(alg, dims, mats))
    return out


def _random_bounded_nilpotent_endo(n_mod, k, rng):
    """phi in rad End with phi^k = 0, via powers of a random radical element."""
    fld = n_mod.field
    ends = hom_space(n_mod, n_mod)
    if len(ends) == 1:
        return ModuleMap(n_mod, n_mod, {})
    rad_coords = end_radical(ends)
    if rad_coords.shape[1] == 0:
        return ModuleMap(n_mod, n_mod, {})
    coefs = rng.integers(0, fld.p, size=rad_coords.shape[1])
    psi = None
    for j in range(rad_coords.shape[1]):
        f = None
        for i, e_map in enumerate(ends):
            term = e_map.scale(int(rad_coords[i, j]) * int(coefs[j]))
            f = term if f is None else f.add(term)
        psi = f if psi is None else psi.add(f)
    # nilpotency index of psi
    nu, power = 1, psi
    while not power.is_zero():
        power = power.compose(psi)
        nu += 1
    m_exp = (nu + k - 1) // k
    phi = psi
    for _ in range(m_exp - 1):
        phi = phi.compose(psi)
    chk = phi
    for _ in range(k - 1):
        chk = chk.compose(phi)
    assert chk.is_zero()
    return phi


def _edges_from_sequences(store: _NodeStore, middles: dict[int, list[int]], rng) -> list[AREdge]:
    """Arrows into nonprojectives from AR middle terms; arrows into
    projectives from radical summands."""
    counts: dict[tuple[int, int], int] = {}
    for tgt, mids in middles.items():
        for mid in mids:
            counts[(mid, tgt)] = counts.get((mid, tgt), 0) + 1
    for i, node in enumerate(store.nodes):
        if not node.projective:
            continue
        radp, _ = radical_submodule(node.rep)
        if radp.total_dim() == 0:
            continue
        for s in decompose(radp, rng):
            src = store.find(s.rep)
            if src is not None:
                counts[(src, i)] = counts.get((src, i), 0) + s.multiplicity
    return [AREdge(s, d, c) for (s, d), c in sorted(counts.items())]


def irreducible_map_counts(quiver: ARQuiver, rng: np.random.Generator | None = None) -> dict[tuple[int, int], int]:
    """dim rad(M,N)/rad^2(M,N) over the enumerated node set; consistency
    with the middle-term edge table is asserted."""
    if quiver.status != "closed":
        raise ValueError("irreducible map counts need a closed AR quiver")
    rng = rng if rng is not None else np.random.default_rng(0)
    nodes = [n.rep for n in quiver.nodes]
    fld = quiver.algebra.field
    rad_bases: dict[tuple[int, int], list[ModuleMap]] = {}
    for i, m in enumerate(nodes):
        for j, n in enumerate(nodes):
            if i == j:
                ends = hom_space(m, m)
                if len(ends) <= 1:
                    rad_bases[(i, j)] = []
                    continue
                coords = end_radical(ends)
                maps = []
                for c in range(coords.shape[1]):
                    f = None
                    for b, e_map in enumerate(ends):
                        term = e_map.scale(int(coords[b, c]))
                        f = term if f is None else f.add(term)
                    maps.append(f)
                rad_bases[(i, j)] = maps
            else:
                rad_bases[(i, j)] = hom_space(m, n)
    out: dict[tuple[int, int], int] = {}
    for (i, j), basis in rad_bases.items():
        if not basis:
            continue
        flat = np.stack([f.flatten() for f in basis])
        sq_rows = []
        for k in range(len(nodes)):
            for f in rad_bases[(i, k)]:
                for g in rad_bases[(k, j)]:
                    vec = g.compose(f).flatten()
                    if np.any(vec):
                        sq_rows.append(vec)
        if sq_rows:
            sq = np.stack(sq_rows)
            # dim(rad/rad^2) = rank of the rad basis reduced mod span(rad^2)
            mult = rank(fld, _project_rows(fld, flat, sq))
        else:
            mult = rank(fld, flat)
        if mult:
            out[(i, j)] = mult
    edge_table = {(e.src, e.dst): e.multiplicity for e in quiver.edges}
    if out != edge_table:
        raise AssertionError(
            f"rad/rad^2 table {out} disagrees with AR middle terms {edge_table}"
        )
    return out


def _project_rows(fld, flat: np.ndarray, sq: np.ndarray) -> np.ndarray:
    """Rows of `flat` spanning a complement of span(sq) inside span(flat):
    returned as the matrix whose rank is dim(rad) - dim(rad^2)."""
    red, pivots, rk = fld.rref(sq)
    out = flat.copy()
    for r, c in enumerate(pivots):
        col = out[:, int(c)].copy()
        if np.any(col):
            out = fld.normalize(out - np.outer(col, red[r]))
    return out


def verify_almost_split_property(
    quiver: ARQuiver, seq: AlmostSplitSequence, rng: np.random.Generator | None = None
) -> bool:
    """Every non-retraction X -> M from an enumerated node factors through
    the middle term."""
    rng = rng if rng is not None else np.random.default_rng(0)
    m = seq.right
    for node in quiver.nodes:
        x = node.rep
        iso, cert = is_isomorphic(x, m, rng)
        if iso:
            # non-retractions X -> M are rad End(M) composed with the iso
            ends = hom_space(m, m)
            if len(ends) > 1:
                coords = end_radical(ends)
                for c in range(coords.shape[1]):
                    f = None
                    for b, e_map in enumerate(ends):
                        term = e_map.scale(int(coords[b, c]))
                        f = term if f is None else f.add(term)
                    h = f if cert is None else f.compose(cert)
                    if not factors_through(seq.right_map, h):
                        return False
        else:
            for h in hom_space(x, m):
                if not factors_through(seq.right_map, h):
                    return False
    return True
