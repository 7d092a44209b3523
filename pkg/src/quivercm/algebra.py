"""Finite-dimensional bound quiver algebras and the paper's constructions.

The path basis of KQ/I is computed layer by layer: layer L candidates are
(basis path of length L-1) * (arrow), and the relation rows ending at
layer L are row-reduced to split candidates into dead products and new
basis paths.  This is exact for relations that are homogeneous in path
length, which the presentation layer enforces; the layer loop terminates
at the first empty layer since the algebra is generated in degrees 0, 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .linalg import GF, kernel_cols
from .quiver import AlgebraPresentation, Arrow, Quiver, Relation


class NonAdmissibleError(ValueError):
    """No nilpotency bound found below the path-length cap."""


@dataclass(frozen=True)
class BasisPath:
    word: tuple[str, ...]  # arrow labels, left to right; () for idempotents
    source: str
    target: str
    degree: int

    def label(self) -> str:
        return ".".join(self.word) if self.word else f"e_{self.source}"


class BoundQuiverAlgebra:
    """Path basis, multiplication and grading data for KQ/I."""

    def __init__(self, presentation: AlgebraPresentation, max_path_length: int = 64):
        self.presentation = presentation
        self.field = presentation.field
        self.quiver = presentation.quiver
        self.max_path_length = max_path_length
        self._build(max_path_length)

    # -- construction --------------------------------------------------------

    def _build(self, cap: int) -> None:
        quiver, fld = self.quiver, self.field
        arrows = quiver.arrows
        arrow_ix = {a.label: i for i, a in enumerate(arrows)}

        # relations grouped by word length, as (coef, word-as-arrow-objects)
        rels_by_len: dict[int, list[Relation]] = {}
        for rel in self.presentation.relations:
            rels_by_len.setdefault(len(rel.words()[0]), []).append(rel)

        basis: list[BasisPath] = [
            BasisPath((), v, v, 0) for v in quiver.vertices
        ]
        layers: list[list[int]] = [list(range(len(basis)))]
        # step[(layer, arrow label)]: matrix taking layer-basis coords to
        # next-layer-basis coords under right multiplication by the arrow
        step: dict[tuple[int, str], np.ndarray] = {}

        length = 0
        while layers[length]:
            length += 1
            if length > cap:
                raise NonAdmissibleError(
                    f"no nilpotency bound below path length {cap}; ideal not admissible?"
                )
            prev = layers[length - 1]
            prev_pos = {b: i for i, b in enumerate(prev)}
            # candidates: (prev basis element, arrow) with matching endpoints
            cands: list[tuple[int, str]] = []
            for b in prev:
                for a in arrows:
                    if a.source == basis[b].target:
                        cands.append((b, a.label))
            cand_pos = {c: i for i, c in enumerate(cands)}
            if not cands:
                layers.append([])
                break

            rows = []
            for g, rels in rels_by_len.items():
                if g > length:
                    continue
                for rel in rels:
                    src = quiver.arrow(rel.terms[0][1][0]).source
                    for b in layers[length - g]:
                        if basis[b].target != src:
                            continue
                        row = fld.zeros(1, len(cands))
                        for coef, w in rel.terms:
                            cf = _coerce(fld, coef)
                            vec = _right_mult_word(
                                fld, basis, layers, step, b, w, cand_pos, len(cands)
                            )
                            row = fld.normalize(row + vec * cf)
                        if np.any(row != 0):
                            rows.append(row[0])
            if rows:
                mat = np.stack(rows)
                red, pivots, _ = fld.rref(mat)
                pivot_set = set(int(c) for c in pivots)
            else:
                red, pivots, pivot_set = None, [], set()

            # non-pivot candidates become basis paths of this layer
            new_layer: list[int] = []
            cand_to_vec: dict[int, np.ndarray] = {}
            free_cols = [i for i in range(len(cands)) if i not in pivot_set]
            for i in free_cols:
                b, lbl = cands[i]
                a = quiver.arrow(lbl)
                bp = basis[b]
                basis.append(
                    BasisPath(bp.word + (lbl,), bp.source, a.target, bp.degree + a.degree)
                )
                new_layer.append(len(basis) - 1)
            free_pos = {c: j for j, c in enumerate(free_cols)}
            # reduction of each candidate into the new layer's basis coords
            for i in range(len(cands)):
                v = fld.zeros(1, len(new_layer))
                if i in free_pos:
                    v[0, free_pos[i]] = _one(fld)
                else:
                    r = list(pivots).index(i)
                    for j, c in enumerate(free_cols):
                        v[0, j] = _fnorm(fld, -red[r, c])
                cand_to_vec[i] = v
            # per-arrow step matrices for this layer
            for lbl in {a.label for a in arrows}:
                cols = []
                any_nonzero = False
                for b in prev:
                    key = (b, lbl)
                    if key in cand_pos:
                        col = cand_to_vec[cand_pos[key]][0]
                        any_nonzero = any_nonzero or np.any(col != 0)
                    else:
                        col = fld.zeros(1, len(new_layer))[0]
                    cols.append(col)
                if new_layer:
                    step[(length - 1, lbl)] = np.stack(cols, axis=1)
            layers.append(new_layer)
            if not new_layer:
                break

        self.basis: tuple[BasisPath, ...] = tuple(basis)
        self.layers: tuple[tuple[int, ...], ...] = tuple(tuple(l) for l in layers)
        self._step = step
        self.dim = len(basis)
        self._index = {(b.source, b.word): i for i, b in enumerate(basis)}
        self._vix = {v: i for i, v in enumerate(self.quiver.vertices)}

    # -- basic accessors ------------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.quiver.arrows

    def basis_indices(self, source: str | None = None, target: str | None = None) -> list[int]:
        out = []
        for i, b in enumerate(self.basis):
            if source is not None and b.source != source:
                continue
            if target is not None and b.target != target:
                continue
            out.append(i)
        return out

    def idempotent_index(self, v: str) -> int:
        return self._index[(v, ())]

    @cached_property
    def max_degree(self) -> int:
        return max((b.degree for b in self.basis), default=0)

    @property
    def opposite(self) -> "BoundQuiverAlgebra":
        """The opposite algebra; applying it twice returns this object."""
        cached = getattr(self, "_opposite", None)
        if cached is None:
            cached = BoundQuiverAlgebra(
                opposite_presentation(self.presentation), self.max_path_length
            )
            cached._opposite = self
            self._opposite = cached
        return cached

    # -- multiplication --------------------------------------------------------

    def right_mult_arrow(self, i: int, label: str) -> list[tuple[object, int]]:
        """basis[i] * arrow as [(coef, basis index)] (possibly empty)."""
        bp = self.basis[i]
        a = self.quiver.arrow(label)
        if bp.target != a.source:
            return []
        ell = len(bp.word)
        key = (ell, label)
        if key not in self._step:
            return []
        lay = self.layers[ell]
        col = self._step[key][:, lay.index(i)]
        nxt = self.layers[ell + 1]
        return [(col[r], nxt[r]) for r in range(len(nxt)) if col[r] != 0]

    def mult_basis(self, i: int, j: int) -> list[tuple[object, int]]:
        """Product basis[i] * basis[j] expanded in the basis."""
        bi, bj = self.basis[i], self.basis[j]
        if bi.target != bj.source:
            return []
        cur: dict[int, object] = {i: _one(self.field)}
        for lbl in bj.word:
            nxt: dict[int, object] = {}
            for k, coef in cur.items():
                for c2, k2 in self.right_mult_arrow(k, lbl):
                    nxt[k2] = _fadd(self.field, nxt.get(k2), _fmul(self.field, c2, coef))
            cur = {k: v for k, v in nxt.items() if v != 0}
            if not cur:
                return []
        return [(v, k) for k, v in sorted(cur.items())]

    def element_from_word(self, source: str, word: tuple[str, ...]) -> np.ndarray:
        """Coefficient vector of the class of an arbitrary path word."""
        fld = self.field
        out = fld.zeros(1, self.dim)[0]
        cur: dict[int, object] = {self.idempotent_index(source): _one(fld)}
        for lbl in word:
            nxt: dict[int, object] = {}
            for i, coef in cur.items():
                for c, k in self.right_mult_arrow(i, lbl):
                    nxt[k] = _fadd(fld, nxt.get(k), _fmul(fld, c, coef))
            cur = {k: v for k, v in nxt.items() if v != 0}
            if not cur:
                return out
        for k, v in cur.items():
            out[k] = _fnorm(fld, v)
        return out

    def mult_vectors(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Bilinear product of coefficient vectors over the basis."""
        fld = self.field
        out = fld.zeros(1, self.dim)[0]
        xi = np.nonzero(x)[0]
        yi = np.nonzero(y)[0]
        for i in xi:
            for j in yi:
                for c, k in self.mult_basis(int(i), int(j)):
                    out[k] = _fnorm(fld, out[k] + _fmul(fld, c, _fmul(fld, x[i], y[j])))
        return out

    @cached_property
    def unit_vector(self) -> np.ndarray:
        u = self.field.zeros(1, self.dim)[0]
        for v in self.vertices:
            u[self.idempotent_index(v)] = _one(self.field)
        return u

    # -- invariants -------------------------------------------------------------

    @cached_property
    def cartan_matrix(self) -> np.ndarray:
        n = len(self.vertices)
        c = np.zeros((n, n), dtype=np.int64)
        for b in self.basis:
            c[self._vix[b.source], self._vix[b.target]] += 1
        return c

    def right_socle_degrees(self) -> dict[int, int]:
        """Degree -> dimension of the right socle slice in that degree."""
        fld = self.field
        out: dict[int, int] = {}
        degrees = sorted({b.degree for b in self.basis})
        for d in degrees:
            idxs = [i for i, b in enumerate(self.basis) if b.degree == d]
            if not idxs:
                continue
            rows = []
            for lbl in {a.label for a in self.arrows}:
                block = fld.zeros(self.dim, len(idxs))
                nonzero = False
                for cpos, i in enumerate(idxs):
                    for c, k in self.right_mult_arrow(i, lbl):
                        block[k, cpos] = c
                        nonzero = True
                if nonzero:
                    rows.append(block)
            if rows:
                stacked = np.concatenate(rows, axis=0)
                kdim = kernel_cols(fld, stacked).shape[1]
            else:
                kdim = len(idxs)
            if kdim:
                out[d] = kdim
        return out

    def __repr__(self) -> str:
        name = self.presentation.name or "algebra"
        return f"<BoundQuiverAlgebra {name}: dim {self.dim}, {len(self.vertices)} vertices>"


def _one(fld):
    return 1 if fld.p is not None else Fraction(1)


def _coerce(fld, coef: Fraction):
    if fld.p is None:
        return coef
    num = coef.numerator % fld.p
    den = pow(coef.denominator % fld.p, fld.p - 2, fld.p)
    return (num * den) % fld.p


def _fmul(fld, a, b):
    return (a * b) % fld.p if fld.p is not None else a * b


def _fadd(fld, a, b):
    if a is None:
        return b
    return (a + b) % fld.p if fld.p is not None else a + b


def _fnorm(fld, a):
    return a % fld.p if fld.p is not None else a


def _right_mult_word(fld, basis, layers, step, start: int, word, cand_pos, ncand) -> np.ndarray:
    """Coordinates of basis[start] * word over the current candidate list.

    The last letter is kept symbolic (candidates are (prefix, arrow) pairs);
    everything before it is folded through the step matrices.
    """
    cur: dict[int, object] = {start: _one(fld)}
    for lbl in word[:-1]:
        nxt: dict[int, object] = {}
        for bidx, coef in cur.items():
            ell = len(basis[bidx].word)
            key = (ell, lbl)
            if key not in step:
                continue
            lay = layers[ell]
            col = step[key][:, lay.index(bidx)]
            for r, b2 in enumerate(layers[ell + 1]):
                if col[r] != 0:
                    nxt[b2] = _fadd(fld, nxt.get(b2), _fmul(fld, col[r], coef))
        cur = {k: v for k, v in nxt.items() if v != 0}
        if not cur:
            break
    out = fld.zeros(1, ncand)
    last = word[-1]
    for bidx, coef in cur.items():
        key = (bidx, last)
        if key in cand_pos:
            out[0, cand_pos[key]] = _fnorm(fld, coef)
    return out


def build_algebra_table(presentation: AlgebraPresentation, max_path_length: int = 64) -> BoundQuiverAlgebra:
    """Compute the path basis and multiplication data of KQ/I."""
    return BoundQuiverAlgebra(presentation, max_path_length)


# -- presentation-level constructions ------------------------------------------


def build_lambda_k(pres: AlgebraPresentation, k: int) -> AlgebraPresentation:
    """Adjoin a degree-1 loop at every vertex with loop^k = 0 and the
    loop-past-arrow commutation relations; presents Lambda (x) K[X]/(X^k)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return pres
    q = pres.quiver
    loops = {v: f"ep@{v}" for v in q.vertices}
    arrows = tuple(q.arrows) + tuple(Arrow(loops[v], v, v, 1) for v in q.vertices)
    quiver = Quiver(q.vertices, arrows)
    rels: list[Relation] = list(pres.relations)
    for v in q.vertices:
        rels.append(Relation(((Fraction(1), (loops[v],) * k),)))
    for a in q.arrows:
        # loop at source then arrow = arrow then loop at target
        rels.append(
            Relation(
                (
                    (Fraction(1), (loops[a.source], a.label)),
                    (Fraction(-1), (a.label, loops[a.target])),
                )
            )
        )
    name = f"{pres.name or 'L'}_k{k}"
    return AlgebraPresentation(quiver, tuple(rels), pres.field, name)


def build_triangular(pres: AlgebraPresentation, m: int) -> AlgebraPresentation:
    """Upper triangular m x m matrix algebra over the presented algebra,
    realized as the product quiver with commutativity squares."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return pres
    q = pres.quiver
    verts = tuple(f"{v}@{c}" for c in range(1, m + 1) for v in q.vertices)
    arrows: list[Arrow] = []
    for c in range(1, m + 1):
        for a in q.arrows:
            arrows.append(Arrow(f"{a.label}@{c}", f"{a.source}@{c}", f"{a.target}@{c}", a.degree))
    for c in range(1, m):
        for v in q.vertices:
            arrows.append(Arrow(f"t{c}@{v}", f"{v}@{c}", f"{v}@{c + 1}", 0))
    rels: list[Relation] = []
    for c in range(1, m + 1):
        for rel in pres.relations:
            rels.append(
                Relation(
                    tuple((coef, tuple(f"{lbl}@{c}" for lbl in w)) for coef, w in rel.terms)
                )
            )
    for c in range(1, m):
        for a in q.arrows:
            rels.append(
                Relation(
                    (
                        (Fraction(1), (f"{a.label}@{c}", f"t{c}@{a.target}")),
                        (Fraction(-1), (f"t{c}@{a.source}", f"{a.label}@{c + 1}")),
                    )
                )
            )
    name = f"T{m}({pres.name or 'L'})"
    return AlgebraPresentation(Quiver(verts, tuple(arrows)), tuple(rels), pres.field, name)


def tensor_presentation(a: AlgebraPresentation, b: AlgebraPresentation) -> AlgebraPresentation:
    """Product-quiver presentation of A (x)_K B with summed degrees."""
    if a.field != b.field:
        raise ValueError("tensor factors must share a coefficient field")
    qa, qb = a.quiver, b.quiver
    verts = tuple(f"{u}|{v}" for u in qa.vertices for v in qb.vertices)
    arrows: list[Arrow] = []
    for al in qa.arrows:
        for v in qb.vertices:
            arrows.append(Arrow(f"{al.label}|{v}", f"{al.source}|{v}", f"{al.target}|{v}", al.degree))
    for u in qa.vertices:
        for be in qb.arrows:
            arrows.append(Arrow(f"{u}|{be.label}", f"{u}|{be.source}", f"{u}|{be.target}", be.degree))
    rels: list[Relation] = []
    for rel in a.relations:
        for v in qb.vertices:
            rels.append(
                Relation(tuple((c, tuple(f"{l}|{v}" for l in w)) for c, w in rel.terms))
            )
    for rel in b.relations:
        for u in qa.vertices:
            rels.append(
                Relation(tuple((c, tuple(f"{u}|{l}" for l in w)) for c, w in rel.terms))
            )
    for al in qa.arrows:
        for be in qb.arrows:
            rels.append(
                Relation(
                    (
                        (Fraction(1), (f"{al.label}|{be.source}", f"{al.target}|{be.label}")),
                        (Fraction(-1), (f"{al.source}|{be.label}", f"{al.label}|{be.target}")),
                    )
                )
            )
    name = f"{a.name or 'A'}(x){b.name or 'B'}"
    return AlgebraPresentation(Quiver(verts, tuple(arrows)), tuple(rels), a.field, name)


def opposite_presentation(pres: AlgebraPresentation) -> AlgebraPresentation:
    """Reverse all arrows and relation words."""
    q = pres.quiver
    arrows = tuple(Arrow(a.label, a.target, a.source, a.degree) for a in q.arrows)
    rels = tuple(
        Relation(tuple((c, tuple(reversed(w))) for c, w in rel.terms))
        for rel in pres.relations
    )
    return AlgebraPresentation(
        Quiver(q.vertices, arrows), rels, pres.field, f"{pres.name or 'A'}^op"
    )


def opposite_algebra(alg: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    return BoundQuiverAlgebra(opposite_presentation(alg.presentation), alg.max_path_length)


def gorenstein_parameter(alg: BoundQuiverAlgebra) -> int | str:
    """Degree containing the right socle, or 'mixed' when spread."""
    degs = alg.right_socle_degrees()
    if len(degs) == 1:
        return next(iter(degs))
    return "mixed"
