"""Bound quiver presentations and the spec-file parser.

Composition convention, used everywhere in this package: paths are read
left to right, so the word ``a.b`` means "a then b" and requires
t(a) = s(b).  A relation is a linear combination of parallel paths of
length >= 2, homogeneous both in path length and in arrow degree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .linalg import GF, parse_field


class SpecError(ValueError):
    """Raised on malformed quiver spec files, with a line number."""

    def __init__(self, line_no: int | None, message: str):
        self.line_no = line_no
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(prefix + message)


@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str
    degree: int = 0


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate arrow labels")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise ValueError(f"arrow {a.label}: endpoint not a vertex")
            if a.degree < 0:
                raise ValueError(f"arrow {a.label}: negative degree")

    def arrow(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise KeyError(label)

    def vertex_index(self, v: str) -> int:
        return self.vertices.index(v)


@dataclass(frozen=True)
class Relation:
    """Linear combination sum c_i * w_i of parallel paths, words as
    tuples of arrow labels read left to right."""

    terms: tuple[tuple[Fraction, tuple[str, ...]], ...]

    def words(self) -> list[tuple[str, ...]]:
        return [w for _, w in self.terms]


def _word_endpoints(quiver: Quiver, word: tuple[str, ...]) -> tuple[str, str]:
    """Source and target of a composable word; raises on bad words."""
    if not word:
        raise ValueError("empty word")
    arrows = [quiver.arrow(lbl) for lbl in word]
    for x, y in zip(arrows, arrows[1:]):
        if x.target != y.source:
            raise ValueError(f"word not composable at {x.label}.{y.label}")
    return arrows[0].source, arrows[-1].target


def _word_degree(quiver: Quiver, word: tuple[str, ...]) -> int:
    return sum(quiver.arrow(lbl).degree for lbl in word)


@dataclass(frozen=True)
class AlgebraPresentation:
    quiver: Quiver
    relations: tuple[Relation, ...]
    field: object = field(default_factory=lambda: GF(101))
    name: str = ""

    def __post_init__(self):
        for rel in self.relations:
            if not rel.terms:
                raise ValueError("empty relation")
            ends = None
            length = None
            degree = None
            for coef, word in rel.terms:
                if len(word) < 2:
                    raise ValueError(f"relation word {'.'.join(word)} has length < 2")
                e = _word_endpoints(self.quiver, word)
                d = _word_degree(self.quiver, word)
                if ends is None:
                    ends, length, degree = e, len(word), d
                elif e != ends:
                    raise ValueError("relation paths not parallel")
                elif len(word) != length:
                    raise ValueError("relation mixes path lengths")
                elif d != degree:
                    raise ValueError("relation not homogeneous in arrow degree")
                if coef == 0:
                    raise ValueError("zero coefficient in relation")

    def with_field(self, fld) -> "AlgebraPresentation":
        return AlgebraPresentation(self.quiver, self.relations, fld, self.name)


_ARROW_RE = re.compile(
    r"^arrow\s+(\w+)\s*:\s*(\w+)\s*->\s*(\w+)\s*(?:\[deg=(-?\d+)\]\s*)?$"
)
_TERM_RE = re.compile(r"^([+-]\d+(?:/\d+)?)\*([\w.]+)$")


def parse_quiver_spec(text: str, name: str = "") -> AlgebraPresentation:
    """Parse the spec-file grammar into a presentation.

    Grammar (one declaration per line, '#' starts a comment):
        field p=<prime>|Q
        vertices: v1 v2 ...
        arrow <label>: <src> -> <tgt> [deg=<n>]     (deg defaults to 0)
        relation <+/-coef>*<word> ...               (words '.'-separated)
    """
    fld = GF(101)
    vertices: list[str] = []
    arrows: list[Arrow] = []
    rel_specs: list[tuple[int, list[tuple[Fraction, tuple[str, ...]]]]] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("field"):
            try:
                fld = parse_field(line[len("field") :])
            except ValueError as exc:
                raise SpecError(line_no, str(exc)) from exc
        elif line.startswith("vertices:"):
            vertices.extend(line[len("vertices:") :].split())
        elif line.startswith("arrow"):
            m = _ARROW_RE.match(line)
            if not m:
                raise SpecError(line_no, f"malformed arrow declaration: {line!r}")
            label, src, tgt, deg = m.groups()
            deg = int(deg) if deg is not None else 0
            if deg < 0:
                raise SpecError(line_no, f"arrow {label}: negative degree")
            arrows.append(Arrow(label, src, tgt, deg))
        elif line.startswith("relation"):
            terms = []
            for tok in line[len("relation") :].split():
                if not tok.startswith(("+", "-")):
                    tok = "+" + tok
                m = _TERM_RE.match(tok)
                if not m:
                    raise SpecError(line_no, f"malformed relation term: {tok!r}")
                coef = Fraction(m.group(1))
                word = tuple(m.group(2).split("."))
                terms.append((coef, word))
            rel_specs.append((line_no, terms))
        else:
            raise SpecError(line_no, f"unrecognized declaration: {line!r}")

    try:
        quiver = Quiver(tuple(vertices), tuple(arrows))
    except ValueError as exc:
        raise SpecError(None, str(exc)) from exc

    relations = []
    for line_no, terms in rel_specs:
        try:
            for _, word in terms:
                for lbl in word:
                    quiver.arrow(lbl)
            relations.append(Relation(tuple(terms)))
            AlgebraPresentation(quiver, (relations[-1],), fld)
        except (KeyError, ValueError) as exc:
            raise SpecError(line_no, f"bad relation: {exc}") from exc

    return AlgebraPresentation(quiver, tuple(relations), fld, name)


def load_fixture(name: str) -> AlgebraPresentation:
    """Load one of the bundled .q fixture files by name ('ka2' or 'ka2.q')."""
    if not name.endswith(".q"):
        name += ".q"
    text = resources.files("quivercm.fixtures").joinpath(name).read_text()
    return parse_quiver_spec(text, name=name.removesuffix(".q"))


def fixture_names() -> list[str]:
    return sorted(
        p.name for p in resources.files("quivercm.fixtures").iterdir() if p.name.endswith(".q")
    )


def single_vertex_presentation(fld=None) -> AlgebraPresentation:
    """The ground field as a bound quiver algebra: one vertex, no arrows."""
    return AlgebraPresentation(
        Quiver(("1",), ()), (), fld if fld is not None else GF(101), name="K"
    )


def loop_nilpotent_presentation(k: int, fld=None) -> AlgebraPresentation:
    """K[X]/(X^k) as a one-loop bound quiver, X in degree 1 (k >= 2)."""
    if k < 2:
        raise ValueError("k must be >= 2 for the loop presentation; use K for k=1")
    quiver = Quiver(("1",), (Arrow("x", "1", "1", 1),))
    rel = Relation(((Fraction(1), ("x",) * k),))
    return AlgebraPresentation(
        quiver, (rel,), fld if fld is not None else GF(101), name=f"R{k}"
    )
