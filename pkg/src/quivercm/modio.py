"""Module files: JSON with an algebra reference, per-vertex dimensions and
row-major matrices; the graded variant keys dimensions and matrices by
degree as well.  Consumed and emitted by the CLI."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .algebra import (
    BoundQuiverAlgebra,
    build_algebra_table,
    build_lambda_k,
    build_triangular,
    tensor_presentation,
)
from .graded import GradedRepresentation
from .linalg import parse_field
from .quiver import load_fixture, parse_quiver_spec
from .rep import Representation


def _resolve_spec(ref: dict, base_dir: Path):
    spec = ref["spec"]
    candidate = base_dir / spec
    if candidate.exists():
        pres = parse_quiver_spec(candidate.read_text(), name=candidate.stem)
    elif Path(spec).exists():
        p = Path(spec)
        pres = parse_quiver_spec(p.read_text(), name=p.stem)
    else:
        pres = load_fixture(spec)
    return pres


def load_module_file(path: Path):
    """Load a module file; returns (representation, base algebra or None).

    The base algebra is the pre-loop-extension algebra when the reference
    used lambda_k, which is what the restriction/monic GP tests need.
    """
    data = json.loads(Path(path).read_text())
    ref = data["algebra"]
    pres = _resolve_spec(ref, Path(path).parent)
    if data.get("field"):
        pres = pres.with_field(parse_field(data["field"]))
    base_alg = None
    if ref.get("tensor"):
        other = _resolve_spec({"spec": ref["tensor"]}, Path(path).parent)
        pres = tensor_presentation(pres, other.with_field(pres.field))
    if ref.get("triangular"):
        pres = build_triangular(pres, int(ref["triangular"]))
    if ref.get("lambda_k"):
        base_alg = build_algebra_table(pres)
        pres = build_lambda_k(pres, int(ref["lambda_k"]))
    alg = build_algebra_table(pres)
    fld = alg.field
    if data.get("graded"):
        dims = {}
        for v, per_degree in data["dims"].items():
            for d, n in per_degree.items():
                dims[(v, int(d))] = int(n)
        mats = {}
        for a, per_degree in data.get("matrices", {}).items():
            for d, rows in per_degree.items():
                mats[(a, int(d))] = fld.array(rows)
        return GradedRepresentation(alg, dims, mats), base_alg
    dims = {v: int(n) for v, n in data["dims"].items()}
    mats = {a: fld.array(rows) for a, rows in data.get("matrices", {}).items()}
    rep = Representation(alg, dims, mats)
    return rep, base_alg


def module_payload(rep: Representation) -> dict:
    return {
        "dims": {v: rep.dims[v] for v in rep.algebra.vertices if rep.dims[v]},
        "matrices": {
            a.label: rep.mats[a.label].tolist()
            for a in rep.algebra.arrows
            if rep.mats[a.label].size
        },
    }


def save_module_file(
    path: Path,
    rep: Representation,
    algebra_ref: dict,
    field_name: str | None = None,
) -> None:
    payload = {"algebra": algebra_ref, **module_payload(rep)}
    if field_name:
        payload["field"] = field_name
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
