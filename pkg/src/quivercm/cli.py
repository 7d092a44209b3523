"""Command-line interface.

Subcommands: build, knit, gp-test, verify-tilting, classify, tau, ar-seq.
Exit codes: 0 success (budget-exceeded enumeration is still a result),
1 input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .algebra import (
    build_algebra_table,
    build_lambda_k,
    build_triangular,
    gorenstein_parameter,
    tensor_presentation,
)
from .classify import classify
from .gorenstein import gorenstein_dimension, is_gorenstein_projective
from .linalg import parse_field
from .quiver import SpecError, load_fixture, parse_quiver_spec
from .roots import parse_dynkin


def _load_spec(path: str, field_override: str | None):
    p = Path(path)
    if p.exists():
        pres = parse_quiver_spec(p.read_text(), name=p.stem)
    else:
        try:
            pres = load_fixture(path)
        except FileNotFoundError:
            raise SpecError(None, f"no such spec file or bundled fixture: {path}")
    if field_override:
        pres = pres.with_field(parse_field(field_override))
    return pres


def _build_presentation(args):
    pres = _load_spec(args.specfile, getattr(args, "field", None))
    if getattr(args, "tensor", None):
        other = _load_spec(args.tensor, getattr(args, "field", None))
        pres = tensor_presentation(pres, other)
    if getattr(args, "triangular", None):
        pres = build_triangular(pres, args.triangular)
    if getattr(args, "lambda_k", None):
        pres = build_lambda_k(pres, args.lambda_k)
    return pres


def _emit(args, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if getattr(args, "json", None):
        Path(args.json).write_text(text + "\n")
    print(text)


def cmd_build(args) -> int:
    pres = _build_presentation(args)
    alg = build_algebra_table(pres, max_path_length=args.path_cap)
    degrees = sorted({b.degree for b in alg.basis})
    payload = {
        "name": pres.name,
        "dimension": alg.dim,
        "vertices": list(alg.vertices),
        "arrows": [a.label for a in alg.arrows],
        "basis_size_by_length": [len(l) for l in alg.layers if l],
        "degrees_present": degrees,
        "gorenstein_parameter": gorenstein_parameter(alg),
        "cartan_matrix": alg.cartan_matrix.tolist(),
    }
    _emit(args, payload)
    return 0


def cmd_knit(args) -> int:
    from .ar import knit_gproj

    base_pres = _load_spec(args.specfile, args.field)
    pres = _build_presentation(args)
    alg = build_algebra_table(pres)
    base = build_algebra_table(base_pres) if args.lambda_k else None
    rng = np.random.default_rng(args.seed)
    quiver = knit_gproj(
        alg,
        budget=args.budget,
        mode=args.mode,
        rng=rng,
        dim_cap=args.dim_cap,
        base=base,
    )
    payload = quiver.to_json_dict()
    payload["dim_vector_multiset"] = [list(v) for v in quiver.dim_vector_multiset()]
    if args.dot:
        Path(args.dot).write_text(quiver.to_dot())
    _emit(args, payload)
    return 0


def cmd_gp_test(args) -> int:
    from .modio import load_module_file

    rep, base = load_module_file(Path(args.module))
    verdict = is_gorenstein_projective(
        rep, args.method, base=base, paranoid=args.paranoid
    )
    payload = {
        "module": args.module,
        "dim_vector": list(rep.dim_vector()),
        "method": verdict.method,
        "gorenstein_projective": verdict.is_gp,
        "evidence": _jsonable(verdict.evidence),
        "disagreements": verdict.disagreements,
    }
    _emit(args, payload)
    return 0


def cmd_verify_tilting(args) -> int:
    from .tilting import full_tilting_report

    pres = _load_spec(args.specfile, args.field)
    report = full_tilting_report(pres, args.lambda_k, hom_bound=args.hom_bound)
    _emit(args, report.to_json_dict())
    return 0 if report.passed else 2


def cmd_classify(args) -> int:
    k = args.k
    if args.type:
        report = classify(parse_dynkin(args.type), k)
    else:
        pres = _load_spec(args.specfile, args.field)
        report = classify(pres, k)
    _emit(args, report.to_json_dict())
    return 0


def cmd_tau(args) -> int:
    from .ar import translate
    from .modio import load_module_file, module_payload

    rep, _ = load_module_file(Path(args.module))
    image = translate(rep, args.direction)
    payload = {
        "module": args.module,
        "direction": args.direction,
        "result": module_payload(image),
    }
    _emit(args, payload)
    return 0


def cmd_ar_seq(args) -> int:
    from .ar import almost_split_sequence, gp_translate
    from .modio import load_module_file, module_payload

    rep, _ = load_module_file(Path(args.module))
    rng = np.random.default_rng(args.seed)
    left = gp_translate(rep, rng) if args.relative else None
    seq = almost_split_sequence(rep, rng, left=left)
    payload = {
        "module": args.module,
        "relative": bool(args.relative),
        "left": module_payload(seq.left),
        "middle": module_payload(seq.middle),
        "right": module_payload(seq.right),
    }
    _emit(args, payload)
    return 0


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quivercm",
        description="Gorenstein projective modules and CM type of loop extensions "
        "and triangular matrix algebras over bound quiver algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec=True):
        if spec:
            p.add_argument("specfile", help="quiver spec file or bundled fixture name")
        p.add_argument("--field", help="coefficient field, 'p=<prime>' or 'Q'")
        p.add_argument("--seed", type=int, default=0, help="random seed")
        p.add_argument("--json", help="also write the JSON report to this path")

    def construction(p):
        p.add_argument("--lambda-k", dest="lambda_k", type=int, metavar="K",
                       help="build the loop extension of order K")
        p.add_argument("--triangular", type=int, metavar="M",
                       help="build the M x M upper triangular algebra")
        p.add_argument("--tensor", metavar="SPEC",
                       help="tensor with a second spec file before other constructions")

    p = sub.add_parser("build", help="build an algebra table and print its summary")
    common(p)
    construction(p)
    p.add_argument("--path-cap", type=int, default=64, help="path length cap")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("knit", help="enumerate the AR quiver of Gproj")
    common(p)
    construction(p)
    p.add_argument("--budget", type=int, default=200, help="node budget")
    p.add_argument("--dim-cap", type=int, default=64, help="per-node dimension cap")
    p.add_argument("--mode", choices=("knit", "sweep"), default="knit")
    p.add_argument("--dot", help="write the AR quiver in DOT format to this path")
    p.set_defaults(func=cmd_knit)

    p = sub.add_parser("gp-test", help="Gorenstein projectivity of a module file")
    p.add_argument("--module", required=True, help="module JSON file")
    p.add_argument("--method", choices=("ext", "restriction", "monic", "all"),
                   default="all")
    p.add_argument("--paranoid", action="store_true",
                   help="test Ext vanishing up to 2d+2 instead of d")
    p.add_argument("--json", help="also write the JSON report to this path")
    p.set_defaults(func=cmd_gp_test)

    p = sub.add_parser("verify-tilting", help="run the tilting verification suite")
    common(p)
    p.add_argument("--lambda-k", dest="lambda_k", type=int, required=True, metavar="K")
    p.add_argument("--hom-bound", type=int, default=4,
                   help="test stable Hom vanishing for |i| up to this bound")
    p.set_defaults(func=cmd_verify_tilting)

    p = sub.add_parser("classify", help="CM-finiteness classification")
    p.add_argument("specfile", nargs="?", help="quiver spec file (hereditary)")
    p.add_argument("--type", help="Dynkin type, e.g. A2 or D4")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--field", help="coefficient field for spec files")
    p.add_argument("--json", help="also write the JSON report to this path")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("tau", help="AR translate of a module file")
    p.add_argument("--module", required=True)
    p.add_argument("--direction", choices=("forward", "inverse"), default="forward")
    p.add_argument("--json", help="also write the JSON report to this path")
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("ar-seq", help="almost split sequence ending at a module")
    p.add_argument("--module", required=True)
    p.add_argument("--relative", action="store_true",
                   help="use the Gproj-relative translate for the left term")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", help="also write the JSON report to this path")
    p.set_defaults(func=cmd_ar_seq)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
