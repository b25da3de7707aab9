"""Command-line front door: JSON in, JSON out, exact rationals everywhere.

Subcommands:
  ring decompose|verify|extend|product ...
  spectral rho|extend|suite ...
  gc polytope|classify|vertices ...
  suite all

Identical inputs produce byte-identical payloads; exit code 0 on success,
1 on a reported error, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import acceptance
from .catalog import catalog_version, entry_report, load_ring_spec
from .errors import QclabError, SchemaError, UnknownCommand
from .filtered import FilteredComplex, lemma_compare_suite
from .gelfand_cetlin import (
    classify_point,
    flag_dim,
    gc_pattern,
    gc_polytope,
    monotone_lambda,
    parse_flag,
    vertices,
)
from .jsonio import parse_rational, rational_str, scalar_to_json
from .qalgebra import product_ring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qclab",
        description="exact workbench for quantum cohomology rings, filtered complexes and Gelfand-Cetlin polytopes",
    )
    parser.add_argument("--m", type=int, default=12, help="cyclotomic order of the coefficient field (default 12)")
    parser.add_argument("--precision", type=str, default="10", help="series inversion precision, a rational (default 10)")
    parser.add_argument("--catalog", type=str, default=None, help="directory overriding the built-in ring catalog")
    sub = parser.add_subparsers(dest="command")

    ring = sub.add_parser("ring", help="quantum algebra operations").add_subparsers(dest="ring_cmd")
    p = ring.add_parser("decompose", help="complete orthogonal idempotents")
    p.add_argument("spec")
    p.add_argument("--generator", default=None, help="basis name or element JSON")
    p = ring.add_parser("verify", help="validate a ring spec and its pinned relations")
    p.add_argument("spec")
    p = ring.add_parser("extend", help="extend coefficients to the Novikov field")
    p.add_argument("spec")
    p = ring.add_parser("product", help="monotone product of two rings")
    p.add_argument("spec_a")
    p.add_argument("spec_b")

    spectral = sub.add_parser("spectral", help="filtered complex operations").add_subparsers(dest="spectral_cmd")
    p = spectral.add_parser("rho", help="spectral invariant of a cycle")
    p.add_argument("complex", help="complex JSON file")
    p.add_argument("cycle", help="chain JSON (inline or @file): {orbit_id: scalar}")
    p = spectral.add_parser("extend", help="scalar extension of a complex")
    p.add_argument("complex")
    p = spectral.add_parser("suite", help="extension-invariance suite on random complexes")
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--size-bound", type=int, default=8)

    gc = sub.add_parser("gc", help="Gelfand-Cetlin constructions").add_subparsers(dest="gc_cmd")
    for cmd, extra in (("polytope", []), ("classify", ["u"]), ("vertices", [])):
        p = gc.add_parser(cmd)
        p.add_argument("flag", help="preset (gr24, cp1, cp3, f123, ...) or 'n:s1,s2,...'")
        if extra:
            p.add_argument("u", nargs="+", help="point coordinates, rationals")
        p.add_argument("--monotone", default=None, help="monotone shift m (rational)")
        p.add_argument("--lambda", dest="lam", default=None, help="comma-separated eigenvalues")

    suite = sub.add_parser("suite", help="acceptance criteria").add_subparsers(dest="suite_cmd")
    suite.add_parser("all")
    return parser


def _result(payload, argv, m, precision, catalog_dir) -> dict:
    return {
        "status": "ok",
        "payload": payload,
        "provenance": {
            "argv": list(argv),
            "catalog_version": catalog_version(catalog_dir),
            "m": m,
            "precision": rational_str(precision),
        },
    }


def _load_json_arg(text: str):
    if text.startswith("@"):
        return json.loads(Path(text[1:]).read_text())
    return json.loads(text)


def _gc_instance(args):
    flag, default_shift = parse_flag(args.flag)
    if args.lam is not None:
        lam = tuple(parse_rational(x) for x in args.lam.split(","))
    else:
        shift = parse_rational(args.monotone) if args.monotone is not None else default_shift
        lam = monotone_lambda(flag, shift)
    pattern = gc_pattern(flag, lam)
    return flag, lam, pattern


def _dispatch(args, argv, m, precision) -> dict:
    catalog_dir = args.catalog
    if args.command == "ring":
        if args.ring_cmd == "decompose":
            algebra = load_ring_spec(args.spec, m=m, catalog_dir=catalog_dir)
            generator = None
            if args.generator is not None:
                text = args.generator
                generator = algebra.element_from_json(
                    _load_json_arg(text) if text.lstrip().startswith(("{", "@")) else text
                )
            dec = algebra.decompose(generator)
            payload = dec.to_json()
            payload["valuations"] = [rational_str(algebra.valuation_qh(e)) for e in dec.idempotents]
            payload["ring"] = algebra.name
            return payload
        if args.ring_cmd == "verify":
            return entry_report(args.spec, m=m, catalog_dir=catalog_dir)
        if args.ring_cmd == "extend":
            algebra = load_ring_spec(args.spec, m=m, catalog_dir=catalog_dir)
            ext = algebra.extend_ring()
            return _ring_to_json(ext)
        if args.ring_cmd == "product":
            a = load_ring_spec(args.spec_a, m=m, catalog_dir=catalog_dir)
            b = load_ring_spec(args.spec_b, m=m, catalog_dir=catalog_dir)
            prod = product_ring(a, b)
            payload = _ring_to_json(prod)
            payload["sigma_exponents"] = {
                "left": a.N_M // prod.N_M,
                "right": b.N_M // prod.N_M,
            }
            return payload
        raise UnknownCommand(f"unknown ring subcommand {args.ring_cmd!r}")
    if args.command == "spectral":
        if args.spectral_cmd == "rho":
            doc = json.loads(Path(args.complex).read_text())
            C = FilteredComplex.from_json(doc, m=m)
            chain = C.chain_from_json(_load_json_arg(args.cycle))
            return {"rho": rational_str(C.rho(chain)), "nice": C.nice}
        if args.spectral_cmd == "extend":
            doc = json.loads(Path(args.complex).read_text())
            C = FilteredComplex.from_json(doc, m=m)
            return C.extend_scalars().to_json()
        if args.spectral_cmd == "suite":
            return lemma_compare_suite(seeds=args.seeds, size_bound=args.size_bound)
        raise UnknownCommand(f"unknown spectral subcommand {args.spectral_cmd!r}")
    if args.command == "gc":
        if args.gc_cmd == "polytope":
            flag, lam, pattern = _gc_instance(args)
            payload = gc_polytope(pattern).to_json()
            payload["flag"] = flag.to_json()
            payload["lambda"] = [rational_str(x) for x in lam]
            payload["dim"] = flag_dim(flag)
            payload["constants"] = {
                f"lam{i}_{k}": rational_str(v) for (i, k), v in sorted(pattern.constants.items(), key=lambda t: (t[0][1], t[0][0]))
            }
            return payload
        if args.gc_cmd == "classify":
            _flag, _lam, pattern = _gc_instance(args)
            poly = gc_polytope(pattern)
            u = [parse_rational(x) for x in args.u]
            return classify_point(poly, u)
        if args.gc_cmd == "vertices":
            _flag, _lam, pattern = _gc_instance(args)
            poly = gc_polytope(pattern)
            verts = vertices(poly)
            return {
                "count": len(verts),
                "methods_agree": True,
                "vertices": [[rational_str(x) for x in v] for v in verts],
            }
        raise UnknownCommand(f"unknown gc subcommand {args.gc_cmd!r}")
    if args.command == "suite":
        if args.suite_cmd == "all":
            results = acceptance.run_all(report=lambda line: print(line, file=sys.stderr))
            return {"criteria": results, "all_ok": all(r["ok"] for r in results)}
        raise UnknownCommand(f"unknown suite subcommand {args.suite_cmd!r}")
    raise UnknownCommand(f"no command given; see --help")


def _ring_to_json(algebra) -> dict:
    constants = []
    for (i, j), terms in sorted(algebra.constants.items()):
        if i == algebra.identity_index or j == algebra.identity_index:
            continue
        if not terms:
            continue
        constants.append(
            {"i": i, "j": j, "terms": [{"k": k, "scalar": scalar_to_json(s)} for k, s in terms]}
        )
    return {
        "name": algebra.name,
        "side": algebra.side,
        "coefficients": algebra.coefficients,
        "dim_M": algebra.dim_M,
        "lambda0": rational_str(algebra.lambda0),
        "N_M": algebra.N_M,
        "identity": algebra.basis[algebra.identity_index][0],
        "basis": [{"name": n, "degree": d} for n, d in algebra.basis],
        "constants": constants,
    }


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    m = args.m
    precision = parse_rational(args.precision)
    try:
        payload = _dispatch(args, argv, m, precision)
        result = _result(payload, argv, m, precision, args.catalog)
        print(json.dumps(result, indent=2, sort_keys=True))
        if args.command == "suite" and not payload.get("all_ok", True):
            return 1
        return 0
    except QclabError as exc:
        result = {
            "status": "error",
            "error": exc.payload(),
            "provenance": {
                "argv": argv,
                "catalog_version": catalog_version(args.catalog),
                "m": m,
                "precision": rational_str(precision),
            },
        }
        print(json.dumps(result, indent=2, sort_keys=True))
        return 2 if isinstance(exc, UnknownCommand) else 1


if __name__ == "__main__":
    raise SystemExit(main())
