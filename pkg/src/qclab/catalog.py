"""Built-in ring catalog: loading, validation and pinned relations.

Structure constants are curated data.  Acceptance of an entry requires the
load-time checks (grading, commutativity, associativity, identity) plus the
entry's pinned relations below; the relations also make the catalog
mutation-sensitive (changing any stored constant breaks at least one check).
"""

from __future__ import annotations

import copy
import hashlib
import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .cyclotomic import DEFAULT_M
from .errors import QclabError, SchemaError
from .jsonio import cyc_from_json, laurent_from_json, novikov_from_json, parse_rational
from .qalgebra import QuantumAlgebra

_CATALOG_PACKAGE = "qclab.data"


def catalog_names(catalog_dir: str | Path | None = None) -> list[str]:
    if catalog_dir is not None:
        return sorted(p.stem for p in Path(catalog_dir).glob("*.json"))
    return sorted(
        r.name[:-5]
        for r in resources.files(_CATALOG_PACKAGE).iterdir()
        if r.name.endswith(".json")
    )


def catalog_version(catalog_dir: str | Path | None = None) -> str:
    h = hashlib.sha256()
    for name in catalog_names(catalog_dir):
        h.update(name.encode())
        h.update(_read_bytes(name, catalog_dir))
    return h.hexdigest()[:12]


def _read_bytes(name: str, catalog_dir: str | Path | None) -> bytes:
    if catalog_dir is not None:
        return (Path(catalog_dir) / f"{name}.json").read_bytes()
    return resources.files(_CATALOG_PACKAGE).joinpath(f"{name}.json").read_bytes()


def load_document(name: str, catalog_dir: str | Path | None = None) -> dict:
    try:
        raw = _read_bytes(name, catalog_dir)
    except (FileNotFoundError, OSError):
        raise SchemaError(f"no catalog entry {name!r}") from None
    return json.loads(raw)


def algebra_from_document(doc: dict, m: int = DEFAULT_M, validate: bool = True) -> QuantumAlgebra:
    """Build and validate a QuantumAlgebra from a ring-spec document."""
    try:
        side = doc["side"]
        coefficients = doc.get("coefficients", "laurent")
        dim_M = int(doc["dim_M"])
        lambda0 = parse_rational(doc["lambda0"])
        N_M = int(doc["N_M"])
        basis = [(b["name"], int(b["degree"])) for b in doc["basis"]]
        identity = doc["identity"]
        raw_constants = doc.get("constants", [])
        name = doc.get("name", "anonymous")
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"ring document missing field: {exc}") from None
    constants = {}
    for c in raw_constants:
        try:
            i, j = int(c["i"]), int(c["j"])
            terms = []
            for term in c["terms"]:
                k = int(term["k"])
                if coefficients == "laurent":
                    s = laurent_from_json(term["scalar"], side, lambda0, N_M, m)
                else:
                    s = novikov_from_json(term["scalar"], m)
                    if side == "homology" and s.direction == "up":
                        from .scalars import NovikovScalar

                        s = NovikovScalar("down", s.terms, s.trunc, m)
                terms.append((k, s))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad structure constant entry {c!r}: {exc}") from None
        constants[(i, j)] = terms
    return QuantumAlgebra(
        name=name,
        side=side,
        dim_M=dim_M,
        lambda0=lambda0,
        N_M=N_M,
        basis=basis,
        identity_name=identity,
        constants=constants,
        coefficients=coefficients,
        m=m,
        default_generator=doc.get("default_generator"),
        dual_name=doc.get("dual"),
        dual_order=doc.get("dual_order"),
        validate=validate,
    )


def load_ring_spec(name: str, m: int = DEFAULT_M, catalog_dir: str | Path | None = None) -> QuantumAlgebra:
    """Load a catalog entry (or a JSON file path), validate it and link its
    Poincare twin when one is shipped."""
    path = Path(name)
    if path.suffix == ".json" and path.exists():
        doc = json.loads(path.read_text())
    else:
        doc = load_document(name, catalog_dir)
    algebra = algebra_from_document(doc, m=m)
    failures = pinned_relation_failures(algebra, doc)
    if failures:
        raise SchemaError(f"pinned relations failed for {algebra.name}: {'; '.join(failures)}")
    if doc.get("dual"):
        twin_doc = load_document(doc["dual"], catalog_dir)
        twin = algebra_from_document(twin_doc, m=m)
        twin_failures = pinned_relation_failures(twin, twin_doc)
        if twin_failures:
            raise SchemaError(f"pinned relations failed for {twin.name}: {'; '.join(twin_failures)}")
        # reorder check: shipped twin must agree with the derived dual
        algebra.set_dual(_relabelled_like(algebra, twin))
    return algebra


def _relabelled_like(algebra: QuantumAlgebra, twin: QuantumAlgebra) -> QuantumAlgebra:
    """Verify the shipped twin matches the derived dual up to names."""
    derived = QuantumAlgebra.dual_algebra(algebra)
    if len(derived.basis) != len(twin.basis):
        raise SchemaError("dual entry has wrong rank")
    for i in range(len(twin.basis)):
        if derived.basis[i][1] != twin.basis[i][1]:
            raise SchemaError(f"dual entry degree mismatch at position {i}")
    for key, terms in derived.constants.items():
        if twin.constants[key] != terms:
            raise SchemaError(f"dual entry constants differ at {key}")
    algebra._dual_cache = None  # twin replaces the derived dual
    return twin


# pinned relations: name -> checks (powers of the hyperplane class, the
# point-class square) that the shipped data must reproduce exactly


def pinned_relation_failures(algebra: QuantumAlgebra, doc: dict) -> list[str]:
    failures: list[str] = []
    point = doc.get("point_class")
    name = algebra.name
    if name.startswith("cp") and name[2:].isdigit():
        n = int(name[2:])
        h = algebra.basis_element("h")
        if h.power(n + 1) != algebra.basis_element(algebra.identity_index, exponent=1):
            failures.append(f"h^{n + 1} != t*1")
    if name == "cp2_novikov":
        u = algebra.basis_element("u")
        if u.power(3) != algebra.basis_element(algebra.identity_index, exponent=Fraction(1)):
            failures.append("u^3 != T^1")
    quadric_like = name.startswith("quadric") or name == "cp1_x_cp1"
    if point is not None and quadric_like:
        # the quadric relation: the point class squares to the fundamental
        # class shifted by two powers of the variable
        pt = algebra.basis_element(point)
        sq = algebra.qmul(pt, pt)
        if algebra.side == "homology":
            expected = algebra.basis_element(algebra.identity_index, exponent=-2)
            if sq != expected:
                failures.append("pt*pt != [M] s^-2")
        else:
            expected = algebra.basis_element(algebra.identity_index, exponent=2)
            if sq != expected:
                failures.append("pt*pt != t^2 * 1")
    if name.startswith("quadric") and algebra.side == "cohomology":
        hname = "h" if "h" in algebra._index else None
        if hname is not None and algebra.coefficients == "laurent":
            n = algebra.dim_M // 2
            h = algebra.basis_element(hname)
            lhs = h.power(n + 1)
            rhs = 4 * algebra.basis_element(hname, exponent=1)
            if lhs != rhs:
                failures.append(f"h^{n + 1} != 4 t h")
    return failures


def entry_report(name: str, m: int = DEFAULT_M, catalog_dir: str | Path | None = None) -> dict:
    """Validation report used by `ring verify` and the catalog tests."""
    doc = load_document(name, catalog_dir) if not name.endswith(".json") else json.loads(Path(name).read_text())
    report = {"name": doc.get("name", name), "checks": {}}
    try:
        algebra = algebra_from_document(doc, m=m)
        report["checks"]["structure"] = "ok"
    except QclabError as exc:
        report["checks"]["structure"] = f"fail: {exc.code}: {exc}"
        report["ok"] = False
        return report
    failures = pinned_relation_failures(algebra, doc)
    report["checks"]["pinned_relations"] = "ok" if not failures else "fail: " + "; ".join(failures)
    report["rank"] = len(algebra.basis)
    report["ok"] = not failures
    return report


def mutated_documents(doc: dict):
    """Yield (location, mutated copy) with one structure-constant coefficient
    bumped by +1; used by the catalog mutation test."""
    for ci, c in enumerate(doc.get("constants", [])):
        for ti, term in enumerate(c["terms"]):
            mutated = copy.deepcopy(doc)
            slot = mutated["constants"][ci]["terms"][ti]["scalar"]
            mutated["constants"][ci]["terms"][ti]["scalar"] = _bump(slot)
            yield f"constants[{ci}].terms[{ti}] (i={c['i']}, j={c['j']}, k={term['k']})", mutated


def _bump(scalar_json):
    if isinstance(scalar_json, (str, int)):
        q = parse_rational(scalar_json)
        return f"{q.numerator + q.denominator}/{q.denominator}"
    out = copy.deepcopy(scalar_json)
    exp, coeff = out["terms"][0]
    if isinstance(coeff, (str, int)):
        q = parse_rational(coeff)
        out["terms"][0] = [exp, f"{q.numerator + q.denominator}/{q.denominator}"]
    else:
        coeffs = list(coeff["coeffs"])
        q = parse_rational(coeffs[0])
        coeffs[0] = f"{q.numerator + q.denominator}/{q.denominator}"
        out["terms"][0] = [exp, {"m": coeff["m"], "coeffs": coeffs}]
    return out


def document_is_valid(doc: dict, m: int = DEFAULT_M) -> bool:
    """Full validation verdict for a (possibly mutated) document."""
    try:
        algebra = algebra_from_document(doc, m=m)
    except QclabError:
        return False
    return not pinned_relation_failures(algebra, doc)
