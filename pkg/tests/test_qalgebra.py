import json
from fractions import Fraction

import pytest

from qclab.catalog import (
    algebra_from_document,
    catalog_names,
    entry_report,
    load_document,
    load_ring_spec,
)
from qclab.cyclotomic import CycRat
from qclab.errors import (
    GradingViolation,
    MissingIdentity,
    NonAssociative,
    NotCyclic,
    SchemaError,
    ZeroElement,
)
from qclab.scalars import LaurentScalar

F = Fraction


def test_every_catalog_entry_validates():
    for name in catalog_names():
        report = entry_report(name)
        assert report["ok"], f"{name}: {report['checks']}"


def test_cp2_laurent_example():
    cp2 = load_ring_spec("cp2")
    h = cp2.basis_element("h")
    assert len(cp2.basis) == 3
    # h*h*h = t
    assert h.power(3) == cp2.basis_element("1", exponent=1)
    # consistency with the Novikov relation u^3 = T under the embedding
    ext = cp2.extend_ring()
    hh = cp2.iota_element(h, ext)
    assert hh.power(3) == ext.basis_element("1", exponent=F(1))


def test_quadric2_homology_point_relation():
    q2h = load_ring_spec("quadric2_homology")
    pt = q2h.basis_element("P")
    assert q2h.qmul(pt, pt) == q2h.basis_element("M", exponent=-2)


def test_quadric4_homology_point_relation():
    q4h = load_ring_spec("quadric4_homology")
    pt = q4h.basis_element("pt")
    assert q4h.qmul(pt, pt) == q4h.basis_element("M", exponent=-2)


def test_identity_acts_trivially():
    q4 = load_ring_spec("quadric4")
    one = q4.identity()
    for i in range(len(q4.basis)):
        b = q4.basis_element(i, exponent=1)
        assert q4.qmul(one, b) == b


def test_derived_oracle_quadric2_split_idempotents():
    """Expand the closed formulas (1 +- p t^-1)/2 against the structure
    constants only: idempotent, orthogonal, complete."""
    q2 = load_ring_spec("quadric2")
    half = CycRat.rational(F(1, 2), q2.m)
    eplus = q2.element_from_dict({"1": q2.scalar(half), "p": q2.scalar(half, -1)})
    eminus = q2.element_from_dict({"1": q2.scalar(half), "p": q2.scalar(-half, -1)})
    assert q2.qmul(eplus, eplus) == eplus
    assert q2.qmul(eminus, eminus) == eminus
    assert not q2.qmul(eplus, eminus)
    assert eplus + eminus == q2.identity()


def test_poincare_dual_examples():
    q2 = load_ring_spec("quadric2")
    hom = q2.dual_algebra()
    assert hom.name == "quadric2_homology"
    # PD(1) = [M]
    assert q2.poincare_dual(q2.identity()) == hom.identity()
    # involution
    el = q2.element_from_dict({"a": q2.scalar(2, -1), "p": q2.scalar(1, 2)})
    assert hom.poincare_dual(q2.poincare_dual(el)) == el
    # degree reversal on basis monomials
    for i, (_, deg) in enumerate(q2.basis):
        pd = q2.poincare_dual(q2.basis_element(i))
        j = next(k for k, c in enumerate(pd.coords) if c)
        assert hom.basis[j][1] == q2.dim_M - deg


def test_pd_of_split_idempotents_matches_homology_formulas():
    q2 = load_ring_spec("quadric2")
    hom = q2.dual_algebra()
    half = CycRat.rational(F(1, 2), q2.m)
    eplus = q2.element_from_dict({"1": q2.scalar(half), "p": q2.scalar(half, -1)})
    expected = hom.element_from_dict({"M": hom.scalar(half), "P": hom.scalar(half, 1)})
    assert q2.poincare_dual(eplus) == expected


def test_valuation_qh():
    q2 = load_ring_spec("quadric2")
    assert q2.valuation_qh(q2.identity()) == 0
    hom = q2.dual_algebra()
    half = CycRat.rational(F(1, 2), q2.m)
    pd_eplus = hom.element_from_dict({"M": hom.scalar(half), "P": hom.scalar(half, 1)})
    assert hom.valuation_qh(pd_eplus) == 1  # homology side: max
    with pytest.raises(ZeroElement):
        q2.valuation_qh(q2.zero())


def test_min_poly_examples():
    q2 = load_ring_spec("quadric2")
    assert q2.min_poly(q2.identity()).degree() == 1
    h = q2.element_from_dict({"a": q2.one_scalar(), "b": q2.one_scalar()})
    p = q2.min_poly(h)
    assert p.degree() == 3  # z(z^2 - 4t)
    assert not p.coeffs[0] and not p.coeffs[2]
    cp2n = load_ring_spec("cp2_novikov")
    pu = cp2n.min_poly(cp2n.basis_element("u"))
    assert pu.degree() == 3
    assert pu.coeffs[0].as_scalar().terms == ((F(1), CycRat.rational(-1, 12)),)


def test_load_rejects_nonassociative():
    doc = load_document("cp2")
    # break h*h2 = t: make it 2t; the triple (h, h, h2) then fails
    for c in doc["constants"]:
        if c["i"] == 1 and c["j"] == 2:
            c["terms"][0]["scalar"] = {"terms": [[1, "2"]]}
    with pytest.raises(NonAssociative):
        algebra_from_document(doc)


def test_load_rejects_bad_grading():
    doc = load_document("cp2")
    doc["basis"][1]["degree"] = 4
    with pytest.raises(GradingViolation):
        algebra_from_document(doc)


def test_load_rejects_missing_identity():
    doc = load_document("cp2")
    doc["identity"] = "nope"
    with pytest.raises(MissingIdentity):
        algebra_from_document(doc)
    doc2 = load_document("cp2")
    doc2["identity"] = "h"
    with pytest.raises((MissingIdentity, SchemaError, GradingViolation)):
        algebra_from_document(doc2)


def test_load_rejects_schema_garbage():
    with pytest.raises(SchemaError):
        algebra_from_document({"side": "cohomology"})
    doc = load_document("cp1")
    doc["lambda0"] = "zebra"
    with pytest.raises(SchemaError):
        algebra_from_document(doc)


def test_extension_commutes_with_products():
    import random

    q2 = load_ring_spec("quadric2")
    ext = q2.extend_ring()
    rng = random.Random(3)

    def rand_element():
        coords = []
        for _ in q2.basis:
            terms = [(rng.randint(-2, 2), rng.randint(-3, 3)) for _ in range(rng.randint(0, 2))]
            coords.append(LaurentScalar("cohomology", terms, None, q2.lambda0, q2.N_M, q2.m))
        return q2.element(coords)

    for _ in range(25):
        x, y = rand_element(), rand_element()
        lhs = q2.iota_element(q2.qmul(x, y), ext)
        rhs = ext.qmul(q2.iota_element(x, ext), q2.iota_element(y, ext))
        assert lhs == rhs
        if x:
            assert ext.valuation_qh(q2.iota_element(x, ext)) == q2.valuation_qh(x)


def test_extend_ring_matches_shipped_novikov_entry():
    q2 = load_ring_spec("quadric2")
    ext = q2.extend_ring()
    shipped = load_ring_spec("quadric2_novikov")
    assert ext.basis == shipped.basis
    assert ext.constants == shipped.constants


def test_dual_entry_consistency_via_file(tmp_path):
    # a ring spec loaded from a file path behaves like a catalog entry
    doc = load_document("cp1")
    path = tmp_path / "ring.json"
    path.write_text(json.dumps(doc))
    ring = load_ring_spec(str(path))
    assert ring.name == "cp1"
    h = ring.basis_element("h")
    assert ring.qmul(h, h) == ring.basis_element("1", exponent=1)
