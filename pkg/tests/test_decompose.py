from fractions import Fraction

import pytest

from qclab.catalog import load_ring_spec
from qclab.cyclotomic import CycRat, zeta_as_cycrat
from qclab.errors import NotCyclic, RootNotInField
from qclab.polynomials import ScalarFraction
from qclab.scalars import NovikovScalar

F = Fraction


def wu_formula_idempotents(algebra):
    theta = zeta_as_cycrat(3, algebra.m)
    third = F(1, 3)
    out = []
    for j in (1, 2, 3):
        out.append(
            algebra.element_from_dict(
                {
                    "1": NovikovScalar.monomial(0, CycRat.rational(third, algebra.m), "up", algebra.m),
                    "u": NovikovScalar.monomial(F(-1, 3), theta**j * third, "up", algebra.m),
                    "u2": NovikovScalar.monomial(F(-2, 3), theta ** (2 * j) * third, "up", algebra.m),
                }
            )
        )
    return out


def test_cp2_novikov_three_idempotents_exact():
    algebra = load_ring_spec("cp2_novikov")
    dec = algebra.decompose()
    assert dec.factor_dims == (1, 1, 1)
    assert set(dec.idempotents) == set(wu_formula_idempotents(algebra))
    # roots are the three cube roots of T
    for r in dec.roots:
        assert r * r * r == NovikovScalar.monomial(1, 1, "up", algebra.m)


def test_cp2_novikov_valuations():
    algebra = load_ring_spec("cp2_novikov")
    for e in algebra.decompose().idempotents:
        assert algebra.valuation_qh(e) == F(-2, 3)


def test_cp2_idempotent_set_invariant_under_theta_twist():
    """Relabelling j -> j+1 is the algebra automorphism u -> theta u; the
    idempotent family is stable under it (and under theta-conjugation)."""
    algebra = load_ring_spec("cp2_novikov")
    dec = algebra.decompose()
    theta = zeta_as_cycrat(3, algebra.m)

    def twist(el):
        c1, cu, cu2 = el.coords
        return algebra.element([c1, cu * theta, cu2 * (theta * theta)])

    twisted = {twist(e) for e in dec.idempotents}
    assert twisted == set(dec.idempotents)

    def conj(el):
        return algebra.element([c.map_coeffs(lambda x: x.galois_image(5)) for c in el.coords])

    assert {conj(e) for e in dec.idempotents} == set(dec.idempotents)


def test_cp2_laurent_is_a_field():
    cp2 = load_ring_spec("cp2")
    dec = cp2.decompose()
    assert len(dec.idempotents) == 1
    assert dec.idempotents[0] == cp2.identity()
    assert dec.factor_dims == (3,)


def test_quadric2_two_fields():
    q2 = load_ring_spec("quadric2")
    dec = q2.decompose()
    assert len(dec.idempotents) == 2
    assert dec.factor_dims == (2, 2)
    half = CycRat.rational(F(1, 2), q2.m)
    eplus = q2.element_from_dict({"1": q2.scalar(half), "p": q2.scalar(half, -1)})
    eminus = q2.element_from_dict({"1": q2.scalar(half), "p": q2.scalar(-half, -1)})
    assert set(dec.idempotents) == {eplus, eminus}


def test_quadric2_hyperplane_basis_two_fields():
    q2h = load_ring_spec("quadric2_hyperplane")
    dec = q2h.decompose()
    assert len(dec.idempotents) == 2
    assert sorted(dec.factor_dims) == [2, 2]


def test_quadric2_default_generator_is_cyclic_but_h_is_not():
    q2 = load_ring_spec("quadric2")
    h = q2.element_from_dict({"a": q2.one_scalar(), "b": q2.one_scalar()})
    with pytest.raises(NotCyclic):
        q2.decompose(h)


def test_quadric2_novikov_four_fields_and_iota_grouping():
    q2 = load_ring_spec("quadric2")
    ext = q2.extend_ring()
    dec2 = q2.decompose()
    dec4 = ext.decompose()
    assert len(dec4.idempotents) == 4
    for e2 in dec2.idempotents:
        image = q2.iota_element(e2, ext)
        parts = [e4 for e4 in dec4.idempotents if ext.qmul(image, e4) == e4]
        assert len(parts) == 2
        assert parts[0] + parts[1] == image


def test_quadric4_needs_sqrt2():
    with pytest.raises(RootNotInField):
        load_ring_spec("quadric4", m=12).decompose()
    dec = load_ring_spec("quadric4", m=24).decompose()
    assert len(dec.idempotents) == 2
    assert sorted(dec.factor_dims) == [2, 4]


def test_quadric4_idempotents_closed_form():
    q4 = load_ring_spec("quadric4", m=24)
    dec = q4.decompose()
    half = CycRat.rational(F(1, 2), q4.m)
    eplus = q4.element_from_dict({"1": q4.scalar(half), "p": q4.scalar(half, -1)})
    eminus = q4.element_from_dict({"1": q4.scalar(half), "p": q4.scalar(-half, -1)})
    assert set(dec.idempotents) == {eplus, eminus}


def test_lagrange_roundtrip_on_novikov_splits():
    """sum_i r_i e_i = generator whenever all field factors are lines."""
    for name in ("cp2_novikov", "quadric2_novikov"):
        algebra = load_ring_spec(name)
        dec = algebra.decompose()
        assert all(d == 1 for d in dec.factor_dims)
        acc = algebra.zero()
        for r, e in zip(dec.roots, dec.idempotents):
            scaled = algebra.element([r * c for c in e.coords])
            acc = acc + scaled
        assert acc == dec.generator_used


def test_decompose_verify_catches_tampering():
    from qclab.qalgebra import IdempotentDecomposition
    from qclab.errors import NonAssociative

    q2 = load_ring_spec("quadric2")
    dec = q2.decompose()
    bad = IdempotentDecomposition(
        idempotents=(dec.idempotents[0], dec.idempotents[0]),
        factor_dims=(2, 2),
        generator_used=dec.generator_used,
        roots=dec.roots,
    )
    with pytest.raises(NonAssociative):
        bad.verify(q2)
