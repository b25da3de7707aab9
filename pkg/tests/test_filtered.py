import json
from fractions import Fraction

import pytest

from qclab.catalog import load_ring_spec
from qclab.cyclotomic import CycRat
from qclab.errors import (
    ActionNonDecreasing,
    BoundarySquareNonzero,
    GradingViolation,
    NotACycle,
    NullHomologous,
    SchemaError,
)
from qclab.filtered import (
    CappedGenerator,
    FilteredComplex,
    build_complex,
    homology_cycles,
    morse_model,
    random_complex,
    recap,
    rho_bruteforce,
)
from qclab.scalars import LaurentScalar, NovikovScalar

F = Fraction


def L(k, c=1, lam=1, N=1):
    return LaurentScalar.monomial(k, c, "homology", lam, N)


def two_gen_pair(coeff=None):
    gens = [CappedGenerator("y", F(0), 0), CappedGenerator("x", F(1), 1)]
    diff = {(0, 1): coeff if coeff is not None else L(0)}
    return gens, diff


def test_build_zero_differential():
    C = build_complex([CappedGenerator("a", F(0), 0), CappedGenerator("b", F(1, 2), 3)], {})
    assert C.nice
    assert not C.differential


def test_build_valid_pair_kills_homology():
    gens, diff = two_gen_pair()
    C = build_complex(gens, diff)
    # homology rank drops by two: every kernel element bounds
    for z in homology_cycles(C):
        with pytest.raises(NullHomologous):
            C.rho(z)


def test_build_rejects_action_increase():
    gens = [CappedGenerator("y", F(2), 0), CappedGenerator("x", F(1), 1)]
    with pytest.raises(ActionNonDecreasing):
        build_complex(gens, {(0, 1): L(0)})
    # a coefficient exponent can also push the action up
    gens2, _ = two_gen_pair()
    with pytest.raises(ActionNonDecreasing):
        build_complex(gens2, {(0, 1): L(2)})


def test_build_rejects_bad_grading():
    gens = [CappedGenerator("y", F(0), 0), CappedGenerator("x", F(1), 2)]
    with pytest.raises(GradingViolation):
        build_complex(gens, {(0, 1): L(0)})


def test_build_rejects_nonzero_boundary_square():
    gens = [
        CappedGenerator("a", F(0), 0),
        CappedGenerator("b", F(1), 1),
        CappedGenerator("c", F(2), 2),
    ]
    diff = {(0, 1): L(0), (1, 2): L(0)}
    with pytest.raises(BoundarySquareNonzero):
        build_complex(gens, diff)


def test_recap_composition():
    g = CappedGenerator("z", F(1, 2), 3)
    a = recap(recap(g, 2, F(1), 2), 3, F(1), 2)
    b = recap(g, 5, F(1), 2)
    assert a == b
    assert a.action == F(1, 2) - 5 and a.index == 3 - 20 and a.cap_offset == 5


def test_action_of_chain_uses_max():
    C = build_complex([CappedGenerator("a", F(0), 0), CappedGenerator("b", F(3), 5)], {})
    chain = C.chain({"a": C.scalar(1, 2), "b": C.scalar(1, -1)})
    # a s^2 sits at action 2, b s^-1 at action 2: max = 2
    assert C.action_of(chain) == 2


def test_rho_single_generator():
    C = build_complex([CappedGenerator("z", F(1, 2), 0)], {}, lambda0=1, N_M=2)
    assert C.rho(C.chain({"z": C.scalar(1)})) == F(1, 2)
    # representative bound: rho <= action of any given cycle
    shifted = C.chain({"z": C.scalar(1, 3)})
    assert C.rho(shifted) == C.action_of(shifted)


def test_rho_errors():
    gens, diff = two_gen_pair()
    C = build_complex(gens, diff)
    with pytest.raises(NotACycle):
        C.rho(C.chain({"x": C.scalar(1)}))
    with pytest.raises(NullHomologous):
        C.rho(C.chain({"y": C.scalar(1)}))
    with pytest.raises(NullHomologous):
        C.rho(C.zero_chain())


def test_rho_cancellation_against_bruteforce():
    gens = [
        CappedGenerator("a", F(0), 0),
        CappedGenerator("b", F(1, 3), 0),
        CappedGenerator("c", F(1), 1),
    ]
    diff = {(0, 2): L(0), (1, 2): L(0, 2)}
    C = build_complex(gens, diff)
    z = C.chain({"a": C.scalar(2), "b": C.scalar(-1)})
    assert C.rho(z) == 0
    assert rho_bruteforce(C, z) == 0
    # the class of b alone also cancels down to a multiple of a
    z2 = C.chain({"b": C.scalar(1)})
    assert C.rho(z2) == rho_bruteforce(C, z2) == 0
    # a class forced to stay at the top: enlarge the complex so that the
    # boundary cannot reach below the b-level
    gens2 = [CappedGenerator("a", F(0), 0), CappedGenerator("b", F(1, 3), 0)]
    C2 = build_complex(gens2, {})
    z3 = C2.chain({"a": C2.scalar(1), "b": C2.scalar(1)})
    assert C2.rho(z3) == rho_bruteforce(C2, z3) == F(1, 3)


def test_spectrum_examples():
    C = build_complex([CappedGenerator("z", F(1, 2), 0)], {}, lambda0=1, N_M=2)
    assert C.spectrum((-2, 2)) == [F(-3, 2), F(-1, 2), F(1, 2), F(3, 2)]
    empty = build_complex([], {})
    assert empty.spectrum((-5, 5)) == []


def test_shift_equivariance():
    C = random_complex(3, 6)
    for z in homology_cycles(C):
        try:
            r = C.rho(z)
        except NullHomologous:
            continue
        assert C.shift(F(0)).rho(z) == r
        assert C.shift(F(5)).rho(z) == r + 5
        assert C.shift(F(-1, 3)).rho(z) == r - F(1, 3)


def test_extension_preserves_structure_and_rho():
    C = random_complex(8, 6)
    E = C.extend_scalars()
    assert E.field_kind == "novikov"
    assert len(E.differential) == len(C.differential)
    for z in homology_cycles(C):
        try:
            r = C.rho(z)
        except NullHomologous:
            continue
        assert E.rho(C.j_chain(z, E)) == r


def test_extension_entry_substitution():
    gens, _ = two_gen_pair()
    C = build_complex(gens, {(0, 1): L(0, 3)})
    E = C.extend_scalars()
    s = E.differential[(0, 1)]
    assert isinstance(s, NovikovScalar) and s.direction == "down"
    assert s.terms[0][0] == 0


def test_novikov_complex_with_offlattice_entries():
    """Entries outside the lambda0 lattice are legal over the downward
    field; they are ungraded and rho still works."""
    gens = [CappedGenerator("y", F(0), 0), CappedGenerator("x", F(1), 1), CappedGenerator("w", F(3, 4), 5)]
    diff = {
        (0, 1): NovikovScalar.monomial(0, 1, "down"),
        (0, 2): NovikovScalar.monomial(F(1, 2), 1, "down"),
    }
    C = build_complex(gens, diff, field_kind="novikov")
    z = C.chain({"y": NovikovScalar.monomial(0, 1, "down")})
    with pytest.raises(NullHomologous):
        C.rho(z)


def test_json_roundtrip():
    C = random_complex(5, 6)
    doc = C.to_json()
    C2 = FilteredComplex.from_json(doc)
    assert C2.to_json() == doc
    assert [g for g in C2.generators] == [g for g in C.generators]
    # chains round-trip through JSON too
    for z in homology_cycles(C)[:1]:
        chain_doc = {
            C.generators[i].orbit_id: {"orientation": "homology", "terms": [[k, str(c.coeffs[0])] for k, c in s.terms], "trunc": None}
            for i, s in enumerate(z)
            if s and all(c.is_rational() for _, c in s.terms)
        }
        if len(chain_doc) == len([s for s in z if s]):
            z2 = C2.chain_from_json(chain_doc)
            assert z2 == z


def test_random_complex_determinism_and_validity():
    for seed in range(25):
        a = random_complex(seed, 8)
        b = random_complex(seed, 8)
        assert a.to_json() == b.to_json()
        # validation runs in the constructor; re-validate explicitly
        FilteredComplex(a.generators, dict(a.differential), a.field_kind, a.lambda0, a.N_M, a.m)


def test_morse_model_matches_valuation():
    for name in ("cp2", "quadric2"):
        algebra = load_ring_spec(name)
        model = morse_model(algebra)
        dual = algebra.dual_algebra()
        assert not model.differential
        for i in range(len(algebra.basis)):
            a = algebra.basis_element(i)
            pd = algebra.poincare_dual(a)
            assert model.rho(list(pd.coords)) == dual.valuation_qh(pd) == 0
            shifted = algebra.basis_element(i, exponent=1)
            pd_shift = algebra.poincare_dual(shifted)
            assert model.rho(list(pd_shift.coords)) == dual.valuation_qh(pd_shift) == -algebra.lambda0


def test_morse_model_shift_rule():
    algebra = load_ring_spec("cp2")
    model = morse_model(algebra).shift(F(5))
    dual = algebra.dual_algebra()
    for i in range(len(algebra.basis)):
        pd = algebra.poincare_dual(algebra.basis_element(i))
        assert model.rho(list(pd.coords)) == dual.valuation_qh(pd) + 5


def test_duplicate_orbit_ids_rejected():
    with pytest.raises(SchemaError):
        build_complex([CappedGenerator("z", F(0), 0), CappedGenerator("z", F(1), 1)], {})
