from fractions import Fraction

import pytest

from qclab.cyclotomic import CycRat, zeta_as_cycrat
from qclab.errors import RepeatedRoot, RootNotInField, UnfactorableShape
from qclab.polynomials import (
    Poly,
    ScalarFraction,
    factor_split,
    scalar_divexact,
    scalar_gcd,
)
from qclab.scalars import NovikovScalar

F = Fraction


def N(*terms, m=12):
    return NovikovScalar("up", [(F(e), c) for e, c in terms], None, m)


def zpoly(coeffs, m=12):
    return Poly([c if isinstance(c, NovikovScalar) else N((0, c), m=m) for c in coeffs], m)


def test_scalar_gcd_and_divexact():
    a = N((0, 1), (1, -1)) * N((0, 1), (F(1, 2), 2))
    b = N((0, 1), (1, -1)) * N((2, 5))
    g = scalar_gcd(a, b)
    assert g == N((0, 1), (1, -1))
    assert scalar_divexact(a, g) == N((0, 1), (F(1, 2), 2))
    assert scalar_divexact(a, N((0, 1), (F(1, 3), 1))) is None


def test_fraction_field_is_exact():
    x = ScalarFraction(N((0, 1)), N((0, 1), (1, -1)))  # 1/(1-T)
    y = ScalarFraction.from_scalar(N((0, 1), (1, -1)))
    assert (x * y).is_scalar()
    assert (x * y).as_scalar() == N((0, 1))
    z = x - x
    assert not z
    assert x + x == ScalarFraction(N((0, 2)), N((0, 1), (1, -1)))
    assert x.inverse().as_scalar() == N((0, 1), (1, -1))


def test_factor_split_cube_root():
    # z^3 - T: check every root by substitution
    p = Poly([N((1, -1)), N((0, 0)), N((0, 0)), N((0, 1))], 12)
    roots = factor_split(p)
    assert len(roots) == 3
    theta = zeta_as_cycrat(3, 12)
    expected = {
        NovikovScalar("up", [(F(1, 3), theta**j)], None, 12) for j in range(3)
    }
    assert set(roots) == expected
    for r in roots:
        assert r * r * r == N((1, 1))


def test_factor_split_squares():
    p = zpoly([-1, 0, 1])  # z^2 - 1
    roots = factor_split(p)
    assert {r.terms[0][1].as_rational() for r in roots} == {1, -1}


def test_factor_split_root_not_in_field():
    p12 = Poly([N((1, -2)), N((0, 0)), N((0, 1))], 12)  # z^2 - 2T
    with pytest.raises(RootNotInField):
        factor_split(p12)
    p24 = Poly([N((1, -2), m=24), N((0, 0), m=24), N((0, 1), m=24)], 24)
    roots = factor_split(p24)
    assert len(roots) == 2
    for r in roots:
        assert r * r == N((1, 2), m=24)


def test_factor_split_repeated_roots():
    with pytest.raises(RepeatedRoot):
        factor_split(zpoly([0, 0, 1]))  # z^2
    # (z^2 - T)^2 = z^4 - 2T z^2 + T^2
    p = Poly([N((2, 1)), N((0, 0)), N((1, -2)), N((0, 0)), N((0, 1))], 12)
    with pytest.raises(RepeatedRoot):
        factor_split(p)


def test_factor_split_non_monomial_roots_rejected():
    # z^2 - (1+T) has square-root-series roots, not finite sums
    p = Poly([N((0, -1), (1, -1)), N((0, 0)), N((0, 1))], 12)
    with pytest.raises((UnfactorableShape, RootNotInField)):
        factor_split(p)


def test_factor_split_shifted_roots():
    # (z - 1)^3 - T has the three roots 1 + theta^j T^(1/3)
    one = N((0, 1))
    p = Poly([N((0, -1), (1, -1)), N((0, 3)), N((0, -3)), one], 12)
    roots = factor_split(p)
    assert len(roots) == 3
    theta = zeta_as_cycrat(3, 12)
    expected = {
        one + NovikovScalar("up", [(F(1, 3), theta**j)], None, 12) for j in range(3)
    }
    assert set(roots) == expected


def test_factor_split_mixed_slopes():
    # (z - T)(z^2 - 9 T^2): slopes coincide, distinct magnitudes
    pz = Poly([N((3, 9)), N((2, -9)), N((1, -1)), N((0, 1))], 12)
    roots = factor_split(pz)
    vals = sorted(r.terms[0][1].as_rational() for r in roots)
    assert vals == [-3, 1, 3]


def test_poly_shift_and_divide_linear():
    p = Poly([N((0, -1)), N((0, 0)), N((0, 1))], 12)  # z^2 - 1
    q = p.shift(N((0, 1)))  # (z+1)^2 - 1 = z^2 + 2z
    assert not q.coeffs[0]
    r = N((0, 1))
    quotient = p.divide_linear(r)
    assert quotient.degree() == 1
    with pytest.raises(ValueError):
        p.divide_linear(N((0, 5)))
