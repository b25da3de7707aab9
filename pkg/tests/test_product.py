import json
from fractions import Fraction

import pytest

from qclab.catalog import algebra_from_document, load_document, load_ring_spec
from qclab.errors import MonotonicityMismatch
from qclab.qalgebra import product_ring, sigma_embed
from qclab.scalars import LaurentScalar

F = Fraction


def test_product_of_spheres_equals_shipped_entry():
    cp1 = load_ring_spec("cp1")
    prod = product_ring(cp1, cp1)
    shipped = load_ring_spec("cp1_x_cp1")
    assert prod.N_M == 2 and prod.lambda0 == 1 and prod.dim_M == 4
    assert prod.basis == shipped.basis
    assert prod.constants == shipped.constants


def test_product_of_spheres_isomorphic_to_quadric2():
    """Explicit basis bijection 1*1 -> 1, h*1 -> a, 1*h -> b, h*h -> p
    carries the product structure constants to the ruling-basis entry."""
    cp1 = load_ring_spec("cp1")
    prod = product_ring(cp1, cp1)
    q2 = load_ring_spec("quadric2")
    mapping = {"1*1": "1", "h*1": "a", "1*h": "b", "h*h": "p"}
    idx_map = {prod._index[src]: q2._index[dst] for src, dst in mapping.items()}
    for i in range(4):
        for j in range(4):
            pij = prod.qmul(prod.basis_element(i), prod.basis_element(j))
            qij = q2.qmul(q2.basis_element(idx_map[i]), q2.basis_element(idx_map[j]))
            translated = q2.zero()
            for k, c in enumerate(pij.coords):
                if c:
                    translated = translated + q2.element(
                        [c if t == idx_map[k] else q2.zero_scalar() for t in range(4)]
                    )
            assert translated == qij


def test_product_identity_and_sigma_is_ring_hom():
    cp1 = load_ring_spec("cp1")
    prod = product_ring(cp1, cp1)
    one = sigma_embed(cp1, cp1, prod, cp1.identity(), "left")
    assert one == prod.identity()
    h = cp1.basis_element("h")
    ht = cp1.basis_element("h", exponent=2)
    sh = sigma_embed(cp1, cp1, prod, h, "left")
    sht = sigma_embed(cp1, cp1, prod, ht, "left")
    # ring homomorphism: sigma(h * h t^2) = sigma(h) * sigma(h t^2)
    assert sigma_embed(cp1, cp1, prod, cp1.qmul(h, ht), "left") == prod.qmul(sh, sht)
    # right factor embedding lands on the other coordinate
    sr = sigma_embed(cp1, cp1, prod, h, "right")
    assert sr == prod.basis_element("1*h")


def test_sigma_exponent_rescaling_gcd_rule():
    """Chern numbers 2 and 4 give the product gcd 2; the left variable maps
    with exponent scale 2/2 = 1 and the right with scale 4/2 = 2."""
    cp1 = load_ring_spec("cp1")  # N = 2, lambda0 = 1
    doc = load_document("cp3")  # N = 4; rescale to the same kappa = 1/2
    doc["lambda0"] = "2"
    doc["name"] = "cp3_haloed"
    cp3 = algebra_from_document(doc)
    prod = product_ring(cp1, cp3)
    assert prod.N_M == 2 and prod.lambda0 == 1
    s_left = sigma_embed(cp1, cp3, prod, cp1.basis_element("h", exponent=1), "left")
    (k_left,) = {k for c in s_left.coords if c for k, _ in c.terms}
    assert k_left == 1  # exponent scale N_A / N = 1
    s_right = sigma_embed(cp1, cp3, prod, cp3.basis_element("h", exponent=1), "right")
    (k_right,) = {k for c in s_right.coords if c for k, _ in c.terms}
    assert k_right == 2  # exponent scale N_B / N = 2


def test_monotonicity_mismatch():
    cp1 = load_ring_spec("cp1")  # kappa = 1/2
    cp2 = load_ring_spec("cp2")  # kappa = 1/3
    with pytest.raises(MonotonicityMismatch):
        product_ring(cp1, cp2)


def test_product_ring_validates():
    cp1 = load_ring_spec("cp1")
    q2 = load_ring_spec("quadric2")
    prod = product_ring(cp1, q2)  # both kappa = 1/2
    assert prod.dim_M == 6
    assert len(prod.basis) == 8
    # spot check: (h x 1) * (h x 1) = t * (1 x 1)
    hx1 = prod.basis_element("h*1")
    assert prod.qmul(hx1, hx1) == prod.basis_element("1*1", exponent=1)
