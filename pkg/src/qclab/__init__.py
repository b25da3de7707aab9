"""qclab: exact-arithmetic workbench for quantum cohomology rings over
Novikov-type coefficient fields, action-filtered chain complexes with
spectral invariants, and Gelfand-Cetlin polytopes of partial flag
manifolds.  No floating point enters any result: numerics only ever guess,
exact arithmetic verifies.
"""

from .cyclotomic import CycRat
from .scalars import LaurentScalar, NovikovScalar, iota_scalar, nov_invert, valuation
from .polynomials import Poly, ScalarFraction, factor_split
from .qalgebra import AlgebraElement, IdempotentDecomposition, QuantumAlgebra, product_ring, sigma_embed
from .catalog import catalog_names, load_ring_spec
from .filtered import (
    CappedGenerator,
    FilteredComplex,
    build_complex,
    extend_scalars_complex,
    homology_cycles,
    lemma_compare_suite,
    morse_model,
    random_complex,
    recap,
    rho_bruteforce,
)
from .gelfand_cetlin import (
    FlagSpec,
    GCPattern,
    GCPolytope,
    classify_point,
    flag_dim,
    gc_pattern,
    gc_polytope,
    monotone_lambda,
    vertices,
)

__version__ = "0.1.0"

__all__ = [
    "CycRat",
    "LaurentScalar",
    "NovikovScalar",
    "iota_scalar",
    "nov_invert",
    "valuation",
    "Poly",
    "ScalarFraction",
    "factor_split",
    "AlgebraElement",
    "IdempotentDecomposition",
    "QuantumAlgebra",
    "product_ring",
    "sigma_embed",
    "catalog_names",
    "load_ring_spec",
    "CappedGenerator",
    "FilteredComplex",
    "build_complex",
    "extend_scalars_complex",
    "homology_cycles",
    "lemma_compare_suite",
    "morse_model",
    "random_complex",
    "recap",
    "rho_bruteforce",
    "FlagSpec",
    "GCPattern",
    "GCPolytope",
    "classify_point",
    "flag_dim",
    "gc_pattern",
    "gc_polytope",
    "monotone_lambda",
    "vertices",
]
