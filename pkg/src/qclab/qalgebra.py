"""Quantum (co)homology algebras given by structure-constant data.

A QuantumAlgebra is a finite free module over one of the coefficient fields
from `scalars` with a commutative associative graded product.  The product
is curated data, never computed from curve counts; every document is
validated at load (grading, commutativity, associativity, identity).

The semi-simple decomposition follows the classical route: take a cyclic
generator, compute its monic minimal polynomial exactly, split that
polynomial into its (necessarily monomial) roots, and form the complete
orthogonal idempotent family by Lagrange interpolation at the roots.  Over
a Laurent coefficient field the roots may live in a fractional-exponent
extension; roots are then regrouped into the orbits whose symmetric
functions stay in the base field, and each group sum is one field-factor
unit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .cyclotomic import DEFAULT_M, CycRat
from .errors import (
    DimensionMismatch,
    GradingViolation,
    MissingIdentity,
    MonotonicityMismatch,
    NonAssociative,
    NotCyclic,
    SchemaError,
    UnfactorableShape,
    ZeroElement,
)
from .jsonio import cyc_from_json, laurent_from_json, novikov_from_json, parse_rational, scalar_to_json
from .linalg import solve_columns
from .polynomials import Poly, ScalarFraction, factor_split
from .scalars import LaurentScalar, NovikovScalar

Scalar = LaurentScalar | NovikovScalar


class QuantumAlgebra:
    """Finite-rank graded commutative algebra over a coefficient field."""

    def __init__(
        self,
        name: str,
        side: str,
        dim_M: int,
        lambda0: Fraction,
        N_M: int,
        basis: Sequence[tuple[str, int]],
        identity_name: str,
        constants: Mapping[tuple[int, int], Sequence[tuple[int, Scalar]]],
        coefficients: str = "laurent",
        m: int = DEFAULT_M,
        default_generator=None,
        dual_name: str | None = None,
        dual_order: Sequence[int] | None = None,
        validate: bool = True,
    ):
        if side not in ("cohomology", "homology"):
            raise SchemaError(f"bad side {side!r}")
        if coefficients not in ("laurent", "novikov"):
            raise SchemaError(f"bad coefficient kind {coefficients!r}")
        self.name = name
        self.side = side
        self.dim_M = int(dim_M)
        self.lambda0 = Fraction(lambda0)
        self.N_M = int(N_M)
        self.basis = tuple((str(n), int(d)) for n, d in basis)
        self.m = m
        self.coefficients = coefficients
        names = [n for n, _ in self.basis]
        if len(set(names)) != len(names):
            raise SchemaError("duplicate basis names")
        if identity_name not in names:
            raise MissingIdentity(f"identity element {identity_name!r} is not a basis element")
        self.identity_index = names.index(identity_name)
        self._index = {n: i for i, n in enumerate(names)}
        self.constants = self._fill_constants(constants)
        self.default_generator_spec = default_generator
        self.dual_name = dual_name
        self.dual_order = tuple(dual_order) if dual_order is not None else None
        self._dual_cache: "QuantumAlgebra | None" = None
        if validate:
            self.validate()

    # scalar constructors for this algebra's coefficient field

    def zero_scalar(self) -> Scalar:
        if self.coefficients == "laurent":
            orient = self.side
            return LaurentScalar.zero(orient, self.lambda0, self.N_M, self.m)
        return NovikovScalar.zero(self._nov_direction(), self.m)

    def one_scalar(self) -> Scalar:
        if self.coefficients == "laurent":
            return LaurentScalar.one(self.side, self.lambda0, self.N_M, self.m)
        return NovikovScalar.one(self._nov_direction(), self.m)

    def scalar(self, coeff=1, exponent=0) -> Scalar:
        """coeff * t^k (laurent) or coeff * T^lambda (novikov)."""
        if self.coefficients == "laurent":
            return LaurentScalar.monomial(int(exponent), coeff, self.side, self.lambda0, self.N_M, self.m)
        return NovikovScalar.monomial(Fraction(exponent), coeff, self._nov_direction(), self.m)

    def _nov_direction(self) -> str:
        return "up" if self.side == "cohomology" else "down"

    def _fill_constants(self, constants) -> dict[tuple[int, int], tuple[tuple[int, Scalar], ...]]:
        n = len(self.basis)
        table: dict[tuple[int, int], tuple[tuple[int, Scalar], ...]] = {}
        for (i, j), terms in constants.items():
            key = (min(i, j), max(i, j))
            packed = tuple((int(k), s) for k, s in terms if s)
            if key in table and table[key] != packed:
                raise SchemaError(f"conflicting structure constants for pair {key}")
            table[key] = packed
        e = self.identity_index
        for j in range(n):
            key = (min(e, j), max(e, j))
            implied = ((j, self.one_scalar()),)
            if key in table and table[key] != implied:
                raise SchemaError(f"identity row for basis {j} is inconsistent")
            table[key] = implied
        for i in range(n):
            for j in range(i, n):
                table.setdefault((i, j), ())
        return table

    # elements

    def element(self, coords: Sequence[Scalar]) -> "AlgebraElement":
        if len(coords) != len(self.basis):
            raise DimensionMismatch(f"expected {len(self.basis)} coordinates")
        return AlgebraElement(self, tuple(coords))

    def zero(self) -> "AlgebraElement":
        return self.element([self.zero_scalar()] * len(self.basis))

    def identity(self) -> "AlgebraElement":
        return self.basis_element(self.identity_index)

    def basis_element(self, i: int | str, exponent=0, coeff=1) -> "AlgebraElement":
        idx = self._index[i] if isinstance(i, str) else int(i)
        coords = [self.zero_scalar()] * len(self.basis)
        coords[idx] = self.scalar(coeff, exponent)
        return self.element(coords)

    def element_from_dict(self, coeffs: Mapping[str, Scalar]) -> "AlgebraElement":
        coords = [self.zero_scalar()] * len(self.basis)
        for name, s in coeffs.items():
            if name not in self._index:
                raise SchemaError(f"unknown basis element {name!r}")
            coords[self._index[name]] = s
        return self.element(coords)

    def element_from_json(self, obj) -> "AlgebraElement":
        if isinstance(obj, str):
            return self.basis_element(obj)
        if not isinstance(obj, dict) or "coeffs" not in obj:
            raise SchemaError("element JSON must be a basis name or {'coeffs': {...}}")
        out = {}
        for name, sc in obj["coeffs"].items():
            if self.coefficients == "laurent":
                out[name] = laurent_from_json(sc, self.side, self.lambda0, self.N_M, self.m)
            else:
                out[name] = novikov_from_json(sc, self.m)
        return self.element_from_dict(out)

    def default_generator(self) -> "AlgebraElement":
        if self.default_generator_spec is not None:
            return self.element_from_json(self.default_generator_spec)
        # fall back to the degree-2 hyperplane-type class
        degree2 = [i for i, (_, d) in enumerate(self.basis) if d == 2]
        if len(degree2) == 1:
            return self.basis_element(degree2[0])
        raise NotCyclic("no default generator declared and no unique degree-2 class")

    # product

    def qmul(self, x: "AlgebraElement", y: "AlgebraElement") -> "AlgebraElement":
        if x.algebra is not self or y.algebra is not self:
            raise DimensionMismatch("elements belong to a different algebra")
        out = [self.zero_scalar() for _ in self.basis]
        for i, ci in enumerate(x.coords):
            if not ci:
                continue
            for j, cj in enumerate(y.coords):
                if not cj:
                    continue
                key = (min(i, j), max(i, j))
                cij = ci * cj
                for k, s in self.constants[key]:
                    out[k] = out[k] + cij * s
        return self.element(out)

    # validation

    def validate(self) -> None:
        self._validate_grading()
        self._validate_associativity()
        self._validate_identity()

    def _exponent_degree(self, exponent: Fraction | int) -> int:
        """Total-degree contribution of one variable exponent."""
        if self.coefficients == "laurent":
            return 2 * self.N_M * int(exponent)
        ratio = Fraction(exponent) / self.lambda0
        if ratio.denominator != 1:
            raise GradingViolation(
                f"exponent {exponent} is not an integer multiple of lambda0={self.lambda0}"
            )
        return 2 * self.N_M * int(ratio)

    def _validate_grading(self) -> None:
        for (i, j), terms in self.constants.items():
            di, dj = self.basis[i][1], self.basis[j][1]
            for k, s in terms:
                dk = self.basis[k][1]
                for e, _ in s.terms:
                    contrib = self._exponent_degree(e)
                    if self.side == "cohomology":
                        ok = di + dj == dk + contrib
                    else:
                        ok = di + dj == dk + self.dim_M + contrib
                    if not ok:
                        raise GradingViolation(
                            f"{self.basis[i][0]} * {self.basis[j][0]} -> {self.basis[k][0]} "
                            f"with exponent {e} violates the grading"
                        )

    def _validate_associativity(self) -> None:
        n = len(self.basis)
        els = [self.basis_element(i) for i in range(n)]
        for i in range(n):
            for j in range(i, n):
                for k in range(j, n):
                    left = self.qmul(self.qmul(els[i], els[j]), els[k])
                    right = self.qmul(els[i], self.qmul(els[j], els[k]))
                    if left != right:
                        raise NonAssociative(
                            f"({self.basis[i][0]} * {self.basis[j][0]}) * {self.basis[k][0]} "
                            f"differs from the right-bracketed product"
                        )

    def _validate_identity(self) -> None:
        e = self.identity()
        for i in range(len(self.basis)):
            b = self.basis_element(i)
            if self.qmul(e, b) != b:
                raise MissingIdentity(f"declared identity does not fix {self.basis[i][0]}")
        exp_deg = self.dim_M if self.side == "homology" else 0
        if self.basis[self.identity_index][1] != exp_deg:
            raise MissingIdentity(
                f"identity must have degree {exp_deg} on the {self.side} side"
            )

    # valuation

    def valuation_qh(self, a: "AlgebraElement") -> Fraction:
        """min of coordinate valuations (cohomology) or max (homology)."""
        vals = [c.valuation() for c in a.coords if c]
        if not vals:
            raise ZeroElement("valuation of the zero element")
        return min(vals) if self.side == "cohomology" else max(vals)

    # lifting coordinates into the exact fraction field

    def _lift(self, s: Scalar) -> ScalarFraction:
        nov = s.iota() if isinstance(s, LaurentScalar) else s
        if nov.trunc is not None:
            raise ValueError("exact operations require untruncated scalars")
        return ScalarFraction.from_scalar(
            NovikovScalar("up", nov.terms, None, nov.m, denom_bound=None)
        )

    def _unlift(self, nov: NovikovScalar) -> Scalar:
        if self.coefficients == "novikov":
            return NovikovScalar(self._nov_direction(), nov.terms, None, self.m, denom_bound=None)
        terms = []
        for e, c in nov.terms:
            k = e / self.lambda0
            if k.denominator != 1:
                raise UnfactorableShape(
                    f"coefficient exponent {e} is not an integer power of the Laurent variable"
                )
            terms.append((int(k), c))
        return LaurentScalar(self.side, terms, None, self.lambda0, self.N_M, self.m)

    def _lift_element(self, a: "AlgebraElement") -> list[ScalarFraction]:
        return [self._lift(c) for c in a.coords]

    # minimal polynomial and the idempotent decomposition

    def _power_vectors(self, x: "AlgebraElement", upto: int) -> list[list[ScalarFraction]]:
        vecs = [self._lift_element(self.identity())]
        cur = self.identity()
        for _ in range(upto):
            cur = self.qmul(cur, x)
            vecs.append(self._lift_element(cur))
        return vecs

    def min_poly(self, x: "AlgebraElement") -> Poly:
        """Monic minimal polynomial of quantum multiplication by x."""
        n = len(self.basis)
        vecs = self._power_vectors(x, n)
        for d in range(1, n + 1):
            sol = solve_columns(vecs[:d], vecs[d], self.m)
            if sol is not None:
                return Poly([-c for c in sol] + [ScalarFraction.one(self.m)], self.m)
        raise AssertionError("no linear dependency among n+1 power vectors")

    def decompose(self, generator: "AlgebraElement | None" = None) -> "IdempotentDecomposition":
        """Complete orthogonal idempotents of a semi-simple algebra.

        The cyclic-subalgebra check is mandatory: the powers of the
        generator must span the whole algebra.  Fine idempotents are formed
        by Lagrange interpolation at the minimal polynomial's roots; over a
        Laurent base the roots are regrouped into base-field orbits and the
        group sums returned.
        """
        x = generator if generator is not None else self.default_generator()
        n = len(self.basis)
        p = self.min_poly(x)
        if p.degree() < n:
            raise NotCyclic(
                f"powers of the generator span a {p.degree()}-dimensional subalgebra of dimension {n}; "
                "supply a cyclic generator"
            )
        roots = factor_split(p)
        vecs = self._power_vectors(x, n - 1)
        fine = [self._lagrange_vector(roots, i, vecs) for i in range(len(roots))]
        groups = self._group_roots(roots)
        idempotents = []
        for group in groups:
            acc = [ScalarFraction.zero(self.m)] * n
            for i in group:
                acc = [a + b for a, b in zip(acc, fine[i])]
            coords = []
            for f in acc:
                try:
                    coords.append(self._unlift(f.as_scalar()))
                except ValueError:
                    raise UnfactorableShape(
                        "a field-factor unit has non-polynomial coefficients; "
                        "the factor is not split by finite sums"
                    ) from None
            idempotents.append(self.element(coords))
        decomposition = IdempotentDecomposition(
            idempotents=tuple(idempotents),
            factor_dims=tuple(len(g) for g in groups),
            generator_used=x,
            roots=tuple(roots[i] for g in groups for i in g),
        )
        decomposition.verify(self)
        return decomposition

    def _lagrange_vector(
        self, roots: list[NovikovScalar], i: int, vecs: list[list[ScalarFraction]]
    ) -> list[ScalarFraction]:
        one = ScalarFraction.one(self.m)
        num = [one]
        for j, r in enumerate(roots):
            if j == i:
                continue
            rf = ScalarFraction.from_scalar(r)
            num = [-(rf * num[0])] + [num[k - 1] - rf * num[k] for k in range(1, len(num))] + [one]
        den = one
        ri = ScalarFraction.from_scalar(roots[i])
        for j, r in enumerate(roots):
            if j != i:
                den = den * (ri - ScalarFraction.from_scalar(r))
        dinv = den.inverse()
        n = len(vecs[0])
        out = [ScalarFraction.zero(self.m)] * n
        for k, ck in enumerate(num):
            ck = ck * dinv
            if ck:
                out = [o + ck * v for o, v in zip(out, vecs[k])]
        return out

    def _base_field_contains(self, s: NovikovScalar) -> bool:
        if self.coefficients == "novikov":
            return True
        return all((e / self.lambda0).denominator == 1 for e, _ in s.terms)

    def _group_roots(self, roots: list[NovikovScalar]) -> list[list[int]]:
        """Partition roots into minimal subsets whose symmetric functions
        lie in the base coefficient field (Galois orbits over the base)."""
        remaining = list(range(len(roots)))
        groups: list[list[int]] = []
        while remaining:
            first = remaining[0]
            chosen = None
            for size in range(1, len(remaining) + 1):
                for combo in itertools.combinations(remaining, size):
                    if first not in combo:
                        continue
                    if self._symmetric_in_base([roots[i] for i in combo]):
                        chosen = list(combo)
                        break
                if chosen:
                    break
            assert chosen is not None, "full root set is always base-rational"
            groups.append(chosen)
            remaining = [i for i in remaining if i not in chosen]
        return groups

    def _symmetric_in_base(self, roots: list[NovikovScalar]) -> bool:
        # elementary symmetric functions via prod (z - r)
        poly = [NovikovScalar.one("up", self.m)]
        for r in roots:
            r = NovikovScalar("up", r.terms, None, self.m, denom_bound=None)
            poly = [-(r * poly[0])] + [poly[k - 1] - r * poly[k] for k in range(1, len(poly))] + [
                NovikovScalar.one("up", self.m)
            ]
        return all(self._base_field_contains(c) for c in poly)

    # coefficient extension and duality

    def extend_ring(self, name: str | None = None) -> "QuantumAlgebra":
        """The same ring over the Novikov field, via t -> T^lambda0."""
        if self.coefficients != "laurent":
            raise SchemaError("extend_ring applies to Laurent-coefficient algebras")
        constants = {
            key: [(k, s.iota()) for k, s in terms]
            for key, terms in self.constants.items()
        }
        return QuantumAlgebra(
            name=name or f"{self.name}_novikov",
            side=self.side,
            dim_M=self.dim_M,
            lambda0=self.lambda0,
            N_M=self.N_M,
            basis=self.basis,
            identity_name=self.basis[self.identity_index][0],
            constants=constants,
            coefficients="novikov",
            m=self.m,
            default_generator=self.default_generator_spec,
            dual_order=self.dual_order,
            validate=False,
        )

    def iota_element(self, a: "AlgebraElement", extended: "QuantumAlgebra") -> "AlgebraElement":
        return extended.element([c.iota() for c in a.coords])

    def dual_algebra(self) -> "QuantumAlgebra":
        """The Poincare-dual algebra (derived when no twin is shipped)."""
        if self._dual_cache is not None:
            return self._dual_cache
        order = self.dual_order or tuple(range(len(self.basis)))
        flip = "homology" if self.side == "cohomology" else "cohomology"
        names = [f"{n}^" for n, _ in self.basis]
        dual_basis = [None] * len(self.basis)
        for i, (n, d) in enumerate(self.basis):
            dual_basis[order[i]] = (names[i], self.dim_M - d)
        constants = {}
        for (i, j), terms in self.constants.items():
            key = (min(order[i], order[j]), max(order[i], order[j]))
            constants[key] = [(order[k], s.negate_exponents()) for k, s in terms]
        dual = QuantumAlgebra(
            name=f"{self.name}_dual",
            side=flip,
            dim_M=self.dim_M,
            lambda0=self.lambda0,
            N_M=self.N_M,
            basis=dual_basis,
            identity_name=names[self.identity_index],
            constants=constants,
            coefficients=self.coefficients,
            m=self.m,
            dual_order=_inverse_permutation(order),
            validate=False,
        )
        self._dual_cache = dual
        dual._dual_cache = self
        return dual

    def set_dual(self, dual: "QuantumAlgebra") -> None:
        """Pair this algebra with a shipped Poincare twin."""
        self._dual_cache = dual
        dual._dual_cache = self
        if dual.dual_order is None:
            order = self.dual_order or tuple(range(len(self.basis)))
            dual.dual_order = _inverse_permutation(order)

    def poincare_dual(self, a: "AlgebraElement") -> "AlgebraElement":
        """PD: coefficient exponents are negated, basis mapped to the twin."""
        dual = self.dual_algebra()
        order = self.dual_order or tuple(range(len(self.basis)))
        coords = [dual.zero_scalar()] * len(self.basis)
        for i, c in enumerate(a.coords):
            coords[order[i]] = c.negate_exponents()
        return dual.element(coords)

    def __repr__(self) -> str:
        return (
            f"QuantumAlgebra({self.name!r}, {self.side}, rank {len(self.basis)}, "
            f"{self.coefficients}, lambda0={self.lambda0}, N={self.N_M})"
        )


@dataclass(frozen=True)
class AlgebraElement:
    algebra: QuantumAlgebra
    coords: tuple

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            return self.algebra.qmul(self, other)
        return AlgebraElement(self.algebra, tuple(c * other for c in self.coords))

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return any(self.coords)

    def _check(self, other: "AlgebraElement") -> None:
        if self.algebra is not other.algebra:
            raise DimensionMismatch("elements of different algebras")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra is other.algebra and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((id(self.algebra), self.coords))

    def power(self, k: int) -> "AlgebraElement":
        out = self.algebra.identity()
        for _ in range(k):
            out = self.algebra.qmul(out, self)
        return out

    def to_json(self):
        return {
            "coeffs": {
                self.algebra.basis[i][0]: scalar_to_json(c)
                for i, c in enumerate(self.coords)
                if c
            }
        }

    def __repr__(self) -> str:
        parts = [f"({c})*{self.algebra.basis[i][0]}" for i, c in enumerate(self.coords) if c]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class IdempotentDecomposition:
    """Complete orthogonal idempotent family with factor metadata."""

    idempotents: tuple[AlgebraElement, ...]
    factor_dims: tuple[int, ...]
    generator_used: AlgebraElement
    roots: tuple[NovikovScalar, ...]

    def verify(self, algebra: QuantumAlgebra) -> None:
        total = algebra.zero()
        for i, e in enumerate(self.idempotents):
            if algebra.qmul(e, e) != e:
                raise NonAssociative(f"factor {i} is not idempotent")
            total = total + e
            for j in range(i + 1, len(self.idempotents)):
                if algebra.qmul(e, self.idempotents[j]):
                    raise NonAssociative(f"factors {i} and {j} are not orthogonal")
        if total != algebra.identity():
            raise NonAssociative("idempotents do not sum to the identity")

    def to_json(self):
        from .jsonio import novikov_to_json

        return {
            "count": len(self.idempotents),
            "factor_dims": list(self.factor_dims),
            "idempotents": [e.to_json() for e in self.idempotents],
            "generator": self.generator_used.to_json(),
            "roots": [novikov_to_json(r) for r in self.roots],
        }


def _inverse_permutation(order) -> tuple[int, ...]:
    inv = [0] * len(order)
    for i, o in enumerate(order):
        inv[o] = i
    return tuple(inv)


# products of algebras


def product_ring(A: QuantumAlgebra, B: QuantumAlgebra, name: str | None = None) -> QuantumAlgebra:
    """Tensor-product ring of two monotone factors with equal kappa.

    The product variable has Chern number gcd(N_A, N_B); each factor
    variable maps to the corresponding power of the product variable.
    """
    if A.side != B.side:
        raise SchemaError("product factors must live on the same side")
    if A.coefficients != "laurent" or B.coefficients != "laurent":
        raise SchemaError("product_ring is defined for Laurent-coefficient algebras")
    if A.lambda0 * B.N_M != B.lambda0 * A.N_M:
        raise MonotonicityMismatch(
            f"monotonicity constants differ: {A.lambda0}/{A.N_M} vs {B.lambda0}/{B.N_M}"
        )
    if A.m != B.m:
        raise SchemaError("product factors must share the cyclotomic order")
    import math as _math

    N = _math.gcd(A.N_M, B.N_M)
    lam = A.lambda0 * N / A.N_M
    scale_a, scale_b = A.N_M // N, B.N_M // N
    nb = len(B.basis)
    basis = [(f"{an}*{bn}", ad + bd) for an, ad in A.basis for bn, bd in B.basis]
    dim = A.dim_M + B.dim_M
    constants: dict[tuple[int, int], list[tuple[int, LaurentScalar]]] = {}
    for p in range(len(basis)):
        i1, j1 = divmod(p, nb)
        for q in range(p, len(basis)):
            i2, j2 = divmod(q, nb)
            akey = (min(i1, i2), max(i1, i2))
            bkey = (min(j1, j2), max(j1, j2))
            terms: dict[int, LaurentScalar] = {}
            for ka, s_a in A.constants[akey]:
                for kb, s_b in B.constants[bkey]:
                    scal = LaurentScalar(
                        A.side,
                        [
                            (ea * scale_a + eb * scale_b, ca * cb)
                            for ea, ca in s_a.terms
                            for eb, cb in s_b.terms
                        ],
                        None,
                        lam,
                        N,
                        A.m,
                    )
                    k = ka * nb + kb
                    terms[k] = terms[k] + scal if k in terms else scal
            packed = [(k, s) for k, s in sorted(terms.items()) if s]
            if packed:
                constants[(p, q)] = packed
    identity = f"{A.basis[A.identity_index][0]}*{B.basis[B.identity_index][0]}"
    return QuantumAlgebra(
        name=name or f"{A.name}_x_{B.name}",
        side=A.side,
        dim_M=dim,
        lambda0=lam,
        N_M=N,
        basis=basis,
        identity_name=identity,
        constants=constants,
        coefficients="laurent",
        m=A.m,
    )


def sigma_embed(A: QuantumAlgebra, B: QuantumAlgebra, product: QuantumAlgebra, a: AlgebraElement, factor: str = "left") -> AlgebraElement:
    """Ring embedding of one factor into the product: x*t_A^k maps to
    (x tensor identity_B) * t^(k*N_A/N), with N the product Chern number."""
    if factor not in ("left", "right"):
        raise SchemaError("factor must be 'left' or 'right'")
    src = A if factor == "left" else B
    if a.algebra is not src:
        raise DimensionMismatch("element does not belong to the chosen factor")
    scale = src.N_M // product.N_M
    nb = len(B.basis)
    out = [product.zero_scalar()] * len(product.basis)
    for i, c in enumerate(a.coords):
        if not c:
            continue
        if factor == "left":
            target = i * nb + B.identity_index
        else:
            target = A.identity_index * nb + i
        out[target] = LaurentScalar(
            product.side,
            [(k * scale, coeff) for k, coeff in c.terms],
            None,
            product.lambda0,
            product.N_M,
            product.m,
        )
    return product.element(out)
