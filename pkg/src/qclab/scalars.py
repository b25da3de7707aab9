"""Coefficient fields: formal sums of T-powers with cyclotomic coefficients.

Two flavours share one term representation:

* NovikovScalar -- finite sums sum_j a_j T^(lambda_j) with rational exponents.
  Direction "up" models the universal Novikov field (exponents increase, the
  completion adds terms of ever larger exponent); "down" models the variant
  used on the chain level (completion adds ever smaller exponents).
* LaurentScalar -- integer powers of a geometric variable t (cohomology) or
  s (homology) that carries area lambda0 and Chern number N_M as metadata.

Elements here are always finite; an optional truncation bound records that a
result is only trusted strictly inside the bound (below it for "up", above it
for "down").  Arithmetic on untruncated inputs is exact.  The valuation is
the minimal exponent for upward elements and the maximal one for downward
elements, scaled by lambda0 in the Laurent case.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Literal

from .cyclotomic import DEFAULT_M, CycRat
from .errors import (
    DivisionByZero,
    ExponentDenominatorBound,
    MismatchedCyclotomicOrder,
    MixedDirections,
    ZeroElement,
)

Direction = Literal["up", "down"]
Orientation = Literal["cohomology", "homology"]

EXP_DENOM_BOUND = 60


def _coerce_coeff(c, m: int) -> CycRat:
    if isinstance(c, CycRat):
        if c.m != m:
            raise MismatchedCyclotomicOrder(f"coefficient m={c.m}, scalar m={m}")
        return c
    return CycRat.rational(Fraction(c), m)


def _merge_terms(pairs: Iterable[tuple[Fraction, CycRat]]) -> dict[Fraction, CycRat]:
    acc: dict[Fraction, CycRat] = {}
    for e, c in pairs:
        if e in acc:
            acc[e] = acc[e] + c
        else:
            acc[e] = c
    return {e: c for e, c in acc.items() if c}


class NovikovScalar:
    """A finite formal sum of T-powers over Q(zeta_m)."""

    __slots__ = ("direction", "terms", "trunc", "m")

    def __init__(
        self,
        direction: Direction,
        terms: Iterable[tuple[Fraction | int | str, CycRat | int | Fraction]],
        trunc: Fraction | None = None,
        m: int = DEFAULT_M,
        denom_bound: int | None = EXP_DENOM_BOUND,
    ):
        if direction not in ("up", "down"):
            raise ValueError(f"bad direction {direction!r}")
        self.direction: Direction = direction
        self.m = m
        cleaned = []
        for e, c in terms:
            exp = Fraction(e)
            if denom_bound is not None and denom_bound % exp.denominator != 0:
                raise ExponentDenominatorBound(
                    f"exponent {exp} has denominator {exp.denominator}, bound {denom_bound}"
                )
            cleaned.append((exp, _coerce_coeff(c, m)))
        merged = _merge_terms(cleaned)
        if trunc is not None:
            trunc = Fraction(trunc)
            if direction == "up":
                merged = {e: c for e, c in merged.items() if e < trunc}
            else:
                merged = {e: c for e, c in merged.items() if e > trunc}
        self.terms = tuple(sorted(merged.items()))
        self.trunc = trunc

    # constructors

    @classmethod
    def zero(cls, direction: Direction = "up", m: int = DEFAULT_M) -> "NovikovScalar":
        return cls(direction, [], m=m)

    @classmethod
    def one(cls, direction: Direction = "up", m: int = DEFAULT_M) -> "NovikovScalar":
        return cls(direction, [(Fraction(0), CycRat.one(m))], m=m)

    @classmethod
    def monomial(
        cls,
        exponent,
        coeff=1,
        direction: Direction = "up",
        m: int = DEFAULT_M,
    ) -> "NovikovScalar":
        return cls(direction, [(Fraction(exponent), coeff)], m=m)

    # structure helpers

    def _check(self, other: "NovikovScalar") -> None:
        if self.direction != other.direction:
            raise MixedDirections(f"{self.direction} vs {other.direction}")
        if self.m != other.m:
            raise MismatchedCyclotomicOrder(f"m={self.m} vs m={other.m}")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_exact(self) -> bool:
        return self.trunc is None

    def is_monomial(self) -> bool:
        return len(self.terms) == 1 and self.trunc is None

    def in_lambda_zero(self) -> bool:
        return self.direction == "up" and all(e >= 0 for e, _ in self.terms)

    def in_lambda_plus(self) -> bool:
        return self.direction == "up" and all(e > 0 for e, _ in self.terms)

    # arithmetic

    def __add__(self, other: "NovikovScalar") -> "NovikovScalar":
        self._check(other)
        trunc = _combine_trunc(self.direction, self.trunc, other.trunc)
        return NovikovScalar(
            self.direction, list(self.terms) + list(other.terms), trunc, self.m, denom_bound=None
        )

    def __sub__(self, other: "NovikovScalar") -> "NovikovScalar":
        return self + (-other)

    def __neg__(self) -> "NovikovScalar":
        return NovikovScalar(
            self.direction, [(e, -c) for e, c in self.terms], self.trunc, self.m, denom_bound=None
        )

    def __mul__(self, other) -> "NovikovScalar":
        if isinstance(other, (int, Fraction, CycRat)):
            c = _coerce_coeff(other, self.m)
            return NovikovScalar(
                self.direction, [(e, a * c) for e, a in self.terms], self.trunc, self.m, denom_bound=None
            )
        self._check(other)
        prods = []
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                prods.append((e1 + e2, c1 * c2))
        trunc = None
        bounds = []
        if self.trunc is not None:
            bounds.append(self.trunc + (other.valuation() if other.terms else Fraction(0)))
        if other.trunc is not None:
            bounds.append(other.trunc + (self.valuation() if self.terms else Fraction(0)))
        if bounds:
            trunc = min(bounds) if self.direction == "up" else max(bounds)
        return NovikovScalar(self.direction, prods, trunc, self.m, denom_bound=None)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "NovikovScalar":
        if n < 0:
            raise ValueError("use invert() for negative powers")
        out = NovikovScalar.one(self.direction, self.m)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NovikovScalar):
            return NotImplemented
        return (
            self.direction == other.direction
            and self.m == other.m
            and self.terms == other.terms
            and self.trunc == other.trunc
        )

    def __hash__(self) -> int:
        return hash((self.direction, self.m, self.terms, self.trunc))

    # valuation and inversion

    def valuation(self) -> Fraction:
        """Minimal exponent (up) or maximal exponent (down); error on zero."""
        if not self.terms:
            raise ZeroElement("valuation of zero is undefined")
        return self.terms[0][0] if self.direction == "up" else self.terms[-1][0]

    def leading(self) -> tuple[Fraction, CycRat]:
        if not self.terms:
            raise ZeroElement("leading term of zero")
        return self.terms[0] if self.direction == "up" else self.terms[-1]

    def invert(self, precision: Fraction | int = 10) -> "NovikovScalar":
        """Inverse; exact for monomials, truncated geometric series otherwise.

        For non-monomials the result carries terms strictly inside the bound
        nu(x^-1) + precision (up; mirrored for down) and a truncation flag.
        """
        if not self.terms:
            raise DivisionByZero("inverse of zero scalar")
        precision = Fraction(precision)
        e0, c0 = self.leading()
        lead_inv = NovikovScalar(self.direction, [(-e0, c0.inverse())], None, self.m, denom_bound=None)
        if len(self.terms) == 1 and self.trunc is None:
            return lead_inv
        # x = lead * (1 - y) with y of strictly positive depth; invert the tail
        # geometrically and truncate.
        one = NovikovScalar.one(self.direction, self.m)
        y = one - self * lead_inv
        if self.direction == "up":
            bound = -e0 + precision
        else:
            bound = -e0 - precision
        inner = bound + e0  # acc terms are shifted by -e0 when scaled by lead_inv
        acc = one
        power = one
        while True:
            power = (power * y)._drop_beyond(inner)
            if not power.terms:
                break
            acc = acc + power
        out = (acc * lead_inv)._drop_beyond(bound)
        return NovikovScalar(self.direction, out.terms, bound, self.m, denom_bound=None)

    def _drop_beyond(self, bound: Fraction) -> "NovikovScalar":
        if self.direction == "up":
            kept = [(e, c) for e, c in self.terms if e < bound]
        else:
            kept = [(e, c) for e, c in self.terms if e > bound]
        return NovikovScalar(self.direction, kept, None, self.m, denom_bound=None)

    # maps

    def map_coeffs(self, f: Callable[[CycRat], CycRat], m: int | None = None) -> "NovikovScalar":
        return NovikovScalar(
            self.direction,
            [(e, f(c)) for e, c in self.terms],
            self.trunc,
            m if m is not None else self.m,
            denom_bound=None,
        )

    def embed_order(self, m2: int) -> "NovikovScalar":
        return self.map_coeffs(lambda c: c.embed(m2), m2)

    def negate_exponents(self) -> "NovikovScalar":
        """T^l -> T^(-l); flips the direction (used by Poincare duality)."""
        flipped: Direction = "down" if self.direction == "up" else "up"
        return NovikovScalar(
            flipped,
            [(-e, c) for e, c in self.terms],
            -self.trunc if self.trunc is not None else None,
            self.m,
            denom_bound=None,
        )

    def __repr__(self) -> str:
        if not self.terms:
            body = "0"
        else:
            body = " + ".join(f"({c})T^{e}" for e, c in self.terms)
        tail = f" + O[{self.trunc}]" if self.trunc is not None else ""
        return body + tail


def _combine_trunc(direction: Direction, a: Fraction | None, b: Fraction | None) -> Fraction | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b) if direction == "up" else max(a, b)


class LaurentScalar:
    """Integer powers of the geometric variable with (lambda0, N_M) metadata."""

    __slots__ = ("orientation", "terms", "trunc", "lambda0", "N_M", "m")

    def __init__(
        self,
        orientation: Orientation,
        terms: Iterable[tuple[int, CycRat | int | Fraction]],
        trunc: int | None = None,
        lambda0: Fraction | int = 1,
        N_M: int = 1,
        m: int = DEFAULT_M,
    ):
        if orientation not in ("cohomology", "homology"):
            raise ValueError(f"bad orientation {orientation!r}")
        self.orientation: Orientation = orientation
        self.lambda0 = Fraction(lambda0)
        self.N_M = int(N_M)
        self.m = m
        cleaned = [(int(k), _coerce_coeff(c, m)) for k, c in terms]
        merged = _merge_terms([(Fraction(k), c) for k, c in cleaned])
        if trunc is not None:
            trunc = int(trunc)
            if orientation == "cohomology":
                merged = {e: c for e, c in merged.items() if e < trunc}
            else:
                merged = {e: c for e, c in merged.items() if e > trunc}
        self.terms = tuple(sorted((int(e), c) for e, c in merged.items()))
        self.trunc = trunc

    @property
    def direction(self) -> Direction:
        return "up" if self.orientation == "cohomology" else "down"

    @classmethod
    def zero(cls, orientation: Orientation = "cohomology", lambda0=1, N_M=1, m: int = DEFAULT_M):
        return cls(orientation, [], None, lambda0, N_M, m)

    @classmethod
    def one(cls, orientation: Orientation = "cohomology", lambda0=1, N_M=1, m: int = DEFAULT_M):
        return cls(orientation, [(0, CycRat.one(m))], None, lambda0, N_M, m)

    @classmethod
    def monomial(cls, k: int, coeff=1, orientation: Orientation = "cohomology", lambda0=1, N_M=1, m: int = DEFAULT_M):
        return cls(orientation, [(k, coeff)], None, lambda0, N_M, m)

    def _check(self, other: "LaurentScalar") -> None:
        if self.orientation != other.orientation:
            raise MixedDirections(f"{self.orientation} vs {other.orientation}")
        if self.m != other.m:
            raise MismatchedCyclotomicOrder(f"m={self.m} vs m={other.m}")
        if self.lambda0 != other.lambda0 or self.N_M != other.N_M:
            raise MixedDirections(
                f"variable metadata differs: ({self.lambda0},{self.N_M}) vs ({other.lambda0},{other.N_M})"
            )

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_exact(self) -> bool:
        return self.trunc is None

    def is_monomial(self) -> bool:
        return len(self.terms) == 1 and self.trunc is None

    def __add__(self, other: "LaurentScalar") -> "LaurentScalar":
        self._check(other)
        trunc = None
        if self.trunc is not None or other.trunc is not None:
            vals = [t for t in (self.trunc, other.trunc) if t is not None]
            trunc = (min if self.orientation == "cohomology" else max)(vals)
        return LaurentScalar(
            self.orientation, list(self.terms) + list(other.terms), trunc, self.lambda0, self.N_M, self.m
        )

    def __sub__(self, other: "LaurentScalar") -> "LaurentScalar":
        return self + (-other)

    def __neg__(self) -> "LaurentScalar":
        return LaurentScalar(
            self.orientation, [(k, -c) for k, c in self.terms], self.trunc, self.lambda0, self.N_M, self.m
        )

    def __mul__(self, other) -> "LaurentScalar":
        if isinstance(other, (int, Fraction, CycRat)):
            c = _coerce_coeff(other, self.m)
            return LaurentScalar(
                self.orientation, [(k, a * c) for k, a in self.terms], self.trunc, self.lambda0, self.N_M, self.m
            )
        self._check(other)
        prods = [(k1 + k2, c1 * c2) for k1, c1 in self.terms for k2, c2 in other.terms]
        trunc = None
        bounds = []
        if self.trunc is not None and other.terms:
            bounds.append(self.trunc + other._lead_exp())
        if other.trunc is not None and self.terms:
            bounds.append(other.trunc + self._lead_exp())
        if bounds:
            trunc = (min if self.orientation == "cohomology" else max)(bounds)
        return LaurentScalar(self.orientation, prods, trunc, self.lambda0, self.N_M, self.m)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentScalar":
        if n < 0:
            raise ValueError("use invert() for negative powers")
        out = LaurentScalar.one(self.orientation, self.lambda0, self.N_M, self.m)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return (
            self.orientation == other.orientation
            and self.m == other.m
            and self.lambda0 == other.lambda0
            and self.N_M == other.N_M
            and self.terms == other.terms
            and self.trunc == other.trunc
        )

    def __hash__(self) -> int:
        return hash((self.orientation, self.m, self.lambda0, self.N_M, self.terms, self.trunc))

    def _lead_exp(self) -> int:
        if not self.terms:
            raise ZeroElement("leading exponent of zero")
        return self.terms[0][0] if self.orientation == "cohomology" else self.terms[-1][0]

    def valuation(self) -> Fraction:
        """min k*lambda0 over terms (cohomology) or max k*lambda0 (homology)."""
        if not self.terms:
            raise ZeroElement("valuation of zero is undefined")
        return self._lead_exp() * self.lambda0

    def leading(self) -> tuple[int, CycRat]:
        if not self.terms:
            raise ZeroElement("leading term of zero")
        return self.terms[0] if self.orientation == "cohomology" else self.terms[-1]

    def invert(self, precision: int = 10) -> "LaurentScalar":
        if not self.terms:
            raise DivisionByZero("inverse of zero scalar")
        k0, c0 = self.leading()
        lead_inv = LaurentScalar(self.orientation, [(-k0, c0.inverse())], None, self.lambda0, self.N_M, self.m)
        if self.is_monomial():
            return lead_inv
        one = LaurentScalar.one(self.orientation, self.lambda0, self.N_M, self.m)
        y = one - self * lead_inv
        bound = -k0 + precision if self.orientation == "cohomology" else -k0 - precision
        inner = bound + k0
        acc, power = one, one
        while True:
            power = (power * y)._drop_beyond(inner)
            if not power.terms:
                break
            acc = acc + power
        out = (acc * lead_inv)._drop_beyond(bound)
        return LaurentScalar(self.orientation, out.terms, bound, self.lambda0, self.N_M, self.m)

    def _drop_beyond(self, bound: int) -> "LaurentScalar":
        if self.orientation == "cohomology":
            kept = [(k, c) for k, c in self.terms if k < bound]
        else:
            kept = [(k, c) for k, c in self.terms if k > bound]
        return LaurentScalar(self.orientation, kept, None, self.lambda0, self.N_M, self.m)

    def iota(self) -> NovikovScalar:
        """The coefficient embedding t^k -> T^(k*lambda0) (or s^k likewise).

        Cohomology elements land in the upward Novikov field, homology ones
        in the downward field; the valuation is preserved on the nose.
        """
        direction: Direction = "up" if self.orientation == "cohomology" else "down"
        return NovikovScalar(
            direction,
            [(k * self.lambda0, c) for k, c in self.terms],
            self.trunc * self.lambda0 if self.trunc is not None else None,
            self.m,
            denom_bound=None,
        )

    def negate_exponents(self) -> "LaurentScalar":
        """t^k -> s^(-k): flips orientation (Poincare duality on coefficients)."""
        flipped: Orientation = "homology" if self.orientation == "cohomology" else "cohomology"
        return LaurentScalar(
            flipped,
            [(-k, c) for k, c in self.terms],
            -self.trunc if self.trunc is not None else None,
            self.lambda0,
            self.N_M,
            self.m,
        )

    def map_coeffs(self, f: Callable[[CycRat], CycRat], m: int | None = None) -> "LaurentScalar":
        return LaurentScalar(
            self.orientation,
            [(k, f(c)) for k, c in self.terms],
            self.trunc,
            self.lambda0,
            self.N_M,
            m if m is not None else self.m,
        )

    def __repr__(self) -> str:
        var = "t" if self.orientation == "cohomology" else "s"
        if not self.terms:
            body = "0"
        else:
            body = " + ".join(f"({c}){var}^{k}" for k, c in self.terms)
        tail = f" + O[{self.trunc}]" if self.trunc is not None else ""
        return body + tail


# thin functional wrappers naming the public operation contracts


def cyc_arith(x: CycRat, y: CycRat | None, op: str) -> CycRat:
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inverse()
    raise ValueError(f"unknown op {op!r}")


def nov_arith(x: NovikovScalar, y: NovikovScalar, op: str) -> NovikovScalar:
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


def nov_invert(x: NovikovScalar, precision: Fraction | int = 10) -> NovikovScalar:
    return x.invert(precision)


def valuation(x: NovikovScalar | LaurentScalar) -> Fraction:
    return x.valuation()


def iota_scalar(x: LaurentScalar) -> NovikovScalar:
    return x.iota()
