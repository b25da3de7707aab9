"""Polynomials over the scalar fields and exact root extraction.

Internally every finite Novikov sum is a Laurent polynomial in X = T^(1/D)
over Q(zeta_m), so the fraction field of these sums is exactly computable.
ScalarFraction implements it; linear algebra and minimal polynomials run
over it without ever truncating.

factor_split finds roots of a monic polynomial that are themselves finite
Novikov sums, by Newton-polygon slopes with recursive shifts.  Candidate
leading coefficients come from factoring edge polynomials over Q(zeta_m)
(rational factorisation via sympy, quadratics by completing the square,
binomials by exact d-th roots); every root is verified exactly before it is
returned.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .cyclotomic import CycRat, zeta_as_cycrat, zeta_in_field
from .errors import (
    DivisionByZero,
    RepeatedRoot,
    RootNotInField,
    UnfactorableShape,
)
from .scalars import EXP_DENOM_BOUND, NovikovScalar

MAX_PUISEUX_DEPTH = 24


# ---------------------------------------------------------------------------
# dense Laurent-polynomial view of a finite Novikov sum


def _exp_lcm(scalars: Iterable[NovikovScalar]) -> int:
    d = 1
    for s in scalars:
        for e, _ in s.terms:
            d = d * e.denominator // math.gcd(d, e.denominator)
    return d


def _as_dense(s: NovikovScalar, denom: int) -> tuple[list[CycRat], Fraction]:
    """(coeff list, exponent shift): s = X^shift * sum coeffs[i] X^(i/denom)."""
    if not s.terms:
        return [], Fraction(0)
    shift = min(e for e, _ in s.terms)
    size = int((max(e for e, _ in s.terms) - shift) * denom) + 1
    out = [CycRat.zero(s.m)] * size
    for e, c in s.terms:
        out[int((e - shift) * denom)] = c
    return out, shift


def _from_dense(coeffs: Sequence[CycRat], shift: Fraction, denom: int, m: int) -> NovikovScalar:
    terms = [(shift + Fraction(i, denom), c) for i, c in enumerate(coeffs) if c]
    return NovikovScalar("up", terms, None, m, denom_bound=None)


def _dense_divmod(a: list[CycRat], b: list[CycRat], m: int) -> tuple[list[CycRat], list[CycRat]]:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    b = list(b)
    while b and not b[-1]:
        b.pop()
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    inv_lead = b[-1].inverse()
    q = [CycRat.zero(m)] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1] * inv_lead
        q[k] = c
        if c:
            for i, d in enumerate(b):
                a[k + i] = a[k + i] - c * d
    while a and not a[-1]:
        a.pop()
    return q, a


def scalar_gcd(a: NovikovScalar, b: NovikovScalar) -> NovikovScalar:
    """gcd of two finite sums as Laurent polynomials, normalised to
    valuation 0 with leading coefficient 1."""
    if not a:
        x = b
    elif not b:
        x = a
    else:
        denom = _exp_lcm([a, b])
        pa, _ = _as_dense(a, denom)
        pb, _ = _as_dense(b, denom)
        while any(c for c in pb):
            _, pa_next = _dense_divmod(pa, pb, a.m)
            pa, pb = pb, pa_next
        x = _from_dense(pa, Fraction(0), denom, a.m)
    if not x:
        return x
    e0, c0 = x.leading()
    return x * NovikovScalar("up", [(-e0, c0.inverse())], None, x.m, denom_bound=None)


def scalar_divexact(a: NovikovScalar, b: NovikovScalar) -> NovikovScalar | None:
    """a / b when the division is exact (remainder zero), else None."""
    if not a:
        return NovikovScalar.zero("up", a.m)
    if not b:
        raise DivisionByZero("exact division by zero")
    denom = _exp_lcm([a, b])
    pa, sa = _as_dense(a, denom)
    pb, sb = _as_dense(b, denom)
    q, r = _dense_divmod(pa, pb, a.m)
    if any(c for c in r):
        return None
    return _from_dense(q, sa - sb, denom, a.m)


# ---------------------------------------------------------------------------
# exact fraction field


def _up(s: NovikovScalar) -> NovikovScalar:
    if s.trunc is not None:
        raise ValueError("fraction field requires exact scalars")
    if s.direction == "up":
        return s
    return NovikovScalar("up", s.terms, None, s.m, denom_bound=None)


class ScalarFraction:
    """num/den of finite Novikov sums; exact field arithmetic.

    Canonical form: gcd(num, den) = 1 and den has valuation 0 with leading
    coefficient 1, so equality is structural.
    """

    __slots__ = ("num", "den", "m")

    def __init__(self, num: NovikovScalar, den: NovikovScalar | None = None, _canonical: bool = False):
        num = _up(num)
        if den is None:
            den = NovikovScalar.one("up", num.m)
        else:
            den = _up(den)
        if not den:
            raise DivisionByZero("fraction with zero denominator")
        self.m = num.m
        if _canonical:
            self.num, self.den = num, den
            return
        if not num:
            self.num = NovikovScalar.zero("up", num.m)
            self.den = NovikovScalar.one("up", num.m)
            return
        one = CycRat.one(num.m)
        if len(den.terms) == 1:
            # monomial denominators divide everything
            e0, c0 = den.terms[0]
            if e0 == 0 and c0 == one:
                self.num, self.den = num, den
                return
            self.num = num * NovikovScalar("up", [(-e0, c0.inverse())], None, den.m, denom_bound=None)
            self.den = NovikovScalar.one("up", den.m)
            return
        g = scalar_gcd(num, den)
        if len(g.terms) > 1 or g.terms[0][0] != 0 or g.terms[0][1] != one:
            num = scalar_divexact(num, g)
            den = scalar_divexact(den, g)
            assert num is not None and den is not None
        e0, c0 = den.leading()
        unit = NovikovScalar("up", [(-e0, c0.inverse())], None, den.m, denom_bound=None)
        self.num = num * unit
        self.den = den * unit

    @classmethod
    def from_scalar(cls, s: NovikovScalar) -> "ScalarFraction":
        return cls(_up(s), None, _canonical=True)

    @classmethod
    def zero(cls, m: int) -> "ScalarFraction":
        return cls.from_scalar(NovikovScalar.zero("up", m))

    @classmethod
    def one(cls, m: int) -> "ScalarFraction":
        return cls.from_scalar(NovikovScalar.one("up", m))

    def __bool__(self) -> bool:
        return bool(self.num)

    def _den_trivial(self) -> bool:
        t = self.den.terms
        return len(t) == 1 and t[0][0] == 0 and t[0][1] == CycRat.one(self.m)

    def __add__(self, other: "ScalarFraction") -> "ScalarFraction":
        if self._den_trivial() and other._den_trivial():
            return ScalarFraction(self.num + other.num, None, _canonical=True)
        return ScalarFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "ScalarFraction") -> "ScalarFraction":
        if self._den_trivial() and other._den_trivial():
            return ScalarFraction(self.num - other.num, None, _canonical=True)
        return ScalarFraction(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "ScalarFraction":
        return ScalarFraction(-self.num, self.den, _canonical=True)

    def __mul__(self, other: "ScalarFraction") -> "ScalarFraction":
        if self._den_trivial() and other._den_trivial():
            return ScalarFraction(self.num * other.num, None, _canonical=True)
        return ScalarFraction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "ScalarFraction") -> "ScalarFraction":
        if not other.num:
            raise DivisionByZero("division by zero fraction")
        return ScalarFraction(self.num * other.den, self.den * other.num)

    def inverse(self) -> "ScalarFraction":
        if not self.num:
            raise DivisionByZero("inverse of zero fraction")
        return ScalarFraction(self.den, self.num)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ScalarFraction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def is_scalar(self) -> bool:
        return self.den == NovikovScalar.one("up", self.m)

    def as_scalar(self, direction: str = "up") -> NovikovScalar:
        if not self.is_scalar():
            s = scalar_divexact(self.num, self.den)
            if s is None:
                raise ValueError(f"{self!r} is not a finite sum")
        else:
            s = self.num
        if direction == "up":
            return s
        return NovikovScalar("down", s.terms, None, s.m, denom_bound=None)

    # valuations at both ends (num and den are finite, so both exist)

    def val_up(self) -> Fraction:
        return self.num.terms[0][0] - self.den.terms[0][0]

    def val_down(self) -> Fraction:
        return self.num.terms[-1][0] - self.den.terms[-1][0]

    def lead_up(self) -> CycRat:
        return self.num.terms[0][1] * self.den.terms[0][1].inverse()

    def lead_down(self) -> CycRat:
        return self.num.terms[-1][1] * self.den.terms[-1][1].inverse()

    def __repr__(self) -> str:
        if self.is_scalar():
            return repr(self.num)
        return f"({self.num}) / ({self.den})"


# ---------------------------------------------------------------------------
# polynomials in one variable over ScalarFraction


class Poly:
    """Dense polynomial with ScalarFraction coefficients, low degree first."""

    __slots__ = ("coeffs", "m")

    def __init__(self, coeffs: Sequence[ScalarFraction | NovikovScalar], m: int):
        lifted = [c if isinstance(c, ScalarFraction) else ScalarFraction.from_scalar(c) for c in coeffs]
        while lifted and not lifted[-1]:
            lifted.pop()
        self.coeffs = tuple(lifted)
        self.m = m

    @classmethod
    def from_scalars(cls, scalars: Sequence[NovikovScalar], m: int) -> "Poly":
        return cls(list(scalars), m)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == ScalarFraction.one(self.m)

    def __call__(self, x: NovikovScalar | ScalarFraction) -> ScalarFraction:
        xf = x if isinstance(x, ScalarFraction) else ScalarFraction.from_scalar(x)
        acc = ScalarFraction.zero(self.m)
        for c in reversed(self.coeffs):
            acc = acc * xf + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(
            [c * ScalarFraction.from_scalar(NovikovScalar.monomial(0, k, "up", self.m))
             for k, c in enumerate(self.coeffs) if k >= 1],
            self.m,
        )

    def shift(self, r: NovikovScalar) -> "Poly":
        """p(z + r) by Taylor expansion (exact)."""
        rf = ScalarFraction.from_scalar(_up(r))
        out = list(self.coeffs)
        n = len(out)
        # synthetic division repeatedly: after pass k, out[k] = coeff of z^k of p(z+r)
        for k in range(n - 1):
            for i in range(n - 2, k - 1, -1):
                out[i] = out[i] + out[i + 1] * rf
        return Poly(out, self.m)

    def divide_linear(self, r: NovikovScalar) -> "Poly":
        """Exact quotient p / (z - r); raises if r is not a root."""
        rf = ScalarFraction.from_scalar(_up(r))
        out: list[ScalarFraction] = [ScalarFraction.zero(self.m)] * self.degree()
        carry = ScalarFraction.zero(self.m)
        for k in range(self.degree(), 0, -1):
            carry = self.coeffs[k] + carry * rf if k == self.degree() else self.coeffs[k] + carry * rf
            out[k - 1] = carry
        rem = self.coeffs[0] + carry * rf
        if rem:
            raise ValueError("divide_linear: not a root")
        return Poly(out, self.m)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*z^{k}" for k, c in enumerate(self.coeffs))

    def pretty(self, var: str = "z") -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*{var}^{k}" for k, c in enumerate(self.coeffs))


# ---------------------------------------------------------------------------
# roots of edge polynomials inside Q(zeta_m)


def _cyc_poly_roots(coeffs: list[CycRat], m: int) -> list[tuple[CycRat, int]]:
    """All roots (with multiplicity) of sum coeffs[i] y^i inside Q(zeta_m).

    Raises RootNotInField if the polynomial provably has roots outside the
    field or the supported shapes cannot certify them.
    """
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    # strip zero roots
    mult0 = 0
    while not coeffs[0]:
        coeffs = coeffs[1:]
        mult0 += 1
    found: list[tuple[CycRat, int]] = [(CycRat.zero(m), mult0)] if mult0 else []
    work = list(coeffs)

    def peel(root: CycRat) -> int:
        nonlocal work
        mult = 0
        while len(work) > 1:
            q, r = _dense_divmod(work, [-root, CycRat.one(m)], m)
            if any(c for c in r):
                break
            work = q
            mult += 1
        return mult

    for root in _candidate_roots(list(work), m):
        mult = peel(root)
        if mult:
            found.append((root, mult))
        if len(work) <= 1:
            break
    if len(work) > 1:
        raise RootNotInField(
            f"polynomial of degree {len(coeffs) - 1} does not split over Q(zeta_{m})"
        )
    return found


def _divisors(n: int, cap: int = 4000) -> list[int] | None:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
            if len(out) > cap:
                return None
        d += 1
    return sorted(out)


def _rational_roots(rat: list[Fraction]) -> list[Fraction] | None:
    """Rational roots of a rational polynomial, or None to defer to sympy."""
    from math import lcm

    scale = lcm(*(c.denominator for c in rat))
    ints = [int(c * scale) for c in rat]
    if ints[0] == 0:
        return None
    p_divs = _divisors(ints[0])
    q_divs = _divisors(ints[-1])
    if p_divs is None or q_divs is None or len(p_divs) * len(q_divs) > 4000:
        return None
    roots = []
    seen = set()
    for p in p_divs:
        for q in q_divs:
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in seen:
                    continue
                seen.add(cand)
                acc = Fraction(0)
                for c in reversed(rat):
                    acc = acc * cand + c
                if acc == 0:
                    roots.append(cand)
    return roots


def _candidate_roots(coeffs: list[CycRat], m: int) -> list[CycRat]:
    """Candidate roots in Q(zeta_m): rational roots first, then quadratic and
    binomial shapes; full rational factorisation via sympy as a fallback."""
    candidates: list[CycRat] = []
    deg = len(coeffs) - 1
    if deg == 1:
        candidates.append(-coeffs[0] / coeffs[1])
        return candidates
    if not all(c.is_rational() for c in coeffs):
        candidates.extend(_irreducible_cyc_roots(coeffs, m))
        return candidates
    rat = [c.as_rational() for c in coeffs]
    qroots = _rational_roots(rat)
    if qroots is not None:
        for r in qroots:
            candidates.append(CycRat.rational(r, m))
            while True:  # peel with multiplicity
                q, rem = _rat_divmod_linear(rat, r)
                if rem != 0:
                    break
                rat = q
        if len(rat) - 1 <= 0:
            return candidates
        if len(rat) - 1 <= 2 or all(c == 0 for c in rat[1:-1]):
            candidates.extend(_irreducible_cyc_roots([CycRat.rational(c, m) for c in rat], m))
            return candidates
    # fall back to a full factorisation over Q
    from sympy import Poly as SymPoly
    from sympy.abc import y

    spoly = SymPoly(list(reversed([c for c in rat])), y, domain="QQ")
    for factor, _mult in spoly.factor_list()[1]:
        fc = [CycRat.rational(Fraction(int(c.p), int(c.q)), m) for c in reversed(factor.all_coeffs())]
        candidates.extend(_irreducible_cyc_roots(fc, m))
    return candidates


def _rat_divmod_linear(rat: list[Fraction], r: Fraction) -> tuple[list[Fraction], Fraction]:
    """Divide a rational polynomial by (y - r): (quotient, remainder)."""
    out = [Fraction(0)] * (len(rat) - 1)
    carry = rat[-1]
    for k in range(len(rat) - 2, -1, -1):
        out[k] = carry
        carry = rat[k] + carry * r
    return out, carry


def _irreducible_cyc_roots(coeffs: list[CycRat], m: int) -> list[CycRat]:
    deg = len(coeffs) - 1
    out: list[CycRat] = []
    if deg == 1:
        out.append(-coeffs[0] / coeffs[1])
        return out
    if deg == 2:
        a, b, c = coeffs[2], coeffs[1], coeffs[0]
        disc = b * b - a * c * 4
        root = disc.nth_root(2)
        if root is None:
            return []
        inv2a = (a * 2).inverse()
        out.extend([(-b + root) * inv2a, (-b - root) * inv2a])
        return out
    if all(not coeffs[k] for k in range(1, deg)):
        # binomial y^d + c0
        c0 = -coeffs[0] / coeffs[deg]
        base = c0.nth_root(deg)
        if base is None or not base:
            return []
        if not zeta_in_field(deg, m):
            # only a subset of the d-th roots would lie in the field
            return []
        zeta_d = zeta_as_cycrat(deg, m)
        out.extend(base * zeta_d**j for j in range(deg))
        return out
    return []


# ---------------------------------------------------------------------------
# Newton-polygon root finder


def _lower_hull_edges(points: list[tuple[int, Fraction]]) -> list[tuple[tuple[int, Fraction], tuple[int, Fraction]]]:
    pts = sorted(points)
    hull: list[tuple[int, Fraction]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # keep hull lower-convex: remove if last point is above segment
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return list(zip(hull[:-1], hull[1:]))


def _roots_above(p: Poly, floor: Fraction | None, depth: int, denom_bound: int | None) -> list[tuple[NovikovScalar, int]]:
    """Roots of p (finite Novikov sums) with valuation strictly above floor.

    Returns (root, multiplicity) pairs; raises UnfactorableShape when the
    recursion cannot terminate within the depth budget.
    """
    m = p.m
    roots: list[tuple[NovikovScalar, int]] = []
    work = p
    # zero root of the current polynomial
    mult0 = 0
    while not work.is_zero() and not work.coeffs[0]:
        work = Poly(list(work.coeffs[1:]), m)
        mult0 += 1
    if mult0:
        roots.append((NovikovScalar.zero("up", m), mult0))
    if work.degree() < 1:
        return roots
    if depth <= 0:
        raise UnfactorableShape("root expansion exceeded depth budget; shape is not a product of binomial/linear factors")
    points = [(k, c.val_up()) for k, c in enumerate(work.coeffs) if c]
    for (k1, v1), (k2, v2) in _lower_hull_edges(points):
        mu = Fraction(v1 - v2, k2 - k1)
        if floor is not None and mu <= floor:
            continue
        if denom_bound is not None and denom_bound % mu.denominator != 0:
            raise RootNotInField(
                f"root valuation {mu} exceeds the exponent denominator bound {denom_bound}"
            )
        # edge polynomial in gamma
        edge = [CycRat.zero(m)] * (k2 - k1 + 1)
        for k, c in enumerate(work.coeffs):
            if c and k1 <= k <= k2 and c.val_up() == v1 - (k - k1) * mu:
                edge[k - k1] = c.lead_up()
        for gamma, mult in _cyc_poly_roots(edge, m):
            if not gamma:
                continue
            r0 = NovikovScalar.monomial(mu, gamma, "up", m)
            if mult == 1:
                if not work(r0):
                    roots.append((r0, 1))
                    continue
            shifted = work.shift(r0)
            deeper = _roots_above(shifted, mu, depth - 1, denom_bound)
            got = 0
            for tail, tmult in deeper:
                roots.append((r0 + tail, tmult))
                got += tmult
            if got < mult:
                raise RootNotInField(
                    f"edge root {gamma}T^{mu}: only {got} of {mult} branch roots are finite sums in Q(zeta_{m})"
                )
    return roots


def factor_split(p: Poly, denom_bound: int | None = EXP_DENOM_BOUND) -> list[NovikovScalar]:
    """Full root list of a monic polynomial whose irreducible factors are
    binomials z^d - c T^l or linear z - r.

    Such polynomials are exactly those whose roots are finite Novikov sums
    in Q(zeta_m); the list is complete and verified.  Errors: RepeatedRoot
    when p is not square-free, RootNotInField when splitting needs a larger
    cyclotomic order or exponent denominators beyond the bound,
    UnfactorableShape otherwise.
    """
    if p.is_zero() or p.degree() < 1:
        raise UnfactorableShape("expected a nonconstant polynomial")
    if not p.is_monic():
        lead_inv = p.coeffs[-1].inverse()
        p = Poly([c * lead_inv for c in p.coeffs], p.m)
    pairs = _roots_above(p, None, MAX_PUISEUX_DEPTH, denom_bound)
    total = sum(mult for _, mult in pairs)
    if any(mult > 1 for _, mult in pairs):
        raise RepeatedRoot("polynomial is not square-free")
    if total < p.degree():
        raise UnfactorableShape(
            f"found {total} of {p.degree()} roots; remaining factor has non-monomial roots"
        )
    roots = [r for r, _ in pairs]
    for r in roots:
        assert not p(r), "root verification failed"
    return roots
