"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored as coordinate vectors of length phi(m) in the power
basis 1, zeta, ..., zeta^(phi(m)-1) with Fraction entries, reduced modulo
the m-th cyclotomic polynomial.  The default order m = 12 contains the
primitive cube root of unity and i; m = 24 adds sqrt(2).

Root extraction (`nth_root`) is allowed to use floating point to *guess*
a candidate, but every returned value is verified exactly; floats never
leak into results.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DivisionByZero, MismatchedCyclotomicOrder

DEFAULT_M = 12

_ROOT_SEARCH_CAP = 20000  # twist combinations tried per prime root extraction
_SNAP_DENOMINATOR = 10**6


def euler_phi(m: int) -> int:
    count = 0
    for k in range(1, m + 1):
        if math.gcd(k, m) == 1:
            count += 1
    return count


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, low degree first, monic."""
    # Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, by exact division.
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _poly_div_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        assert c % den[-1] == 0
        q = c // den[-1]
        out[k] = q
        for i, d in enumerate(den):
            num[k + i] -= q * d
    assert all(c == 0 for c in num)
    return out


@lru_cache(maxsize=None)
def _reduction_rows(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """zeta^k for k in [phi(m), 2*phi(m)-2] expressed in the power basis."""
    phi = euler_phi(m)
    poly = cyclotomic_polynomial(m)
    rows: list[tuple[Fraction, ...]] = []
    # x^phi = -(poly[0] + ... + poly[phi-1] x^{phi-1}) since poly is monic
    prev = [Fraction(-poly[i]) for i in range(phi)]
    rows.append(tuple(prev))
    for _ in range(phi - 2):
        shifted = [Fraction(0)] + prev[:-1]
        top = prev[-1]
        nxt = [shifted[i] + top * rows[0][i] for i in range(phi)]
        rows.append(tuple(nxt))
        prev = nxt
    return tuple(rows)


class CycRat:
    """An element of Q(zeta_m) with exact rational coordinates."""

    __slots__ = ("m", "coeffs", "_hash", "_inv")

    def __init__(self, m: int, coeffs: Sequence[Fraction | int]):
        phi = euler_phi(m)
        if len(coeffs) != phi:
            raise ValueError(f"expected {phi} coefficients for m={m}, got {len(coeffs)}")
        self.m = m
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        self._hash: int | None = None
        self._inv: "CycRat | None" = None

    # construction helpers

    @classmethod
    def rational(cls, value: Fraction | int | str, m: int = DEFAULT_M) -> "CycRat":
        phi = euler_phi(m)
        v = Fraction(value)
        return cls(m, (v,) + (Fraction(0),) * (phi - 1))

    @classmethod
    def zero(cls, m: int = DEFAULT_M) -> "CycRat":
        return cls.rational(0, m)

    @classmethod
    def one(cls, m: int = DEFAULT_M) -> "CycRat":
        return cls.rational(1, m)

    @classmethod
    def zeta_power(cls, m: int, k: int) -> "CycRat":
        """zeta_m^k reduced into the power basis."""
        phi = euler_phi(m)
        k %= m
        if k < phi:
            coeffs = [Fraction(0)] * phi
            coeffs[k] = Fraction(1)
            return cls(m, coeffs)
        out = cls.one(m)
        gen = cls(m, [Fraction(0), Fraction(1)] + [Fraction(0)] * (phi - 2)) if phi > 1 else cls.rational(-1, m)
        for _ in range(k):
            out = out * gen
        return out

    # ring structure

    def _check(self, other: "CycRat") -> None:
        if self.m != other.m:
            raise MismatchedCyclotomicOrder(f"m={self.m} vs m={other.m}")

    def __add__(self, other: "CycRat") -> "CycRat":
        self._check(other)
        return CycRat(self.m, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "CycRat") -> "CycRat":
        self._check(other)
        return CycRat(self.m, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "CycRat":
        return CycRat(self.m, [-a for a in self.coeffs])

    def __mul__(self, other: "CycRat | int | Fraction") -> "CycRat":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycRat(self.m, [a * q for a in self.coeffs])
        self._check(other)
        if other.is_rational():
            q = other.coeffs[0]
            return CycRat(self.m, [a * q for a in self.coeffs])
        if self.is_rational():
            q = self.coeffs[0]
            return CycRat(self.m, [a * q for a in other.coeffs])
        phi = len(self.coeffs)
        conv = [Fraction(0)] * (2 * phi - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        conv[i + j] += a * b
        out = list(conv[:phi])
        rows = _reduction_rows(self.m)
        for k in range(phi, 2 * phi - 1):
            c = conv[k]
            if c:
                row = rows[k - phi]
                for i in range(phi):
                    out[i] += c * row[i]
        return CycRat(self.m, out)

    __rmul__ = __mul__

    def inverse(self) -> "CycRat":
        """Field inverse via the extended Euclidean algorithm mod Phi_m."""
        if not self:
            raise DivisionByZero("inverse of zero in Q(zeta_m)")
        if self._inv is not None:
            return self._inv
        if self.is_rational():
            out = CycRat.rational(1 / self.coeffs[0], self.m)
            self._inv = out
            return out
        phi_poly = [Fraction(c) for c in cyclotomic_polynomial(self.m)]
        a = list(self.coeffs)
        # trim trailing zeros
        while a and a[-1] == 0:
            a.pop()
        old_r, r = phi_poly, a
        old_s, s = [Fraction(0)], [Fraction(1)]
        while any(c != 0 for c in r):
            q, rem = _frac_poly_divmod(old_r, r)
            old_r, r = r, rem
            old_s, s = s, _frac_poly_sub(old_s, _frac_poly_mul(q, s))
        # old_r is a nonzero constant gcd (Phi_m is irreducible)
        assert len([c for c in old_r if c != 0]) == 1 and old_r[0] != 0
        inv_scale = 1 / old_r[0]
        out = [c * inv_scale for c in old_s]
        out += [Fraction(0)] * (len(self.coeffs) - len(out))
        result = CycRat(self.m, out[: len(self.coeffs)])
        self._inv = result
        result._inv = self
        return result

    def __truediv__(self, other: "CycRat | int | Fraction") -> "CycRat":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                raise DivisionByZero("division by zero rational")
            return CycRat(self.m, [a / q for a in self.coeffs])
        return self * other.inverse()

    def __pow__(self, n: int) -> "CycRat":
        if n < 0:
            return self.inverse() ** (-n)
        out = CycRat.one(self.m)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self) -> bool:
        return any(c != 0 for c in self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self == CycRat.rational(other, self.m)
        if not isinstance(other, CycRat):
            return NotImplemented
        return self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.m, self.coeffs))
        return self._hash

    # predicates and conversions

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def embed(self, m2: int) -> "CycRat":
        """Image under Q(zeta_m) -> Q(zeta_m2), zeta_m -> zeta_m2^(m2/m)."""
        if m2 == self.m:
            return self
        if m2 % self.m != 0:
            raise MismatchedCyclotomicOrder(f"no embedding of m={self.m} into m={m2}")
        step = m2 // self.m
        out = CycRat.zero(m2)
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + CycRat.zeta_power(m2, i * step) * c
        return out

    def galois_image(self, a: int) -> "CycRat":
        """Image under the automorphism zeta -> zeta^a (a coprime to m)."""
        if math.gcd(a, self.m) != 1:
            raise ValueError(f"a={a} not coprime to m={self.m}")
        out = CycRat.zero(self.m)
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + CycRat.zeta_power(self.m, i * a) * c
        return out

    def complex_value(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.m)
        return sum(float(c) * z**i for i, c in enumerate(self.coeffs))

    def __repr__(self) -> str:
        if not self:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*z{self.m}")
            else:
                parts.append(f"{c}*z{self.m}^{i}")
        return " + ".join(parts)

    # root extraction

    def nth_root(self, d: int) -> "CycRat | None":
        """An exact d-th root in Q(zeta_m), or None if there is none.

        Numeric guessing with exact verification; factors d into primes and
        chains prime-order extractions.
        """
        if d <= 0:
            raise ValueError("root order must be positive")
        if not self:
            return CycRat.zero(self.m)
        value = self
        for p in _prime_factors(d):
            value = _prime_root(value, p)
            if value is None:
                return None
        return value


def _prime_factors(d: int) -> list[int]:
    out = []
    p = 2
    while d > 1:
        while d % p == 0:
            out.append(p)
            d //= p
        p += 1
    return out


def _prime_root(x: CycRat, p: int) -> CycRat | None:
    """Solve y^p = x in Q(zeta_m) by conjugate-twist enumeration.

    Each Galois conjugate sigma_a(y) is one of the p complex p-th roots of
    sigma_a(x); enumerating the twist per conjugate pins down y's rational
    coordinates, which are then verified exactly.
    """
    import numpy as np

    m = x.m
    phi = euler_phi(m)
    units = [a for a in range(1, m + 1) if math.gcd(a, m) == 1]
    zeta_c = cmath.exp(2j * cmath.pi / m)
    vander = np.array([[zeta_c ** (a * i) for i in range(phi)] for a in units], dtype=complex)
    try:
        vinv = np.linalg.inv(vander)
    except np.linalg.LinAlgError:
        return None
    conj_vals = []
    for a in units:
        v = complex(sum(float(c) * zeta_c ** (a * i) for i, c in enumerate(x.coeffs)))
        conj_vals.append(_principal_root(v, p))
    twist = cmath.exp(2j * cmath.pi / p)
    total = p**phi
    if total > _ROOT_SEARCH_CAP:
        total = _ROOT_SEARCH_CAP
    rhs = np.empty(phi, dtype=complex)
    for combo in range(total):
        k = combo
        for idx in range(phi):
            rhs[idx] = conj_vals[idx] * twist ** (k % p)
            k //= p
        coords = vinv @ rhs
        if np.max(np.abs(coords.imag)) > 1e-6:
            continue
        snapped = []
        ok = True
        for c in coords.real:
            f = Fraction(float(c)).limit_denominator(_SNAP_DENOMINATOR)
            if abs(float(f) - float(c)) > 1e-7:
                ok = False
                break
            snapped.append(f)
        if not ok:
            continue
        candidate = CycRat(m, snapped)
        if candidate**p == x:
            return candidate
    return None


def _principal_root(v: complex, p: int) -> complex:
    r = abs(v) ** (1.0 / p)
    theta = cmath.phase(v) / p
    return r * cmath.exp(1j * theta)


def zeta_in_field(k: int, m: int) -> bool:
    """Whether a primitive k-th root of unity lies in Q(zeta_m)."""
    return m % k == 0 or (k % 4 == 2 and m % (k // 2) == 0)


def zeta_as_cycrat(k: int, m: int) -> CycRat:
    """zeta_k as an element of Q(zeta_m); requires zeta_in_field(k, m)."""
    if m % k == 0:
        return CycRat.zeta_power(m, m // k)
    if k % 4 == 2 and m % (k // 2) == 0:
        kk = k // 2  # odd; zeta_{2kk} = -zeta_kk^{(kk+1)/2}
        return -CycRat.zeta_power(m, (m // kk) * ((kk + 1) // 2))
    raise MismatchedCyclotomicOrder(f"zeta_{k} is not in Q(zeta_{m})")


# small Fraction-coefficient polynomial helpers used by the inverse


def _frac_poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    bb = list(b)
    while bb and bb[-1] == 0:
        bb.pop()
    if len(a) < len(bb):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(bb) + 1)
    inv_lead = 1 / bb[-1]
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(bb) - 1] * inv_lead
        q[k] = c
        if c:
            for i, d in enumerate(bb):
                a[k + i] -= c * d
    while a and a[-1] == 0:
        a.pop()
    return q, a if a else [Fraction(0)]


def _frac_poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _frac_poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]
