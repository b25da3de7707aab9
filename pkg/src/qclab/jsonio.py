"""JSON codecs: every number crosses the wire as an exact "p/q" string.

Scalar encodings:

* cyclotomic rational: "p/q" shorthand for rationals, else
  {"m": int, "coeffs": ["p/q", ...]} in the power basis of zeta_m.
* Novikov scalar: {"direction": "up"|"down", "terms": [["p/q", cyc], ...],
  "trunc": "p/q"|null}.
* Laurent scalar: {"orientation": "cohomology"|"homology",
  "terms": [[k, cyc], ...], "trunc": k|null}; the variable metadata
  (lambda0, N_M) comes from the enclosing document.
* a bare "p/q" string is accepted wherever a scalar is expected and means
  that constant.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import CycRat, euler_phi
from .errors import SchemaError
from .scalars import LaurentScalar, NovikovScalar


def parse_rational(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational {s!r}: {exc}") from None
    raise SchemaError(f"expected rational string, got {type(s).__name__}")


def rational_str(q: Fraction | int) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def cyc_from_json(obj, m: int) -> CycRat:
    if isinstance(obj, (str, int)):
        return CycRat.rational(parse_rational(obj), m)
    if isinstance(obj, dict):
        mm = int(obj.get("m", m))
        coeffs = [parse_rational(c) for c in obj["coeffs"]]
        if len(coeffs) != euler_phi(mm):
            raise SchemaError(f"CycRat for m={mm} needs {euler_phi(mm)} coeffs")
        value = CycRat(mm, coeffs)
        return value if mm == m else value.embed(m)
    raise SchemaError(f"bad cyclotomic value {obj!r}")


def cyc_to_json(c: CycRat):
    if c.is_rational():
        return rational_str(c.as_rational())
    return {"m": c.m, "coeffs": [rational_str(x) for x in c.coeffs]}


def novikov_from_json(obj, m: int) -> NovikovScalar:
    if isinstance(obj, (str, int)):
        return NovikovScalar("up", [(Fraction(0), cyc_from_json(obj, m))], None, m)
    try:
        direction = obj.get("direction", "up")
        terms = [(parse_rational(e), cyc_from_json(c, m)) for e, c in obj["terms"]]
        trunc = parse_rational(obj["trunc"]) if obj.get("trunc") is not None else None
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad Novikov scalar {obj!r}: {exc}") from None
    return NovikovScalar(direction, terms, trunc, m)


def novikov_to_json(s: NovikovScalar):
    return {
        "direction": s.direction,
        "terms": [[rational_str(e), cyc_to_json(c)] for e, c in s.terms],
        "trunc": rational_str(s.trunc) if s.trunc is not None else None,
    }


def laurent_from_json(obj, orientation: str, lambda0: Fraction, N_M: int, m: int) -> LaurentScalar:
    if isinstance(obj, (str, int)):
        return LaurentScalar(orientation, [(0, cyc_from_json(obj, m))], None, lambda0, N_M, m)
    try:
        terms = [(int(k), cyc_from_json(c, m)) for k, c in obj["terms"]]
        trunc = int(obj["trunc"]) if obj.get("trunc") is not None else None
        orient = obj.get("orientation", orientation)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad Laurent scalar {obj!r}: {exc}") from None
    return LaurentScalar(orient, terms, trunc, lambda0, N_M, m)


def laurent_to_json(s: LaurentScalar):
    return {
        "orientation": s.orientation,
        "terms": [[k, cyc_to_json(c)] for k, c in s.terms],
        "trunc": s.trunc,
    }


def scalar_to_json(s):
    if isinstance(s, LaurentScalar):
        return laurent_to_json(s)
    if isinstance(s, NovikovScalar):
        return novikov_to_json(s)
    raise SchemaError(f"not a scalar: {type(s).__name__}")
