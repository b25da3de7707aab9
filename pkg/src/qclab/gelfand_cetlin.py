"""Partial flag manifolds, triangular eigenvalue patterns and their polytopes.

The triangle holds the eigenvalues of the nested upper-left submatrices;
row n is the fixed spectrum lambda (weakly decreasing), and consecutive
rows interlace:  lam_i^(k+1) >= lam_i^(k) >= lam_(i+1)^(k+1).  An entry is
a constant exactly when its feasible interval [lam_(i+n-k), lam_i]
degenerates; the remaining entries are the coordinates, ordered row by row
from k = 1 upward and left to right, matching the conventions used for the
marked interior point (2, 3, 1, 2) of the Grassmannian Gr(2,4) instance.

Vertex enumeration runs two independent methods (tight-subset brute force
and an incremental halfspace intersection) that must agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BadLambdaShape, DimensionMismatch, MethodDisagreement, SchemaError
from .jsonio import parse_rational, rational_str


@dataclass(frozen=True)
class FlagSpec:
    """Nested-subspace dimensions 0 < n_1 < ... < n_r < n."""

    n: int
    steps: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise SchemaError("n must be positive")
        prev = 0
        for s in self.steps:
            if not prev < s < self.n:
                raise SchemaError(f"steps must satisfy 0 < n_1 < ... < n_r < n, got {self.steps}")
            prev = s
        if not self.steps:
            raise SchemaError("at least one proper subspace dimension is required")

    @property
    def block_sizes(self) -> tuple[int, ...]:
        cuts = (0,) + self.steps + (self.n,)
        return tuple(cuts[i + 1] - cuts[i] for i in range(len(cuts) - 1))

    def to_json(self) -> dict:
        return {"n": self.n, "steps": list(self.steps)}

    @classmethod
    def from_json(cls, doc: dict) -> "FlagSpec":
        return cls(int(doc["n"]), tuple(int(s) for s in doc["steps"]))


def flag_dim(flag: FlagSpec) -> int:
    """Complex dimension: sum over steps of k_i (n - n_i)."""
    cuts = (0,) + flag.steps
    return sum((flag.steps[i] - cuts[i]) * (flag.n - flag.steps[i]) for i in range(len(flag.steps)))


def monotone_lambda(flag: FlagSpec, m: Fraction | int = 0) -> tuple[Fraction, ...]:
    """The spectrum making the orbit symplectically monotone, up to adding a
    constant: block i carries n - n_(i-1) - n_i, shifted by m."""
    m = Fraction(m)
    cuts = (0,) + flag.steps + (flag.n,)
    out: list[Fraction] = []
    for i in range(len(cuts) - 1):
        value = Fraction(flag.n - cuts[i] - cuts[i + 1]) + m
        out.extend([value] * (cuts[i + 1] - cuts[i]))
    return tuple(out)


@dataclass(frozen=True)
class GCPattern:
    """Triangle with constants resolved; `coords` lists the variable
    positions (i, k) in coordinate order."""

    flag: FlagSpec
    lam: tuple[Fraction, ...]
    coords: tuple[tuple[int, int], ...]
    constants: dict
    intervals: dict

    def coord_names(self) -> list[str]:
        return [f"lam{i}_{k}" for i, k in self.coords]


def _check_lambda_shape(flag: FlagSpec, lam: Sequence[Fraction]) -> tuple[Fraction, ...]:
    lam = tuple(Fraction(x) for x in lam)
    if len(lam) != flag.n:
        raise BadLambdaShape(f"expected {flag.n} eigenvalues, got {len(lam)}")
    cuts = (0,) + flag.steps + (flag.n,)
    for b in range(len(cuts) - 1):
        lo, hi = cuts[b], cuts[b + 1]
        for i in range(lo + 1, hi):
            if lam[i] != lam[lo]:
                raise BadLambdaShape(
                    f"eigenvalues {lo + 1}..{hi} must be equal for the block structure {flag.steps}"
                )
        if b > 0 and not lam[cuts[b] - 1] > lam[cuts[b]]:
            raise BadLambdaShape(
                f"eigenvalue blocks must drop strictly at position {cuts[b]}"
            )
    return lam


def gc_pattern(flag: FlagSpec, lam: Sequence[Fraction]) -> GCPattern:
    """Resolve each triangle entry to a constant or a coordinate.

    The feasible interval of entry (i, k) under interlacing is exactly
    [lam_(i+n-k), lam_i] (1-based), so the entry is constant iff those two
    top-row values agree.
    """
    lam = _check_lambda_shape(flag, lam)
    n = flag.n
    coords: list[tuple[int, int]] = []
    constants: dict[tuple[int, int], Fraction] = {}
    intervals: dict[tuple[int, int], tuple[Fraction, Fraction]] = {}
    for k in range(1, n):
        for i in range(1, k + 1):
            hi = lam[i - 1]
            lo = lam[i + n - k - 1]
            intervals[(i, k)] = (lo, hi)
            if lo == hi:
                constants[(i, k)] = lo
            else:
                coords.append((i, k))
    pattern = GCPattern(flag, lam, tuple(coords), constants, intervals)
    if len(coords) != flag_dim(flag):
        raise BadLambdaShape(
            f"variable count {len(coords)} does not match the flag dimension {flag_dim(flag)}"
        )
    return pattern


@dataclass(frozen=True)
class GCPolytope:
    """H-representation over the pattern coordinates: rows coeffs . x >= rhs."""

    coords: tuple[str, ...]
    ineqs: tuple[tuple[tuple[Fraction, ...], Fraction], ...]
    labels: tuple[str, ...]
    box: tuple[tuple[Fraction, Fraction], ...]

    @property
    def dim(self) -> int:
        return len(self.coords)

    def evaluate(self, u: Sequence[Fraction]) -> list[Fraction]:
        if len(u) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} coordinates, got {len(u)}")
        u = [Fraction(x) for x in u]
        return [sum(c * x for c, x in zip(coeffs, u)) - rhs for coeffs, rhs in self.ineqs]

    def to_json(self) -> dict:
        return {
            "coords": list(self.coords),
            "ineqs": [
                {"coeffs": [rational_str(c) for c in coeffs], "rhs": rational_str(rhs), "label": label}
                for (coeffs, rhs), label in zip(self.ineqs, self.labels)
            ],
        }


def gc_polytope(pattern: GCPattern) -> GCPolytope:
    """Interlacing inequalities restricted to the variable coordinates."""
    n = pattern.flag.n
    pos = {ik: idx for idx, ik in enumerate(pattern.coords)}
    d = len(pattern.coords)

    def value(i: int, k: int):
        """(coeff vector, constant) of entry (i, k); row n is lam itself."""
        coeffs = [Fraction(0)] * d
        if k == n:
            return coeffs, pattern.lam[i - 1]
        if (i, k) in pattern.constants:
            return coeffs, pattern.constants[(i, k)]
        coeffs[pos[(i, k)]] = Fraction(1)
        return coeffs, Fraction(0)

    rows: list[tuple[tuple[Fraction, ...], Fraction]] = []
    labels: list[str] = []
    seen = set()
    for k in range(1, n):
        for i in range(1, k + 1):
            # lam_i^(k+1) >= lam_i^(k) >= lam_(i+1)^(k+1)
            for (ti, tk), (bi, bk) in (((i, k + 1), (i, k)), ((i, k), (i + 1, k + 1))):
                tc, tconst = value(ti, tk)
                bc, bconst = value(bi, bk)
                coeffs = tuple(a - b for a, b in zip(tc, bc))
                rhs = bconst - tconst
                if not any(coeffs):
                    if rhs > 0:
                        raise BadLambdaShape("inconsistent constant interlacing")
                    continue
                key = (coeffs, rhs)
                if key in seen:
                    continue
                seen.add(key)
                rows.append(key)
                labels.append(f"lam{ti}_{tk} >= lam{bi}_{bk}")
    box = tuple(pattern.intervals[ik] for ik in pattern.coords)
    return GCPolytope(tuple(pattern.coord_names()), tuple(rows), tuple(labels), box)


def classify_point(poly: GCPolytope, u: Sequence[Fraction]):
    """Exact location of u: Interior, Boundary (with its tight rows), or
    Outside."""
    values = poly.evaluate(u)
    if any(v < 0 for v in values):
        return {"class": "Outside"}
    tight = [poly.labels[i] for i, v in enumerate(values) if v == 0]
    if tight:
        return {"class": "Boundary", "tight": tight}
    return {"class": "Interior"}


# vertex enumeration, two independent methods


def _solve_square(rows: list[tuple[Fraction, ...]], rhs: list[Fraction]) -> list[Fraction] | None:
    d = len(rhs)
    aug = [list(rows[i]) + [rhs[i]] for i in range(d)]
    for col in range(d):
        piv = next((r for r in range(col, d) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(d):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][d] for r in range(d)]


def _rank(rows: list[tuple[Fraction, ...]]) -> int:
    mat = [list(r) for r in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for col in range(cols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = Fraction(1) / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def vertices_bruteforce(poly: GCPolytope) -> list[tuple[Fraction, ...]]:
    """All points where some d inequalities are tight and none is violated."""
    d = poly.dim
    out = set()
    rows = [r for r, _ in poly.ineqs]
    rhs = [q for _, q in poly.ineqs]
    for subset in itertools.combinations(range(len(rows)), d):
        sol = _solve_square([rows[i] for i in subset], [rhs[i] for i in subset])
        if sol is None:
            continue
        values = [sum(c * x for c, x in zip(coeffs, sol)) - q for coeffs, q in poly.ineqs]
        if all(v >= 0 for v in values):
            out.add(tuple(sol))
    return sorted(out)


def vertices_incremental(poly: GCPolytope) -> list[tuple[Fraction, ...]]:
    """Halfspace intersection starting from the coordinate box, keeping the
    vertex set exact at every step."""
    d = poly.dim
    # box constraints as additional rows (they are implied by the system but
    # bound the intermediate polytopes)
    cons: list[tuple[tuple[Fraction, ...], Fraction]] = []
    for idx, (lo, hi) in enumerate(poly.box):
        row_lo = tuple(Fraction(1) if i == idx else Fraction(0) for i in range(d))
        row_hi = tuple(Fraction(-1) if i == idx else Fraction(0) for i in range(d))
        cons.append((row_lo, lo))
        cons.append((row_hi, -hi))
    vertices: list[tuple[Fraction, ...]] = [
        tuple(pt) for pt in itertools.product(*[(lo, hi) for lo, hi in poly.box])
    ]
    vertices = sorted(set(vertices))
    processed = list(cons)

    def tight_rows(v) -> list[int]:
        return [
            i
            for i, (coeffs, rhs) in enumerate(processed)
            if sum(c * x for c, x in zip(coeffs, v)) == rhs
        ]

    for coeffs, rhs in poly.ineqs:
        processed.append((coeffs, rhs))
        vals = {v: sum(c * x for c, x in zip(coeffs, v)) - rhs for v in vertices}
        keep = [v for v in vertices if vals[v] >= 0]
        cut = [v for v in vertices if vals[v] < 0]
        if not cut:
            vertices = keep
            continue
        new_pts = set()
        for vp in keep:
            if vals[vp] == 0:
                continue
            tp = set(tight_rows(vp))
            for vn in cut:
                common = tp & set(tight_rows(vn))
                if len(common) < d - 1:
                    continue
                if _rank([processed[i][0] for i in common]) < d - 1:
                    continue
                t = vals[vp] / (vals[vp] - vals[vn])
                new_pts.add(tuple(a + t * (b - a) for a, b in zip(vp, vn)))
        vertices = sorted(set(keep) | new_pts)
    return sorted(set(vertices))


def vertices(poly: GCPolytope) -> list[tuple[Fraction, ...]]:
    """Exact vertex set; the two methods must agree."""
    brute = vertices_bruteforce(poly)
    incremental = vertices_incremental(poly)
    if brute != incremental:
        raise MethodDisagreement(
            f"vertex methods disagree: {len(brute)} vs {len(incremental)} vertices"
        )
    return brute


# CLI-facing helpers

FLAG_PRESETS: dict[str, tuple[FlagSpec, Fraction]] = {
    "gr24": (FlagSpec(4, (2,)), Fraction(2)),
    "cp1": (FlagSpec(2, (1,)), Fraction(0)),
    "cp2": (FlagSpec(3, (1,)), Fraction(0)),
    "cp3": (FlagSpec(4, (1,)), Fraction(0)),
    "f123": (FlagSpec(3, (1, 2)), Fraction(0)),
    "f1234": (FlagSpec(4, (1, 2, 3)), Fraction(0)),
}


def parse_flag(text: str) -> tuple[FlagSpec, Fraction]:
    """A preset name, 'n:s1,s2,...', or the JSON form {"n":, "steps":[...]};
    non-presets default to the monotone shift 0."""
    if text in FLAG_PRESETS:
        return FLAG_PRESETS[text]
    if text.lstrip().startswith("{"):
        import json

        return FlagSpec.from_json(json.loads(text)), Fraction(0)
    if ":" in text:
        head, tail = text.split(":", 1)
        steps = tuple(int(s) for s in tail.split(",") if s)
        return FlagSpec(int(head), steps), Fraction(0)
    raise SchemaError(f"unknown flag spec {text!r}; use a preset, 'n:s1,s2,...' or JSON")
