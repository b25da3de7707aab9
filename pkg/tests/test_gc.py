from fractions import Fraction

import pytest

from qclab.errors import BadLambdaShape, DimensionMismatch, MethodDisagreement, SchemaError
from qclab.gelfand_cetlin import (
    FLAG_PRESETS,
    FlagSpec,
    GCPolytope,
    classify_point,
    flag_dim,
    gc_pattern,
    gc_polytope,
    monotone_lambda,
    parse_flag,
    vertices,
    vertices_bruteforce,
    vertices_incremental,
)

F = Fraction


def test_flag_dim_examples():
    assert flag_dim(FlagSpec(4, (2,))) == 4  # Gr(2,4)
    assert flag_dim(FlagSpec(2, (1,))) == 1  # CP^1
    assert flag_dim(FlagSpec(5, (1,))) == 4  # CP^4
    assert flag_dim(FlagSpec(3, (1, 2))) == 3  # full flags in C^3


def test_flag_spec_validation():
    with pytest.raises(SchemaError):
        FlagSpec(4, (0,))
    with pytest.raises(SchemaError):
        FlagSpec(4, (2, 2))
    with pytest.raises(SchemaError):
        FlagSpec(4, ())


def test_monotone_lambda_examples():
    assert monotone_lambda(FlagSpec(4, (2,)), 2) == (4, 4, 0, 0)
    assert monotone_lambda(FlagSpec(2, (1,)), 0) == (1, -1)
    f = FlagSpec(5, (1, 3))
    a = monotone_lambda(f, 0)
    b = monotone_lambda(f, F(7, 2))
    assert all(y - x == F(7, 2) for x, y in zip(a, b))
    # strict drops exactly at the block boundaries (sizes 1, 2, 2)
    assert a[0] > a[1] == a[2] > a[3] == a[4]
    assert a == (4, 1, 1, -3, -3)


def test_gc_pattern_gr24():
    flag = FlagSpec(4, (2,))
    pattern = gc_pattern(flag, monotone_lambda(flag, 2))
    assert pattern.coords == ((1, 1), (1, 2), (2, 2), (2, 3))
    assert pattern.constants == {(1, 3): 4, (3, 3): 0}
    assert len(pattern.coords) == flag_dim(flag)


def test_gc_pattern_cp1():
    flag = FlagSpec(2, (1,))
    pattern = gc_pattern(flag, (1, -1))
    assert pattern.coords == ((1, 1),)
    assert pattern.intervals[(1, 1)] == (-1, 1)


def test_gc_pattern_rejects_bad_lambda():
    flag = FlagSpec(4, (2,))
    with pytest.raises(BadLambdaShape):
        gc_pattern(flag, (4, 3, 0, 0))  # block not constant
    with pytest.raises(BadLambdaShape):
        gc_pattern(flag, (4, 4, 4, 4))  # blocks collapse
    with pytest.raises(BadLambdaShape):
        gc_pattern(flag, (4, 4, 0))  # wrong length


def test_index_count_matches_dimension_for_catalog():
    for name, (flag, shift) in FLAG_PRESETS.items():
        pattern = gc_pattern(flag, monotone_lambda(flag, shift))
        assert len(pattern.coords) == flag_dim(flag), name


def test_constants_against_vertex_oracle():
    """An entry is constant iff its coordinate range over the polytope of
    the fully unresolved triangle degenerates."""
    flag = FlagSpec(4, (2,))
    lam = monotone_lambda(flag, 2)
    pattern = gc_pattern(flag, lam)
    # unresolved triangle: every entry its own coordinate
    n = flag.n
    coords = [(i, k) for k in range(1, n) for i in range(1, k + 1)]
    pos = {ik: idx for idx, ik in enumerate(coords)}
    rows, labels = [], []

    def vec(ik, k_next=False):
        out = [F(0)] * len(coords)
        out[pos[ik]] = F(1)
        return out

    for k in range(1, n):
        for i in range(1, k + 1):
            for (ti, tk), (bi, bk) in (((i, k + 1), (i, k)), ((i, k), (i + 1, k + 1))):
                top = [F(0)] * len(coords)
                tconst = F(0)
                if tk == n:
                    tconst = lam[ti - 1]
                else:
                    top[pos[(ti, tk)]] = F(1)
                bot = [F(0)] * len(coords)
                bconst = F(0)
                if bk == n:
                    bconst = lam[bi - 1]
                else:
                    bot[pos[(bi, bk)]] = F(1)
                rows.append((tuple(a - b for a, b in zip(top, bot)), bconst - tconst))
                labels.append("x")
    box = tuple((min(lam), max(lam)) for _ in coords)
    free_poly = GCPolytope(tuple(f"e{i}_{k}" for i, k in coords), tuple(rows), tuple(labels), box)
    verts = vertices(free_poly)
    assert verts
    for idx, ik in enumerate(coords):
        low = min(v[idx] for v in verts)
        high = max(v[idx] for v in verts)
        if ik in pattern.constants:
            assert low == high == pattern.constants[ik]
        else:
            assert low < high
            assert (low, high) == pattern.intervals[ik]


def test_polytope_gr24_shape():
    flag, shift = FLAG_PRESETS["gr24"]
    poly = gc_polytope(gc_pattern(flag, monotone_lambda(flag, shift)))
    assert poly.dim == 4
    assert len(poly.ineqs) == 8
    assert classify_point(poly, [2, 3, 1, 2]) == {"class": "Interior"}
    assert classify_point(poly, [10, 10, 10, 10]) == {"class": "Outside"}
    on_boundary = classify_point(poly, [0, 0, 0, 0])
    assert on_boundary["class"] == "Boundary" and on_boundary["tight"]


def test_classification_scaling_invariance():
    flag = FlagSpec(4, (2,))
    for scale in (1, 2, F(1, 3)):
        lam = tuple(x * scale for x in monotone_lambda(flag, 2))
        poly = gc_polytope(gc_pattern(flag, lam))
        u = [F(2) * scale, F(3) * scale, F(1) * scale, F(2) * scale]
        assert classify_point(poly, u) == {"class": "Interior"}
        boundary = classify_point(poly, [x * scale for x in (2, 4, 1, 2)])
        assert boundary["class"] == "Boundary"
        assert boundary["tight"] == ["lam1_3 >= lam1_2"]


def test_classify_dimension_mismatch():
    flag, shift = FLAG_PRESETS["gr24"]
    poly = gc_polytope(gc_pattern(flag, monotone_lambda(flag, shift)))
    with pytest.raises(DimensionMismatch):
        classify_point(poly, [1, 2, 3])


def test_cp1_segment_vertices():
    flag, shift = FLAG_PRESETS["cp1"]
    poly = gc_polytope(gc_pattern(flag, monotone_lambda(flag, shift)))
    assert len(poly.ineqs) == 2
    assert vertices(poly) == [(F(-1),), (F(1),)]


def test_square_product_of_segments():
    rows = (
        ((F(1), F(0)), F(-1)),
        ((F(-1), F(0)), F(-1)),
        ((F(0), F(1)), F(-1)),
        ((F(0), F(-1)), F(-1)),
    )
    square = GCPolytope(("x", "y"), rows, ("a", "b", "c", "d"), ((F(-1), F(1)), (F(-1), F(1))))
    verts = vertices(square)
    assert len(verts) == 4


def test_vertices_dual_methods_agree():
    for name in ("gr24", "cp3", "f123", "f1234"):
        flag, shift = FLAG_PRESETS[name]
        poly = gc_polytope(gc_pattern(flag, monotone_lambda(flag, shift)))
        brute = vertices_bruteforce(poly)
        incremental = vertices_incremental(poly)
        assert brute == incremental, name
        for v in brute:
            values = poly.evaluate(list(v))
            assert all(x >= 0 for x in values)
            assert sum(1 for x in values if x == 0) >= poly.dim or poly.dim == 1


def test_full_flag_vertex_count():
    # the full-flag threefold polytope famously has 7 vertices
    flag, shift = FLAG_PRESETS["f123"]
    poly = gc_polytope(gc_pattern(flag, monotone_lambda(flag, shift)))
    assert len(vertices(poly)) == 7


def test_parse_flag():
    flag, shift = parse_flag("gr24")
    assert flag == FlagSpec(4, (2,)) and shift == 2
    flag2, shift2 = parse_flag("5:1,3")
    assert flag2 == FlagSpec(5, (1, 3)) and shift2 == 0
    with pytest.raises(SchemaError):
        parse_flag("whatever")
