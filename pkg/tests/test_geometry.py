import random
from dataclasses import replace
from fractions import Fraction

import pytest

from conftest import all_figure_families, window_convergents
from irrgeo.descent import BadIndex, DescentFamily, descent_step
from irrgeo.geometry import (
    Arrangement,
    BasisMismatch,
    DepthExceeded,
    LatticePoint,
    LatticePolygon,
    MismatchReport,
    ORTHOGONAL,
    OutOfWindow,
    TRIANGULAR,
    build_arrangement,
    build_hexagon6,
    build_tennenbaum,
    build_triangular,
    census_to_descent,
    convex_intersection,
    coverage_census,
    edge_sq_length,
    fraction_sqrt,
    is_equilateral_triangle,
    is_square,
    is_unit_rhombus,
    polygon_side,
    verify_figure,
    window_inequalities,
)


def square(x0, y0, side, basis=ORTHOGONAL) -> LatticePolygon:
    x0, y0, side = Fraction(x0), Fraction(y0), Fraction(side)
    return LatticePolygon(
        (
            LatticePoint(x0, y0),
            LatticePoint(x0 + side, y0),
            LatticePoint(x0 + side, y0 + side),
            LatticePoint(x0, y0 + side),
        ),
        basis,
    )


def tri(x0, y0, side) -> LatticePolygon:
    x0, y0, side = Fraction(x0), Fraction(y0), Fraction(side)
    return LatticePolygon(
        (
            LatticePoint(x0, y0),
            LatticePoint(x0 + side, y0),
            LatticePoint(x0, y0 + side),
        ),
        TRIANGULAR,
    )


def test_calibration_unit_shapes():
    assert tri(0, 0, 1).lattice_area == Fraction(1, 2)
    assert tri(0, 0, 5).lattice_area == Fraction(25, 2)
    hexagon = build_hexagon6(5, 2).smalls[0]
    assert hexagon.lattice_area == 3 * 4  # side 2 hexagon
    assert square(0, 0, 3).lattice_area == 9
    assert polygon_side(tri(0, 0, 5)) == 5
    assert polygon_side(square(1, 2, 7)) == 7


def test_edge_metric():
    p0 = LatticePoint(Fraction(0), Fraction(0))
    assert edge_sq_length(TRIANGULAR, p0, LatticePoint(Fraction(1), Fraction(0))) == 1
    assert edge_sq_length(TRIANGULAR, p0, LatticePoint(Fraction(0), Fraction(1))) == 1
    assert edge_sq_length(TRIANGULAR, p0, LatticePoint(Fraction(1), Fraction(-1))) == 1
    assert edge_sq_length(TRIANGULAR, p0, LatticePoint(Fraction(1), Fraction(1))) == 3
    assert edge_sq_length(ORTHOGONAL, p0, LatticePoint(Fraction(3), Fraction(4))) == 25


def test_polygon_validation():
    with pytest.raises(ValueError):
        LatticePolygon((LatticePoint(Fraction(0), Fraction(0)),), ORTHOGONAL)
    with pytest.raises(ValueError):  # collinear
        LatticePolygon(
            (
                LatticePoint(Fraction(0), Fraction(0)),
                LatticePoint(Fraction(1), Fraction(0)),
                LatticePoint(Fraction(2), Fraction(0)),
            ),
            ORTHOGONAL,
        )
    with pytest.raises(ValueError):  # clockwise
        LatticePolygon(
            (
                LatticePoint(Fraction(0), Fraction(0)),
                LatticePoint(Fraction(0), Fraction(1)),
                LatticePoint(Fraction(1), Fraction(0)),
            ),
            ORTHOGONAL,
        )
    with pytest.raises(ValueError):
        LatticePolygon(tri(0, 0, 1).vertices, "polar")


def test_polygon_canonical_rotation():
    a = square(0, 0, 2)
    rotated = LatticePolygon(a.vertices[2:] + a.vertices[:2], ORTHOGONAL)
    assert a == rotated
    assert a.vertices[0] == LatticePoint(Fraction(0), Fraction(0))


def test_intersection_squares():
    a = square(0, 0, 2)
    b = square(1, 1, 2)
    r = convex_intersection(a, b)
    assert r == square(1, 1, 1)
    assert convex_intersection(a, a) == a
    # edge contact and corner contact have zero area
    assert convex_intersection(a, square(2, 0, 2)) is None
    assert convex_intersection(a, square(2, 2, 2)) is None
    assert convex_intersection(a, square(5, 5, 1)) is None
    # nested
    inner = square(Fraction(1, 2), Fraction(1, 2), 1)
    assert convex_intersection(a, inner) == inner


def test_intersection_triangles():
    a = tri(0, 0, 4)
    b = tri(2, 0, 4)
    r = convex_intersection(a, b)
    assert r == tri(2, 0, 2)
    c = tri(0, 3, 4)
    r = convex_intersection(a, c)
    assert r == tri(0, 3, 1)


def test_intersection_basis_mismatch():
    with pytest.raises(BasisMismatch):
        convex_intersection(square(0, 0, 1), tri(0, 0, 1))


def _random_convex(rng: random.Random, basis: str) -> LatticePolygon:
    kind = rng.choice(("square", "tri", "hexlike"))
    x = Fraction(rng.randint(-8, 8), rng.randint(1, 4))
    y = Fraction(rng.randint(-8, 8), rng.randint(1, 4))
    side = Fraction(rng.randint(1, 12), rng.randint(1, 3))
    if basis == ORTHOGONAL or kind == "square":
        return square(x, y, side, basis)
    if kind == "tri":
        return LatticePolygon(
            (
                LatticePoint(x, y),
                LatticePoint(x + side, y),
                LatticePoint(x, y + side),
            ),
            basis,
        )
    pts = tuple(
        LatticePoint(x + side * du, y + side * dv)
        for du, dv in ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))
    )
    return LatticePolygon(pts, basis)


def test_intersection_commutative_and_monotone():
    rng = random.Random(17)
    for _ in range(150):
        basis = rng.choice((ORTHOGONAL, TRIANGULAR))
        a = _random_convex(rng, basis)
        b = _random_convex(rng, basis)
        r1 = convex_intersection(a, b)
        r2 = convex_intersection(b, a)
        assert r1 == r2
        if r1 is not None:
            assert a.contains_polygon(r1)
            assert b.contains_polygon(r1)
            assert r1.lattice_area <= min(a.lattice_area, b.lattice_area)
            assert convex_intersection(r1, a) == r1
            assert convex_intersection(r1, b) == r1


def test_window_inequalities_names():
    fam = DescentFamily.sqrt2()
    assert [w.name for w in window_inequalities(fam, 7, 5)] == ["a > b", "a < 2b"]
    assert all(w.ok for w in window_inequalities(fam, 7, 5))
    fam = DescentFamily.hex6()
    assert [w.name for w in window_inequalities(fam, 22, 9)] == ["a > 2b", "a < 3b"]
    fam = DescentFamily.triangular(5)
    assert [w.name for w in window_inequalities(fam, 27, 7)] == ["2a > (n+1)b", "a < nb"]


def test_build_tennenbaum():
    arr = build_tennenbaum(7, 5)
    assert arr.big == square(0, 0, 7)
    assert arr.smalls == (square(0, 0, 5), square(2, 2, 5))
    # boundary a = 2b is out: the overlap square would vanish
    with pytest.raises(OutOfWindow) as exc:
        build_tennenbaum(4, 2)
    assert exc.value.inequality == "a < 2b"
    with pytest.raises(OutOfWindow) as exc:
        build_tennenbaum(2, 3)
    assert exc.value.inequality == "a > b"
    with pytest.raises(OutOfWindow):
        build_tennenbaum(3, 3)


def test_build_hexagon6():
    arr = build_hexagon6(5, 2)
    assert len(arr.smalls) == 6
    big_vertices = set(arr.big.vertices)
    for small in arr.smalls:
        shared = set(small.vertices) & big_vertices
        assert len(shared) == 1  # each small pins one big vertex
    with pytest.raises(OutOfWindow) as exc:
        build_hexagon6(7, 2)
    assert exc.value.inequality == "a < 3b"
    with pytest.raises(OutOfWindow) as exc:
        build_hexagon6(4, 2)
    assert exc.value.inequality == "a > 2b"


def test_build_triangular():
    arr = build_triangular(2, 7, 4)
    assert len(arr.smalls) == 3
    apex = LatticePoint(Fraction(0), Fraction(7))
    assert apex in arr.smalls[0].vertices
    arr = build_triangular(5, 27, 7)
    assert len(arr.smalls) == 15
    bottom = [s for s in arr.smalls if any(p.v == 0 for p in s.vertices)]
    assert len(bottom) == 5
    with pytest.raises(OutOfWindow) as exc:
        build_triangular(3, 12, 4)
    assert exc.value.inequality == "a < nb"
    with pytest.raises(OutOfWindow) as exc:
        build_triangular(3, 8, 4)
    assert exc.value.inequality == "2a > (n+1)b"
    with pytest.raises(BadIndex):
        build_triangular(1, 3, 2)


def test_arrangement_rejects_escapees():
    big = square(0, 0, 4)
    outside = square(3, 3, 2)
    with pytest.raises(ValueError):
        Arrangement(big=big, smalls=(outside,), family=DescentFamily.sqrt2(), a=4, b=2)


def test_census_tennenbaum_7_5():
    arr = build_tennenbaum(7, 5)
    census = coverage_census(arr)
    assert census.big_area == 49
    assert census.total_small_area == 50
    assert census.union_area == 41
    assert census.blank_area == 8
    assert census.exactly2_area == 9
    assert census.exactly3_area == 0
    assert census.excess_area == 9
    assert census.max_depth == 2
    assert len(census.distinct_pair_regions) == 1
    overlap = census.distinct_pair_regions[0]
    assert is_square(overlap, Fraction(3))
    assert overlap == square(2, 2, 3)


def test_census_tennenbaum_3_2():
    arr = build_tennenbaum(3, 2)
    census = coverage_census(arr)
    assert len(census.distinct_pair_regions) == 1
    assert polygon_side(census.distinct_pair_regions[0]) == 1
    assert census.blank_area == 2  # two unit blank squares


def test_census_hexagon6_5_2():
    arr = build_hexagon6(5, 2)
    census = coverage_census(arr)
    assert census.big_area == 75
    assert census.total_small_area == 72
    assert census.union_area == 66
    assert census.blank_area == 9
    assert census.exactly2_area == 6
    assert census.exactly3_area == 0
    assert census.max_depth == 2
    assert len(census.distinct_pair_regions) == 6
    for region in census.distinct_pair_regions:
        assert is_unit_rhombus(region, Fraction(1))
    # only adjacent smalls meet: keys form the 6-cycle
    assert set(census.pair_keys) == {(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)}


def test_census_triangular_2_7_4():
    arr = build_triangular(2, 7, 4)
    census = coverage_census(arr)
    assert census.big_area == Fraction(49, 2)
    assert census.total_small_area == 24
    assert census.exactly2_area == Fraction(3, 2)
    assert census.exactly3_area == 0
    assert census.blank_area == 2
    assert census.max_depth == 2
    assert len(census.distinct_pair_regions) == 3
    for region in census.distinct_pair_regions:
        assert is_equilateral_triangle(region, Fraction(1))


def test_census_triangular_3_5_2():
    arr = build_triangular(3, 5, 2)
    census = coverage_census(arr)
    t = Fraction(1, 2)
    assert census.exactly2_area == 6 * t * t / 2
    assert census.exactly3_area == 1 * t * t / 2
    assert census.blank_area == Fraction(3, 2)
    assert census.max_depth == 3
    assert len(census.doubly_covered_regions) == 6
    assert len(census.distinct_triple_regions) == 1


def test_census_triangular_5_27_7():
    arr = build_triangular(5, 27, 7)
    census = coverage_census(arr)
    assert len(census.doubly_covered_regions) == 12
    assert len(census.distinct_triple_regions) == 6
    assert census.blank_area == 45
    for region in census.distinct_pair_regions:
        assert polygon_side(region) == 2
    for region in census.distinct_triple_regions:
        assert is_equilateral_triangle(region, Fraction(2))
    assert census.max_depth == 3


def test_depth_exceeded_on_artificial_stack():
    big = square(0, 0, 10)
    smalls = tuple(square(Fraction(i, 2), Fraction(i, 2), 3) for i in range(4))
    arr = Arrangement(big=big, smalls=smalls, family=DescentFamily.sqrt2(), a=10, b=3)
    with pytest.raises(DepthExceeded):
        coverage_census(arr)


def test_verify_figure_passes():
    for family in all_figure_families():
        p, q = window_convergents(family, 1)[0]
        arr = build_arrangement(family, p, q)
        census = coverage_census(arr)
        report = verify_figure(arr, census)
        assert report.all_pass
        assert report.family_label == family.label
        names = {c.name for c in report.checks}
        assert {"blank_area", "excess_minus_blank", "overlap_sides_equal_t"} <= names


def test_verify_figure_mismatch():
    arr = build_tennenbaum(7, 5)
    census = coverage_census(arr)
    corrupted = replace(census, blank_area=census.blank_area + 1)
    with pytest.raises(MismatchReport) as exc:
        verify_figure(arr, corrupted)
    report = exc.value.report
    assert not report.all_pass
    failed = {c.name for c in report.checks if not c.passed}
    assert "blank_area" in failed
    assert "big_area" not in failed


def test_census_to_descent_examples():
    arr = build_tennenbaum(7, 5)
    assert census_to_descent(arr, coverage_census(arr)) == (3, 2)
    arr = build_hexagon6(22, 9)
    assert census_to_descent(arr, coverage_census(arr)) == (12, 5)
    arr = build_triangular(3, 5, 2)
    assert census_to_descent(arr, coverage_census(arr)) == (2, 1)
    arr = build_triangular(4, 19, 6)
    assert census_to_descent(arr, coverage_census(arr)) == (16, 5)


def test_census_matches_descent_on_50_convergents_per_family():
    for family in all_figure_families():
        for p, q in window_convergents(family, 50):
            arr = build_arrangement(family, p, q)
            census = coverage_census(arr)
            verify_figure(arr, census)
            assert census_to_descent(arr, census) == descent_step(family, p, q).pair_out


def test_area_additivity():
    for family in all_figure_families():
        for p, q in window_convergents(family, 3):
            arr = build_arrangement(family, p, q)
            census = coverage_census(arr)
            assert census.big_area == census.union_area + census.blank_area
            assert census.total_small_area == census.union_area + census.excess_area


def test_fraction_sqrt():
    assert fraction_sqrt(Fraction(4, 9)) == Fraction(2, 3)
    assert fraction_sqrt(Fraction(0)) == 0
    assert fraction_sqrt(Fraction(49)) == 7
    with pytest.raises(ValueError):
        fraction_sqrt(Fraction(2))
    with pytest.raises(ValueError):
        fraction_sqrt(Fraction(-1))
