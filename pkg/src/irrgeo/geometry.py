"""Exact planar reconstruction of the overlap figures.

Polygons live on one of two rational lattices: an orthogonal one for the
square figure and a 60-degree one (axes (1,0) and (1/2, sqrt(3)/2)) for
the hexagon and triangle figures.  Lattice coordinates stay rational, so
intersections, areas, and the full coverage census are exact; converting
a lattice area to a true area only ever multiplies by 1 or sqrt(3)/2 and
is never needed inside an identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterator, NamedTuple, Optional

from .descent import BadIndex, DescentFamily, FamilyKind
from .number_theory import is_perfect_square, triangular

ORTHOGONAL = "orthogonal"
TRIANGULAR = "triangular"


class OutOfWindow(ValueError):
    """Pair outside the window where a figure can be assembled.

    inequality names the violated constraint.
    """

    def __init__(self, inequality: str, a: int, b: int):
        self.inequality = inequality
        super().__init__(f"pair ({a}, {b}) violates {inequality}")


class BasisMismatch(ValueError):
    """Polygons on different lattices combined."""


class DepthExceeded(ValueError):
    """Four smalls share interior points; no figure here does that."""


class MismatchReport(Exception):
    """A figure failed one or more identity checks; .report has them all."""

    def __init__(self, report: "FigureReport"):
        self.report = report
        bad = [c.name for c in report.checks if not c.passed]
        super().__init__(f"identity checks failed: {', '.join(bad)}")


class LatticePoint(NamedTuple):
    u: Fraction
    v: Fraction


def _pt(u, v) -> LatticePoint:
    return LatticePoint(Fraction(u), Fraction(v))


def _cross(ox: Fraction, oy: Fraction, ax: Fraction, ay: Fraction) -> Fraction:
    return ox * ay - oy * ax


@dataclass(frozen=True)
class LatticePolygon:
    """Strictly convex counter-clockwise polygon in lattice coordinates.

    Vertices are canonicalized to start at the lexicographically smallest
    point, so structural equality is equality of point sets.
    """

    vertices: tuple[LatticePoint, ...]
    basis: str

    def __post_init__(self) -> None:
        if self.basis not in (ORTHOGONAL, TRIANGULAR):
            raise ValueError(f"unknown basis {self.basis!r}")
        pts = tuple(LatticePoint(Fraction(p[0]), Fraction(p[1])) for p in self.vertices)
        if len(pts) < 3:
            raise ValueError(f"need at least 3 vertices, got {len(pts)}")
        k = len(pts)
        for i in range(k):
            p0, p1, p2 = pts[i], pts[(i + 1) % k], pts[(i + 2) % k]
            turn = _cross(p1.u - p0.u, p1.v - p0.v, p2.u - p1.u, p2.v - p1.v)
            if turn <= 0:
                raise ValueError("vertices must be strictly convex counter-clockwise")
        start = min(range(k), key=lambda i: pts[i])
        object.__setattr__(self, "vertices", pts[start:] + pts[:start])

    def edges(self) -> Iterator[tuple[LatticePoint, LatticePoint]]:
        k = len(self.vertices)
        for i in range(k):
            yield self.vertices[i], self.vertices[(i + 1) % k]

    @property
    def lattice_area(self) -> Fraction:
        return _shoelace2(self.vertices) / 2

    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        us = [p.u for p in self.vertices]
        vs = [p.v for p in self.vertices]
        return (min(us), max(us), min(vs), max(vs))

    def contains_point(self, p: LatticePoint) -> bool:
        """Closed containment: boundary counts as inside."""
        return all(
            _cross(b.u - a.u, b.v - a.v, p.u - a.u, p.v - a.v) >= 0 for a, b in self.edges()
        )

    def contains_polygon(self, other: "LatticePolygon") -> bool:
        if other.basis != self.basis:
            raise BasisMismatch(f"{self.basis} vs {other.basis}")
        return all(self.contains_point(p) for p in other.vertices)

    def translated(self, du, dv) -> "LatticePolygon":
        du, dv = Fraction(du), Fraction(dv)
        return LatticePolygon(
            tuple(LatticePoint(p.u + du, p.v + dv) for p in self.vertices), self.basis
        )


def _shoelace2(pts: tuple[LatticePoint, ...]) -> Fraction:
    total = Fraction(0)
    k = len(pts)
    for i in range(k):
        p, q = pts[i], pts[(i + 1) % k]
        total += p.u * q.v - q.u * p.v
    return total


def edge_sq_length(basis: str, p: LatticePoint, q: LatticePoint) -> Fraction:
    """Squared Euclidean length of the segment p-q under the basis metric."""
    du, dv = q.u - p.u, q.v - p.v
    if basis == ORTHOGONAL:
        return du * du + dv * dv
    return du * du + du * dv + dv * dv


def fraction_sqrt(x: Fraction) -> Fraction:
    """Exact square root of a rational, or ValueError if none exists."""
    if x < 0:
        raise ValueError(f"negative value {x}")
    num, den = x.numerator, x.denominator
    if not (is_perfect_square(num) and is_perfect_square(den)):
        raise ValueError(f"{x} is not a rational square")
    return Fraction(isqrt(num), isqrt(den))


def polygon_side(poly: LatticePolygon) -> Fraction:
    """Common side length of an equilateral polygon; ValueError otherwise."""
    qs = {edge_sq_length(poly.basis, a, b) for a, b in poly.edges()}
    if len(qs) != 1:
        raise ValueError(f"edges have unequal lengths: {sorted(qs)}")
    return fraction_sqrt(qs.pop())


def _diag_sqs(poly: LatticePolygon) -> set[Fraction]:
    v = poly.vertices
    return {
        edge_sq_length(poly.basis, v[0], v[2]),
        edge_sq_length(poly.basis, v[1], v[3]),
    }


def is_equilateral_triangle(poly: LatticePolygon, side: Fraction) -> bool:
    if len(poly.vertices) != 3 or poly.basis != TRIANGULAR:
        return False
    return all(edge_sq_length(poly.basis, a, b) == side * side for a, b in poly.edges())


def is_square(poly: LatticePolygon, side: Fraction) -> bool:
    if len(poly.vertices) != 4 or poly.basis != ORTHOGONAL:
        return False
    if any(edge_sq_length(poly.basis, a, b) != side * side for a, b in poly.edges()):
        return False
    return _diag_sqs(poly) == {2 * side * side}


def is_unit_rhombus(poly: LatticePolygon, side: Fraction) -> bool:
    """60-degree rhombus: four equal sides, diagonals side and side*sqrt(3)."""
    if len(poly.vertices) != 4 or poly.basis != TRIANGULAR:
        return False
    s2 = side * side
    if any(edge_sq_length(poly.basis, a, b) != s2 for a, b in poly.edges()):
        return False
    return _diag_sqs(poly) == {s2, 3 * s2}


def _tidy(points: list[LatticePoint], basis: str) -> Optional[LatticePolygon]:
    """Canonicalize a clip result: drop duplicates and collinear vertices,
    return None for anything without positive area."""
    pts: list[LatticePoint] = []
    for p in points:
        if not pts or p != pts[-1]:
            pts.append(p)
    if len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    if len(pts) < 3:
        return None
    if _shoelace2(tuple(pts)) <= 0:
        return None
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        for i in range(len(pts)):
            p0 = pts[i - 1]
            p1 = pts[i]
            p2 = pts[(i + 1) % len(pts)]
            if _cross(p1.u - p0.u, p1.v - p0.v, p2.u - p1.u, p2.v - p1.v) == 0:
                pts.pop(i)
                changed = True
                break
    if len(pts) < 3:
        return None
    return LatticePolygon(tuple(pts), basis)


def convex_intersection(p: LatticePolygon, q: LatticePolygon) -> Optional[LatticePolygon]:
    """Exact intersection of two convex polygons; None if its area is zero.

    Clips p successively by each half-plane of q; contacts along an edge
    or at a vertex collapse to None.
    """
    if p.basis != q.basis:
        raise BasisMismatch(f"{p.basis} vs {q.basis}")
    pts = list(p.vertices)
    for a0, a1 in q.edges():
        if not pts:
            break
        eu, ev = a1.u - a0.u, a1.v - a0.v
        sides = [_cross(eu, ev, c.u - a0.u, c.v - a0.v) for c in pts]
        new: list[LatticePoint] = []
        k = len(pts)
        for i in range(k):
            cur, s_cur = pts[i], sides[i]
            prev, s_prev = pts[i - 1], sides[i - 1]
            if (s_cur >= 0) != (s_prev >= 0):
                t = -s_prev / (s_cur - s_prev)
                new.append(
                    LatticePoint(
                        prev.u + t * (cur.u - prev.u), prev.v + t * (cur.v - prev.v)
                    )
                )
            if s_cur >= 0:
                new.append(cur)
        pts = new
    return _tidy(pts, p.basis)


@dataclass(frozen=True)
class WindowInequality:
    name: str
    ok: bool


def window_inequalities(family: DescentFamily, a: int, b: int) -> tuple[WindowInequality, ...]:
    """The strict inequalities a pair must satisfy for the family's figure."""
    if family.kind is FamilyKind.SQRT2:
        return (
            WindowInequality("a > b", a > b),
            WindowInequality("a < 2b", a < 2 * b),
        )
    if family.kind is FamilyKind.HEX6:
        return (
            WindowInequality("a > 2b", a > 2 * b),
            WindowInequality("a < 3b", a < 3 * b),
        )
    n = family.n
    return (
        WindowInequality("2a > (n+1)b", 2 * a > (n + 1) * b),
        WindowInequality("a < nb", a < n * b),
    )


def _require_window(family: DescentFamily, a: int, b: int) -> None:
    if a < 1 or b < 1:
        raise OutOfWindow("a, b > 0", a, b)
    for ineq in window_inequalities(family, a, b):
        if not ineq.ok:
            raise OutOfWindow(ineq.name, a, b)


@dataclass(frozen=True)
class Arrangement:
    """One big figure with its family of small copies placed inside it."""

    big: LatticePolygon
    smalls: tuple[LatticePolygon, ...]
    family: DescentFamily
    a: int
    b: int

    def __post_init__(self) -> None:
        for i, s in enumerate(self.smalls):
            if s.basis != self.big.basis:
                raise BasisMismatch(f"small {i} on {s.basis}, big on {self.big.basis}")
            if not self.big.contains_polygon(s):
                raise ValueError(f"small {i} is not inside the big figure")


def build_tennenbaum(a: int, b: int) -> Arrangement:
    """Big a-square with two b-squares in opposite corners; needs b < a < 2b."""
    family = DescentFamily.sqrt2()
    _require_window(family, a, b)
    big = LatticePolygon((_pt(0, 0), _pt(a, 0), _pt(a, a), _pt(0, a)), ORTHOGONAL)
    low = LatticePolygon((_pt(0, 0), _pt(b, 0), _pt(b, b), _pt(0, b)), ORTHOGONAL)
    high = low.translated(a - b, a - b)
    return Arrangement(big=big, smalls=(low, high), family=family, a=a, b=b)


_HEX_DIRS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


def _hexagon(center_u, center_v, radius) -> LatticePolygon:
    pts = tuple(
        _pt(center_u + radius * du, center_v + radius * dv) for du, dv in _HEX_DIRS
    )
    return LatticePolygon(pts, TRIANGULAR)


def build_hexagon6(a: int, b: int) -> Arrangement:
    """Big a-hexagon ringed by six b-hexagons, one per vertex; needs 2b < a < 3b.

    Small i is centered at (a-b) times vertex direction i, so it touches
    big vertex i exactly; neighbouring smalls overlap in a rhombus.
    """
    family = DescentFamily.hex6()
    _require_window(family, a, b)
    big = _hexagon(0, 0, a)
    smalls = tuple(
        _hexagon(Fraction(a - b) * du, Fraction(a - b) * dv, b) for du, dv in _HEX_DIRS
    )
    return Arrangement(big=big, smalls=smalls, family=family, a=a, b=b)


def build_triangular(n: int, a: int, b: int) -> Arrangement:
    """Big a-triangle holding n rows of b-triangles; needs (n+1)b/2 < a < nb.

    Row i (from the top, 1-based) holds i smalls; consecutive rows and
    neighbours within a row overlap in triangles of side t = (nb-a)/(n-1).
    """
    if n < 2:
        raise BadIndex(f"need n >= 2, got {n}")
    family = DescentFamily.triangular(n)
    _require_window(family, a, b)
    pitch = Fraction(a - b, n - 1)
    big = LatticePolygon((_pt(0, 0), _pt(a, 0), _pt(0, a)), TRIANGULAR)
    small0 = LatticePolygon((_pt(0, 0), _pt(b, 0), _pt(0, b)), TRIANGULAR)
    smalls = []
    for i in range(1, n + 1):
        v = Fraction(a - b) - (i - 1) * pitch
        for j in range(1, i + 1):
            smalls.append(small0.translated((j - 1) * pitch, v))
    return Arrangement(big=big, smalls=tuple(smalls), family=family, a=a, b=b)


def build_arrangement(family: DescentFamily, a: int, b: int) -> Arrangement:
    if family.kind is FamilyKind.SQRT2:
        return build_tennenbaum(a, b)
    if family.kind is FamilyKind.HEX6:
        return build_hexagon6(a, b)
    return build_triangular(family.n, a, b)


@dataclass(frozen=True)
class CoverageCensus:
    """Complete exact accounting of how the smalls cover the big figure.

    All areas are lattice areas.  pair_keys/triple_keys index into smalls;
    regions are aligned with their keys.  Depth is capped at 3 by
    construction (DepthExceeded otherwise).
    """

    big_area: Fraction
    total_small_area: Fraction
    union_area: Fraction
    blank_area: Fraction
    exactly2_area: Fraction
    exactly3_area: Fraction
    pair_keys: tuple[tuple[int, int], ...]
    pair_regions: tuple[LatticePolygon, ...]
    triple_keys: tuple[tuple[int, int, int], ...]
    triple_regions: tuple[LatticePolygon, ...]
    max_depth: int

    @property
    def excess_area(self) -> Fraction:
        return self.total_small_area - self.union_area

    @property
    def distinct_pair_regions(self) -> tuple[LatticePolygon, ...]:
        seen: dict[LatticePolygon, None] = {}
        for r in self.pair_regions:
            seen.setdefault(r)
        return tuple(seen)

    @property
    def distinct_triple_regions(self) -> tuple[LatticePolygon, ...]:
        seen: dict[LatticePolygon, None] = {}
        for r in self.triple_regions:
            seen.setdefault(r)
        return tuple(seen)

    @property
    def doubly_covered_regions(self) -> tuple[LatticePolygon, ...]:
        triples = set(self.distinct_triple_regions)
        return tuple(r for r in self.distinct_pair_regions if r not in triples)


def _bbox_disjoint(b1, b2) -> bool:
    return b1[1] <= b2[0] or b2[1] <= b1[0] or b1[3] <= b2[2] or b2[3] <= b1[2]


def coverage_census(arr: Arrangement) -> CoverageCensus:
    """Intersect all smalls pairwise and triple-wise, then apply
    inclusion-exclusion.

    Depth 4 is asserted impossible: every candidate quadruple whose
    sub-triples are all present is clipped and must come out empty.
    """
    smalls = arr.smalls
    boxes = [s.bbox() for s in smalls]
    k = len(smalls)

    pairs: dict[tuple[int, int], LatticePolygon] = {}
    for i in range(k):
        for j in range(i + 1, k):
            if _bbox_disjoint(boxes[i], boxes[j]):
                continue
            region = convex_intersection(smalls[i], smalls[j])
            if region is not None:
                pairs[(i, j)] = region

    triples: dict[tuple[int, int, int], LatticePolygon] = {}
    for (i, j), region in pairs.items():
        for m in range(j + 1, k):
            if (i, m) not in pairs or (j, m) not in pairs:
                continue
            deep = convex_intersection(region, smalls[m])
            if deep is not None:
                triples[(i, j, m)] = deep

    for (i, j, m), region in triples.items():
        for w in range(m + 1, k):
            if (i, j, w) in triples and (i, m, w) in triples and (j, m, w) in triples:
                if convex_intersection(region, smalls[w]) is not None:
                    raise DepthExceeded(f"smalls {i}, {j}, {m}, {w} share interior points")

    big_area = arr.big.lattice_area
    total_small = sum((s.lattice_area for s in smalls), Fraction(0))
    pair_sum = sum((r.lattice_area for r in pairs.values()), Fraction(0))
    triple_sum = sum((r.lattice_area for r in triples.values()), Fraction(0))
    union = total_small - pair_sum + triple_sum
    blank = big_area - union
    exactly3 = triple_sum
    exactly2 = pair_sum - 3 * triple_sum
    assert blank >= 0
    assert exactly2 >= 0
    assert total_small - union == exactly2 + 2 * exactly3
    max_depth = 3 if triples else (2 if pairs else 1)
    return CoverageCensus(
        big_area=big_area,
        total_small_area=total_small,
        union_area=union,
        blank_area=blank,
        exactly2_area=exactly2,
        exactly3_area=exactly3,
        pair_keys=tuple(pairs),
        pair_regions=tuple(pairs.values()),
        triple_keys=tuple(triples),
        triple_regions=tuple(triples.values()),
        max_depth=max_depth,
    )


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: str
    rhs: str
    passed: bool


@dataclass(frozen=True)
class FigureReport:
    family_label: str
    n: int | None
    a: int
    b: int
    checks: tuple[IdentityCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)


@dataclass(frozen=True)
class _Expected:
    small_count: int
    doubly_count: int
    triple_count: int
    overlap_side: Fraction
    blank_side: Fraction
    big_area: Fraction
    total_small_area: Fraction
    exactly2: Fraction
    exactly3: Fraction
    blank: Fraction
    balance_factor: Fraction
    max_depth: int


def figure_expectations(arr: Arrangement) -> _Expected:
    """Closed-form predictions for every census quantity of a figure."""
    a, b = Fraction(arr.a), Fraction(arr.b)
    kind = arr.family.kind
    if kind is FamilyKind.SQRT2:
        t, s = 2 * b - a, a - b
        return _Expected(
            small_count=2,
            doubly_count=1,
            triple_count=0,
            overlap_side=t,
            blank_side=s,
            big_area=a * a,
            total_small_area=2 * b * b,
            exactly2=t * t,
            exactly3=Fraction(0),
            blank=2 * s * s,
            balance_factor=Fraction(-1),
            max_depth=2,
        )
    if kind is FamilyKind.HEX6:
        t, s = 3 * b - a, a - 2 * b
        return _Expected(
            small_count=6,
            doubly_count=6,
            triple_count=0,
            overlap_side=t,
            blank_side=s,
            big_area=3 * a * a,
            total_small_area=18 * b * b,
            exactly2=6 * t * t,
            exactly3=Fraction(0),
            blank=9 * s * s,
            balance_factor=Fraction(-3),
            max_depth=2,
        )
    n = arr.family.n
    t = Fraction(n * b - a, n - 1)
    s = b - 2 * t
    n_triple = (n - 2) * (n - 1) // 2
    return _Expected(
        small_count=triangular(n),
        doubly_count=3 * (n - 1),
        triple_count=n_triple,
        overlap_side=t,
        blank_side=s,
        big_area=a * a / 2,
        total_small_area=Fraction(triangular(n)) * b * b / 2,
        exactly2=Fraction(3 * (n - 1)) * t * t / 2,
        exactly3=Fraction(n_triple) * t * t / 2,
        blank=Fraction(n * (n - 1)) * s * s / 4,
        balance_factor=Fraction(-1, 2),
        max_depth=2 if n == 2 else 3,
    )


def _check(name: str, lhs, rhs) -> IdentityCheck:
    return IdentityCheck(name=name, lhs=str(lhs), rhs=str(rhs), passed=lhs == rhs)


def verify_figure(arr: Arrangement, census: CoverageCensus) -> FigureReport:
    """Compare every measured census quantity against its closed form.

    Returns the full check list on success; raises MismatchReport (with
    the same report attached) if anything disagrees.
    """
    exp = figure_expectations(arr)
    overlaps = census.distinct_pair_regions + tuple(
        r for r in census.distinct_triple_regions if r not in set(census.distinct_pair_regions)
    )
    t2 = exp.overlap_side * exp.overlap_side
    sides_ok = sum(
        1
        for r in overlaps
        if all(edge_sq_length(r.basis, p, q) == t2 for p, q in r.edges())
    )
    kind = arr.family.kind
    if kind is FamilyKind.SQRT2:
        shape_ok = sum(1 for r in overlaps if is_square(r, exp.overlap_side))
    elif kind is FamilyKind.HEX6:
        shape_ok = sum(1 for r in overlaps if is_unit_rhombus(r, exp.overlap_side))
    else:
        shape_ok = sum(1 for r in overlaps if is_equilateral_triangle(r, exp.overlap_side))
    defect = arr.a * arr.a - arr.family.radicand * arr.b * arr.b
    balance = exp.balance_factor * defect

    checks = (
        _check("small_count", len(arr.smalls), exp.small_count),
        _check("doubly_region_count", len(census.doubly_covered_regions), exp.doubly_count),
        _check("triple_region_count", len(census.distinct_triple_regions), exp.triple_count),
        _check("overlap_sides_equal_t", sides_ok, len(overlaps)),
        _check("overlap_shapes", shape_ok, len(overlaps)),
        _check("big_area", census.big_area, exp.big_area),
        _check("total_small_area", census.total_small_area, exp.total_small_area),
        _check("exactly2_area", census.exactly2_area, exp.exactly2),
        _check("exactly3_area", census.exactly3_area, exp.exactly3),
        _check("excess_area", census.excess_area, exp.exactly2 + 2 * exp.exactly3),
        _check("blank_area", census.blank_area, exp.blank),
        _check("excess_minus_blank", census.excess_area - census.blank_area, balance),
        _check("raw_area_balance", census.total_small_area - census.big_area, balance),
        _check("max_depth", census.max_depth, exp.max_depth),
    )
    report = FigureReport(
        family_label=arr.family.label, n=arr.family.n, a=arr.a, b=arr.b, checks=checks
    )
    if not report.all_pass:
        raise MismatchReport(report)
    return report


def census_to_descent(arr: Arrangement, census: CoverageCensus) -> tuple[int, int]:
    """Read the next descent pair off the measured figure alone.

    Overlap side t comes from an actual overlap region's edge length and
    blank side s from the exact square root of the blank area; the family
    then fixes how (t, s) scale into the next (a, b).  No algebraic map is
    consulted, so agreement with descent_step is a real cross-check.
    """
    if not census.pair_regions:
        raise ValueError("figure has no overlap regions to measure")
    t = polygon_side(census.distinct_pair_regions[0])
    kind = arr.family.kind
    if kind is FamilyKind.SQRT2:
        s = fraction_sqrt(census.blank_area / 2)
        a_next, b_next = t, s
    elif kind is FamilyKind.HEX6:
        s = fraction_sqrt(census.blank_area / 9)
        a_next, b_next = 3 * s, t
    else:
        n = arr.family.n
        s = fraction_sqrt(4 * census.blank_area / (n * (n - 1)))
        if kind is FamilyKind.TRIANGULAR_EVEN:
            a_next = Fraction(n, 2) * (n - 1) * s
            b_next = (n - 1) * t
        else:
            a_next = Fraction(n + 1, 2) * (n - 1) * t
            b_next = Fraction(n - 1) * s / 2
    if a_next.denominator != 1 or b_next.denominator != 1:
        raise ValueError(f"measured pair ({a_next}, {b_next}) is not integral")
    return int(a_next), int(b_next)
