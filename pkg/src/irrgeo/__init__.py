"""Exact-arithmetic verification of geometric irrationality constructions.

Three overlapping-figure constructions (paired squares, a ring of six
hexagons, stacked rows of triangles) each turn a hypothetical rational
square root into an infinite descent.  This package rebuilds the figures
with exact rational coordinates, takes a complete coverage census, checks
every area identity, and cross-checks the geometry against the algebraic
descent maps.
"""

from .descent import (
    BadIndex,
    BadParity,
    ChainResult,
    DegenerateDenominator,
    DescentFamily,
    DescentStep,
    FamilyKind,
    RangeCheckResult,
    defect_multiplier,
    descent_chain,
    descent_step,
    range_check,
    symbolic_ratio_check,
    verify_eq1,
)
from .exact_arith import (
    BiForm,
    DegreeOverflow,
    RadicandMismatch,
    Rational,
    Surd,
    biform_reduce,
    surd_sign,
)
from .geometry import (
    Arrangement,
    BasisMismatch,
    CoverageCensus,
    DepthExceeded,
    FigureReport,
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
    verify_figure,
    window_inequalities,
)
from .number_theory import (
    Convergent,
    NotPrime,
    SquareRadicand,
    convergents,
    prime_case_check,
    sqrt_is_irrational,
    square_density,
    square_triangular,
    squarefree_decompose,
)
from .render_report import SvgScene, cli_main, emit_svg, render_json, render_svg, scene_from_arrangement

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "BadIndex",
    "BadParity",
    "BasisMismatch",
    "BiForm",
    "ChainResult",
    "Convergent",
    "CoverageCensus",
    "DegenerateDenominator",
    "DegreeOverflow",
    "DepthExceeded",
    "DescentFamily",
    "DescentStep",
    "FamilyKind",
    "FigureReport",
    "LatticePoint",
    "LatticePolygon",
    "MismatchReport",
    "NotPrime",
    "ORTHOGONAL",
    "OutOfWindow",
    "RadicandMismatch",
    "RangeCheckResult",
    "Rational",
    "SquareRadicand",
    "Surd",
    "SvgScene",
    "TRIANGULAR",
    "biform_reduce",
    "build_arrangement",
    "build_hexagon6",
    "build_tennenbaum",
    "build_triangular",
    "census_to_descent",
    "cli_main",
    "convergents",
    "convex_intersection",
    "coverage_census",
    "defect_multiplier",
    "descent_chain",
    "descent_step",
    "emit_svg",
    "prime_case_check",
    "range_check",
    "render_json",
    "render_svg",
    "scene_from_arrangement",
    "sqrt_is_irrational",
    "square_density",
    "square_triangular",
    "squarefree_decompose",
    "surd_sign",
    "symbolic_ratio_check",
    "verify_eq1",
    "verify_figure",
    "window_inequalities",
]
