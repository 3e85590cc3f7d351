"""Descent maps on integer pairs (a, b) standing for a hypothetical
rational square root a/b.

Each family sends a pair to a strictly smaller one whenever a/b equals the
target square root, which is impossible for positive integers; the modules
here compute the maps, prove their defect identities symbolically, and
decide exactly for which parameters the shrinking argument is valid.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .exact_arith import BiForm, Surd
from .number_theory import triangular


class BadParity(ValueError):
    """A parity-specific family constructor got the wrong parity."""


class BadIndex(ValueError):
    """A family index outside the defined range."""


class DegenerateDenominator(ValueError):
    """The denominator form of a map vanishes at the fixed ratio."""


class FamilyKind(Enum):
    SQRT2 = "sqrt2"
    HEX6 = "hex6"
    TRIANGULAR_EVEN = "triangular_even"
    TRIANGULAR_ODD = "triangular_odd"


@dataclass(frozen=True)
class DescentFamily:
    """One descent map: pair (a, b) -> (a', b') by fixed linear forms.

    kind selects the map; n is the row count for the triangular families
    and None otherwise.
    """

    kind: FamilyKind
    n: int | None = None

    def __post_init__(self) -> None:
        if self.kind in (FamilyKind.SQRT2, FamilyKind.HEX6):
            if self.n is not None:
                raise BadIndex(f"{self.kind.value} takes no index")
            return
        if self.n is None or self.n < 2:
            raise BadIndex(f"triangular family needs n >= 2, got {self.n}")
        if self.kind is FamilyKind.TRIANGULAR_EVEN and self.n % 2:
            raise BadParity(f"even-n family got n = {self.n}")
        if self.kind is FamilyKind.TRIANGULAR_ODD and self.n % 2 == 0:
            raise BadParity(f"odd-n family got n = {self.n}")

    @classmethod
    def sqrt2(cls) -> "DescentFamily":
        return cls(FamilyKind.SQRT2)

    @classmethod
    def hex6(cls) -> "DescentFamily":
        return cls(FamilyKind.HEX6)

    @classmethod
    def triangular(cls, n: int) -> "DescentFamily":
        """Triangular family for any n >= 2; parity picks the map."""
        if n < 2:
            raise BadIndex(f"triangular family needs n >= 2, got {n}")
        kind = FamilyKind.TRIANGULAR_EVEN if n % 2 == 0 else FamilyKind.TRIANGULAR_ODD
        return cls(kind, n)

    @property
    def label(self) -> str:
        if self.kind in (FamilyKind.TRIANGULAR_EVEN, FamilyKind.TRIANGULAR_ODD):
            return "triangular"
        return self.kind.value

    @property
    def radicand(self) -> int:
        """The integer whose square root the family targets.

        sqrt2 targets 2, hex6 targets 6, triangular n targets the n-th
        triangular number (which may be a perfect square; range_check is
        what rules such n out).
        """
        if self.kind is FamilyKind.SQRT2:
            return 2
        if self.kind is FamilyKind.HEX6:
            return 6
        return triangular(self.n)

    @property
    def numerator_form(self) -> tuple[Fraction, Fraction]:
        """(ca, cb) with a' = ca*a + cb*b; coefficients are integers."""
        if self.kind is FamilyKind.SQRT2:
            return (Fraction(-1), Fraction(2))
        if self.kind is FamilyKind.HEX6:
            return (Fraction(3), Fraction(-6))
        n = self.n
        if self.kind is FamilyKind.TRIANGULAR_EVEN:
            return (Fraction(n), Fraction(-triangular(n)))
        return (Fraction(-(n + 1), 2), Fraction(triangular(n)))

    @property
    def denominator_form(self) -> tuple[Fraction, Fraction]:
        """(da, db) with b' = da*a + db*b; coefficients are integers."""
        if self.kind is FamilyKind.SQRT2:
            return (Fraction(1), Fraction(-1))
        if self.kind is FamilyKind.HEX6:
            return (Fraction(-1), Fraction(3))
        n = self.n
        if self.kind is FamilyKind.TRIANGULAR_EVEN:
            return (Fraction(-1), Fraction(n))
        return (Fraction(1), Fraction(-(n + 1), 2))


@dataclass(frozen=True)
class DescentStep:
    family: DescentFamily
    pair_in: tuple[int, int]
    pair_out: tuple[int, int]
    defect_in: int
    defect_out: int
    multiplier: Fraction


def _defect(family: DescentFamily, a: int, b: int) -> int:
    return a * a - family.radicand * b * b


def descent_step(family: DescentFamily, a: int, b: int) -> DescentStep:
    """Apply the family map once to a positive pair.

    The output entries are exact integers for every family (the odd-n
    coefficients (n+1)/2 are integral); the defect a**2 - N*b**2 is
    multiplied by the family's fixed constant.
    """
    if a < 1 or b < 1:
        raise ValueError(f"need a positive pair, got ({a}, {b})")
    ca, cb = family.numerator_form
    da, db = family.denominator_form
    a_out = ca * a + cb * b
    b_out = da * a + db * b
    assert a_out.denominator == 1 and b_out.denominator == 1
    a_out, b_out = int(a_out), int(b_out)
    m = defect_multiplier(family)
    d_in = _defect(family, a, b)
    d_out = a_out * a_out - family.radicand * b_out * b_out
    assert d_out == m * d_in
    return DescentStep(
        family=family,
        pair_in=(a, b),
        pair_out=(a_out, b_out),
        defect_in=d_in,
        defect_out=d_out,
        multiplier=m,
    )


def defect_multiplier(family: DescentFamily) -> Fraction:
    """The constant m with a'**2 - N*b'**2 == m * (a**2 - N*b**2).

    Derived symbolically: expand both squares as bivariate forms and read
    m off, checking the cross term cancels and the b**2 coefficient
    matches -m*N.
    """
    ca, cb = family.numerator_form
    da, db = family.denominator_form
    num = BiForm.linear(ca, cb)
    den = BiForm.linear(da, db)
    out = num * num - family.radicand * (den * den)
    m = out.coeff(2, 0)
    if out != BiForm({(2, 0): m, (0, 2): -m * family.radicand}):
        raise AssertionError(f"defect of {family} is not a multiple of a^2 - N*b^2")
    return m


@dataclass(frozen=True)
class Eq1Certificate:
    """Symbolic witness for the area identity behind the triangular figure.

    difference holds (n+1)*(n*b - a)**2 - (n/2)*(2*a - (n+1)*b)**2 as a
    bivariate form; ok records that it equals cofactor * (a**2 - T_n*b**2),
    so the identity holds exactly when a**2 == T_n * b**2.
    """

    n: int
    difference: BiForm
    cofactor: Fraction
    ok: bool


def verify_eq1(n: int) -> Eq1Certificate:
    """Prove (n+1)*(n*b-a)**2 - (n/2)*(2*a-(n+1)*b)**2 == (1-n)*(a**2 - T_n*b**2)."""
    if n < 2:
        raise BadIndex(f"need n >= 2, got {n}")
    a, b = BiForm.sym_a(), BiForm.sym_b()
    lhs = (n + 1) * (n * b - a) * (n * b - a)
    rhs = Fraction(n, 2) * (2 * a - (n + 1) * b) * (2 * a - (n + 1) * b)
    difference = lhs - rhs
    cofactor = Fraction(1 - n)
    target = cofactor * (a * a - triangular(n) * (b * b))
    return Eq1Certificate(n=n, difference=difference, cofactor=cofactor, ok=difference == target)


def symbolic_ratio_check(family: DescentFamily) -> bool:
    """True iff a'/b' == sqrt(N) whenever a/b == sqrt(N).

    Substituting a = sqrt(N)*b and scaling b to 1 turns both output forms
    into surds; the check a' == sqrt(N) * b' is then exact.
    """
    big_n = family.radicand
    ca, cb = family.numerator_form
    da, db = family.denominator_form
    num = Surd.of(cb, ca, big_n)
    den = Surd.of(db, da, big_n)
    if den == 0:
        raise DegenerateDenominator(f"denominator form of {family} vanishes at the fixed ratio")
    sqrt_n = Surd.of(0, 1, big_n)
    return num == sqrt_n * den


@dataclass(frozen=True)
class InequalityWitness:
    """One strict inequality evaluated exactly at the fixed ratio."""

    name: str
    value: Surd
    require: str  # "> 0" or "< 0"
    sign: int
    ok: bool


@dataclass(frozen=True)
class RangeCheckResult:
    family: DescentFamily
    works: bool
    witnesses: tuple[InequalityWitness, ...]


def range_check(family: DescentFamily) -> RangeCheckResult:
    """Decide exactly whether the family shrinks pairs near the fixed ratio.

    At a/b == sqrt(N) with b scaled to 1 the map must give
    0 < a' < sqrt(N) and 0 < b' < 1; each strict inequality is decided by
    an exact surd sign and returned as a witness.
    """
    big_n = family.radicand
    ca, cb = family.numerator_form
    da, db = family.denominator_form
    a_out = Surd.of(cb, ca, big_n)
    b_out = Surd.of(db, da, big_n)
    sqrt_n = Surd.of(0, 1, big_n)
    conditions = (
        ("a_out_positive", a_out, "> 0"),
        ("a_out_shrinks", a_out - sqrt_n, "< 0"),
        ("b_out_positive", b_out, "> 0"),
        ("b_out_shrinks", b_out - Fraction(1), "< 0"),
    )
    witnesses = []
    for name, value, require in conditions:
        sign = value.sign()
        ok = sign > 0 if require == "> 0" else sign < 0
        witnesses.append(InequalityWitness(name=name, value=value, require=require, sign=sign, ok=ok))
    return RangeCheckResult(family=family, works=all(w.ok for w in witnesses), witnesses=tuple(witnesses))


@dataclass(frozen=True)
class ChainResult:
    """A maximal run of descent steps from a starting pair.

    stop_reason is "nonpositive" (next pair would leave the positive
    quadrant), "no_decrease" (next denominator would not shrink), or
    "max_steps"; final_pair is the last pair actually reached.
    """

    family: DescentFamily
    start: tuple[int, int]
    steps: tuple[DescentStep, ...]
    stop_reason: str
    final_pair: tuple[int, int]


def descent_chain(family: DescentFamily, a: int, b: int, max_steps: int) -> ChainResult:
    """Iterate the map while it keeps producing strictly smaller positive pairs."""
    if a < 1 or b < 1:
        raise ValueError(f"need a positive pair, got ({a}, {b})")
    if max_steps < 0:
        raise ValueError(f"max_steps must be nonnegative, got {max_steps}")
    steps: list[DescentStep] = []
    cur = (a, b)
    reason = "max_steps"
    while len(steps) < max_steps:
        step = descent_step(family, *cur)
        a_out, b_out = step.pair_out
        if a_out < 1 or b_out < 1:
            reason = "nonpositive"
            break
        if b_out >= cur[1]:
            reason = "no_decrease"
            break
        steps.append(step)
        cur = (a_out, b_out)
    return ChainResult(
        family=family,
        start=(a, b),
        steps=tuple(steps),
        stop_reason=reason,
        final_pair=cur,
    )
