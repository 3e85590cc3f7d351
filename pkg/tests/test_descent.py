import random
from fractions import Fraction

import pytest

from conftest import window_convergents
from irrgeo.descent import (
    BadIndex,
    BadParity,
    DescentFamily,
    FamilyKind,
    defect_multiplier,
    descent_chain,
    descent_step,
    range_check,
    symbolic_ratio_check,
    verify_eq1,
)
from irrgeo.exact_arith import BiForm, biform_reduce
from irrgeo.number_theory import triangular


def test_family_constructors():
    assert DescentFamily.sqrt2().kind is FamilyKind.SQRT2
    assert DescentFamily.sqrt2().radicand == 2
    assert DescentFamily.hex6().radicand == 6
    assert DescentFamily.triangular(4).kind is FamilyKind.TRIANGULAR_EVEN
    assert DescentFamily.triangular(5).kind is FamilyKind.TRIANGULAR_ODD
    assert DescentFamily.triangular(5).radicand == 15
    assert DescentFamily.triangular(8).radicand == 36
    assert DescentFamily.sqrt2().label == "sqrt2"
    assert DescentFamily.triangular(3).label == "triangular"


def test_family_validation():
    with pytest.raises(BadIndex):
        DescentFamily.triangular(1)
    with pytest.raises(BadIndex):
        DescentFamily.triangular(0)
    with pytest.raises(BadParity):
        DescentFamily(FamilyKind.TRIANGULAR_EVEN, 3)
    with pytest.raises(BadParity):
        DescentFamily(FamilyKind.TRIANGULAR_ODD, 4)
    with pytest.raises(BadIndex):
        DescentFamily(FamilyKind.SQRT2, 2)


def test_step_examples():
    s = descent_step(DescentFamily.sqrt2(), 7, 5)
    assert s.pair_out == (3, 2)
    assert (s.defect_in, s.defect_out) == (-1, 1)
    assert s.multiplier == -1

    s = descent_step(DescentFamily.hex6(), 5, 2)
    assert s.pair_out == (3, 1)
    assert (s.defect_in, s.defect_out) == (1, 3)
    assert s.multiplier == 3

    s = descent_step(DescentFamily.triangular(3), 5, 2)
    assert s.pair_out == (2, 1)
    assert (s.defect_in, s.defect_out) == (1, -2)

    s = descent_step(DescentFamily.triangular(4), 19, 6)
    assert s.pair_out == (16, 5)
    assert (s.defect_in, s.defect_out) == (1, 6)
    assert s.multiplier == 6


def test_step_accepts_out_of_window_and_non_coprime():
    # the map is total on positive pairs; windows only gate figures
    s = descent_step(DescentFamily.sqrt2(), 10, 2)
    assert s.pair_out == (-6, 8)
    s = descent_step(DescentFamily.sqrt2(), 14, 10)
    assert s.pair_out == (6, 4)


def test_step_rejects_nonpositive():
    with pytest.raises(ValueError):
        descent_step(DescentFamily.sqrt2(), 0, 1)
    with pytest.raises(ValueError):
        descent_step(DescentFamily.hex6(), 5, -2)


def test_defect_multiplier_closed_forms():
    assert defect_multiplier(DescentFamily.sqrt2()) == -1
    assert defect_multiplier(DescentFamily.hex6()) == 3
    for n in range(2, 21, 2):
        assert defect_multiplier(DescentFamily.triangular(n)) == Fraction(n * (n - 1), 2)
    for n in range(3, 22, 2):
        assert defect_multiplier(DescentFamily.triangular(n)) == Fraction((1 - n) * (n + 1), 4)


def test_defect_multiplier_random_pairs():
    rng = random.Random(99)
    families = [DescentFamily.sqrt2(), DescentFamily.hex6()] + [
        DescentFamily.triangular(n) for n in range(2, 13)
    ]
    for family in families:
        m = defect_multiplier(family)
        radicand = family.radicand
        for _ in range(500):
            a = rng.randint(1, 10**9)
            b = rng.randint(1, 10**9)
            step = descent_step(family, a, b)
            a2, b2 = step.pair_out
            assert a2 * a2 - radicand * b2 * b2 == m * (a * a - radicand * b * b)


def test_multiplier_magnitude_one_pin():
    # regression pin: the only unit multipliers up to n = 20
    families = [DescentFamily.sqrt2(), DescentFamily.hex6()] + [
        DescentFamily.triangular(n) for n in range(2, 21)
    ]
    units = {
        f for f in families if abs(defect_multiplier(f)) == 1
    }
    assert units == {DescentFamily.sqrt2(), DescentFamily.triangular(2)}


def test_verify_eq1_small_cases():
    a, b = BiForm.sym_a(), BiForm.sym_b()
    cert = verify_eq1(3)
    assert cert.ok
    assert cert.cofactor == -2
    assert cert.difference == -2 * (a * a - 6 * (b * b))
    assert biform_reduce(cert.difference, 3).is_zero

    cert = verify_eq1(2)
    assert cert.ok and cert.cofactor == -1
    cert = verify_eq1(5)
    assert cert.ok and cert.cofactor == -4
    assert cert.difference == -4 * (a * a - 15 * (b * b))


def test_verify_eq1_range():
    for n in range(2, 51):
        cert = verify_eq1(n)
        assert cert.ok
        assert cert.cofactor == 1 - n
        assert biform_reduce(cert.difference, n).is_zero
    with pytest.raises(BadIndex):
        verify_eq1(1)


def test_symbolic_ratio_check():
    assert symbolic_ratio_check(DescentFamily.sqrt2())
    assert symbolic_ratio_check(DescentFamily.hex6())
    for n in range(2, 31):
        assert symbolic_ratio_check(DescentFamily.triangular(n))
    # perfect-square triangular numbers (n = 8, 49) still preserve the ratio
    assert symbolic_ratio_check(DescentFamily.triangular(8))
    assert symbolic_ratio_check(DescentFamily.triangular(49))


def test_range_check_exact_validity_sets():
    even_works = {
        n for n in range(2, 101, 2) if range_check(DescentFamily.triangular(n)).works
    }
    odd_works = {
        n for n in range(3, 101, 2) if range_check(DescentFamily.triangular(n)).works
    }
    assert even_works == {2, 4}
    assert odd_works == {3, 5}
    assert range_check(DescentFamily.sqrt2()).works
    assert range_check(DescentFamily.hex6()).works


def test_range_check_witnesses():
    result = range_check(DescentFamily.triangular(6))
    assert not result.works
    by_name = {w.name: w for w in result.witnesses}
    # 6 - sqrt(21) > 1, so the denominator does not shrink
    w = by_name["b_out_shrinks"]
    assert not w.ok
    assert w.sign == 1
    # the witness value is exactly (6 - sqrt(21)) - 1
    assert w.value.rat == 5 and w.value.coef == -1 and w.value.radicand == 21
    result = range_check(DescentFamily.triangular(5))
    assert result.works
    assert all(w.ok for w in result.witnesses)
    assert {w.require for w in result.witnesses} == {"> 0", "< 0"}


def test_range_check_perfect_square_radicand():
    # T_8 = 36: the target root is rational, and the window closes anyway
    result = range_check(DescentFamily.triangular(8))
    assert not result.works


def test_chain_sqrt2_example():
    chain = descent_chain(DescentFamily.sqrt2(), 17, 12, 32)
    assert [s.pair_out for s in chain.steps] == [(7, 5), (3, 2), (1, 1)]
    assert chain.final_pair == (1, 1)
    assert chain.stop_reason == "nonpositive"


def test_chain_hex6_example():
    chain = descent_chain(DescentFamily.hex6(), 22, 9, 32)
    assert [s.pair_out for s in chain.steps] == [(12, 5), (6, 3)]
    assert chain.final_pair == (6, 3)
    assert chain.stop_reason == "nonpositive"


def test_chain_descent_failure():
    # n = 6 fails range_check, so the very first step does not shrink b
    chain = descent_chain(DescentFamily.triangular(6), 9, 2, 32)
    assert chain.steps == ()
    assert chain.stop_reason == "no_decrease"
    assert chain.final_pair == (9, 2)


def test_chain_max_steps():
    chain = descent_chain(DescentFamily.sqrt2(), 99, 70, 2)
    assert len(chain.steps) == 2
    assert chain.stop_reason == "max_steps"
    chain = descent_chain(DescentFamily.sqrt2(), 99, 70, 0)
    assert chain.steps == () and chain.stop_reason == "max_steps"


def test_strict_decrease_on_window_convergents():
    families = [
        DescentFamily.sqrt2(),
        DescentFamily.hex6(),
        DescentFamily.triangular(2),
        DescentFamily.triangular(3),
        DescentFamily.triangular(4),
        DescentFamily.triangular(5),
    ]
    for family in families:
        assert range_check(family).works
        for p, q in window_convergents(family, 10):
            step = descent_step(family, p, q)
            a2, b2 = step.pair_out
            # b can plateau on the window edge (e.g. n=4 pair (3, 1)),
            # but the pair as a whole must shrink
            assert 0 < b2 <= q
            assert 0 < a2
            assert a2 + b2 < p + q
            assert a2 > 0
