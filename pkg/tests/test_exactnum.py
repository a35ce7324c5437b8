"""Exact arithmetic: pinned values plus oracle cross-checks.

The oracle for algebraic sign queries is mpmath at 60 decimal digits,
which shares no code with the Sturm/bisection implementation under test.
"""

import random
from fractions import Fraction

import mpmath
import pytest

from topskit.exactnum import (
    ExactReal,
    IncompatibleFieldsError,
    IntPoly,
    ValidationError,
    compare,
    parse_exact,
    sign_at,
)


def golden() -> ExactReal:
    return ExactReal.algebraic([-1, 1, 1], ("3/5", "7/10"))


# ---------------------------------------------------------------------------
# IntPoly
# ---------------------------------------------------------------------------


def test_intpoly_basics():
    p = IntPoly([1, -2, 0, 1])  # x^3 - 2x + 1
    assert p.degree == 3
    assert p(Fraction(2, 3)) == Fraction(-1, 27)
    assert p(1) == 0
    assert p.derivative() == IntPoly([-2, 0, 3])
    assert IntPoly([0, 0]).is_zero
    assert (IntPoly([1, 1]) * IntPoly([-1, 1])) == IntPoly([-1, 0, 1])
    assert IntPoly([1, 2]) + IntPoly([3, -2]) == IntPoly([4])
    assert str(IntPoly([-1, 1, 1])) == "x^2 + x - 1"


def test_intpoly_squarefree_part():
    # (x - 1)^2 (x + 2) = x^3 - 3x + 2
    p = IntPoly([2, -3, 0, 1])
    assert p.squarefree_part() == IntPoly([-2, 1, 1])  # (x - 1)(x + 2)
    # already squarefree: unchanged up to normalization
    assert IntPoly([-1, 1, 1]).squarefree_part() == IntPoly([-1, 1, 1])
    # content and sign are normalized away
    assert IntPoly([-4, 0, -2]).squarefree_part() == IntPoly([2, 0, 1])


def test_intpoly_rejects_non_integers():
    with pytest.raises(ValidationError):
        IntPoly([Fraction(1, 2)])


# ---------------------------------------------------------------------------
# sign_at: pinned examples
# ---------------------------------------------------------------------------


def test_sign_at_rational_point():
    assert sign_at(IntPoly([1, -2, 0, 1]), ExactReal("2/3")) == -1
    assert sign_at(IntPoly([1, -2, 0, 1]), ExactReal(0)) == 1
    assert sign_at(IntPoly([]), ExactReal("5/7")) == 0


def test_sign_at_algebraic_root_is_zero():
    assert sign_at(IntPoly([-1, 1, 1]), golden()) == 0


def test_sign_at_derived_element():
    rho = golden()
    # rho^3 - 2 rho + 1 == 0 in this field
    assert (rho**3 - 2 * rho + 1).sign() == 0
    assert sign_at(IntPoly([1, -2, 0, 1]), rho) == 0


# ---------------------------------------------------------------------------
# compare: pinned examples
# ---------------------------------------------------------------------------


def test_compare_rationals():
    assert compare(ExactReal("1/2"), ExactReal("1/2")) == 0
    assert compare(ExactReal("2/3"), ExactReal("1/2")) == 1
    assert compare(ExactReal("-5"), ExactReal(0)) == -1


def test_compare_algebraic_with_rational():
    rho = golden()
    assert compare(rho, ExactReal("2/3")) == -1
    assert compare(rho, ExactReal("3/5")) == 1
    assert compare(rho, rho) == 0


def test_rich_comparisons_and_mixing():
    rho = golden()
    assert rho < 1
    assert rho > Fraction(1, 2)
    assert rho <= rho
    assert (1 - rho) < rho
    assert rho != Fraction(2, 3)


# ---------------------------------------------------------------------------
# arithmetic: pinned examples
# ---------------------------------------------------------------------------


def test_rational_arithmetic():
    a = ExactReal("1/2") + ExactReal("1/3")
    assert a.as_fraction() == Fraction(5, 6)
    assert (ExactReal("2/3") ** 3).as_fraction() == Fraction(8, 27)
    assert (ExactReal(3) / ExactReal(4)).as_fraction() == Fraction(3, 4)
    assert (-ExactReal("1/2")).as_fraction() == Fraction(-1, 2)
    assert abs(ExactReal("-7/3")).as_fraction() == Fraction(7, 3)


def test_golden_field_arithmetic():
    rho = golden()
    assert rho * rho == 1 - rho
    assert rho**2 + rho - 1 == 0
    assert 1 / rho == rho + 1
    assert (rho + 1) * rho == 1
    assert (rho / rho) == 1
    assert (2 * rho - rho) == rho


def test_division_by_zero():
    rho = golden()
    with pytest.raises(ZeroDivisionError):
        _ = rho / (rho * rho + rho - 1)
    with pytest.raises(ZeroDivisionError):
        _ = ExactReal(1) / ExactReal(0)


def test_mixing_unrelated_generators_raises():
    a = ExactReal.algebraic([-2, 0, 1], (1, 2))  # sqrt(2)
    b = ExactReal.algebraic([-3, 0, 1], (1, 2))  # sqrt(3)
    with pytest.raises(IncompatibleFieldsError):
        _ = a + b


def test_same_root_different_intervals_interoperate():
    a = ExactReal.algebraic([-1, 1, 1], ("3/5", "7/10"))
    b = ExactReal.algebraic([-1, 1, 1], ("1/2", "9/10"))
    assert a == b
    assert (a - b).sign() == 0
    assert a * b == 1 - a


def test_distinct_roots_of_same_poly_are_distinct():
    a = ExactReal.algebraic([-2, 0, 1], (1, 2))  # sqrt(2)
    b = ExactReal.algebraic([-2, 0, 1], (-2, -1))  # -sqrt(2)
    with pytest.raises(IncompatibleFieldsError):
        _ = a + b


def test_cross_field_comparison():
    sqrt2 = ExactReal.algebraic([-2, 0, 1], (1, 2))
    rho = golden()
    assert compare(sqrt2, rho) == 1
    assert rho < sqrt2
    assert compare(rho, sqrt2 - 2) == 1


def test_cross_field_equality():
    rho = golden()
    # (x^2 + x - 1)(x^2 - 5) has the golden rho as its only root in (0.55, 0.71)
    also_rho = ExactReal.algebraic([5, -5, -6, 1, 1], ("11/20", "71/100"))
    assert compare(rho, also_rho) == 0
    assert rho == also_rho
    assert not (rho < also_rho)
    # and a nearby but unequal value separates
    near = ExactReal.algebraic([-3, 0, 0, 0, 5], ("1/2", "1"))  # (3/5)^(1/4)
    assert compare(rho, near) == -1


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def test_algebraic_interval_validation():
    with pytest.raises(ValidationError):
        ExactReal.algebraic([-2, 0, 1], (-2, 2))  # two roots
    with pytest.raises(ValidationError):
        ExactReal.algebraic([-2, 0, 1], (3, 4))  # no roots
    with pytest.raises(ValidationError):
        ExactReal.algebraic([-2, 0, 1], (2, 1))  # inverted
    with pytest.raises(ValidationError):
        ExactReal.algebraic([-1, 0, 0], ("0", "1"))  # constant
    # linear with the root strictly inside is fine and collapses to 0
    assert ExactReal.algebraic([0, 1], (-1, 1)).as_fraction() == 0


def test_linear_squarefree_part_collapses_to_rational():
    v = ExactReal.algebraic([1, -2, 1], (0, 2))  # (x-1)^2
    assert v.is_rational and v.as_fraction() == 1
    w = ExactReal.algebraic([-3, 2], (1, 2))  # 2x - 3
    assert w.is_rational and w.as_fraction() == Fraction(3, 2)


def test_endpoint_root_rejected():
    # (x - 1)(x - 3): the left endpoint is itself a root
    with pytest.raises(ValidationError):
        ExactReal.algebraic([3, -4, 1], (1, 2))


# ---------------------------------------------------------------------------
# parsing and serialization
# ---------------------------------------------------------------------------


def test_parse_exact_rational_forms():
    assert parse_exact("2/3").as_fraction() == Fraction(2, 3)
    assert parse_exact("0.6").as_fraction() == Fraction(3, 5)
    assert parse_exact("-5").as_fraction() == -5
    assert parse_exact(7).as_fraction() == 7
    with pytest.raises(ValidationError):
        parse_exact("1/0")
    with pytest.raises(ValidationError):
        parse_exact("abc")


def test_parse_exact_algebraic_form():
    rho = parse_exact({"poly": [-1, 1, 1], "interval": ["0.6", "0.7"]})
    assert rho == golden()
    with pytest.raises(ValidationError):
        parse_exact({"poly": [-1, "x", 1], "interval": ["0", "1"]})
    with pytest.raises(ValidationError):
        parse_exact({"poly": [-1, 1, 1], "interval": ["0"]})
    with pytest.raises(ValidationError):
        parse_exact([1, 2])


def test_parse_exact_coeffs_requires_field():
    rho = golden()
    v = parse_exact({"coeffs": ["1", "-1"]}, field=rho)
    assert v == 1 - rho
    with pytest.raises(ValidationError):
        parse_exact({"coeffs": ["1", "-1"]})


def test_to_json_round_trips():
    rho = golden()
    data = rho.to_json()
    assert data == {"poly": [-1, 1, 1], "interval": ["3/5", "13/20"]}
    assert parse_exact(data) == rho
    # a derived element serializes with its own annihilating polynomial
    omr = (1 - rho).to_json()
    assert omr["poly"] == [1, -3, 1]
    assert parse_exact(omr) == 1 - rho
    assert ExactReal("2/3").to_json() == "2/3"
    # squares: rho^2 = 1 - rho shares that polynomial
    assert (rho * rho).to_json()["poly"] == [1, -3, 1]


def test_to_json_is_deterministic_under_refinement():
    rho = golden()
    before = rho.to_json()
    # Force many refinements through unrelated comparisons.
    for k in range(1, 40):
        compare(rho, Fraction(61803398875, 10**11) + Fraction(1, 10**k))
    assert rho.to_json() == before


def test_approximate():
    rho = golden()
    a = rho.approximate(Fraction(1, 10**15))
    assert abs(a - Fraction(6180339887498948, 10**16)) < Fraction(1, 10**12)
    assert ExactReal("2/3").approximate(Fraction(1, 10)) == Fraction(2, 3)
    with pytest.raises(ValueError):
        rho.approximate(0)


# ---------------------------------------------------------------------------
# property tests against the mpmath oracle
# ---------------------------------------------------------------------------


def _mp_root(poly_coeffs, lo, hi):
    mpmath.mp.dps = 60
    roots = mpmath.polyroots([mpmath.mpf(c) for c in reversed(poly_coeffs)], maxsteps=200)
    real = [r.real for r in roots if abs(r.imag) < mpmath.mpf("1e-40")]
    inside = [
        r
        for r in real
        if mpmath.mpf(lo.numerator) / lo.denominator
        < r
        < mpmath.mpf(hi.numerator) / hi.denominator
    ]
    assert len(inside) == 1
    return inside[0]


def test_sign_at_matches_high_precision_oracle():
    rng = random.Random(20260815)
    mpmath.mp.dps = 60
    specs = [
        ([-1, 1, 1], Fraction(3, 5), Fraction(7, 10)),
        ([-2, 0, 1], Fraction(1), Fraction(2)),
        ([-1, -1, 0, 1], Fraction(1), Fraction(2)),  # x^3 - x - 1
        ([1, -3, 1], Fraction(1, 4), Fraction(1, 2)),
    ]
    for coeffs, lo, hi in specs:
        x = ExactReal.algebraic(coeffs, (lo, hi))
        xr = _mp_root(coeffs, lo, hi)
        for _ in range(60):
            p = IntPoly([rng.randint(-9, 9) for _ in range(rng.randint(1, 6))])
            got = sign_at(p, x)
            approx = mpmath.polyval([mpmath.mpf(c) for c in reversed(p.coeffs)] or [mpmath.mpf(0)], xr)
            if abs(approx) > mpmath.mpf("1e-40"):
                want = 1 if approx > 0 else -1
                assert got == want, (p, coeffs, got, approx)
            else:
                assert got == 0, (p, coeffs, got, approx)


def test_sign_at_rational_matches_exact_evaluation():
    rng = random.Random(11)
    for _ in range(300):
        p = IntPoly([rng.randint(-20, 20) for _ in range(rng.randint(0, 7))])
        x = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        v = p(x)
        assert sign_at(p, ExactReal(x)) == (v > 0) - (v < 0)


def test_compare_trichotomy_and_antisymmetry():
    rng = random.Random(7)
    rho = golden()
    pool = [
        ExactReal(Fraction(rng.randint(-8, 8), rng.randint(1, 8))) for _ in range(8)
    ]
    pool += [rho, 1 - rho, rho * rho, rho + 1, rho - 2, 3 * rho]
    for a in pool:
        for b in pool:
            c, d = compare(a, b), compare(b, a)
            assert c in (-1, 0, 1)
            assert c == -d
            if c == 0:
                assert (a - b).sign() == 0
    # transitivity spot check on a sorted chain
    ordered = sorted(pool, key=lambda v: v.approximate(Fraction(1, 10**20)))
    for i in range(len(ordered) - 1):
        assert compare(ordered[i], ordered[i + 1]) <= 0


def test_field_axioms_spot_checks():
    rng = random.Random(5)
    rho = golden()

    def rand_elem():
        return (
            ExactReal(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
            + ExactReal(Fraction(rng.randint(-5, 5), rng.randint(1, 4))) * rho
        )

    for _ in range(40):
        a, b, c = rand_elem(), rand_elem(), rand_elem()
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a + (b + c) == (a + b) + c
        assert a - a == 0
        if b.sign() != 0:
            assert (a / b) * b == a
