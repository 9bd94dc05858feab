import random
from fractions import Fraction
from math import floor

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stiet.numeric import (
    AlphaLinear,
    AlphaValue,
    PrecisionExhaustedError,
    QuadraticNumber,
    cf_expand,
    compare_affine,
    convergents,
    parse_alpha,
    sqrt_quadratic,
)

SQRT2M1 = parse_alpha("quad:sqrt2-1")
GOLDENISH = parse_alpha("quad:(3-sqrt5)/2")

rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=40)


def quad(a, b, d=2):
    return QuadraticNumber(Fraction(a), Fraction(b), d)


# -- quadratic numbers -------------------------------------------------------

@settings(max_examples=200)
@given(rationals, rationals, rationals, rationals, rationals, rationals)
def test_field_axioms(a1, b1, a2, b2, a3, b3):
    x, y, z = quad(a1, b1), quad(a2, b2), quad(a3, b3)
    assert (x + y) * z == x * z + y * z
    assert x * (y * z) == (x * y) * z
    assert x + y == y + x
    assert x - x == QuadraticNumber.rational(0)
    if (y * y).a != 0 or y.b != 0:
        if y.sign() != 0:
            assert (x / y) * y == x


@given(rationals, rationals)
def test_sign_matches_float(a, b):
    x = quad(a, b)
    approx = float(a) + float(b) * 2 ** 0.5
    if abs(approx) > 1e-9:
        assert x.sign() == (1 if approx > 0 else -1)


@given(rationals, rationals)
def test_floor_matches_mpmath(a, b):
    x = quad(a, b, 3)
    with mpmath.workdps(60):
        v = mpmath.mpf(a.numerator) / a.denominator + \
            mpmath.mpf(b.numerator) / b.denominator * mpmath.sqrt(3)
        assert floor(x) == int(mpmath.floor(v))


def test_squarefree_normalization():
    assert sqrt_quadratic(8) == quad(0, 2, 2)
    assert sqrt_quadratic(9) == QuadraticNumber.rational(3)
    assert sqrt_quadratic(Fraction(1, 2)) == quad(0, Fraction(1, 2), 2)


def test_mixed_radicand_rejected():
    with pytest.raises(ValueError):
        quad(0, 1, 2) + quad(0, 1, 3)


# -- continued fractions -----------------------------------------------------

def test_cf_sqrt2_minus_1():
    assert cf_expand(SQRT2M1, 4) == [0, 2, 2, 2]


def test_cf_golden_like():
    assert cf_expand(GOLDENISH, 4) == [0, 2, 1, 1]


def test_cf_rational_rejected():
    with pytest.raises(ValueError):
        AlphaValue(exact=QuadraticNumber.rational(Fraction(1, 2)))


def test_convergents_sqrt2_minus_1():
    conv = convergents(cf_expand(SQRT2M1, 4))
    assert conv == [Fraction(0), Fraction(1, 2), Fraction(2, 5), Fraction(5, 12)]


def test_convergents_sqrt2_quality():
    # |sqrt2 - p/q| < 1/q^2 for every convergent of sqrt 2
    sqrt2 = sqrt_quadratic(2)
    cf = [1] + [2] * 9
    for pq in convergents(cf)[1:]:
        err = sqrt2 - pq
        if err.sign() < 0:
            err = -err
        assert err < QuadraticNumber.rational(Fraction(1, pq.denominator ** 2))
    assert convergents(cf)[:4] == [
        Fraction(1), Fraction(3, 2), Fraction(7, 5), Fraction(17, 12)]


def test_convergents_single_term():
    assert convergents([0]) == [Fraction(0)]


@given(st.lists(st.integers(min_value=1, max_value=9), min_size=2, max_size=14))
def test_convergent_denominators_grow_like_fibonacci(qs):
    fib = [1, 1]
    while len(fib) < len(qs) + 2:
        fib.append(fib[-1] + fib[-2])
    conv = convergents([0] + qs)
    for k, f in enumerate(conv):
        assert f.denominator >= fib[k]


def test_alternating_approximation_sides():
    for alpha in (SQRT2M1, GOLDENISH):
        x = alpha.exact_value
        signs = []
        for pq in alpha.convergent_fractions(8):
            signs.append((x - pq).sign())
        assert all(s != 0 for s in signs)
        assert all(signs[i] != signs[i + 1] for i in range(len(signs) - 1))


# -- CF mode -----------------------------------------------------------------

def test_cf_mode_finite_exhausts():
    a = parse_alpha("cf:0,2,2,2")
    assert a.cf(4) == [0, 2, 2, 2]
    with pytest.raises(PrecisionExhaustedError):
        a.cf(10)


def test_cf_rule_generates_linear_quotients():
    a = parse_alpha("cf:0,then:n+1")
    # induction quotients a_n = n; standard digits carry the +1 on c_1
    assert a.cf(6) == [0, 2, 2, 3, 4, 5]
    assert a.quotients(5) == [1, 2, 3, 4, 5]


def test_cf_rule_continues_explicit_prefix():
    a = parse_alpha("cf:0,2,2,then:n+1")
    assert a.cf(6) == [0, 2, 2, 3, 4, 5]


def test_quadratic_quotients_convention():
    # sqrt2 - 1 = [0; 2, 2, 2, ...] so a_1 = 1 and a_n = 2 afterwards
    assert SQRT2M1.quotients(4) == [1, 2, 2, 2]


# -- certified comparisons ---------------------------------------------------

def test_compare_affine_examples():
    alpha = SQRT2M1
    # alpha vs 1 - alpha with alpha < 1/2
    assert compare_affine(alpha, 0, 1, 1, -1) == -1
    # frac(5 alpha) ~ 0.071 vs frac(2) = 0
    assert compare_affine(alpha, 0, 5, 2, 0) == 1
    assert compare_affine(alpha, 0, 1, 0, 1) == 0
    assert compare_affine(alpha, Fraction(1, 3), 2, Fraction(4, 3), 2) == 0


def test_compare_affine_cf_mode():
    alpha = parse_alpha("cf:0,then:n+1")
    assert compare_affine(alpha, 0, 1, 1, -1) == -1
    assert compare_affine(alpha, Fraction(1, 2), 0, 0, 1) == 1  # alpha < 1/2


def test_compare_affine_matches_highprec_floats():
    rng = random.Random(7)
    alpha = SQRT2M1
    with mpmath.workdps(200):
        av = mpmath.sqrt(2) - 1
        for _ in range(10_000):
            c1 = Fraction(rng.randint(-40, 40), rng.randint(1, 30))
            c2 = Fraction(rng.randint(-40, 40), rng.randint(1, 30))
            k1, k2 = rng.randint(-50, 50), rng.randint(-50, 50)
            f1 = mpmath.frac(c1.numerator / mpmath.mpf(c1.denominator) + k1 * av)
            f2 = mpmath.frac(c2.numerator / mpmath.mpf(c2.denominator) + k2 * av)
            want = 0 if mpmath.almosteq(f1, f2, 1e-150) else (1 if f1 > f2 else -1)
            assert compare_affine(alpha, c1, k1, c2, k2) == want


def test_cf_tie_raises_instead_of_guessing():
    a = parse_alpha("cf:0,2,2,2,2")
    target = a.convergent_fractions(5)[-1]  # a rational indistinguishably close
    with pytest.raises(PrecisionExhaustedError):
        a.sign_linear(-target, 1)


def test_min_fractional_gap_bound():
    gap = SQRT2M1.min_fractional_gap(1000)
    assert 0 < gap < Fraction(1, 1000)
    a = float(SQRT2M1)
    worst = min(abs(a * m - round(a * m)) for m in range(1, 1001))
    assert float(gap) <= worst + 1e-12


# -- linear forms ------------------------------------------------------------

def test_alpha_linear_arithmetic_and_order():
    x = AlphaLinear.of(SQRT2M1, Fraction(1, 2), 1)
    y = AlphaLinear.of(SQRT2M1, 1, -1)
    assert (x + y).c == Fraction(3, 2) and (x + y).k == 0
    assert (x - y) < x + y
    assert floor(x) == 0
    assert (3 * x).k == 3
    z = AlphaLinear.of(SQRT2M1, 2, 2)
    assert z.frac().c == 2 - floor(z)
    assert float(z.frac()) == pytest.approx(float(z) - floor(z))


def test_alpha_linear_render():
    x = AlphaLinear.of(SQRT2M1, 2, 1)
    assert "2 + 1*alpha" in x.render()
    assert "2.41421356237" in x.render()


def test_mixing_angles_rejected():
    x = AlphaLinear.of(SQRT2M1, 0, 1)
    y = AlphaLinear.of(GOLDENISH, 0, 1)
    with pytest.raises(ValueError):
        _ = x + y


# -- parsing -----------------------------------------------------------------

def test_parse_quadratic_forms():
    assert parse_alpha("quad:sqrt2-1").exact_value == quad(-1, 1, 2)
    assert parse_alpha("quad:(3-sqrt5)/2").exact_value == \
        QuadraticNumber(Fraction(3, 2), Fraction(-1, 2), 5)
    assert parse_alpha("quad:1/2+1/4*sqrt(2)").exact_value == \
        QuadraticNumber(Fraction(1, 2), Fraction(1, 4), 2)


def test_parse_rejects_out_of_range():
    with pytest.raises(ValueError):
        parse_alpha("quad:sqrt2")
    with pytest.raises(ValueError):
        parse_alpha("quad:1/2")
    with pytest.raises(ValueError):
        parse_alpha("cf:1,2,3")
    with pytest.raises(ValueError):
        parse_alpha("nope:1")
