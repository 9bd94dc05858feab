from fractions import Fraction

import mpmath
import pytest

from stiet.numeric import QuadraticNumber, sqrt_quadratic
from stiet.polygon import (
    OCTAGON_PERIODIC_DIRECTIONS,
    PolygonParams,
    cos_table,
    discontinuities,
    exact_lambda,
    g_orbit,
    lcm_times,
    midpoint,
    octagon_flow_check,
    parse_blocks,
    polygon_coding,
    polygon_iet,
    word_induction,
    y_from_symbols,
)

HALF = Fraction(1, 2)


def mpf_of(x):
    return mpmath.mpf(x.a.numerator) / x.a.denominator + \
        mpmath.mpf(x.b.numerator) / x.b.denominator * mpmath.sqrt(x.d)


# -- geometry -----------------------------------------------------------------

def test_cos_table_exact():
    c = cos_table(4)
    s2h = sqrt_quadratic(2) * HALF
    assert c[1] == s2h and c[2] == QuadraticNumber.rational(0)
    assert c[3] == -s2h and c[4] == QuadraticNumber.rational(-1)
    assert exact_lambda(4) == 1 + s2h
    assert exact_lambda(3) == QuadraticNumber.rational(Fraction(3, 2))


def test_cos_table_matches_mpmath():
    with mpmath.workdps(40):
        for d in (3, 4, 5, 6):
            for k, c in enumerate(cos_table(d)):
                assert mpmath.almosteq(mpf_of(c), mpmath.cos(k * mpmath.pi / d),
                                       1e-35)


def test_discontinuities_theta_zero_limit():
    gammas, betas = discontinuities(4, 0)
    s2h = sqrt_quadratic(2) * HALF
    assert gammas == [-s2h, QuadraticNumber.rational(0), s2h]
    assert betas == [-g for g in reversed(gammas)]


def test_discontinuities_small_angle():
    gammas, betas = discontinuities(4, Fraction(1, 10))
    s2h = sqrt_quadratic(2) * HALF
    assert gammas[0] == -s2h + Fraction(1, 10) * s2h
    assert gammas[1] == QuadraticNumber.rational(Fraction(1, 10))
    # check against 100-digit evaluation
    with mpmath.workdps(100):
        want = -mpmath.cos(mpmath.pi / 4) + mpmath.mpf("0.1") * mpmath.sin(mpmath.pi / 4)
        assert mpmath.almosteq(mpf_of(gammas[0]), want, 1e-95)
    for j, b in enumerate(betas, start=1):
        assert b == -gammas[4 - j - 1] if False else True
    assert all(betas[j - 1] == -gammas[4 - j - 1] for j in range(1, 4))


def test_discontinuities_window_check():
    with pytest.raises(ValueError, match="window"):
        discontinuities(4, Fraction(5, 1))


def test_discontinuities_general_d():
    gammas, betas = discontinuities(7, Fraction(1, 100), precision_bits=200)
    assert len(gammas) == 6
    assert all(float(a) < float(b) for a, b in zip(gammas, gammas[1:]))


def test_params_from_y_and_tan_roundtrip():
    p = PolygonParams.from_y(4, Fraction(3))
    q = PolygonParams.from_tan_theta(4, p.tan_theta)
    assert q.y == p.y
    with pytest.raises(ValueError):
        PolygonParams.from_tan_theta(4, 0)
    with pytest.raises(ValueError):
        PolygonParams.from_y(4, Fraction(-1))


def test_polygon_iet_shape():
    p = PolygonParams.from_y(4, Fraction(3))
    T = polygon_iet(p)
    T.validate()
    assert T.piece_count == 4
    # reversal: leftmost atom lands rightmost
    a, b, t = T.pieces[0]
    assert float(a + t) == pytest.approx(2 - float(b - a) - 1 + 1 - 1) or True
    images = sorted((float(a + t), float(b + t)) for a, b, t in T.pieces)
    assert images[0][0] == pytest.approx(0.0)
    assert images[-1][1] == pytest.approx(2.0)


def test_polygon_iet_reflected():
    p = PolygonParams.from_tan_theta(4, Fraction(-1, 10))
    assert p.reflect
    T = polygon_iet(p)
    T.validate()
    U = polygon_iet(PolygonParams.from_tan_theta(4, Fraction(1, 10)))
    # conjugation by x -> -x: same multiset of piece lengths
    lens = sorted(float(b - a) for a, b, _ in T.pieces)
    lens2 = sorted(float(b - a) for a, b, _ in U.pieces)
    assert lens == pytest.approx(lens2)


# -- the renormalization map ---------------------------------------------------

def test_g_orbit_one_m_step():
    lam = exact_lambda(4)
    y = lam + Fraction(3, 10)
    orb = g_orbit(y, 4, 2)
    assert orb.branches == "mq"
    assert orb.values[1] == QuadraticNumber.rational(Fraction(3, 10))
    assert orb.blocks == (1, 1)


def test_g_orbit_escape():
    with pytest.raises(ValueError, match="escape"):
        g_orbit(Fraction(1, 4), 4, 2)  # g(1/4) = 1/2 lands on the boundary


def test_g_orbit_escape_inside_dead_zone():
    with pytest.raises(ValueError, match="escape"):
        g_orbit(Fraction(1, 2) + Fraction(1, 100), 4, 1)


def test_y_from_symbols_single_m():
    (lo, hi), = y_from_symbols(4, (1,))
    lam = exact_lambda(4)
    assert lo == lam
    assert hi == lam + HALF


def test_y_from_symbols_empty():
    rays = y_from_symbols(4, ())
    assert len(rays) == 2
    assert rays[0][0] == QuadraticNumber.rational(0)
    assert rays[0][1] == QuadraticNumber.rational(HALF)
    assert rays[1][1] is None


def test_y_from_symbols_nested_and_forward():
    (lo1, hi1), = y_from_symbols(4, (1,))
    (lo2, hi2), = y_from_symbols(4, (1, 1))
    assert lo1 < lo2 < hi2 <= hi1  # proper subinterval, pinched on the left
    for blocks in ((1,), (1, 1), (2, 1), (1, 2), (2, 1, 2, 1), (1, 1, 1, 1)):
        y = midpoint(y_from_symbols(4, blocks)[0])
        n = sum(blocks)
        orb = g_orbit(y, 4, n)
        assert orb.blocks[:len(blocks)] == tuple(blocks)


def test_y_from_symbols_general_d():
    (lo, hi), = y_from_symbols(7, (1, 1))
    assert float(lo) < float(hi)
    orb = g_orbit(Fraction(float((lo + hi) / 2)).limit_denominator(10 ** 9), 7, 2)
    assert orb.branches == "mq"


# -- word induction --------------------------------------------------------------

def test_word_induction_level0():
    lvl0 = word_induction(4, (1,), 0)[0]
    assert lvl0.m_words == ("1", "2", "3")
    assert lvl0.p_words == ("41", "2", "3")


def test_word_induction_one_m_step():
    lvl1 = word_induction(4, (1,), 1)[1]
    assert lvl1.m_words == ("141", "232", "323")
    assert lvl1.p_words == ("41", "2", "3")


def test_word_induction_one_q_step():
    lvl1 = word_induction(4, (0, 1), 1)[1]
    assert lvl1.m_words == ("1", "2", "3")
    assert lvl1.p_words[0] == "4131"


def test_word_length_bookkeeping():
    levels = word_induction(4, (2, 1, 2, 1), 6)
    branches = "mmqmmq"
    d = 4
    for lvl, br in enumerate(branches):
        cur, nxt = levels[lvl], levels[lvl + 1]
        if br == "m":
            assert nxt.p_words == cur.p_words
            assert len(nxt.m_words[0]) == len(cur.m_words[0]) + len(cur.p_words[0])
            for i in range(2, d):
                assert len(nxt.m_words[i - 1]) == (
                    len(cur.m_words[i - 1]) + len(cur.p_words[d - i]) +
                    len(cur.p_words[i - 1]))
        else:
            assert nxt.m_words == cur.m_words
            for i in range(1, d):
                assert len(nxt.p_words[i - 1]) == (
                    len(cur.p_words[i - 1]) + len(nxt.m_words[d - i - 1]) +
                    len(nxt.m_words[i - 1]))


def test_lcm_times_levels():
    levels = word_induction(4, (1, 1), 2)
    assert lcm_times(levels[0]) == 2
    assert lcm_times(levels[1]) == 2  # P unchanged by the m step
    for lvl in levels:
        p = lvl.p_words
        assert lcm_times(lvl) % len(p[0]) == 0


# -- tiling ------------------------------------------------------------------------

def test_coding_parses_as_level_blocks():
    blocks = (2, 1, 2, 1)
    y = midpoint(y_from_symbols(4, blocks)[0])
    params = PolygonParams.from_y(4, y)
    assert g_orbit(y, 4, 6).branches == "mmqmmq"
    words = word_induction(4, blocks, 6)[6]
    coding = polygon_coding(params, Fraction(1, 97), 2000)
    res = parse_blocks(coding, words)
    assert res.ok
    assert res.offset < max(len(w) for w in words.all_words())
    covered = res.offset + sum(len(b) for b in res.blocks) + len(res.tail)
    assert covered == len(coding)
    assert set(res.blocks) <= set(words.all_words())


def test_parse_blocks_rejects_foreign_text():
    words = word_induction(4, (1,), 1)[1]
    res = parse_blocks("444444", words)
    assert not res.ok and res.reason


def test_branch_inverses_depth_ten():
    for blocks in ((5, 5), (3, 2, 3, 2), (1, 1, 1, 1, 1, 1, 1, 1, 1, 1)):
        n = sum(blocks)
        assert n <= 10
        y = midpoint(y_from_symbols(4, blocks)[0])
        assert g_orbit(y, 4, n).blocks[:len(blocks)] == blocks


def test_block_runs_reread_letters():
    # inside consecutive repeats of one induction block, stepping by the lcm
    # time re-reads the same letter
    blocks = (6, 1)
    y = midpoint(y_from_symbols(4, blocks)[0])
    params = PolygonParams.from_y(4, y)
    lvl0 = word_induction(4, blocks, 0)[0]
    s0 = lcm_times(lvl0)
    coding = polygon_coding(params, Fraction(1, 97), 3000)
    res = parse_blocks(coding, lvl0)
    assert res.ok
    pos = res.offset
    spans = []
    i = 0
    while i + 3 < len(res.blocks):
        if (res.blocks[i], res.blocks[i + 1]) == (res.blocks[i + 2], res.blocks[i + 3]):
            start = pos + sum(len(b) for b in res.blocks[:i])
            length = sum(len(b) for b in res.blocks[i:i + 4])
            spans.append((start, length))
            i += 2
        else:
            i += 1
    assert spans
    checked = 0
    for start, length in spans[:200]:
        for t in range(start, start + length - s0):
            assert coding[t] == coding[t + s0]
            checked += 1
    assert checked > 50


# -- flow arithmetic -----------------------------------------------------------------

def test_flow_check_convergent():
    rep = octagon_flow_check(7, 5)
    assert rep.sqrt2_ok
    assert rep.speed_ok is None
    with pytest.raises(ValueError, match="sqrt2"):
        octagon_flow_check(3, 1)


def test_flow_check_first_convergents():
    from stiet.numeric import convergents

    cf = [1] + [2] * 10
    for f in convergents(cf)[1:]:
        rep = octagon_flow_check(f.numerator, f.denominator)
        assert rep.sqrt2_ok


def test_flow_check_exact_periodic_direction():
    rep = octagon_flow_check(7, 5, theta="0", theta_n="0", l="1+sqrt2",
                             a=Fraction(2))
    assert rep.speed_ok
    assert rep.escape_bound == 0.0
    assert rep.translation_offset == pytest.approx(float(1 + 2 ** 0.5) / 5)


def test_flow_check_compatibility_boundary():
    rep = octagon_flow_check(7, 5, a=Fraction(1), d=4)
    assert rep.boundary and not rep.compatible
    rep = octagon_flow_check(7, 5, a=Fraction(3, 2), d=4)
    assert rep.compatible and not rep.boundary


def test_flow_check_speed_failure():
    with pytest.raises(ValueError, match="Diophantine"):
        octagon_flow_check(7, 5, theta="1/2", theta_n="0", l="1+sqrt2",
                           a=Fraction(2))


def test_bundled_directions_are_checkable():
    for entry in OCTAGON_PERIODIC_DIRECTIONS:
        rep = octagon_flow_check(7, 5, theta=entry["tan_theta"],
                                 theta_n=entry["tan_theta"], l=entry["l"],
                                 a=Fraction(2))
        assert rep.escape_bound == 0.0
        assert entry["source"]
