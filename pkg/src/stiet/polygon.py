"""Interval exchanges from billiards in regular 2d-gons.

The section map on the vertical diagonal is a d-interval exchange with
reversal permutation p(j) = d - j + 1 whose discontinuities are
``gamma_j = -cos(j pi / d) + tan(theta) sin(j pi / d)``.  For d in
{3, 4, 5, 6} the cosine of pi/d is rational or quadratic and everything is
computed exactly (products of sines reduce to cosine differences); other d
run on certified mpmath intervals with a precision ladder, since the
discontinuities are then transcendental in practice.

The renormalization of the parameter ``y`` is the map g(y) = y - lambda on
(lambda, inf) and g(y) = y/(1-2y) on (0, 1/2); its symbolic orbit drives a
two-branch word induction whose blocks tile every coding of the exchange.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Union

import mpmath

from stiet.iet import IntervalMap
from stiet.numeric import (
    PrecisionExhaustedError,
    QuadraticNumber,
    active_ladder,
    sqrt_quadratic,
)

__all__ = [
    "PolygonParams",
    "cos_table",
    "exact_lambda",
    "discontinuities",
    "polygon_iet",
    "polygon_coding",
    "GOrbit",
    "g_orbit",
    "y_from_symbols",
    "PolygonWords",
    "word_induction",
    "lcm_times",
    "ParseResult",
    "parse_blocks",
    "FlowCheckReport",
    "octagon_flow_check",
    "OCTAGON_PERIODIC_DIRECTIONS",
]

Number = Union[Fraction, QuadraticNumber]

_EXACT_COS = {
    3: lambda: QuadraticNumber.rational(Fraction(1, 2)),
    4: lambda: sqrt_quadratic(2) * Fraction(1, 2),
    5: lambda: (1 + sqrt_quadratic(5)) * Fraction(1, 4),
    6: lambda: sqrt_quadratic(3) * Fraction(1, 2),
}


def cos_table(d: int) -> list[QuadraticNumber]:
    """cos(k pi / d) for k = 0..d via the Chebyshev recurrence, exact."""
    if d not in _EXACT_COS:
        raise ValueError(f"no exact cosine field for d={d}; use the mpmath path")
    c1 = _EXACT_COS[d]()
    table = [QuadraticNumber.rational(1), c1]
    for _ in range(2, d + 1):
        table.append(2 * c1 * table[-1] - table[-2])
    return table


def exact_lambda(d: int) -> QuadraticNumber:
    """lambda = 1 + cos(pi/d) = 2 cos^2(pi/2d)."""
    return 1 + cos_table(d)[1]


@dataclass(frozen=True)
class PolygonParams:
    """Geometry of one direction on the 2d-gon, exact flavor.

    ``tan_theta`` is the absolute slope parameter; ``reflect`` remembers a
    negative angle (the section map is then conjugated by x -> -x).
    """

    d: int
    tan_theta: Number
    y: Number
    reflect: bool = False

    @property
    def lam(self) -> QuadraticNumber:
        return exact_lambda(self.d)

    @classmethod
    def from_y(cls, d: int, y, reflect: bool = False) -> "PolygonParams":
        """Parameters from y = (sin(pi/d)/|tan theta| - (1+cos(pi/d))) / 2."""
        lam = exact_lambda(d)
        y = _coerce(y, lam)
        if not _is_positive(y):
            raise ValueError("y must be positive")
        # tan = sin(pi/d) / (2y + lam); gammas only ever use tan*sin(j pi/d),
        # so the square root of sin never appears downstream
        return cls(d=d, tan_theta=_tan_from_y(d, y, lam), y=y, reflect=reflect)

    @classmethod
    def from_tan_theta(cls, d: int, tan_theta, reflect: Optional[bool] = None) -> "PolygonParams":
        lam = exact_lambda(d)
        t = _coerce(tan_theta, lam)
        if reflect is None:
            reflect = _sign_of(t) < 0
        if _sign_of(t) < 0:
            t = -t
        if _sign_of(t) == 0:
            raise ValueError("tan theta = 0 is a periodic direction")
        if d in (3, 4, 6):
            sin1 = _sin_table(d)[1]
            y = (sin1 / t - lam) * Fraction(1, 2)
        else:
            raise ValueError(
                f"exact construction from tan theta needs d in (3, 4, 6); "
                f"give y instead for d={d}")
        if not _is_positive(y):
            raise ValueError("tan theta outside the admissible window")
        return cls(d=d, tan_theta=t, y=y, reflect=reflect)


def _coerce(x, lam: QuadraticNumber):
    if isinstance(x, QuadraticNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadraticNumber.rational(Fraction(x)) + 0 * lam
    if isinstance(x, str):
        from stiet.numeric import _ExprParser

        return _ExprParser(x).parse()
    raise TypeError(f"cannot coerce {type(x)!r} to the cosine field")


def _tan_from_y(d: int, y, lam):
    # tan = sin(pi/d)/(2y + lam); for d = 5 the sine is quartic, so the tan
    # is stored in product form via gamma computations; here we only need it
    # for reporting when it stays quadratic
    denom = 2 * y + lam
    if d in (3, 4, 6):
        return _sin_table(d)[1] / denom
    return None  # type: ignore[return-value]


def _sin_table(d: int) -> list[QuadraticNumber]:
    """sin(k pi/d) for k = 0..d when they live in the cosine field (even d or d=3)."""
    if d == 3:
        s = sqrt_quadratic(3) * Fraction(1, 2)
        return [QuadraticNumber.rational(0), s, s, QuadraticNumber.rational(0)]
    if d == 4:
        c = cos_table(4)
        return [c[2], c[1], c[0], c[1], c[2]]
    if d == 6:
        c = cos_table(6)
        return [c[3], c[2], c[1], c[0], c[1], c[2], c[3]]
    raise ValueError(f"sines of pi/{d} leave the cosine field")


def _is_positive(x) -> bool:
    return _sign_of(x) > 0


def _sign_of(x) -> int:
    if isinstance(x, QuadraticNumber):
        return x.sign()
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# discontinuities and the section map
# ---------------------------------------------------------------------------

def discontinuities(d: int, tan_theta=None, params: Optional[PolygonParams] = None,
                    precision_bits: int = 256):
    """Sorted interior discontinuities (gamma_j) and (beta_j) on [-1, 1).

    gamma_j = -cos(j pi/d) + tan(theta) sin(j pi/d) for j = 1..d-1 and
    beta_j = -gamma_{d-j}.  Exact for the quadratic-cosine d; certified
    mpmath otherwise.
    """
    if params is not None:
        gammas = _exact_gammas(params)
    elif d in (3, 4, 6):
        lam = exact_lambda(d)
        t = _coerce(tan_theta, lam)
        sins = _sin_table(d)
        gammas = [-cos_table(d)[j] + t * sins[j] for j in range(1, d)]
    elif tan_theta == 0 and d in _EXACT_COS:
        gammas = [QuadraticNumber.rational(0) - cos_table(d)[j] for j in range(1, d)]
    else:
        gammas = _mp_gammas(d, tan_theta, precision_bits)
    for a, b in zip(gammas, gammas[1:]):
        if not _lt(a, b):
            raise ValueError("angle outside the admissible window: "
                             "discontinuities are not increasing")
    if not (_lt(-1, gammas[0]) and _lt(gammas[-1], 1)):
        raise ValueError("angle outside the admissible window")
    betas = [-g for g in reversed(gammas)]
    return gammas, betas


def _exact_gammas(params: PolygonParams) -> list[QuadraticNumber]:
    d, y, lam = params.d, params.y, params.lam
    cosv = cos_table(d)
    denom = 2 * (2 * y + lam)
    out = []
    for j in range(1, d):
        # tan * sin(j pi/d) = (cos((j-1) pi/d) - cos((j+1) pi/d)) / (2 (2y + lam))
        prod = (cosv[j - 1] - cosv[j + 1]) / denom
        out.append(-cosv[j] + prod)
    return out


def _mp_gammas(d: int, tan_theta, precision_bits: int):
    t = Fraction(tan_theta) if not isinstance(tan_theta, float) else tan_theta
    with mpmath.workprec(precision_bits):
        tv = mpmath.mpf(t.numerator) / t.denominator if isinstance(t, Fraction) \
            else mpmath.mpf(t)
        return [-mpmath.cos(j * mpmath.pi / d) + tv * mpmath.sin(j * mpmath.pi / d)
                for j in range(1, d)]


def _lt(a, b) -> bool:
    if isinstance(a, QuadraticNumber) or isinstance(b, QuadraticNumber):
        if not isinstance(a, QuadraticNumber):
            a = QuadraticNumber.rational(Fraction(a))
        if not isinstance(b, QuadraticNumber):
            b = QuadraticNumber.rational(Fraction(b))
        return a < b
    return mpmath.mpf(a) < mpmath.mpf(b)


def polygon_iet(params: PolygonParams) -> IntervalMap:
    """The exact d-interval exchange of the direction, shifted onto [0, 2).

    Atom j is [gamma_{j-1}, gamma_j) reading the diagonal upwards; the
    exchange reverses the atom order, so atom j is translated by
    -gamma_j - gamma_{j-1}.  For a reflected direction the map is conjugated
    by x -> -x (breakpoint conventions re-closed on the left).
    """
    gammas, _ = discontinuities(params.d, params=params)
    one = QuadraticNumber.rational(1)
    pts = [-one] + list(gammas) + [one]
    if params.reflect:
        pts = [-p for p in reversed(pts)]
        # conjugation keeps the reversal permutation but renames the atoms
    pieces = []
    for j in range(1, params.d + 1):
        a, b = pts[j - 1], pts[j]
        t = -pts[j] - pts[j - 1]
        pieces.append((a + 1, b + 1, t))
    m = IntervalMap(pieces)
    m.validate()
    return m


def polygon_coding(params: PolygonParams, start, n: int) -> str:
    """First n letters (digits '1'..'d') of the coding of ``start`` in [-1, 1)."""
    if params.d > 9:
        raise ValueError("digit codings support d <= 9")
    T = polygon_iet(params)
    x = _coerce(start, params.lam) + 1
    out = []
    for _ in range(n):
        idx = T.piece_index(x)
        out.append(str(idx + 1))
        x = x + T.pieces[idx][2]
    return "".join(out)


# ---------------------------------------------------------------------------
# the renormalization map g
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GOrbit:
    """Iterates of g with their branch labels and the parsed block counts."""

    values: tuple
    branches: str               # e.g. "mmqmmq"
    blocks: tuple[int, ...]     # (m1, q1, m2, q2, ...)


def g_orbit(y, d: int, N: int) -> GOrbit:
    """Iterate g for N steps, certifying every branch decision.

    Raises when an iterate escapes into the dead zone [1/2, lambda] (the
    map is irrelevant there) or when a comparison cannot be certified.  For
    d outside the quadratic-cosine family the orbit runs on mpmath
    intervals over a rising precision ladder.
    """
    if d not in _EXACT_COS:
        return _g_orbit_certified(y, d, N)
    lam = exact_lambda(d)
    v = _coerce(y, lam)
    half = Fraction(1, 2)
    values, branches = [], []
    for _ in range(N):
        if (v - lam).sign() > 0:
            branches.append("m")
            v_next = v - lam
        elif v.sign() > 0 and (v - half).sign() < 0:
            branches.append("q")
            v_next = v / (1 - 2 * v)
        else:
            raise ValueError(
                f"orbit escapes: iterate {len(values)} lands in the dead zone "
                f"[1/2, lambda] (value ~ {float(v):.6g})")
        values.append(v)
        v = v_next
    return GOrbit(tuple(values), "".join(branches), _parse_blocks_string("".join(branches)))


class _Undecided(Exception):
    pass


def _g_orbit_certified(y, d: int, N: int) -> GOrbit:
    y0 = Fraction(y) if not isinstance(y, float) else Fraction(y).limit_denominator(10 ** 15)
    for bits in active_ladder():
        try:
            return _g_orbit_iv(y0, d, N, bits)
        except _Undecided:
            continue
    raise PrecisionExhaustedError(
        f"cannot certify {N} branch decisions at {active_ladder()[-1]} bits")


def _g_orbit_iv(y0: Fraction, d: int, N: int, bits: int) -> GOrbit:
    iv = mpmath.iv
    old = iv.prec
    iv.prec = bits
    try:
        lam = 1 + iv.cos(iv.pi / d)
        half = iv.mpf(1) / 2
        v = iv.mpf(y0.numerator) / y0.denominator
        values, branches = [], []
        for _ in range(N):
            if v.a > lam.b:
                branches.append("m")
                v_next = v - lam
            elif v.a > 0 and v.b < half.a:
                branches.append("q")
                v_next = v / (1 - 2 * v)
            elif v.a >= half.b and v.b <= lam.a:
                raise ValueError(
                    f"orbit escapes: iterate {len(values)} lands in the dead "
                    f"zone [1/2, lambda]")
            else:
                raise _Undecided
            values.append(mpmath.mpf(v.mid))
            v = v_next
        s = "".join(branches)
        return GOrbit(tuple(values), s, _parse_blocks_string(s))
    finally:
        iv.prec = old


def _parse_blocks_string(branches: str) -> tuple[int, ...]:
    blocks = []
    expect = "m"
    i = 0
    while i < len(branches):
        if branches[i] == expect:
            j = i
            while j < len(branches) and branches[j] == expect:
                j += 1
            blocks.append(j - i)
            i = j
        else:
            blocks.append(0)
        expect = "q" if expect == "m" else "m"
    return tuple(blocks)


def _expand_blocks(blocks: Sequence[int]) -> str:
    out = []
    for idx, count in enumerate(blocks):
        if count < 0:
            raise ValueError("block counts must be nonnegative")
        if count == 0 and idx > 0:
            raise ValueError("only the leading m-block may be zero")
        out.append(("m" if idx % 2 == 0 else "q") * count)
    return "".join(out)


def y_from_symbols(d: int, blocks: Sequence[int],
                   precision_bits: int = 256) -> list[tuple]:
    """Admissible y realizing the block prefix exactly, as open intervals.

    Walks the branch inverses y = z + lambda and y = z/(1+2z) backwards from
    the domain of the first unlisted branch; the preimage is never empty
    because both branches map onto (0, inf).  The empty prefix returns the
    two rays around the dead zone.  Interval ends use None for +inf.  For d
    outside the quadratic-cosine family the endpoints are high-precision
    floats instead of exact numbers.
    """
    if d not in _EXACT_COS:
        return _y_from_symbols_mp(d, blocks, precision_bits)
    lam = exact_lambda(d)
    half = QuadraticNumber.rational(Fraction(1, 2))
    zero = QuadraticNumber.rational(0)
    if not blocks:
        return [(zero, half), (lam, None)]
    branches = _expand_blocks(blocks)
    nxt = "q" if branches[-1] == "m" else "m"
    lo, hi = (zero, half) if nxt == "q" else (lam, None)
    for br in reversed(branches):
        if br == "m":
            lo = lo + lam
            hi = hi + lam if hi is not None else None
        else:
            lo = lo / (1 + 2 * lo)
            hi = hi / (1 + 2 * hi) if hi is not None else half
    return [(lo, hi)]


def _y_from_symbols_mp(d: int, blocks: Sequence[int], bits: int) -> list[tuple]:
    with mpmath.workprec(bits):
        lam = 1 + mpmath.cos(mpmath.pi / d)
        half = mpmath.mpf(1) / 2
        if not blocks:
            return [(mpmath.mpf(0), half), (lam, None)]
        branches = _expand_blocks(blocks)
        nxt = "q" if branches[-1] == "m" else "m"
        lo, hi = (mpmath.mpf(0), half) if nxt == "q" else (lam, None)
        for br in reversed(branches):
            if br == "m":
                lo = lo + lam
                hi = hi + lam if hi is not None else None
            else:
                lo = lo / (1 + 2 * lo)
                hi = hi / (1 + 2 * hi) if hi is not None else half
        return [(lo, hi)]


def midpoint(interval: tuple) -> QuadraticNumber:
    lo, hi = interval
    if hi is None:
        return lo + 1
    return (lo + hi) * Fraction(1, 2)


# ---------------------------------------------------------------------------
# word induction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolygonWords:
    """Level-n return blocks M_{n,i}, P_{n,i}, 1 <= i <= d-1, as digit words."""

    level: int
    m_words: tuple[str, ...]
    p_words: tuple[str, ...]

    def all_words(self) -> list[str]:
        return sorted(set(self.m_words) | set(self.p_words), key=len, reverse=True)


def word_induction(d: int, blocks: Sequence[int], N: int) -> list[PolygonWords]:
    """Levels 0..N of the two-branch block induction.

    m-steps extend M by a pair of P blocks (M_{n+1,i} = M_{n,i} P_{n,d-i+1}
    P_{n,i}, with M_{n+1,1} = M_{n,1} P_{n,1}); q-steps extend P dually from
    the fresh M words.  The published m-rule indexes i up to d although only
    i <= d-1 blocks exist; levels here stop at d-1.
    """
    if d > 9:
        raise ValueError("digit words support d <= 9")
    if d < 3:
        raise ValueError("the polygon family needs d >= 3")
    branches = _expand_blocks(blocks)
    if len(branches) < N:
        raise ValueError(f"only {len(branches)} induction steps described, {N} asked")
    m_words = tuple(str(i) for i in range(1, d))
    p_words = tuple([f"{d}1"] + [str(i) for i in range(2, d)])
    levels = [PolygonWords(0, m_words, p_words)]
    for lvl in range(N):
        if branches[lvl] == "m":
            new_m = [m_words[0] + p_words[0]]
            for i in range(2, d):
                new_m.append(m_words[i - 1] + p_words[d - i] + p_words[i - 1])
            m_words = tuple(new_m)
        else:
            new_p = []
            for i in range(1, d):
                new_p.append(p_words[i - 1] + m_words[d - i - 1] + m_words[i - 1])
            p_words = tuple(new_p)
        levels.append(PolygonWords(lvl + 1, m_words, p_words))
    return levels


def lcm_times(words: PolygonWords) -> int:
    """lcm of |P_{n,d-i+1}| + |P_{n,i}| (2 <= i <= d-1) and |P_{n,1}|."""
    p = words.p_words
    d = len(p) + 1
    values = [len(p[0])]
    for i in range(2, d):
        values.append(len(p[d - i]) + len(p[i - 1]))
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


# ---------------------------------------------------------------------------
# block parsing of codings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParseResult:
    """Exact covering of a coding window by induction blocks."""

    ok: bool
    offset: int                       # letters skipped before the first block
    blocks: tuple[str, ...]           # block names in order of occurrence
    tail: str                         # final partial block (proper prefix)
    reason: Optional[str] = None


def parse_blocks(coding: str, words: PolygonWords) -> ParseResult:
    """Parse a coding as head-suffix + full blocks + partial tail.

    A one-sided window generally starts inside a block, so an initial offset
    of fewer than max-block-length letters is allowed provided the skipped
    head is a suffix of one of the blocks.
    """
    table = words.all_words()
    n = len(coding)
    can = [False] * (n + 1)
    choice: list[Optional[str]] = [None] * (n + 1)
    can[n] = True
    for i in range(n - 1, -1, -1):
        for w in table:
            if coding.startswith(w, i):
                if can[i + len(w)]:
                    can[i] = True
                    choice[i] = w
                    break
        else:
            rem = coding[i:]
            if any(w.startswith(rem) for w in table):
                can[i] = True
                choice[i] = None  # partial tail
    max_len = max(len(w) for w in table)
    for offset in range(min(max_len, n)):
        if not can[offset]:
            continue
        head = coding[:offset]
        if offset and not any(w.endswith(head) for w in table):
            continue
        blocks = []
        i = offset
        while i < n and choice[i] is not None:
            blocks.append(choice[i])
            i += len(choice[i])
        return ParseResult(True, offset, tuple(blocks), coding[i:])
    return ParseResult(False, 0, (), "", reason="no admissible block covering")


# ---------------------------------------------------------------------------
# flow arithmetic for the octagon
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FlowCheckReport:
    """Diophantine bookkeeping for one periodic-direction approximation."""

    sqrt2_ok: bool                  # |sqrt2 - p/q| < 1/q^2
    speed_ok: Optional[bool]        # |theta - theta_n| < 1 / l^(2+a)
    escape_bound: float             # p * l^2 * |theta - theta_n|
    escape_cap: float               # p / l^a
    translation_offset: float      # l / q
    compatible: bool                # a > d - 3
    boundary: bool                  # a == d - 3 exactly

    def as_dict(self) -> dict:
        return {
            "schema": "stiet.flowcheck/1",
            "sqrt2_approximation_ok": self.sqrt2_ok,
            "speed_ok": self.speed_ok,
            "escape_bound": self.escape_bound,
            "escape_cap": self.escape_cap,
            "translation_offset": self.translation_offset,
            "compatible": self.compatible,
            "boundary": self.boundary,
        }


def octagon_flow_check(p: int, q: int, theta=None, theta_n=None, l=None,
                       a=Fraction(1), d: int = 4) -> FlowCheckReport:
    """Verify the inequalities behind the flow rigidity construction.

    Always checks |sqrt2 - p/q| < 1/q^2 exactly.  When an angle pair and a
    shortest cylinder length are supplied, also checks approximation at
    speed ``a`` and evaluates the escape-measure bound p*l^2*|theta-theta_n|
    against its cap p/l^a and the fiber translation offset l/q.  The two
    requirements l << p << l^a are compatible exactly when a > d - 3.
    """
    if q <= 0 or p <= 0:
        raise ValueError("need positive convergent data")
    err = sqrt_quadratic(2) - Fraction(p, q)
    if err.sign() < 0:
        err = -err
    sqrt2_ok = err < QuadraticNumber.rational(Fraction(1, q * q))
    if not sqrt2_ok:
        raise ValueError(f"{p}/{q} is not a convergent-quality approximation of sqrt2")

    a = Fraction(a)
    compatible = a > d - 3
    boundary = a == d - 3

    speed_ok: Optional[bool] = None
    escape_bound = 0.0
    escape_cap = float("inf")
    offset = 0.0
    if theta is not None and theta_n is not None and l is not None:
        with mpmath.workprec(333):
            tv = _mp(theta)
            tnv = _mp(theta_n)
            lv = _mp(l)
            gap = abs(tv - tnv)
            speed_ok = bool(gap < 1 / lv ** (2 + float(a)))
            if not speed_ok:
                raise ValueError(
                    "Diophantine inequality fails: |theta - theta_n| is not "
                    f"below 1/l^(2+a) (gap ~ {float(gap):.3g})")
            escape_bound = float(p * lv ** 2 * gap)
            escape_cap = float(p / lv ** float(a))
            offset = float(lv / q)
    return FlowCheckReport(sqrt2_ok=sqrt2_ok, speed_ok=speed_ok,
                           escape_bound=escape_bound, escape_cap=escape_cap,
                           translation_offset=offset, compatible=compatible,
                           boundary=boundary)


def _mp(x):
    if isinstance(x, str):
        from stiet.numeric import _ExprParser

        qn = _ExprParser(x).parse()
        return mpmath.mpf(qn.a.numerator) / qn.a.denominator + \
            mpmath.mpf(qn.b.numerator) / qn.b.denominator * mpmath.sqrt(qn.d)
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, QuadraticNumber):
        return mpmath.mpf(x.a.numerator) / x.a.denominator + \
            mpmath.mpf(x.b.numerator) / x.b.denominator * mpmath.sqrt(x.d)
    return mpmath.mpf(x)


# Externally sourced periodic-direction data for the regular octagon with
# unit sides: shortest-cylinder lengths in a few explicit directions (the
# horizontal decomposition has cylinders of lengths 1+sqrt2 and 2+sqrt2,
# ratio sqrt2; symmetric and sheared images follow).  Only the Diophantine
# inequalities of these entries are ever checked here.
OCTAGON_PERIODIC_DIRECTIONS = (
    {"name": "horizontal", "tan_theta": "0", "l": "1+sqrt2",
     "source": "horizontal cylinder decomposition, unit-side octagon"},
    {"name": "diagonal", "tan_theta": "1", "l": "1+sqrt2",
     "source": "image of horizontal under the eighth-turn symmetry"},
    {"name": "shear-up", "tan_theta": "2+2*sqrt2", "l": 11.904679,
     "source": "vertical sheared by the standard parabolic, length scaled by |(1, 2+2 sqrt2)|"},
    {"name": "shear-flat", "tan_theta": "(sqrt2-1)/2", "l": 11.904679,
     "source": "horizontal sheared by the transpose parabolic"},
)
