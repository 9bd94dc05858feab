"""Exact and certified arithmetic for rotation angles.

Two backends drive every comparison in the toolkit:

* real quadratic numbers ``a + b*sqrt(D)`` with exact sign tests -- the
  authoritative backend, used whenever the angle lives in a quadratic field;
* certified big-rational enclosures refined from a continued-fraction
  description, for angles that are only given by their partial quotients
  (e.g. linearly growing quotients, which are not quadratic).

Equality of two continued-fraction values is certified symbolically or not
at all: a comparison that cannot be separated at the top of the precision
ladder raises :class:`PrecisionExhaustedError` instead of guessing.  Silent
misclassification of an orbit point against a discontinuity would corrupt
every symbolic computation downstream, so we never round.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterator, Optional, Sequence, Union

__all__ = [
    "PrecisionExhaustedError",
    "PRECISION_LADDER",
    "QuadraticNumber",
    "AlphaValue",
    "AlphaLinear",
    "cf_expand",
    "convergents",
    "compare_affine",
    "parse_alpha",
    "sqrt_quadratic",
]

PRECISION_LADDER = (64, 256, 1024, 4096)
_precision_cap = PRECISION_LADDER[-1]

RationalLike = Union[int, Fraction]


class PrecisionExhaustedError(ArithmeticError):
    """A certified comparison ran out of precision (or of CF terms)."""


def set_precision_cap(bits: int) -> None:
    """Raise or lower the top of the certified-comparison ladder."""
    global _precision_cap
    if bits < PRECISION_LADDER[0]:
        raise ValueError(f"cap below the first rung {PRECISION_LADDER[0]}")
    _precision_cap = bits


def active_ladder() -> tuple[int, ...]:
    rungs = tuple(b for b in PRECISION_LADDER if b <= _precision_cap)
    if not rungs or rungs[-1] < _precision_cap:
        rungs = rungs + (_precision_cap,)
    return rungs


def _squarefree(n: int) -> tuple[int, int]:
    """Return (s, d) with n = s**2 * d and d squarefree."""
    if n <= 0:
        raise ValueError("radicand must be positive")
    s, d, p = 1, 1, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    return s, d * n


@dataclass(frozen=True)
class QuadraticNumber:
    """An element a + b*sqrt(d) of a real quadratic field, exact.

    ``d`` is kept squarefree and equal to 1 exactly when the number is
    rational, so equality and hashing are structural.
    """

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        a = Fraction(self.a)
        b = Fraction(self.b)
        d = self.d
        if d < 1:
            raise ValueError("radicand must be >= 1")
        if b:
            s, d0 = _squarefree(d)
            if s != 1 or d0 != d:
                b *= s
                d = d0
        if not b or d == 1:
            a, b, d = a + b * (d if d == 1 else 0), Fraction(0), 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    # -- construction helpers ------------------------------------------------

    @classmethod
    def rational(cls, x: RationalLike) -> "QuadraticNumber":
        return cls(Fraction(x), Fraction(0), 1)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _coerce(self, other) -> "QuadraticNumber":
        if isinstance(other, QuadraticNumber):
            if other.b and self.b and other.d != self.d:
                raise ValueError(f"mixed radicands {self.d} and {other.d}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber.rational(other)
        return NotImplemented  # type: ignore[return-value]

    def _with(self, a: Fraction, b: Fraction) -> "QuadraticNumber":
        return QuadraticNumber(a, b, self.d if b else 1)

    # -- field operations ----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self.d if self.b else o.d
        return QuadraticNumber(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self):
        return self._with(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self.d if self.b else o.d
        return QuadraticNumber(
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticNumber":
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("division by zero quadratic number")
        return QuadraticNumber(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    # -- exact order ---------------------------------------------------------

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2*d
        lhs, rhs = a * a, b * b * self.d
        if lhs == rhs:  # impossible for squarefree d > 1, but cheap to keep
            return 0
        big_a = lhs > rhs
        return (1 if big_a else -1) if a > 0 else (-1 if big_a else 1)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def fixed_point(self, bits: int) -> int:
        """floor(self * 2**bits), computed exactly."""
        scale = 1 << bits
        a, b = self.a * scale, self.b * scale
        # common denominator: value*2^bits = (p + q*sqrt(d)) / r, integers, r > 0
        r = a.denominator * b.denominator
        p = a.numerator * b.denominator
        q = b.numerator * a.denominator
        if q == 0:
            return p // r
        s = isqrt(q * q * self.d)
        lo = p + s if q > 0 else p - s - 1   # numerator lies in (lo, lo+1)
        n = lo // r
        # exact fix-up: the estimate can be off by one at an integer boundary
        while QuadraticNumber(a - n, b, self.d).sign() < 0:
            n -= 1
        while QuadraticNumber(a - (n + 1), b, self.d).sign() >= 0:
            n += 1
        return n

    def __floor__(self) -> int:
        return self.fixed_point(0)

    def __float__(self) -> float:
        fp = self.fixed_point(64)
        return fp / 2.0 ** 64

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.d})"


def sqrt_quadratic(n: RationalLike) -> QuadraticNumber:
    """Exact square root of a positive rational, as a quadratic number."""
    f = Fraction(n)
    if f <= 0:
        raise ValueError("need a positive radicand")
    # sqrt(p/q) = sqrt(p*q)/q
    s, d = _squarefree(f.numerator * f.denominator)
    return QuadraticNumber(Fraction(0), Fraction(s, f.denominator), d)


# ---------------------------------------------------------------------------
# continued fractions
# ---------------------------------------------------------------------------

def convergents(cf: Sequence[int]) -> list[Fraction]:
    """Convergents p_k/q_k of a continued fraction [c0; c1, c2, ...]."""
    out: list[Fraction] = []
    p0, q0, p1, q1 = 1, 0, None, None
    for i, c in enumerate(cf):
        if i == 0:
            p1, q1 = c, 1
        else:
            p0, p1 = p1, c * p1 + p0
            q0, q1 = q1, c * q1 + q0
        out.append(Fraction(p1, q1))
    return out


def _cf_of_quadratic(x: QuadraticNumber, n: int) -> list[int]:
    digits = []
    cur = x
    for _ in range(n):
        a = cur.fixed_point(0)
        digits.append(a)
        frac = cur - a
        if frac.sign() == 0:
            raise ValueError("rational input detected: continued fraction terminates")
        cur = frac.inverse()
    return digits


_RULE_RE = re.compile(r"^(?:(\d+)\*?)?n(?:([+-]\d+))?$|^(\d+)$")


@dataclass(frozen=True)
class _QuotientRule:
    """Affine rule m*n + c generating induction partial quotients.

    The rule is evaluated at n = 0, 1, 2, ... to continue the sequence of
    partial quotients in the convention used by the return-word induction
    (where the first standard digit after the integer part carries a +1).
    ``then:n+1`` therefore generates the quotient sequence 1, 2, 3, ...
    """

    mult: int
    offset: int

    def __call__(self, n: int) -> int:
        v = self.mult * n + self.offset
        if v < 1:
            raise ValueError(f"rule produced non-positive quotient at n={n}")
        return v

    @classmethod
    def parse(cls, text: str) -> "_QuotientRule":
        m = _RULE_RE.match(text.replace(" ", ""))
        if not m:
            raise ValueError(f"cannot parse quotient rule {text!r}")
        if m.group(3) is not None:
            return cls(0, int(m.group(3)))
        mult = int(m.group(1)) if m.group(1) else 1
        offset = int(m.group(2)) if m.group(2) else 0
        return cls(mult, offset)


class AlphaValue:
    """An irrational angle in (0, 1), exact or continued-fraction specified.

    Exact mode wraps a :class:`QuadraticNumber`; CF mode holds standard
    continued-fraction digits ``[0; c1, c2, ...]`` given explicitly and/or by
    an affine generator rule for the induction-convention quotients.
    """

    def __init__(self, exact: Optional[QuadraticNumber] = None,
                 cf_digits: Optional[Sequence[int]] = None,
                 rule: Optional[_QuotientRule] = None):
        if (exact is None) == (cf_digits is None):
            raise ValueError("give either an exact value or CF digits")
        self._exact = exact
        self._rule = rule
        if exact is not None:
            if exact.is_rational:
                raise ValueError("rational input detected: angle must be irrational")
            if not (QuadraticNumber.rational(0) < exact < QuadraticNumber.rational(1)):
                raise ValueError("angle must lie in (0, 1)")
            self._digits: list[int] = []
        else:
            digits = list(cf_digits)  # type: ignore[arg-type]
            if not digits or digits[0] != 0:
                raise ValueError("CF of an angle in (0,1) must start with 0")
            if any(c < 1 for c in digits[1:]):
                raise ValueError("partial quotients must be positive")
            self._digits = digits
        self._convergents: list[Fraction] = []

    # -- basic predicates ------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self._exact is not None

    @property
    def exact_value(self) -> Optional[QuadraticNumber]:
        return self._exact

    # -- digit stream ------------------------------------------------------

    def _ensure_digits(self, n: int) -> None:
        """Extend the standard-digit cache to at least n digits (incl. c0)."""
        if self._exact is not None:
            if len(self._digits) < n:
                self._digits = _cf_of_quadratic(self._exact, n)
            return
        while len(self._digits) < n:
            if self._rule is None:
                raise PrecisionExhaustedError(
                    f"continued fraction has only {len(self._digits)} terms, "
                    f"{n} needed")
            j = len(self._digits)          # next standard digit index c_j
            a = self._rule(j - 1)          # induction quotient a_j, 0-based rule
            self._digits.append(a + 1 if j == 1 else a)

    def cf(self, n: int) -> list[int]:
        """First ``n`` standard continued-fraction digits [0, c1, ...]."""
        self._ensure_digits(n)
        return self._digits[:n]

    def quotients(self, n: int) -> list[int]:
        """Induction partial quotients a_1..a_n (first standard digit minus 1)."""
        cs = self.cf(n + 1)[1:]
        return [cs[0] - 1] + cs[1:] if cs else []

    def convergent_fractions(self, n: int) -> list[Fraction]:
        if len(self._convergents) < n:
            self._convergents = convergents(self.cf(n))
        return self._convergents[:n]

    # -- certified enclosures ----------------------------------------------

    def bounds(self, bits: int) -> tuple[Fraction, Fraction]:
        """A rational enclosure lo <= alpha <= hi of width below 2**-bits."""
        if self._exact is not None:
            fp = self._exact.fixed_point(bits)
            return Fraction(fp, 1 << bits), Fraction(fp + 1, 1 << bits)
        n = max(2, len(self._convergents))
        while True:
            try:
                conv = self.convergent_fractions(n)
            except PrecisionExhaustedError:
                conv = self.convergent_fractions(len(self._digits))
                if len(conv) < 2:
                    raise
                lo, hi = sorted(conv[-2:])
                if hi - lo <= Fraction(1, 1 << bits):
                    return lo, hi
                raise
            if len(conv) >= 2:
                lo, hi = sorted(conv[-2:])
                if hi - lo <= Fraction(1, 1 << bits):
                    return lo, hi
            n += 4

    def fixed_point(self, bits: int) -> int:
        """floor(alpha * 2**bits), certified."""
        if self._exact is not None:
            return self._exact.fixed_point(bits)
        for extra in active_ladder():
            lo, hi = self.bounds(bits + extra)
            flo = (lo.numerator << bits) // lo.denominator
            fhi = (hi.numerator << bits) // hi.denominator
            if flo == fhi:
                return flo
        raise PrecisionExhaustedError(f"cannot certify {bits}-bit fixed point")

    def __float__(self) -> float:
        return self.fixed_point(64) / 2.0 ** 64

    # -- linear-form arithmetic ---------------------------------------------

    def sign_linear(self, c: Fraction, k: RationalLike) -> int:
        """Certified sign of c + k*alpha."""
        if k == 0:
            return (c > 0) - (c < 0)
        if self._exact is not None:
            return (self._exact * k + c).sign()
        target = -Fraction(c) / k
        if not (0 < target < 1):
            s = 1 if (target <= 0) else -1
            return s if k > 0 else -s
        for bits in active_ladder():
            lo, hi = self.bounds(bits)
            if lo > target:
                return 1 if k > 0 else -1
            if hi < target:
                return -1 if k > 0 else 1
        raise PrecisionExhaustedError(
            f"cannot separate alpha from {target} at {active_ladder()[-1]} bits")

    def compare_linear(self, c1: Fraction, k1: RationalLike,
                       c2: Fraction, k2: RationalLike) -> int:
        return self.sign_linear(Fraction(c1) - Fraction(c2), k1 - k2)

    def floor_linear(self, c: Fraction, k: RationalLike) -> int:
        """floor(c + k*alpha), certified."""
        c = Fraction(c)
        if k == 0:
            return c.numerator // c.denominator
        if self._exact is not None:
            return (self._exact * k + c).fixed_point(0)
        for bits in active_ladder():
            lo, hi = self.bounds(bits)
            vlo, vhi = c + k * lo, c + k * hi
            if vlo > vhi:
                vlo, vhi = vhi, vlo
            flo = vlo.numerator // vlo.denominator
            fhi = vhi.numerator // vhi.denominator
            if flo == fhi:
                return flo
        raise PrecisionExhaustedError("cannot certify floor of linear form")

    def min_fractional_gap(self, m_max: int) -> Fraction:
        """Certified positive lower bound for min over 1<=m<=m_max of ||m*alpha||."""
        n = 3
        while True:
            conv = self.convergent_fractions(n)
            qs = [f.denominator for f in conv]
            for k in range(len(qs) - 1):
                if qs[k + 1] > m_max:
                    return Fraction(1, qs[k] + qs[k + 1])
            n += 3

    def __str__(self):
        if self._exact is not None:
            return f"quad:{self._exact}"
        body = ",".join(str(c) for c in self._digits)
        if self._rule is not None:
            r = self._rule
            expr = f"{r.mult}*n" if r.mult not in (0, 1) else ("n" if r.mult else "")
            if r.offset or not expr:
                expr += f"{r.offset:+d}" if expr else str(r.offset)
            return f"cf:{body},then:{expr}" if body else f"cf:then:{expr}"
        return f"cf:{body}"


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------

def cf_expand(x: AlphaValue, n: int) -> list[int]:
    """First ``n`` standard partial quotients of ``x`` (leading digit 0)."""
    return x.cf(n)


def compare_affine(alpha: AlphaValue, c1: RationalLike, k1: int,
                   c2: RationalLike, k2: int) -> int:
    """Certified comparison of frac(c1 + k1*alpha) against frac(c2 + k2*alpha).

    Returns -1, 0 or 1.  Equality is decided symbolically: for irrational
    alpha the two fractional parts coincide iff k1 == k2 and c1 - c2 is an
    integer.
    """
    c1, c2 = Fraction(c1), Fraction(c2)
    if k1 == k2 and (c1 - c2).denominator == 1:
        return 0
    f1 = c1 - alpha.floor_linear(c1, k1)
    f2 = c2 - alpha.floor_linear(c2, k2)
    return alpha.compare_linear(f1, k1, f2, k2)


@dataclass(frozen=True)
class AlphaLinear:
    """The exact number c + k*alpha, the coordinate form of every orbit point.

    Addition, subtraction and rational scaling stay in this form; order is
    delegated to the angle's certified backend.  Instances tied to different
    angles must never be mixed.  Orbit points always have integer k; rational
    k only appears in normalized measures.
    """

    alpha: AlphaValue
    c: Fraction
    k: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        object.__setattr__(self, "k", Fraction(self.k))

    @staticmethod
    def of(alpha: AlphaValue, c: RationalLike = 0, k: RationalLike = 0) -> "AlphaLinear":
        return AlphaLinear(alpha, Fraction(c), Fraction(k))

    def _check(self, other: "AlphaLinear") -> None:
        if other.alpha is not self.alpha:
            raise ValueError("cannot mix points over different angles")

    def __add__(self, other):
        if isinstance(other, AlphaLinear):
            self._check(other)
            return AlphaLinear(self.alpha, self.c + other.c, self.k + other.k)
        if isinstance(other, (int, Fraction)):
            return AlphaLinear(self.alpha, self.c + other, self.k)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return AlphaLinear(self.alpha, -self.c, -self.k)

    def __sub__(self, other):
        if isinstance(other, AlphaLinear):
            self._check(other)
            return AlphaLinear(self.alpha, self.c - other.c, self.k - other.k)
        if isinstance(other, (int, Fraction)):
            return AlphaLinear(self.alpha, self.c - other, self.k)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlphaLinear(self.alpha, self.c * other, self.k * other)
        return NotImplemented

    __rmul__ = __mul__

    def sign(self) -> int:
        return self.alpha.sign_linear(self.c, self.k)

    def _cmp(self, other) -> int:
        if isinstance(other, AlphaLinear):
            self._check(other)
            return self.alpha.compare_linear(self.c, self.k, other.c, other.k)
        if isinstance(other, (int, Fraction)):
            return self.alpha.sign_linear(self.c - other, self.k)
        raise TypeError(f"cannot compare AlphaLinear with {type(other)!r}")

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, AlphaLinear):
            if other.alpha is not self.alpha:
                return NotImplemented
            return self.c == other.c and self.k == other.k
        if isinstance(other, (int, Fraction)):
            return self.k == 0 and self.c == other
        return NotImplemented

    def __hash__(self):
        return hash((self.c, self.k))

    def __floor__(self) -> int:
        return self.alpha.floor_linear(self.c, self.k)

    def frac(self) -> "AlphaLinear":
        return AlphaLinear(self.alpha, self.c - self.__floor__(), self.k)

    def __float__(self) -> float:
        if self.k == 0:
            return float(self.c)
        return float(self.c) + self.k * float(self.alpha)

    def render(self, digits: int = 12) -> str:
        """Human form 'c + k*alpha (~ decimal)' with ``digits`` significant digits."""
        approx = f"{float(self):.{digits}g}"
        if self.k == 0:
            return f"{self.c} (~ {approx})"
        sign = "+" if self.k >= 0 else "-"
        return f"{self.c} {sign} {abs(self.k)}*alpha (~ {approx})"

    def __str__(self):
        return self.render()


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

class _ExprParser:
    """Tiny recursive-descent parser for quadratic expressions.

    Accepts integers, ``sqrtN`` / ``sqrt(N)``, parentheses and + - * /, e.g.
    ``sqrt2-1`` or ``(3-sqrt5)/2`` or ``1/2+1/2*sqrt(2)``.
    """

    _token = re.compile(r"\s*(sqrt|\d+|[()+\-*/])")

    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = self._token.match(text, pos)
            if not m:
                raise ValueError(f"bad character in {text!r} at {pos}")
            self.tokens.append(m.group(1))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _next(self):
        tok = self._peek()
        self.i += 1
        return tok

    def parse(self) -> QuadraticNumber:
        v = self._expr()
        if self._peek() is not None:
            raise ValueError(f"trailing tokens near {self._peek()!r}")
        return v

    def _expr(self):
        v = self._term()
        while self._peek() in ("+", "-"):
            op = self._next()
            rhs = self._term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def _term(self):
        v = self._factor()
        while self._peek() in ("*", "/"):
            op = self._next()
            rhs = self._factor()
            v = v * rhs if op == "*" else v / rhs
        return v

    def _factor(self):
        tok = self._next()
        if tok == "-":
            return -self._factor()
        if tok == "(":
            v = self._expr()
            if self._next() != ")":
                raise ValueError("unbalanced parenthesis")
            return v
        if tok == "sqrt":
            nxt = self._next()
            if nxt == "(":
                v = self._expr()
                if self._next() != ")":
                    raise ValueError("unbalanced parenthesis after sqrt")
                if not v.is_rational:
                    raise ValueError("nested radicals are not supported")
                return sqrt_quadratic(v.a)
            if nxt is None or not nxt.isdigit():
                raise ValueError("sqrt must be followed by an integer")
            return sqrt_quadratic(int(nxt))
        if tok is not None and tok.isdigit():
            return QuadraticNumber.rational(int(tok))
        raise ValueError(f"unexpected token {tok!r}")


def parse_alpha(text: str) -> AlphaValue:
    """Parse 'quad:<expression>' or 'cf:0,c1,c2[,then:<rule>]' angle specs."""
    text = text.strip()
    if text.startswith("quad:"):
        return AlphaValue(exact=_ExprParser(text[5:]).parse())
    if text.startswith("cf:"):
        parts = [p.strip() for p in text[3:].split(",") if p.strip()]
        rule = None
        digits = []
        for p in parts:
            if p.startswith("then:"):
                rule = _QuotientRule.parse(p[5:])
            elif p == "...":
                continue
            else:
                digits.append(int(p))
        return AlphaValue(cf_digits=digits, rule=rule)
    raise ValueError(f"angle spec must start with 'quad:' or 'cf:', got {text!r}")
