"""Exact interval exchange engine.

An :class:`IntervalMap` is a piecewise translation of a half-open interval,
stored as exact breakpoints and shifts.  The scalars are duck-typed: the
square-tiled construction uses :class:`~stiet.numeric.AlphaLinear` points
``c + k*alpha`` while the polygon family feeds in quadratic numbers.  All
piece location goes through certified comparisons, so a tie that cannot be
resolved raises instead of producing a wrong coding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from stiet.numeric import AlphaLinear, AlphaValue
from stiet.origami import Origami

__all__ = [
    "IntervalMap",
    "SkewPoint",
    "from_origami",
    "skew_apply",
    "compose",
    "power",
    "symdiff_measure",
]


@dataclass(frozen=True)
class SkewPoint:
    """The point (x, i) = i - 1 + x with x in [0,1) and square index i."""

    x: AlphaLinear
    square: int

    def value(self) -> AlphaLinear:
        return self.x + (self.square - 1)


class IntervalMap:
    """A piecewise translation of [lo, hi) with exact arithmetic.

    ``pieces`` is a sorted list of (left, right, shift); the pieces partition
    the domain and their images partition it again (checked on request).
    ``atoms`` keeps the partition whose symbolic coding we study; powers of a
    map inherit the atoms of the base map.
    """

    def __init__(self, pieces: Sequence[tuple], atoms: Sequence[tuple] | None = None):
        if not pieces:
            raise ValueError("an interval map needs at least one piece")
        self.pieces = list(pieces)
        self.lo = self.pieces[0][0]
        self.hi = self.pieces[-1][1]
        self.atoms = list(atoms) if atoms is not None else \
            [(a, b) for a, b, _ in self.pieces]

    # -- inspection --------------------------------------------------------

    @property
    def piece_count(self) -> int:
        return len(self.pieces)

    def breakpoints(self):
        return [a for a, _, _ in self.pieces]

    def length(self):
        return self.hi - self.lo

    def validate(self) -> None:
        """Check both the domain partition and the image partition."""
        prev = None
        for a, b, _ in self.pieces:
            if not a < b:
                raise ValueError("empty or reversed piece")
            if prev is not None and not (prev == a):
                raise ValueError("pieces do not tile the domain")
            prev = b
        if not (self.pieces[0][0] == self.lo and prev == self.hi):
            raise ValueError("pieces do not span the domain")
        images = sorted(((a + t, b + t) for a, b, t in self.pieces),
                        key=lambda iv: iv[0])
        cur = self.lo
        for a, b in images:
            if not (a == cur):
                raise ValueError("image pieces do not tile the domain")
            cur = b
        if not (cur == self.hi):
            raise ValueError("image pieces do not span the domain")

    # -- evaluation ----------------------------------------------------------

    def piece_index(self, x) -> int:
        """Index of the piece containing x (certified binary search)."""
        if x < self.lo or not (x < self.hi):
            raise ValueError("point outside the domain")
        lo, hi = 0, len(self.pieces) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if x < self.pieces[mid][0]:
                hi = mid - 1
            else:
                lo = mid
        return lo

    def apply(self, x):
        a, _, t = self.pieces[self.piece_index(x)]
        return x + t

    __call__ = apply

    def atom_index(self, x) -> int:
        for i, (a, b) in enumerate(self.atoms):
            if (not x < a) and x < b:
                return i
        raise ValueError("point outside every atom")

    def invert(self) -> "IntervalMap":
        images = sorted(((a + t, b + t, -t) for a, b, t in self.pieces),
                        key=lambda iv: iv[0])
        return IntervalMap(images, atoms=self.atoms)

    def orbit(self, x, n: int):
        """x, T(x), ..., T^n(x)."""
        out = [x]
        for _ in range(n):
            out.append(self.apply(out[-1]))
        return out

    def render(self, digits: int = 12) -> list[dict]:
        rows = []
        for a, b, t in self.pieces:
            rows.append({
                "left": _render_scalar(a, digits),
                "right": _render_scalar(b, digits),
                "shift": _render_scalar(t, digits),
            })
        return rows


def _render_scalar(x, digits: int) -> str:
    if hasattr(x, "render"):
        return x.render(digits)
    return f"{x} (~ {float(x):.{digits}g})"


# ---------------------------------------------------------------------------
# construction from a square-tiled surface
# ---------------------------------------------------------------------------

def from_origami(o: Origami, alpha: AlphaValue) -> IntervalMap:
    """The 2d-interval exchange of a square-tiled surface with angle alpha.

    Atom 2i-1 is [i-1, i-alpha), atom 2i is [i-alpha, i); atom j is sent to
    slot pi(j) where pi(2i-1) = 2*p_l^-1(i) and pi(2i) = 2*p_r^-1(i) - 1.
    The slot table is read as "atom j lands in position pi(j)", which is the
    reading consistent with the skew-product form of the map.
    """
    d = o.d
    zero = AlphaLinear.of(alpha, 0, 0)
    if not (zero < AlphaLinear.of(alpha, 0, 1) < AlphaLinear.of(alpha, 1, 0)):
        raise ValueError("angle must lie in (0, 1)")

    lengths = []
    for i in range(1, d + 1):
        lengths.append(AlphaLinear.of(alpha, 1, -1))   # 1 - alpha
        lengths.append(AlphaLinear.of(alpha, 0, 1))    # alpha
    slot = [0] * (2 * d)  # slot[j-1] = image position of atom j, 1-indexed
    for i in range(1, d + 1):
        slot[2 * i - 2] = 2 * o.p_l_inv(i)
        slot[2 * i - 1] = 2 * o.p_r_inv(i) - 1

    # left endpoints in the domain and in the image
    starts = [zero]
    for ln in lengths[:-1]:
        starts.append(starts[-1] + ln)
    order = sorted(range(2 * d), key=lambda j: slot[j])
    image_start = {}
    cur = zero
    for j in order:
        image_start[j] = cur
        cur = cur + lengths[j]

    pieces = []
    for j in range(2 * d):
        a = starts[j]
        b = starts[j] + lengths[j]
        pieces.append((a, b, image_start[j] - a))
    m = IntervalMap(pieces)
    m.validate()
    return m


def skew_apply(o: Origami, alpha: AlphaValue, p: SkewPoint) -> SkewPoint:
    """One step of the skew product (x, i) -> (x + alpha mod 1, p_side^-1(i))."""
    one_minus = AlphaLinear.of(alpha, 1, -1)
    if p.x < one_minus:
        return SkewPoint(p.x + AlphaLinear.of(alpha, 0, 1), o.p_l_inv(p.square))
    return SkewPoint(p.x + AlphaLinear.of(alpha, -1, 1), o.p_r_inv(p.square))


# ---------------------------------------------------------------------------
# composition and powers
# ---------------------------------------------------------------------------

def compose(outer: IntervalMap, inner: IntervalMap) -> IntervalMap:
    """The exact interval map outer(inner(x)).

    Breakpoints are those of ``inner`` together with the pullbacks of the
    breakpoints of ``outer``; adjacent pieces with equal total shift are
    merged so powers of rotations stay two-piece maps.
    """
    cuts = list(inner.breakpoints())
    inv = inner.invert()
    for b in outer.breakpoints()[1:]:
        cuts.append(inv.apply(b))
    cuts = _sorted_unique(cuts)

    pieces = []
    for idx, a in enumerate(cuts):
        b = cuts[idx + 1] if idx + 1 < len(cuts) else inner.hi
        t1 = inner.pieces[inner.piece_index(a)][2]
        mid = a + t1
        t2 = outer.pieces[outer.piece_index(mid)][2]
        shift = t1 + t2
        if pieces and pieces[-1][2] == shift:
            pa, _, ps = pieces[-1]
            pieces[-1] = (pa, b, ps)
        else:
            pieces.append((a, b, shift))
    return IntervalMap(pieces, atoms=inner.atoms)


def power(T: IntervalMap, q: int) -> IntervalMap:
    """The exact q-th power of T (negative q through the inverse)."""
    if q == 0:
        return IntervalMap([(T.lo, T.hi, T.lo - T.lo)], atoms=T.atoms)
    base = T if q > 0 else T.invert()
    out = base
    for _ in range(abs(q) - 1):
        out = compose(base, out)
    return out


def _sorted_unique(values):
    values = sorted(values)
    out = [values[0]]
    for v in values[1:]:
        if not (v == out[-1]):
            out.append(v)
    return out


# ---------------------------------------------------------------------------
# symmetric-difference measures
# ---------------------------------------------------------------------------

def _overlap(a1, b1, a2, b2):
    """Length of [a1,b1) intersect [a2,b2), or None when empty."""
    lo = a1 if a2 < a1 else a2
    hi = b1 if b1 < b2 else b2
    if lo < hi:
        return hi - lo
    return None


def intersection_measure(Tq: IntervalMap, atom_i: int, atom_j: int):
    """Lebesgue measure of atom_i intersected with Tq(atom_j), exact."""
    ai, bi = Tq.atoms[atom_i]
    aj, bj = Tq.atoms[atom_j]
    total = None
    for a, b, t in Tq.pieces:
        src = _overlap(a, b, aj, bj)
        if src is None:
            continue
        lo = a if aj < a else aj
        hi = b if b < bj else bj
        piece = _overlap(lo + t, hi + t, ai, bi)
        if piece is not None:
            total = piece if total is None else total + piece
    return total if total is not None else (Tq.lo - Tq.lo)


def symdiff_measure(Tq: IntervalMap, atom_index: int):
    """Normalized measure of atom ∆ Tq(atom) for one atom of the base partition.

    Normalization divides by the total mass so the ambient measure is a
    probability; the result is exact (same scalar type as the breakpoints).
    """
    a, b = Tq.atoms[atom_index]
    inter = intersection_measure(Tq, atom_index, atom_index)
    raw = ((b - a) - inter) * 2
    total = Tq.length()
    return _divide_by_length(raw, total)


def _divide_by_length(value, total):
    # total mass is rational for every supported construction
    if isinstance(value, AlphaLinear):
        if isinstance(total, AlphaLinear):
            if total.k != 0:
                raise ValueError("total mass must be rational")
            total = total.c
        inv = Fraction(1) / Fraction(total)
        return value * inv
    return value / total
