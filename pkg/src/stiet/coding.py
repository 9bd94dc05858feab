"""Symbolic layer: natural codings and their combinatorics.

Words over the 2d-letter alphabet {1_l, 1_r, ..., d_l, d_r} are stored as
``bytes`` of letter codes ((square-1)*2 + side bit); projected words over
{l, r} are plain strings such as ``"lrl"``.  The letter of a point (x, i)
is i_l when x falls in [0, 1-alpha) and i_r otherwise, and reading a letter
with side s moves the square by p_s^-1.  The two-letter successor table is
derived from that dynamics and cross-checked against observed trajectories.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from stiet.numeric import AlphaLinear, AlphaValue, PrecisionExhaustedError
from stiet.origami import Origami, Permutation

__all__ = [
    "Letter",
    "encode_word",
    "word_text",
    "phi",
    "dbar",
    "rotation_sides",
    "lift_squares",
    "trajectory",
    "successors",
    "homologous",
    "SturmianState",
    "StringInfo",
    "sturmian_run",
    "sturmian_strings",
    "NeighborDecomposition",
    "DecompositionResult",
    "decompose_neighbors",
    "CtexFamilies",
    "ctex_generate",
]

SIDE_L, SIDE_R = 0, 1
_SIDES = "lr"


@dataclass(frozen=True)
class Letter:
    """One symbol i_l or i_r of the natural coding."""

    square: int
    side: str

    def __post_init__(self):
        if self.side not in ("l", "r") or self.square < 1:
            raise ValueError(f"bad letter ({self.square}, {self.side})")

    @property
    def code(self) -> int:
        return (self.square - 1) * 2 + (self.side == "r")

    @property
    def atom_index(self) -> int:
        """Index of the coded atom among the 2d atoms (i_l -> 2i-2, i_r -> 2i-1)."""
        return self.code

    @classmethod
    def from_code(cls, code: int) -> "Letter":
        return cls(code // 2 + 1, _SIDES[code % 2])

    @classmethod
    def parse(cls, text: str) -> "Letter":
        return cls(int(text[:-1]), text[-1])

    def __str__(self):
        return f"{self.square}{self.side}"


def encode_word(text: str) -> bytes:
    """Parse a dotted word '1l.3l.2r' into letter codes."""
    if not text:
        return b""
    return bytes(Letter.parse(part).code for part in text.split("."))


def word_text(word: bytes) -> str:
    return ".".join(str(Letter.from_code(c)) for c in word)


def phi(word: bytes) -> str:
    """Project a coding word to {l, r} by erasing the square index."""
    return "".join(_SIDES[c % 2] for c in word)


def dbar(w, w2) -> Fraction:
    """Hamming fraction of positions where two equal-length words differ."""
    if len(w) != len(w2):
        raise ValueError("words must have equal length")
    if not w:
        raise ValueError("words must be nonempty")
    mismatches = sum(a != b for a, b in zip(w, w2))
    return Fraction(mismatches, len(w))


# ---------------------------------------------------------------------------
# certified letter streams
# ---------------------------------------------------------------------------

_FP_BITS = 96


def rotation_sides(alpha: AlphaValue, n: int, c: Fraction = Fraction(0),
                   k0: int = 0) -> bytes:
    """Sides (0=l, 1=r) of the rotation orbit of c + k0*alpha for n steps.

    The side at step j is l iff frac(c + (k0+j)*alpha) < 1 - alpha, i.e. iff
    no integer is crossed between consecutive floors.  Floors are taken from
    a 96-bit fixed-point accumulator whose worst-case drift is tracked; any
    step that lands within the drift margin of a boundary is recomputed with
    the certified exact backend.
    """
    if n < 0:
        raise ValueError("need n >= 0")
    c = Fraction(c)
    P = alpha.fixed_point(_FP_BITS)
    mask = (1 << _FP_BITS) - 1
    cfp = (c.numerator << _FP_BITS) // c.denominator
    floors = []
    fp = cfp + k0 * P
    for j in range(n + 1):
        m = k0 + j
        margin = abs(m) + 2
        rem = fp & mask
        if margin < rem < mask - margin:
            floors.append(fp >> _FP_BITS)
        else:
            floors.append(alpha.floor_linear(c, m))
        fp += P
    return bytes(SIDE_L if floors[j + 1] == floors[j] else SIDE_R
                 for j in range(n))


def lift_squares(o: Origami, sides: bytes, start_square: int) -> list[int]:
    """Squares visited while reading the given sides from start_square."""
    if not sides:
        return []
    maps = (o.p_l_inv.image, o.p_r_inv.image)
    out = [start_square]
    cur = start_square
    for s in sides[:-1]:
        cur = maps[s][cur - 1]
        out.append(cur)
    return out


def trajectory(o: Origami, alpha: AlphaValue, start, n: int) -> bytes:
    """The first ``n`` letters of the natural coding of the orbit of start.

    ``start`` is a :class:`~stiet.iet.SkewPoint`; its x coordinate must be a
    linear form c + k*alpha so the letter stream stays certified.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    x = start.x
    if not isinstance(x, AlphaLinear):
        x = AlphaLinear.of(alpha, Fraction(x), 0)
    if Fraction(x.k).denominator != 1:
        raise ValueError("start point must have integer alpha coefficient")
    sides = rotation_sides(alpha, n, x.c, int(x.k))
    squares = lift_squares(o, sides, start.square)
    return bytes((squares[t] - 1) * 2 + sides[t] for t in range(n))


# ---------------------------------------------------------------------------
# local word structure
# ---------------------------------------------------------------------------

def successors(o: Origami, letter: Letter, alpha_less_half: bool = True) -> set[Letter]:
    """Letters that can follow ``letter`` in the coding language.

    After a side-l step the square becomes p_l^-1(i) and the next point is
    x + alpha, which can land on either side when alpha < 1/2; after a
    side-r step the square becomes p_r^-1(i) and the next point always lands
    in the l region.  Mirrored when alpha > 1/2.
    """
    i = letter.square
    if alpha_less_half:
        if letter.side == "l":
            j = o.p_l_inv(i)
            return {Letter(j, "l"), Letter(j, "r")}
        return {Letter(o.p_r_inv(i), "l")}
    if letter.side == "r":
        j = o.p_r_inv(i)
        return {Letter(j, "l"), Letter(j, "r")}
    return {Letter(o.p_l_inv(i), "r")}


def _validate_against_successors(o: Origami, word: bytes,
                                 alpha_less_half: bool) -> None:
    for t in range(len(word) - 1):
        a = Letter.from_code(word[t])
        b = Letter.from_code(word[t + 1])
        if b not in successors(o, a, alpha_less_half):
            raise ValueError(
                f"word leaves the language at position {t + 1}: "
                f"{a} cannot be followed by {b}")


def homologous(o: Origami, word: bytes, alpha_less_half: bool = True) -> list[bytes]:
    """The d words sharing the projection of ``word``, including itself.

    Built by re-running the square cocycle from every possible starting
    square; distinct members disagree at every position because the cocycle
    maps are bijections.
    """
    if not word:
        raise ValueError("word must be nonempty")
    _validate_against_successors(o, word, alpha_less_half)
    sides = bytes(c % 2 for c in word)
    out = []
    for start in range(1, o.d + 1):
        squares = lift_squares(o, sides, start)
        out.append(bytes((squares[t] - 1) * 2 + sides[t] for t in range(len(word))))
    if word not in out:
        raise ValueError("word is not a cocycle lift of its own projection")
    return sorted(out)


# ---------------------------------------------------------------------------
# return-word induction
# ---------------------------------------------------------------------------

@dataclass
class SturmianState:
    """State n of the two-interval self-dual induction.

    ``regime`` records the comparison at this state ('l>r' or 'r>l'), which
    is the branch taken to produce state n+1.  ``string_index`` is the index
    of the partial quotient this state sits in; the first quotient governs a
    run shorter by one than its value, every later quotient a full run.
    """

    n: int
    ell: AlphaLinear
    r: AlphaLinear
    regime: str
    string_index: int
    pos_in_string: int
    w_len: int
    m_len: int
    p_len: int
    w: Optional[str] = None
    m_word: Optional[str] = None
    p_word: Optional[str] = None


@dataclass(frozen=True)
class StringInfo:
    """One maximal run of constant comparison sign in the induction."""

    index: int          # quotient index: run k corresponds to a_k
    start_n: int        # first induction step inside the run (b_k)
    length: int         # run length: a_1 - 1 for the first quotient, a_k after
    regime: str         # 'l>r' or 'r>l'


_MATERIALIZE_LIMIT = 5_000_000


def _mirror(s: Optional[str]) -> Optional[str]:
    if s is None:
        return None
    return s.translate(str.maketrans("lr", "rl"))


def sturmian_run(alpha: AlphaValue, N: int, materialize: bool = True,
                 limit: int = _MATERIALIZE_LIMIT) -> list[SturmianState]:
    """States 1..N of the self-dual induction for the rotation by alpha.

    For alpha > 1/2 the induction runs on 1 - alpha and the letters of every
    word are swapped, which produces the coding language of the original
    rotation.
    """
    if N < 1:
        raise ValueError("need N >= 1")
    half = alpha.sign_linear(Fraction(1, 2), -1)  # sign of 1/2 - alpha
    if half == 0:
        raise ValueError("alpha = 1/2 is rational")
    mirrored = half < 0
    if mirrored:
        if not alpha.is_exact:
            raise ValueError("mirrored convention needs an exact angle")
        from stiet.numeric import QuadraticNumber
        alpha = AlphaValue(exact=QuadraticNumber.rational(1) - alpha.exact_value)

    ell = AlphaLinear.of(alpha, 0, 1)        # alpha
    r = AlphaLinear.of(alpha, 1, -2)         # 1 - 2 alpha
    w, m_word, p_word = "l", "l", "rl"
    w_len, m_len, p_len = 1, 1, 2
    states: list[SturmianState] = []
    string_index = pos = 0
    prev_regime = None
    for n in range(1, N + 1):
        cmp = ell._cmp(r)
        if cmp == 0:
            raise ValueError("l_n = r_n: the angle is rational")
        regime = "l>r" if cmp > 0 else "r>l"
        if regime != prev_regime:
            if prev_regime is None:
                # a run of 'r>l' of length a_1 - 1 comes first; if the very
                # first comparison already reads 'l>r' that run is empty
                string_index = 1 if regime == "r>l" else 2
            else:
                string_index += 1
            pos = 1
            prev_regime = regime
        else:
            pos += 1
        states.append(SturmianState(
            n=n, ell=ell, r=r, regime=regime,
            string_index=string_index, pos_in_string=pos,
            w_len=w_len, m_len=m_len, p_len=p_len,
            w=_mirror(w) if mirrored else w,
            m_word=_mirror(m_word) if mirrored else m_word,
            p_word=_mirror(p_word) if mirrored else p_word,
        ))
        if n == N:
            break
        if cmp > 0:
            ell = ell - r
            if materialize:
                w = w + p_word
                m_word = m_word + p_word
            w_len, m_len = w_len + p_len, m_len + p_len
        else:
            r = r - ell
            if materialize:
                w = w + m_word
                p_word = p_word + m_word
            w_len, p_len = w_len + m_len, p_len + m_len
        if materialize and w_len + m_len + p_len > limit:
            raise ValueError(
                f"words exceed {limit} characters at step {n + 1}; "
                "rerun with materialize=False")
    if not materialize:
        for s in states:
            s.w = s.m_word = s.p_word = None
    return states


def sturmian_strings(alpha: AlphaValue, n_strings: int) -> list[StringInfo]:
    """The first ``n_strings`` complete comparison runs of the induction."""
    out: list[StringInfo] = []
    batch = max(8, 4 * n_strings)
    while True:
        states = sturmian_run(alpha, batch, materialize=False)
        runs: list[StringInfo] = []
        for s in states:
            if runs and runs[-1].regime == s.regime:
                runs[-1] = StringInfo(runs[-1].index, runs[-1].start_n,
                                      runs[-1].length + 1, runs[-1].regime)
            else:
                runs.append(StringInfo(s.string_index, s.n, 1, s.regime))
        # the last run may be unfinished; require one spare
        if len(runs) > n_strings:
            return runs[:n_strings]
        batch *= 2


# ---------------------------------------------------------------------------
# neighbor decompositions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NeighborDecomposition:
    """Ordered split {1..q} = I1 | J1 | I2 with central family agreement.

    Intervals are stored as 1-based inclusive (start, end) pairs or None when
    empty.  Nonempty side intervals each carry total disagreement at least
    one across the family.
    """

    q: int
    i1: Optional[tuple[int, int]]
    j1: Optional[tuple[int, int]]
    i2: Optional[tuple[int, int]]
    sigma_dbar: Fraction
    j1_size: int

    @property
    def j1_bound_ok(self) -> bool:
        return self.j1_size >= (1 - self.sigma_dbar) * self.q


@dataclass(frozen=True)
class DecompositionResult:
    decomposition: Optional[NeighborDecomposition]
    reason: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.decomposition is not None


def _family_mismatch_counts(pairs) -> list[int]:
    q = len(pairs[0][0])
    counts = [0] * q
    for v, v2 in pairs:
        for t in range(q):
            if v[t] != v2[t]:
                counts[t] += 1
    return counts


def decompose_neighbors(pairs: Sequence[tuple[bytes, bytes]],
                        C: Fraction) -> DecompositionResult:
    """Check the three-interval neighbor structure of a word family.

    ``pairs`` is a family (v_i, v'_i) of equal-length words whose members
    project to a common word u (resp. u'); the hypothesis also needs the
    v_i pairwise distinct and total normalized distance below ``C``.  On
    success the returned decomposition satisfies: the family agrees on J1,
    and each nonempty side interval carries total disagreement >= 1.
    """
    if not pairs:
        raise ValueError("hypothesis violation: empty family")
    q = len(pairs[0][0])
    if q == 0:
        raise ValueError("hypothesis violation: empty words")
    for v, v2 in pairs:
        if len(v) != q or len(v2) != q:
            raise ValueError("hypothesis violation: unequal word lengths")
    if len({phi(v) for v, _ in pairs}) != 1:
        raise ValueError("hypothesis violation: left words have mixed projections")
    if len({phi(v2) for _, v2 in pairs}) != 1:
        raise ValueError("hypothesis violation: right words have mixed projections")
    if len({bytes(v) for v, _ in pairs}) != len(pairs):
        raise ValueError("hypothesis violation: left words are not pairwise distinct")
    sigma = sum((dbar(v, v2) for v, v2 in pairs), Fraction(0))
    if sigma >= C:
        raise ValueError(
            f"hypothesis violation: total distance {sigma} is not below C={C}")

    counts = _family_mismatch_counts(pairs)

    def interval_ok(lo: int, hi: int) -> bool:
        """Total disagreement on 0-based [lo, hi) is at least its size."""
        if lo >= hi:
            return True
        return sum(counts[lo:hi]) >= hi - lo

    # maximal runs of full-family agreement, longest first; the empty J1 is
    # always a candidate (then the whole index set must be heavy enough)
    runs = []
    t = 0
    while t < q:
        if counts[t] == 0:
            u = t
            while u < q and counts[u] == 0:
                u += 1
            runs.append((t, u))
            t = u
        else:
            t += 1
    runs.sort(key=lambda ab: ab[0] - ab[1])

    for a, b in runs:
        if interval_ok(0, a) and interval_ok(b, q):
            return DecompositionResult(NeighborDecomposition(
                q=q,
                i1=(1, a) if a > 0 else None,
                j1=(a + 1, b),
                i2=(b + 1, q) if b < q else None,
                sigma_dbar=sigma,
                j1_size=b - a,
            ))
    if interval_ok(0, q):
        return DecompositionResult(NeighborDecomposition(
            q=q, i1=(1, q), j1=None, i2=None, sigma_dbar=sigma, j1_size=0))
    return DecompositionResult(
        None,
        reason=f"no admissible split: total distance {sigma} spread across "
               f"{len(runs)} agreement runs",
    )


def family_lifts(o: Origami, sides: bytes) -> list[bytes]:
    """The d coding words over the full alphabet lifting a side stream."""
    out = []
    for start in range(1, o.d + 1):
        squares = lift_squares(o, sides, start)
        out.append(bytes((squares[t] - 1) * 2 + sides[t]
                         for t in range(len(sides))))
    return out


def sample_neighbor_families(o: Origami, alpha: AlphaValue, count: int,
                             m: int = 150, sigma_cap: Fraction = Fraction(1, 5),
                             q_max: int = 3000, trajectory_length: int = 20_000,
                             seed: int = 0):
    """Random window pairs (x[t:t+m], x[t+q:t+q+m]) with small family distance.

    Scans every shift q <= q_max of a single long trajectory and samples
    ``count`` windows whose summed Hamming distance over the d homologous
    lifts stays below ``sigma_cap``.  Deterministic for a fixed seed.
    Returns tuples (q, t, pairs, sigma).
    """
    import random as _random

    import numpy as np

    n = trajectory_length
    sides = rotation_sides(alpha, n)
    lifts = family_lifts(o, sides)
    arr = np.stack([np.frombuffer(w, dtype=np.uint8).astype(np.int16)
                    for w in lifts])
    cap = float(sigma_cap) * m
    candidates: list[tuple[int, int]] = []
    for q in range(1, min(q_max, n - m - 1) + 1):
        span = n - q - m
        if span <= 0:
            break
        mism = (arr[:, :span] != arr[:, q:q + span]).sum(axis=0)
        sums = np.concatenate([[0], np.cumsum(mism)])
        win = sums[m:] - sums[:-m]
        hits = np.nonzero(win < cap)[0]
        if len(hits):
            step = max(1, len(hits) // 50)
            candidates.extend((q, int(t)) for t in hits[::step])
    if len(candidates) < count:
        raise ValueError(
            f"only {len(candidates)} windows below {sigma_cap} found; "
            "increase q_max or trajectory_length")
    rng = _random.Random(seed)
    picked = rng.sample(candidates, count)
    out = []
    for q, t in picked:
        pairs = [(w[t:t + m], w[t + q:t + q + m]) for w in lifts]
        sigma = sum((dbar(v, v2) for v, v2 in pairs), Fraction(0))
        out.append((q, t, pairs, sigma))
    return out


# ---------------------------------------------------------------------------
# counterexample families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CtexFamilies:
    """Word families with tiny distance whose e=1 decomposition must fail."""

    pairs: tuple[tuple[bytes, bytes], ...]
    fixed_letters: tuple[int, ...]
    sigma_dbar: Fraction
    n: int
    u: str
    u_prime: str


def ctex_generate(o: Origami, alpha: AlphaValue, n: int,
                  y_len: Optional[int] = None) -> CtexFamilies:
    """Build homologous pairs around a bispecial word that evade the split.

    Needs a square s with p_r^-1 p_l^-1 s = p_l^-1 p_r^-1 s: reading the two
    two-letter windows lr / rl from such a square rejoins immediately, so the
    pair disagrees at exactly two positions however long the surrounding
    agreement blocks are.
    """
    fixed = tuple(i for i in range(1, o.d + 1)
                  if o.p_r_inv(o.p_l_inv(i)) == o.p_l_inv(o.p_r_inv(i)))
    if not fixed:
        raise ValueError(
            "no fixed letter: the commutator of the diagonal pair acts freely")
    states = sturmian_run(alpha, max(n, 2))
    st = states[n - 1]
    if st.w_len < 4:
        raise ValueError(f"induction depth {n} is degenerate (|w_n| = {st.w_len})")
    w_n, m_word, p_word = st.w, st.m_word, st.p_word
    tail = (m_word + p_word)[2:]
    if y_len is None:
        y_len = min(st.w_len, len(tail))
    if y_len > len(tail):
        raise ValueError(f"y_len {y_len} exceeds available continuation {len(tail)}")
    y = tail[:y_len]
    u = w_n + "lr" + y
    u_prime = w_n + "rl" + y

    u_sides = bytes(SIDE_R if ch == "r" else SIDE_L for ch in u)
    up_sides = bytes(SIDE_R if ch == "r" else SIDE_L for ch in u_prime)
    prefix_perm = _cocycle(o, w_n)
    pairs = []
    for target in fixed:
        start = prefix_perm.inverse()(target)
        sq_u = lift_squares(o, u_sides, start)
        sq_up = lift_squares(o, up_sides, start)
        v = bytes((sq_u[t] - 1) * 2 + u_sides[t] for t in range(len(u)))
        v2 = bytes((sq_up[t] - 1) * 2 + up_sides[t] for t in range(len(u)))
        pairs.append((v, v2))
    sigma = sum((dbar(v, v2) for v, v2 in pairs), Fraction(0))
    return CtexFamilies(pairs=tuple(pairs), fixed_letters=fixed,
                        sigma_dbar=sigma, n=n, u=u, u_prime=u_prime)


def _cocycle(o: Origami, word: str) -> Permutation:
    perm = Permutation.identity(o.d)
    for ch in word:
        step = o.p_r_inv if ch == "r" else o.p_l_inv
        perm = step * perm
    return perm
