"""Rigidity experiments: block cocycles, candidate times, exact defect scans.

The defect of an atom A at time q is the normalized measure of A symdiff
T^q(A).  Computing it through explicit powers of the interval map costs
O(q^2), which caps q around a few thousand; this module instead decomposes
the circle into the q+1 coding cylinders of length q (their endpoints are
the backward orbit points frac(-m*alpha)) and reads the fiber permutation
of each cylinder off two prefix-cocycle tables.  Everything stays exact:
cylinder lengths are integer pairs (c, k) representing c + k*alpha, and the
sort keys are certified 64-bit fixed-point values whose error margin is
checked against a proven lower bound on ||m*alpha||.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from stiet.coding import SIDE_L, SIDE_R, Letter, sturmian_run
from stiet.numeric import AlphaLinear, AlphaValue, PrecisionExhaustedError
from stiet.origami import Origami, Permutation

__all__ = [
    "cocycle_permutation",
    "CycleStructure",
    "RigidityTime",
    "rigidity_times",
    "DefectEngine",
    "defect_at",
    "DefectReport",
    "defect_scan",
    "flow_times",
    "nearest_integer_times",
]


def cocycle_permutation(o: Origami, word) -> Permutation:
    """Square action of reading an {l,r}-word: position after the block.

    Accepts a string over 'l'/'r' or a bytes object of side bits.
    """
    perm = Permutation.identity(o.d)
    for ch in word:
        side_r = (ch == "r") if isinstance(ch, str) else (ch == SIDE_R)
        step = o.p_r_inv if side_r else o.p_l_inv
        perm = step * perm
    return perm


@dataclass(frozen=True)
class CycleStructure:
    """Cycle data of a block cocycle permutation."""

    permutation: Permutation
    cycle_lengths: tuple[int, ...]
    lcm: int

    @classmethod
    def of(cls, perm: Permutation) -> "CycleStructure":
        lengths = tuple(perm.cycle_lengths())
        s = 1
        for c in lengths:
            s = s * c // gcd(s, c)
        return cls(perm, lengths, s)


@dataclass(frozen=True)
class RigidityTime:
    """Candidate rigidity time from one quotient run of the induction.

    The run repeats one return-word block ``reps`` times; moving by ``lcm``
    whole blocks re-reads the same letter inside those repetitions, so the
    candidate time is lcm * block_length and the predicted defect bound for
    a cylinder of length L is 2/reps + lcm/reps + L/block_length.
    """

    index: int
    start_n: int
    regime: str
    reps: int
    block: str           # 'P' or 'M'
    block_length: int
    cycles: CycleStructure
    time: int
    bound: Fraction

    @property
    def s_n(self) -> int:
        return self.cycles.lcm


def rigidity_times(o: Origami, alpha: AlphaValue, n_strings: int,
                   L: int = 1) -> list[RigidityTime]:
    """Candidate rigidity times for the first ``n_strings`` quotient runs.

    Runs with 'l>r' repeat the P block, runs with 'r>l' the M block.  The
    block permutation is tracked through the induction recursion, never by
    materializing the (potentially huge) words.
    """
    ell = AlphaLinear.of(alpha, 0, 1)
    r = AlphaLinear.of(alpha, 1, -2)
    if not AlphaLinear.of(alpha, 0, 0) < ell < AlphaLinear.of(alpha, Fraction(1, 2), 0):
        raise ValueError("induction runs on angles below 1/2")
    m_len, p_len = 1, 2
    perm_m = cocycle_permutation(o, "l")
    perm_p = cocycle_permutation(o, "rl")

    out: list[RigidityTime] = []
    index = pos = 0
    prev = None
    n = 1
    while len(out) < n_strings + 1:
        cmp = ell._cmp(r)
        if cmp == 0:
            raise ValueError("rational angle")
        regime = "l>r" if cmp > 0 else "r>l"
        if regime != prev:
            index = (1 if regime == "r>l" else 2) if prev is None else index + 1
            prev = regime
            if regime == "l>r":
                block, blen, bperm = "P", p_len, perm_p
            else:
                block, blen, bperm = "M", m_len, perm_m
            cyc = CycleStructure.of(bperm)
            out.append(RigidityTime(
                index=index, start_n=n, regime=regime, reps=0,
                block=block, block_length=blen, cycles=cyc,
                time=cyc.lcm * blen, bound=Fraction(0)))
        out[-1] = _bump_reps(out[-1], L)
        if cmp > 0:
            ell = ell - r
            m_len += p_len
            perm_m = perm_p * perm_m
        else:
            r = r - ell
            p_len += m_len
            perm_p = perm_m * perm_p
        n += 1
    return out[:n_strings]


def _bump_reps(row: RigidityTime, L: int) -> RigidityTime:
    reps = row.reps + 1
    bound = Fraction(2, reps) + Fraction(row.s_n, reps) + Fraction(L, row.block_length)
    return RigidityTime(row.index, row.start_n, row.regime, reps, row.block,
                        row.block_length, row.cycles, row.time, bound)


# ---------------------------------------------------------------------------
# exact defect engine
# ---------------------------------------------------------------------------

_KEY_BITS = 64
_ACC_BITS = 96


def _group_tables(o: Origami):
    """Closure of the two inverse gluing maps with composition/inverse tables."""
    gen_l = tuple(o.p_l_inv.image)
    gen_r = tuple(o.p_r_inv.image)
    ident = tuple(range(1, o.d + 1))
    index = {ident: 0}
    elems = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for gen in (gen_l, gen_r):
                h = tuple(gen[x - 1] for x in g)   # gen after g
                if h not in index:
                    index[h] = len(elems)
                    elems.append(h)
                    nxt.append(h)
        frontier = nxt
    size = len(elems)
    comp = np.empty((size, size), dtype=np.int16)
    for a, pa in enumerate(elems):
        for b, pb in enumerate(elems):
            comp[a, b] = index[tuple(pa[x - 1] for x in pb)]
    inv = np.empty(size, dtype=np.int16)
    for a, pa in enumerate(elems):
        table = [0] * o.d
        for i, j in enumerate(pa, start=1):
            table[j - 1] = i
        inv[a] = index[tuple(table)]
    fixes = np.zeros((size, o.d), dtype=bool)
    for a, pa in enumerate(elems):
        for i in range(o.d):
            fixes[a, i] = pa[i] == i + 1
    return elems, index, comp, inv, fixes, index[gen_l], index[gen_r]


class DefectEngine:
    """Shared tables for exact defects of one surface/angle up to q_max."""

    def __init__(self, o: Origami, alpha: AlphaValue, q_max: int):
        if q_max < 1:
            raise ValueError("need q_max >= 1")
        self.o = o
        self.alpha = alpha
        self.q_max = q_max
        (self._elems, self._index, self._comp, self._inv, self._fixes,
         gl, gr) = _group_tables(o)

        gap = alpha.min_fractional_gap(q_max + 1)
        margin = Fraction(2 * (q_max + 3), 1 << _KEY_BITS)
        if gap <= margin:
            raise PrecisionExhaustedError(
                "64-bit sort keys cannot separate the cylinder endpoints; "
                f"min gap {gap} <= margin {margin}")

        Q = q_max
        p_acc = alpha.fixed_point(_ACC_BITS)
        mask = (1 << _ACC_BITS) - 1
        floors = np.empty(2 * Q + 2, dtype=np.int64)  # F[j] at offset j + Q
        acc = -Q * p_acc
        for j in range(-Q, Q + 2):
            m = abs(j) + 2
            rem = acc & mask
            if m < rem < mask - m:
                floors[j + Q] = acc >> _ACC_BITS
            else:
                floors[j + Q] = alpha.floor_linear(Fraction(0), j)
            acc += p_acc
        self._floors = floors
        # y[j] = side of frac(j*alpha), offset j + Q, for j in [-Q, Q]
        self._sides = (floors[1:] != floors[:-1]).astype(np.int8)

        # prefix cocycle indices over y[-Q .. t-Q)
        pi = np.empty(2 * Q + 1, dtype=np.int16)
        pi[0] = 0
        comp_list = self._comp
        gens = (gl, gr)
        sides_list = self._sides.tolist()
        cur = 0
        for t in range(2 * Q):
            cur = comp_list[gens[sides_list[t]], cur]
            pi[t + 1] = cur
        self._pi = pi

        p_key = alpha.fixed_point(_KEY_BITS)
        ms = np.arange(Q + 2, dtype=np.uint64)
        with np.errstate(over="ignore"):
            fpfrac = ms * np.uint64(p_key)
            keys = np.uint64(0) - fpfrac
        keys[0] = np.uint64(0)
        self._keys = keys

    # -- single time --------------------------------------------------------

    def defect_at(self, q: int) -> list[AlphaLinear]:
        """Exact normalized defects of the 2d natural atoms at time q."""
        q = abs(q)  # the map preserves measure, so q and -q defects agree
        if q == 0:
            zero = AlphaLinear.of(self.alpha, 0, 0)
            return [zero] * (2 * self.o.d)
        if q > self.q_max:
            raise ValueError(f"q={q} exceeds engine range {self.q_max}")
        Q, d = self.q_max, self.o.d
        ms = np.argsort(self._keys[:q + 1]).astype(np.int64)

        g = self._comp[self._pi[Q + q - ms], self._inv[self._pi[Q - ms]]]
        s0 = self._sides[Q - ms]
        s1 = self._sides[Q + q - ms]
        buckets = (g.astype(np.int64) * 4 + s0 * 2 + s1)

        C = np.where(ms == 0, 0, self._floors[Q + ms] + 1)
        dC = np.empty(len(ms), dtype=np.int64)
        dC[:-1] = C[1:] - C[:-1]
        dC[-1] = 1 - C[-1]
        dK = np.empty(len(ms), dtype=np.int64)
        dK[:-1] = ms[:-1] - ms[1:]
        dK[-1] = ms[-1]

        nb = len(self._elems) * 4
        acc_c = np.zeros(nb, dtype=np.int64)
        acc_k = np.zeros(nb, dtype=np.int64)
        np.add.at(acc_c, buckets, dC)
        np.add.at(acc_k, buckets, dK)
        if acc_c.sum() != 1 or acc_k.sum() != 0:
            raise AssertionError("cylinder gaps do not tile the circle")

        # arrival side flips inside one cylinder, at x* = frac(-(q+1) alpha)
        corrections: dict[int, tuple[Fraction, Fraction]] = {}
        key_star = self._keys[q + 1]
        pos = int(np.searchsorted(self._keys[:q + 1][ms], key_star))
        j = pos - 1
        m_j = int(ms[j])
        c_star = Fraction(int(self._floors[Q + q + 1] + 1))
        x_star = (c_star, Fraction(-(q + 1)))
        x_left = (Fraction(int(C[j])), Fraction(-m_j))
        if j + 1 < len(ms):
            x_right = (Fraction(int(C[j + 1])), Fraction(-int(ms[j + 1])))
        else:
            x_right = (Fraction(1), Fraction(0))
        if int(s1[j]) != SIDE_L:
            raise AssertionError("arrival side left of the flip point must be l")
        bucket_l = int(buckets[j])
        bucket_r = bucket_l - int(s1[j]) + SIDE_R
        left_gap = (x_star[0] - x_left[0], x_star[1] - x_left[1])
        right_gap = (x_right[0] - x_star[0], x_right[1] - x_star[1])
        full_gap = (Fraction(int(dC[j])), Fraction(int(dK[j])))
        _acc_correction(corrections, bucket_l, _sub(left_gap, full_gap))
        _acc_correction(corrections, bucket_r, right_gap)

        out = []
        one_minus = (Fraction(1), Fraction(-1))   # measure of an l atom
        just_alpha = (Fraction(0), Fraction(1))
        for i in range(1, d + 1):
            fix = self._fixes[:, i - 1]
            for side, atom_len in ((SIDE_L, one_minus), (SIDE_R, just_alpha)):
                tot_c = Fraction(0)
                tot_k = Fraction(0)
                for gi in np.nonzero(fix)[0]:
                    b = int(gi) * 4 + side * 2 + side
                    tot_c += int(acc_c[b])
                    tot_k += int(acc_k[b])
                    if b in corrections:
                        tot_c += corrections[b][0]
                        tot_k += corrections[b][1]
                c = (atom_len[0] - tot_c) * 2 / d
                k = (atom_len[1] - tot_k) * 2 / d
                out.append(AlphaLinear(self.alpha, c, k))
        return out

    def atom_labels(self) -> list[str]:
        return [str(Letter.from_code(c)) for c in range(2 * self.o.d)]


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _acc_correction(corrections, bucket, delta):
    c, k = corrections.get(bucket, (Fraction(0), Fraction(0)))
    corrections[bucket] = (c + delta[0], k + delta[1])


def defect_at(o: Origami, alpha: AlphaValue, q: int) -> list[AlphaLinear]:
    """Exact per-atom defects at a single time (engine built ad hoc)."""
    if q == 0:
        zero = AlphaLinear.of(alpha, 0, 0)
        return [zero] * (2 * o.d)
    return DefectEngine(o, alpha, abs(q)).defect_at(q)


# ---------------------------------------------------------------------------
# scans
# ---------------------------------------------------------------------------

@dataclass
class DefectReport:
    """Per-time, per-atom exact defects plus aggregate trajectories."""

    surface: str
    alpha: str
    qs: list[int]
    atoms: list[str]
    rows: list[list[AlphaLinear]]

    def max_defects(self) -> list[AlphaLinear]:
        return [max(row) for row in self.rows]

    def running_min_of_max(self) -> list[AlphaLinear]:
        out = []
        cur = None
        for row in self.rows:
            m = max(row)
            cur = m if cur is None or m < cur else cur
            out.append(cur)
        return out

    def summary(self) -> dict:
        maxima = self.max_defects()
        best_idx = min(range(len(maxima)), key=lambda i: (maxima[i], self.qs[i]))
        return {
            "schema": "stiet.defect-summary/1",
            "surface": self.surface,
            "alpha": self.alpha,
            "q_range": [min(self.qs), max(self.qs)] if self.qs else [],
            "min_max_defect": float(maxima[best_idx]),
            "argmin_q": self.qs[best_idx],
            "floor_estimate": float(min(maxima)),
        }

    def to_csv(self) -> str:
        lines = ["q,atom,defect"]
        for q, row in zip(self.qs, self.rows):
            for label, value in zip(self.atoms, row):
                lines.append(f"{q},{label},{float(value):.17g}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "schema": "stiet.defect-report/1",
            "surface": self.surface,
            "alpha": self.alpha,
            "atoms": self.atoms,
            "rows": [
                {"q": q, "defects": [float(v) for v in row]}
                for q, row in zip(self.qs, self.rows)
            ],
            "summary": self.summary(),
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def defect_scan(o: Origami, alpha: AlphaValue, Q: int,
                qs: Optional[Sequence[int]] = None, jobs: int = 1) -> DefectReport:
    """Exact defects for q = 1..Q (or an explicit q list).

    The scan is embarrassingly parallel over q; workers recompute the shared
    tables, so multiprocessing only pays off for large scans.  Results merge
    in q order, making the report deterministic for a fixed configuration.
    """
    q_list = sorted(set(qs)) if qs is not None else list(range(1, Q + 1))
    if not q_list:
        raise ValueError("empty scan")
    if min(q_list) < 0:
        raise ValueError("scan times must be nonnegative")
    engine = DefectEngine(o, alpha, max(q_list))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [q_list[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_scan_chunk, [(str(o), str(alpha), chunk)
                                           for chunk in chunks])
        merged = {}
        for part in parts:
            merged.update(part)
        rows = [merged[q] for q in q_list]
        rows = [[AlphaLinear(alpha, c, k) for c, k in row] for row in rows]
    else:
        rows = [engine.defect_at(q) for q in q_list]
    return DefectReport(surface=str(o), alpha=str(alpha), qs=q_list,
                        atoms=engine.atom_labels(), rows=rows)


def _scan_chunk(args):
    from stiet.numeric import parse_alpha
    from stiet.origami import Origami

    surface, alpha_text, qs = args
    o = Origami.parse(surface)
    alpha = parse_alpha(alpha_text)
    engine = DefectEngine(o, alpha, max(qs))
    return {q: [(v.c, v.k) for v in engine.defect_at(q)] for q in qs}


# ---------------------------------------------------------------------------
# suspension times
# ---------------------------------------------------------------------------

def flow_times(qs: Iterable[int], rho) -> list:
    """Map rigidity times of the section map to flow times q -> rho * q."""
    return [rho * q for q in qs]


def nearest_integer_times(flow_qs: Iterable, rho) -> list[int]:
    """Inverse of :func:`flow_times`: the nearest integer to Q / rho."""
    out = []
    for Q in flow_qs:
        ratio = Q / rho
        out.append(_nearest_int(ratio))
    return out


def _nearest_int(x) -> int:
    if isinstance(x, float):
        return round(x)
    if isinstance(x, (int, Fraction)):
        shifted = Fraction(x) + Fraction(1, 2)
        return shifted.numerator // shifted.denominator
    if hasattr(x, "fixed_point"):
        return (x + Fraction(1, 2)).fixed_point(0)
    raise TypeError(f"cannot round {type(x)!r}")
