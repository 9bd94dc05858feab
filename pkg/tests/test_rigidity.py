import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stiet.coding import sturmian_run, trajectory
from stiet.iet import SkewPoint, from_origami, power, symdiff_measure
from stiet.numeric import AlphaLinear, parse_alpha, sqrt_quadratic
from stiet.origami import REGISTRY
from stiet.rigidity import (
    CycleStructure,
    DefectEngine,
    cocycle_permutation,
    defect_at,
    defect_scan,
    flow_times,
    nearest_integer_times,
    rigidity_times,
)

ALPHA = parse_alpha("quad:sqrt2-1")
GOLDENISH = parse_alpha("quad:(3-sqrt5)/2")
UNBOUNDED = parse_alpha("cf:0,then:n+1")
FIG1 = REGISTRY["fig1"]
FIG2 = REGISTRY["fig2"]
TORUS = REGISTRY["torus-d1"]


# -- block cocycles ------------------------------------------------------------

def test_cocycle_empty_is_identity():
    assert cocycle_permutation(FIG2, "").is_identity()


def test_cocycle_single_letter():
    assert cocycle_permutation(FIG2, "l") == FIG2.p_l_inv
    assert cocycle_permutation(FIG2, "r") == FIG2.p_r_inv


def test_cocycle_matches_trajectory_blocks():
    # P_2 = "rl": reading that block from square i must land where a real
    # trajectory block lands
    perm = cocycle_permutation(FIG2, "rl")
    w = trajectory(FIG2, ALPHA, SkewPoint(AlphaLinear.of(ALPHA, 0, 0), 1), 2000)
    squares = [c // 2 + 1 for c in w]
    sides = "".join("lr"[c % 2] for c in w)
    for t in range(0, 1500):
        if sides[t:t + 2] == "rl":
            assert perm(squares[t]) == squares[t + 2]


def test_cycle_structure():
    cs = CycleStructure.of(cocycle_permutation(FIG2, "rl"))
    assert sorted(cs.cycle_lengths) in ([1, 2], [3], [1, 1, 1])
    assert cs.lcm <= 3 ** 3


# -- rigidity times ------------------------------------------------------------

def test_rigidity_times_torus_are_convergent_denominators():
    rows = rigidity_times(TORUS, ALPHA, 6)
    denoms = [f.denominator for f in ALPHA.convergent_fractions(8)]
    for row in rows:
        assert row.s_n == 1
        assert row.time == row.block_length
        # block at the start of run k has length q_{k-1}
        assert row.block_length == denoms[row.index - 1]


def test_rigidity_times_block_lengths_match_induction():
    rows = rigidity_times(FIG2, ALPHA, 5)
    states = sturmian_run(ALPHA, 12)
    for row in rows:
        st = states[row.start_n - 1]
        want = st.p_len if row.block == "P" else st.m_len
        assert row.block_length == want
        blk = st.p_word if row.block == "P" else st.m_word
        assert cocycle_permutation(FIG2, blk) == row.cycles.permutation


def test_rigidity_times_unbounded_bound_goes_to_zero():
    rows = rigidity_times(FIG2, UNBOUNDED, 10, L=1)
    bounds = [float(r.bound) for r in rows]
    assert bounds[-1] < bounds[2]
    assert all(r.reps == r.index for r in rows[1:])  # a_n = n
    # certifies rigidity only when the bound dips low
    assert bounds[-1] < 0.55


def test_rigidity_times_bounded_never_certifies():
    rows = rigidity_times(FIG2, ALPHA, 12, L=1)
    assert min(float(r.bound) for r in rows) > 1.0  # a_n <= 2 keeps 2/a_n large


def test_cycle_lcm_bounds():
    divides_small_lcm = []
    for key in ("fig1", "fig2", "d4-cycle"):
        o = REGISTRY[key]
        small = 1
        for v in range(1, o.d + 1):
            small = small * v // __import__("math").gcd(small, v)
        for row in rigidity_times(o, ALPHA, 8):
            assert row.s_n <= o.d ** o.d
            assert sum(row.cycles.cycle_lengths) == o.d
            divides_small_lcm.append(small % row.s_n == 0)
    # stronger empirical observation, reported rather than asserted
    print(f"s_n divides lcm(1..d) in {sum(divides_small_lcm)}"
          f"/{len(divides_small_lcm)} observed runs")


# -- exact defect engine ---------------------------------------------------------

@pytest.mark.parametrize("key,alpha", [
    ("fig1", ALPHA),
    ("fig2", ALPHA),
    ("fig1", GOLDENISH),
    ("d4-cycle", ALPHA),
    ("torus-d1", ALPHA),
    ("fig2", UNBOUNDED),
])
def test_engine_matches_power_oracle(key, alpha):
    o = REGISTRY[key]
    T = from_origami(o, alpha)
    engine = DefectEngine(o, alpha, 40)
    for q in (1, 2, 3, 5, 8, 13, 27, 40):
        fast = engine.defect_at(q)
        Tq = power(T, q)
        for atom in range(2 * o.d):
            slow = symdiff_measure(Tq, atom)
            assert fast[atom].c == slow.c and fast[atom].k == slow.k, \
                (key, q, atom)


def test_defect_at_q0_and_sign():
    vals = defect_at(FIG1, ALPHA, 0)
    assert all(float(v) == 0 for v in vals)
    vals = defect_at(FIG1, ALPHA, 7)
    assert all(float(v) >= 0 for v in vals)
    assert defect_at(FIG1, ALPHA, -7) == vals


def test_torus_defect_small_at_denominator():
    # q = 12 is a convergent denominator of sqrt2 - 1
    vals = defect_at(TORUS, ALPHA, 12)
    assert float(max(vals)) < 0.07
    vals5 = defect_at(TORUS, ALPHA, 5)
    assert vals5[0] == AlphaLinear.of(ALPHA, -4, 10)  # 2(5 sqrt2 - 7)


def test_torus_defect_decays_along_denominators():
    denoms = [f.denominator for f in GOLDENISH.convergent_fractions(14)][2:]
    engine = DefectEngine(TORUS, GOLDENISH, max(denoms))
    floats = [float(max(engine.defect_at(q))) for q in denoms]
    assert floats[-1] < 1e-2
    assert floats[-1] < floats[0]


def test_defect_scan_report():
    rep = defect_scan(FIG1, GOLDENISH, 60)
    assert rep.qs == list(range(1, 61))
    assert len(rep.rows[0]) == 6
    run_min = rep.running_min_of_max()
    assert all(a >= b for a, b in zip(map(float, run_min), map(float, run_min[1:])))
    csv = rep.to_csv()
    assert csv.splitlines()[0] == "q,atom,defect"
    assert len(csv.splitlines()) == 1 + 60 * 6
    payload = json.loads(rep.to_json())
    assert payload["schema"] == "stiet.defect-report/1"
    assert payload["summary"]["floor_estimate"] > 0


def test_defect_scan_explicit_times_and_determinism():
    r1 = defect_scan(FIG2, ALPHA, 0, qs=[3, 9, 27])
    r2 = defect_scan(FIG2, ALPHA, 0, qs=[27, 3, 9, 9])
    assert r1.qs == r2.qs == [3, 9, 27]
    assert r1.to_csv() == r2.to_csv()


def test_defect_scan_parallel_merge_matches():
    seq = defect_scan(FIG2, ALPHA, 0, qs=[2, 5, 11, 17])
    par = defect_scan(FIG2, ALPHA, 0, qs=[2, 5, 11, 17], jobs=2)
    assert seq.to_csv() == par.to_csv()


def test_engine_rejects_out_of_range():
    engine = DefectEngine(FIG2, ALPHA, 10)
    with pytest.raises(ValueError):
        engine.defect_at(11)


# -- suspension times -----------------------------------------------------------

def test_flow_times_scaling():
    rho = sqrt_quadratic(2)
    got = flow_times([2, 5, 12], rho)
    assert [float(x) for x in got] == pytest.approx([2 * 2 ** 0.5, 5 * 2 ** 0.5, 12 * 2 ** 0.5])
    assert nearest_integer_times(got, rho) == [2, 5, 12]


def test_flow_times_unit_roof():
    assert flow_times([3, 7], Fraction(1)) == [3, 7]
    assert nearest_integer_times([3, 7], Fraction(1)) == [3, 7]


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=10 ** 9), min_size=1, max_size=5),
       st.fractions(min_value=Fraction(1, 50), max_value=Fraction(50),
                    max_denominator=100))
def test_flow_roundtrip(qs, rho):
    assert nearest_integer_times(flow_times(qs, rho), rho) == qs
