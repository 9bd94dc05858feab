"""Reproducible experiment runner.

Every operation of the toolkit is reachable from one argparse tree::

    stiet origami info fig1
    stiet rigidity scan fig1 --alpha "quad:(3-sqrt5)/2" --Q 2000 --format csv
    stiet coding sturmian --alpha "quad:sqrt2-1" --N 4

Success writes JSON (or CSV) to stdout or ``--out`` and exits 0; violated
preconditions exit 2 and exhausted precision exits 3, both with a machine
readable error payload.  Output is byte-identical across runs for a fixed
command line: parallel scans merge in time order and JSON keys are sorted.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from stiet import coding, numeric, polygon, rigidity
from stiet.iet import from_origami, power, symdiff_measure
from stiet.numeric import PrecisionExhaustedError, parse_alpha
from stiet.origami import REGISTRY, get_surface

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_PRECISION = 3


def _emit(args, payload, csv_text=None) -> int:
    if getattr(args, "format", "json") == "csv":
        if csv_text is None:
            raise ValueError("this subcommand has no CSV form")
        text = csv_text
    else:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _alpha(args):
    return parse_alpha(args.alpha)


def _fract(text: str) -> Fraction:
    return Fraction(text)


# -- origami ------------------------------------------------------------------

def cmd_origami_info(args) -> int:
    o = get_surface(args.surface)
    payload = {
        "schema": "stiet.origami-info/1",
        "surface": str(o),
        "d": o.d,
        "connected": o.is_connected(),
        "torus_cover": o.is_torus_cover(),
        "minimal_pair": o.minimality_witness(),
    }
    if o.is_connected():
        s = o.singularities()
        payload.update({
            "commutator_orbits": [list(orb) for orb in s.orbits],
            "orbit_lengths": list(s.orbit_lengths),
            "cone_angles_pi": list(s.cone_angles),
            "genus": s.genus,
            "stratum": s.stratum,
        })
    return _emit(args, payload)


# -- iet ------------------------------------------------------------------------

def cmd_iet_power(args) -> int:
    o = get_surface(args.surface)
    T = power(from_origami(o, _alpha(args)), args.q)
    payload = {
        "schema": "stiet.iet-power/1",
        "surface": str(o),
        "alpha": args.alpha,
        "q": args.q,
        "piece_count": T.piece_count,
        "pieces": T.render(),
    }
    csv_lines = ["left,right,shift"]
    csv_lines += [f"{row['left']},{row['right']},{row['shift']}"
                  for row in payload["pieces"]]
    return _emit(args, payload, "\n".join(csv_lines) + "\n")


def cmd_iet_defect(args) -> int:
    o = get_surface(args.surface)
    alpha = _alpha(args)
    if args.q <= 64 and not args.fast:
        T = power(from_origami(o, alpha), args.q)
        values = [symdiff_measure(T, i) for i in range(2 * o.d)]
    else:
        values = rigidity.defect_at(o, alpha, args.q)
    labels = [str(coding.Letter.from_code(c)) for c in range(2 * o.d)]
    payload = {
        "schema": "stiet.iet-defect/1",
        "surface": str(o),
        "alpha": args.alpha,
        "q": args.q,
        "atoms": labels,
        "defects": [v.render() for v in values],
        "defect_floats": [float(v) for v in values],
    }
    csv_lines = ["q,atom,defect"]
    csv_lines += [f"{args.q},{a},{float(v):.17g}" for a, v in zip(labels, values)]
    return _emit(args, payload, "\n".join(csv_lines) + "\n")


# -- coding ------------------------------------------------------------------------

def cmd_coding_sturmian(args) -> int:
    states = coding.sturmian_run(_alpha(args), args.N)
    payload = {
        "schema": "stiet.sturmian/1",
        "alpha": args.alpha,
        "states": [
            {
                "n": s.n,
                "l": s.ell.render(),
                "r": s.r.render(),
                "regime": s.regime,
                "quotient_index": s.string_index,
                "w": s.w,
                "M": s.m_word,
                "P": s.p_word,
                "lengths": {"w": s.w_len, "M": s.m_len, "P": s.p_len},
            }
            for s in states
        ],
    }
    return _emit(args, payload)


def cmd_coding_homologous(args) -> int:
    o = get_surface(args.surface)
    word = coding.encode_word(args.word)
    regime = True
    if args.alpha:
        alpha = _alpha(args)
        regime = alpha.sign_linear(Fraction(1, 2), -1) > 0
    family = coding.homologous(o, word, alpha_less_half=regime)
    payload = {
        "schema": "stiet.homologous/1",
        "surface": str(o),
        "word": args.word,
        "projection": coding.phi(word),
        "family": [coding.word_text(w) for w in family],
        "pairwise_dbar": [
            [str(coding.dbar(a, b)) for b in family] for a in family
        ],
    }
    return _emit(args, payload)


def cmd_coding_lmr(args) -> int:
    o = get_surface(args.surface)
    samples = coding.sample_neighbor_families(
        o, _alpha(args), count=args.count, m=args.m,
        sigma_cap=Fraction(args.C), q_max=args.q_max,
        trajectory_length=args.trajectory_length, seed=args.seed)
    rows = []
    successes = 0
    for q, t, pairs, sigma in samples:
        res = coding.decompose_neighbors(pairs, Fraction(args.C))
        successes += res.ok
        row = {"q": q, "t": t, "sigma_dbar": str(sigma), "ok": res.ok}
        if res.ok:
            dec = res.decomposition
            row.update({"i1": dec.i1, "j1": dec.j1, "i2": dec.i2,
                        "j1_size": dec.j1_size,
                        "j1_bound_ok": dec.j1_bound_ok})
        else:
            row["reason"] = res.reason
        rows.append(row)
    payload = {
        "schema": "stiet.lmr/1",
        "surface": str(o),
        "alpha": args.alpha,
        "C": str(Fraction(args.C)),
        "window_length": args.m,
        "samples": rows,
        "successes": successes,
        "count": len(rows),
    }
    return _emit(args, payload)


def cmd_coding_ctex(args) -> int:
    o = get_surface(args.surface)
    fam = coding.ctex_generate(o, _alpha(args), args.n)
    res = coding.decompose_neighbors(fam.pairs[:1], Fraction(1, 2))
    payload = {
        "schema": "stiet.ctex/1",
        "surface": str(o),
        "alpha": args.alpha,
        "n": fam.n,
        "fixed_letters": list(fam.fixed_letters),
        "sigma_dbar": str(fam.sigma_dbar),
        "u": fam.u,
        "u_prime": fam.u_prime,
        "pairs": [[coding.word_text(v), coding.word_text(v2)]
                  for v, v2 in fam.pairs],
        "single_pair_decomposition_ok": res.ok,
        "refusal_reason": res.reason,
    }
    return _emit(args, payload)


# -- rigidity ------------------------------------------------------------------------

def cmd_rigidity_times(args) -> int:
    o = get_surface(args.surface)
    alpha = _alpha(args)
    rows = rigidity.rigidity_times(o, alpha, args.N, L=args.L)
    engine = None
    out_rows = []
    for r in rows:
        row = {
            "n": r.index, "b_n": r.start_n, "regime": r.regime,
            "reps": r.reps, "block": r.block, "block_length": r.block_length,
            "cycle_lengths": list(r.cycles.cycle_lengths), "s_n": r.s_n,
            "time": r.time, "bound": float(r.bound),
        }
        if args.measure and r.time <= args.measure_limit:
            if engine is None or engine.q_max < r.time:
                engine = rigidity.DefectEngine(o, alpha, r.time)
            vals = engine.defect_at(r.time)
            row["measured_max_defect"] = float(max(vals))
        out_rows.append(row)
    payload = {
        "schema": "stiet.rigidity-times/1",
        "surface": str(o),
        "alpha": args.alpha,
        "L": args.L,
        "rows": out_rows,
    }
    csv_lines = ["n,b_n,regime,reps,block,block_length,s_n,time,bound"]
    csv_lines += [
        f"{r['n']},{r['b_n']},{r['regime']},{r['reps']},{r['block']},"
        f"{r['block_length']},{r['s_n']},{r['time']},{r['bound']:.17g}"
        for r in out_rows
    ]
    return _emit(args, payload, "\n".join(csv_lines) + "\n")


def cmd_rigidity_scan(args) -> int:
    o = get_surface(args.surface)
    report = rigidity.defect_scan(o, _alpha(args), args.Q, jobs=args.jobs)
    payload = json.loads(report.to_json())
    return _emit(args, payload, report.to_csv())


# -- polygon ------------------------------------------------------------------------

def _polygon_params(args):
    if args.y is not None:
        return polygon.PolygonParams.from_y(args.d, args.y)
    if args.tan_theta is None:
        raise ValueError("give --y or --tan-theta")
    return polygon.PolygonParams.from_tan_theta(args.d, Fraction(args.tan_theta))


def cmd_polygon_gmap(args) -> int:
    if args.y is None:
        raise ValueError("the g map takes --y")
    try:
        y = Fraction(args.y)
    except ValueError:
        y = polygon._coerce(args.y, polygon.exact_lambda(args.d))
    orb = polygon.g_orbit(y, args.d, args.N)
    rows = [{"n": i, "value": float(v), "branch": b}
            for i, (v, b) in enumerate(zip(orb.values, orb.branches))]
    payload = {
        "schema": "stiet.gmap/1",
        "d": args.d,
        "y": str(args.y),
        "orbit": rows,
        "branches": orb.branches,
        "blocks": list(orb.blocks),
    }
    csv_lines = ["n,value,branch"]
    csv_lines += [f"{r['n']},{r['value']:.17g},{r['branch']}" for r in rows]
    return _emit(args, payload, "\n".join(csv_lines) + "\n")


def cmd_polygon_words(args) -> int:
    blocks = tuple(int(x) for x in args.regimes.split(","))
    levels = polygon.word_induction(args.d, blocks, args.N)
    payload = {
        "schema": "stiet.polygon-words/1",
        "d": args.d,
        "regimes": list(blocks),
        "levels": [
            {
                "level": lvl.level,
                "M": list(lvl.m_words),
                "P": list(lvl.p_words),
                "lcm_time": polygon.lcm_times(lvl),
            }
            for lvl in levels
        ],
    }
    return _emit(args, payload)


def cmd_polygon_flowcheck(args) -> int:
    if args.list_directions:
        payload = {
            "schema": "stiet.flowcheck-directions/1",
            "directions": list(polygon.OCTAGON_PERIODIC_DIRECTIONS),
        }
        return _emit(args, payload)
    rep = polygon.octagon_flow_check(
        args.p, args.q, theta=args.theta, theta_n=args.theta_n,
        l=args.l, a=Fraction(args.a), d=args.d)
    payload = rep.as_dict()
    payload.update({"p": args.p, "q": args.q, "a": str(Fraction(args.a)),
                    "d": args.d})
    return _emit(args, payload)


# -- wiring ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="stiet",
        description="exact experiments on square-tiled interval exchanges")
    ap.add_argument("--precision-bits", type=int, default=None,
                    help="cap of the certified-comparison ladder")
    sub = ap.add_subparsers(dest="group", required=True)

    def common(p, surface=True, alpha=True):
        if surface:
            p.add_argument("surface", help=f"registry key {sorted(REGISTRY)} "
                                           "or 'd;tau=...;sigma=...'")
        if alpha:
            p.add_argument("--alpha", required=True,
                           help="angle: 'quad:expr' or 'cf:0,c1,...[,then:rule]'")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="write output to a file")

    og = sub.add_parser("origami", help="surface combinatorics").add_subparsers(
        dest="cmd", required=True)
    p = og.add_parser("info", help="connectivity, singularities, genus")
    common(p, alpha=False)
    p.set_defaults(fn=cmd_origami_info)

    iet = sub.add_parser("iet", help="interval exchange engine").add_subparsers(
        dest="cmd", required=True)
    p = iet.add_parser("power", help="exact q-th power piece table")
    common(p)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(fn=cmd_iet_power)
    p = iet.add_parser("defect", help="per-atom defect at one time")
    common(p)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--fast", action="store_true",
                   help="force the cylinder engine even for small q")
    p.set_defaults(fn=cmd_iet_defect)

    cod = sub.add_parser("coding", help="symbolic layer").add_subparsers(
        dest="cmd", required=True)
    p = cod.add_parser("sturmian", help="self-dual induction states")
    common(p, surface=False)
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(fn=cmd_coding_sturmian)
    p = cod.add_parser("homologous", help="words with the same projection")
    common(p)
    p.add_argument("--word", required=True, help="dotted word like 1l.3l.2r")
    p.set_defaults(fn=cmd_coding_homologous)
    p = cod.add_parser("lmr", help="sample neighbor decompositions")
    common(p)
    p.add_argument("--C", default="0.2", help="distance threshold")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--m", type=int, default=150, help="window length")
    p.add_argument("--q-max", type=int, default=3000)
    p.add_argument("--trajectory-length", type=int, default=20_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_coding_lmr)
    p = cod.add_parser("ctex", help="counterexample families")
    common(p)
    p.add_argument("--n", type=int, required=True, help="induction depth")
    p.set_defaults(fn=cmd_coding_ctex)

    rig = sub.add_parser("rigidity", help="rigidity experiments").add_subparsers(
        dest="cmd", required=True)
    p = rig.add_parser("times", help="candidate rigidity times and bounds")
    common(p)
    p.add_argument("--N", type=int, required=True, help="number of quotient runs")
    p.add_argument("--L", type=int, default=1, help="cylinder length in the bound")
    p.add_argument("--measure", action="store_true",
                   help="also measure the exact defect at each time")
    p.add_argument("--measure-limit", type=int, default=5_000_000)
    p.set_defaults(fn=cmd_rigidity_times)
    p = rig.add_parser("scan", help="exact defect scan over q = 1..Q")
    common(p)
    p.add_argument("--Q", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_rigidity_scan)

    pol = sub.add_parser("polygon", help="2d-gon billiard family").add_subparsers(
        dest="cmd", required=True)
    p = pol.add_parser("gmap", help="orbit of the renormalization map")
    common(p, surface=False, alpha=False)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--y", required=True, help="parameter, rational or quad expr")
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(fn=cmd_polygon_gmap)
    p = pol.add_parser("words", help="two-branch word induction tables")
    common(p, surface=False, alpha=False)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--regimes", required=True, help="block counts m1,q1,m2,q2,...")
    p.add_argument("--N", type=int, required=True, help="levels to compute")
    p.set_defaults(fn=cmd_polygon_words)
    p = pol.add_parser("flowcheck", help="octagon flow approximation checks")
    common(p, surface=False, alpha=False)
    p.add_argument("--p", type=int, default=7)
    p.add_argument("--q", type=int, default=5)
    p.add_argument("--theta", default=None)
    p.add_argument("--theta-n", default=None)
    p.add_argument("--l", default=None, help="shortest cylinder length")
    p.add_argument("--a", default="1", help="approximation speed")
    p.add_argument("--d", type=int, default=4)
    p.add_argument("--list-directions", action="store_true",
                   help="print the bundled periodic-direction data")
    p.set_defaults(fn=cmd_polygon_flowcheck)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.precision_bits:
        numeric.set_precision_cap(args.precision_bits)
    try:
        return args.fn(args)
    except PrecisionExhaustedError as exc:
        _error(args, "precision-exhausted", str(exc))
        return EXIT_PRECISION
    except (ValueError, TypeError, KeyError) as exc:
        _error(args, "precondition", str(exc))
        return EXIT_PRECONDITION


def _error(args, code: str, message: str) -> None:
    payload = {"schema": "stiet.error/1",
               "error": {"code": code, "message": message}}
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    sys.exit(main())
