#!/usr/bin/env python3
"""Candidate rigidity times versus measured defects, side by side.

For each quotient run of the return-word induction this prints the repeated
block, its cocycle cycle structure, the candidate time s_n * |block|, the
predicted defect bound 2/a_n + s_n/a_n + L/|block|, and the exact measured
maximal atom defect at that time.

    python3 scripts/rigidity_times_table.py fig2 "cf:0,then:n+1" 10
"""

import sys

from stiet.numeric import parse_alpha
from stiet.origami import get_surface
from stiet.rigidity import DefectEngine, rigidity_times

MEASURE_LIMIT = 5_000_000


def main() -> int:
    surface = sys.argv[1] if len(sys.argv) > 1 else "fig2"
    alpha_text = sys.argv[2] if len(sys.argv) > 2 else "cf:0,then:n+1"
    runs = int(sys.argv[3]) if len(sys.argv) > 3 else 10

    o = get_surface(surface)
    alpha = parse_alpha(alpha_text)
    rows = rigidity_times(o, alpha, runs)
    measurable = [r.time for r in rows if r.time <= MEASURE_LIMIT]
    engine = DefectEngine(o, alpha, max(measurable)) if measurable else None

    print(f"{'n':>3} {'b_n':>5} {'block':>5} {'len':>9} {'cycles':>9} "
          f"{'time':>10} {'bound':>8} {'measured':>9}")
    for r in rows:
        cycles = "x".join(str(c) for c in r.cycles.cycle_lengths)
        if engine is not None and r.time <= MEASURE_LIMIT:
            measured = f"{float(max(engine.defect_at(r.time))):9.5f}"
        else:
            measured = "   (skip)"
        print(f"{r.index:>3} {r.start_n:>5} {r.block:>5} {r.block_length:>9} "
              f"{cycles:>9} {r.time:>10} {float(r.bound):8.4f} {measured}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
