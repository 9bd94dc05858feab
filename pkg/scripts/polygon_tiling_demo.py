#!/usr/bin/env python3
"""Tile a polygon-family coding by its induction blocks.

Builds the parameter y realizing a prescribed block string, codes the
section map exactly, and parses the coding as a concatenation of the
level-n return words, reporting block usage counts.

    python3 scripts/polygon_tiling_demo.py 4 2,1,2,1 10000
"""

import sys
from collections import Counter
from fractions import Fraction

from stiet.polygon import (
    PolygonParams,
    g_orbit,
    lcm_times,
    midpoint,
    parse_blocks,
    polygon_coding,
    word_induction,
    y_from_symbols,
)


def main() -> int:
    d = int(sys.argv[1]) if len(sys.argv) > 1 else 4
    blocks = tuple(int(x) for x in (sys.argv[2] if len(sys.argv) > 2
                                    else "2,1,2,1").split(","))
    length = int(sys.argv[3]) if len(sys.argv) > 3 else 10_000

    level = sum(blocks)
    y = midpoint(y_from_symbols(d, blocks)[0])
    print(f"d={d}  blocks={blocks}  y={y}  (~{float(y):.6f})")
    orbit = g_orbit(y, d, level)
    print(f"branch string: {orbit.branches}")

    words = word_induction(d, blocks, level)[level]
    print(f"level-{level} block lengths: "
          f"M={[len(w) for w in words.m_words]} "
          f"P={[len(w) for w in words.p_words]}  s_n={lcm_times(words)}")

    params = PolygonParams.from_y(d, y)
    coding = polygon_coding(params, Fraction(1, 97), length)
    res = parse_blocks(coding, words)
    if not res.ok:
        print(f"parse FAILED: {res.reason}")
        return 1
    counts = Counter(res.blocks)
    print(f"parsed {len(coding)} letters: offset {res.offset}, "
          f"{len(res.blocks)} full blocks, tail {len(res.tail)}")
    for w, k in counts.most_common():
        label = "M" if w in words.m_words else "P"
        print(f"  {label}-block of length {len(w):>4}: {k:>5} occurrences")
    return 0


if __name__ == "__main__":
    sys.exit(main())
