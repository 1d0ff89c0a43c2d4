"""Survey zero-divisor cup lengths across Bott tower families.

Runs the product search over every normal-form tower for each factor
composition up to --max-total and prints one line per tower: the lower
blocks, the zcl certificate length, and the resulting tc window.

    python3 scripts/zcl_survey.py --max-total 4
    python3 scripts/zcl_survey.py --dims 1 1 1 1 --strategy linear
"""

import argparse
import sys
import time

from smallcover.charfun import bott_to_characteristic, enumerate_bott
from smallcover.cohomology import small_cover_algebra
from smallcover.complexes import product_of_simplices
from smallcover.invariants import zcl_lower
from smallcover.repro import compositions


def survey_family(dims, strategy, budget):
    p = product_of_simplices(list(dims))
    n = p.dim
    rows = []
    for b in enumerate_bott(tuple(dims)):
        lam = bott_to_characteristic(b)
        pres, red, alg = small_cover_algebra(p, lam, check=False)
        z = zcl_lower(alg, strategy=strategy, budget=budget)
        lo = max(n + 1, z.value + 1)
        rows.append((b.lower_blocks(), z.value, lo, 2 * n + 1, z.complete))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-total", type=int, default=4)
    ap.add_argument("--dims", type=int, nargs="+", default=None)
    ap.add_argument("--strategy", default="generators",
                    choices=("generators", "linear", "full"))
    ap.add_argument("--budget", type=int, default=None)
    args = ap.parse_args(argv)

    families = (
        [tuple(args.dims)]
        if args.dims
        else [
            dims
            for total in range(1, args.max_total + 1)
            for dims in compositions(total)
        ]
    )
    t0 = time.time()
    for dims in families:
        rows = survey_family(dims, args.strategy, args.budget)
        histogram = {}
        for lower, z, lo, hi, complete in rows:
            histogram[z] = histogram.get(z, 0) + 1
        print(f"dims {dims}: {len(rows)} towers, zcl histogram {dict(sorted(histogram.items()))}")
        best = max(rows, key=lambda r: r[1])
        print(f"  deepest: lower={best[0]} zcl={best[1]} tc in [{best[2]}, {best[3]}]"
              + ("" if best[4] else " (budget hit)"))
    print(f"done in {time.time() - t0:.1f}s", file=sys.stderr)


if __name__ == "__main__":
    main()
