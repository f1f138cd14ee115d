#!/usr/bin/env python3
"""Sweep random orthogonal-vectors instances through the flow gadget and report
how the per-pair flow values separate around the 2*n^2*d threshold.

Usage: python3 scripts/gadget_sweep.py [--seed 0] [--count 20] [--n 3] [--d 4]
"""

import argparse
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ghct.gadgets import check_gadget, flow_threshold
from ghct.generators import gen_ov_instance


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--d", type=int, default=4)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    bad = 0
    print(f"{'#':>3} {'thr':>5} {'min':>5} {'max blocked':>12} {'triple':>10} {'ok':>4}")
    for i in range(args.count):
        ov = gen_ov_instance(args.n, args.d, rng)
        rep = check_gadget(ov)
        blocked = rep.max_blocked_flow if rep.max_blocked_flow is not None else "-"
        triple = "yes" if rep.triple else "no"
        print(f"{i:>3} {rep.threshold:>5} {rep.min_flow:>5} {blocked!s:>12} "
              f"{triple:>10} {'ok' if rep.ok else 'BAD':>4}")
        if not rep.ok:
            bad += 1
    print(f"threshold {flow_threshold(gen_ov_instance(args.n, args.d, rng))}, "
          f"{args.count - bad}/{args.count} consistent")
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
