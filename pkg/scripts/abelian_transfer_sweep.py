"""Abelian transfer against the index-power map for every subgroup of every abelian p-group."""

from __future__ import annotations

import argparse
import time

from caplab.group_core import abelian_types
from caplab.transfer_capitulation import abelian_transfer_sweep


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", default="2,3,5")
    ap.add_argument("--max-order", type=int, default=512)
    ap.add_argument("--elementwise-max", type=int, default=128)
    ap.add_argument("--sample", type=int, default=1000)
    args = ap.parse_args()
    t0 = time.perf_counter()
    bad = 0
    for p in (int(x) for x in args.p.split(",")):
        for A in abelian_types(p, args.max_order):
            t = time.perf_counter()
            r = abelian_transfer_sweep(A, args.elementwise_max, args.sample)
            bad += not r.ok
            mode = "elementwise" if r.elementwise else f"basis+{r.elementwise_sampled}"
            print(f"{str(A):<14} subgroups={r.subgroups:<9} {mode:<16} ok={r.ok} "
                  f"{time.perf_counter() - t:6.2f}s" + (f"  {r.witness}" if r.witness else ""))
    print(f"total {time.perf_counter() - t0:.1f}s, failing groups: {bad}")
    return int(bad > 0)


if __name__ == "__main__":
    raise SystemExit(main())
