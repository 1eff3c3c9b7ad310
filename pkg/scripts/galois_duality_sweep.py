"""Exhaustive fixed_field / fixing_group sweep over abelian p-groups."""

from __future__ import annotations

import argparse
import time

from caplab.galois_model import duality_sweep
from caplab.group_core import abelian_types


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", default="2,3,5")
    ap.add_argument("--max-order", type=int, default=729)
    args = ap.parse_args()
    t0 = time.perf_counter()
    bad = 0
    for p in (int(x) for x in args.p.split(",")):
        for G in abelian_types(p, args.max_order):
            t = time.perf_counter()
            r = duality_sweep(G)
            bad += not r.ok
            print(f"{str(G):<14} subgroups={r.subgroups:<9} pairs={r.pairs_checked:<6} "
                  f"exhaustive={r.pairs_exhaustive!s:<5} ok={r.ok} {time.perf_counter() - t:6.2f}s"
                  + (f"  {r.first_failure}" if r.first_failure else ""))
    print(f"total {time.perf_counter() - t0:.1f}s, failing groups: {bad}")
    return int(bad > 0)


if __name__ == "__main__":
    raise SystemExit(main())
