#!/usr/bin/env python3
"""Run the full check suite and summarize which statements needed variants.

Usage: python scripts/variant_report.py [ORDER]
"""

import sys
import time

from polygenocchi import default_config, run_suite


def main() -> int:
    order = int(sys.argv[1]) if len(sys.argv) > 1 else 10
    cfg = default_config(order=order)
    start = time.perf_counter()
    report = run_suite(cfg, "all")
    elapsed = time.perf_counter() - start
    width = max(len(r.check_id) for r in report.results)
    for r in report.results:
        print(f"{r.check_id:<{width}}  {r.status}")
        if r.variant_note:
            print(f"{'':<{width}}  note: {r.variant_note}")
        if r.first_mismatch and r.status == "fail":
            m = r.first_mismatch
            print(f"{'':<{width}}  witness: n={m.n} degree={m.x_degree} "
                  f"lhs={m.lhs} rhs={m.rhs}")
    print(f"\noverall: {report.overall}  "
          f"(order {order}, {elapsed:.1f} s)")
    return 0 if report.overall == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
