#!/usr/bin/env python3
"""Build the small-T census table and write it as CSV.

Usage: python3 scripts/run_census.py [--tmax 8] [--jobs 4] [--out census.csv]
"""

import argparse
import time

from equilat.census import count_table, write_table


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tmax", type=int, default=8)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--out", default="census.csv")
    args = parser.parse_args()

    t0 = time.time()
    rows = count_table(args.tmax, workers=args.jobs)
    elapsed = time.time() - t0
    width = max(len(str(r.count)) for r in rows)
    for r in rows:
        print(f"T={r.T:2d} g={r.genus} count={r.count:{width}d} "
              f"tran={r.tran_count:3d} lb={r.lb_count:3d} "
              f"loops/multi={r.loop_count:{width}d} "
              f"max-deg hist={dict(r.max_degree_hist)}")
    write_table(rows, args.out)
    print(f"\n{sum(r.count for r in rows)} classes in {elapsed:.1f}s "
          f"-> {args.out}")


if __name__ == "__main__":
    main()
