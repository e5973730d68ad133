"""Sweep the bound report over a grid of family members and write a CSV.

    python3 scripts/bounds_sweep.py --max-n 4 --max-k 4 -o bounds.csv
"""
import argparse
import csv
import sys
import time

from pdaconv.family import FamilyParams, bounds_report

COLUMNS = ["n", "k", "p", "N_log2", "lower_2pow_log2", "cfg_textbook_vars", "cfg_var_lower",
           "fsa_upper_states_log2", "N", "seconds"]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--max-k", type=int, default=4)
    ap.add_argument("-o", "--output", default="-")
    args = ap.parse_args(argv)

    out = sys.stdout if args.output == "-" else open(args.output, "w", newline="")
    w = csv.DictWriter(out, fieldnames=COLUMNS, extrasaction="ignore")
    w.writeheader()
    for n in range(1, args.max_n + 1):
        for k in range(1, args.max_k + 1):
            t0 = time.perf_counter()
            row = bounds_report(FamilyParams(n, k)).as_dict()
            row["seconds"] = f"{time.perf_counter() - t0:.4f}"
            w.writerow(row)
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
