"""Interlacing chain and O(1/d^2) gap for f = x^2 + alpha*x under the Chebyshev measure.

    python3 scripts/quadratic_interlacing.py --alphas=-2,-1,0,1,2 --d-max 60
"""

import argparse
import csv
import sys

from measurebounds.analysis import circulant_gap_bound, interlacing_chain


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alphas", default="-2,-1,0,1,2")
    ap.add_argument("--d-min", type=int, default=6)
    ap.add_argument("--d-max", type=int, default=40)
    args = ap.parse_args(argv)

    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["alpha", "d", "lambda_min_A", "lambda_min_B", "lambda3_C", "chain_holds", "d2_gap", "taylor_bound"])
    for alpha in (float(a) for a in args.alphas.split(",")):
        for d in range(args.d_min, args.d_max + 1):
            r = interlacing_chain(alpha, d)
            gap = r.lambda_min_Ad + alpha**2 / 4
            out.writerow([
                alpha, d, f"{r.lambda_min_Ad:.15g}", f"{r.lambda_min_B:.15g}", f"{r.lambda3_Cd:.15g}",
                str(r.holds).lower(), f"{d * d * gap:.6f}", f"{circulant_gap_bound(alpha, d):.6g}",
            ])


if __name__ == "__main__":
    main()
