"""Gap of the Lasserre and DKHL bounds for f = x against the smallest Jacobi zero.

For every Jacobi measure in the sweep, prints the fitted log-log slope of
(bound + 1) over a degree range and the largest relative deviation from the
zero xi_{d+1}. A second table gives the DKHL slope for f = x1 + ... + xn.

    python3 scripts/linear_rates.py --d-min 5 --d-max 60
"""

import argparse
import csv
import itertools
import sys

from measurebounds import ProductJacobiMeasure, SparsePolynomial, dkhl_bound, lasserre_bound, rate_fit
from measurebounds.orthopoly import JacobiParams, smallest_root


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d-min", type=int, default=5)
    ap.add_argument("--d-max", type=int, default=60)
    ap.add_argument("--params", default="-0.5,0,0.5,1.7", help="values used for both alpha and beta")
    ap.add_argument("--dkhl-n", type=int, default=2)
    args = ap.parse_args(argv)

    values = [float(v) for v in args.params.split(",")]
    degrees = list(range(args.d_min, args.d_max + 1))
    x = SparsePolynomial.variable(1, 0)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["alpha", "beta", "slope", "r_squared", "max_abs_dev_from_root"])
    for a, b in itertools.product(values, values):
        p = JacobiParams(a, b)
        mu = ProductJacobiMeasure((p,))
        bounds = [lasserre_bound(x, mu, d).value for d in degrees]
        fit = rate_fit(degrees, [v + 1 for v in bounds])
        dev = max(abs(v - smallest_root(p, d + 1)) for v, d in zip(bounds, degrees))
        out.writerow([a, b, f"{fit.slope:.6f}", f"{fit.r_squared:.6f}", f"{dev:.3e}"])

    n = args.dkhl_n
    f = SparsePolynomial.linear([1.0] * n)
    dk_degrees = [d for d in degrees if d <= 25] or degrees[:5]
    gaps = [dkhl_bound(f, d).value + n for d in dk_degrees]
    fit = rate_fit(dk_degrees, gaps)
    sys.stdout.write("\n")
    out.writerow(["dkhl_n", "d_min", "d_max", "slope", "r_squared"])
    out.writerow([n, dk_degrees[0], dk_degrees[-1], f"{fit.slope:.6f}", f"{fit.r_squared:.6f}"])


if __name__ == "__main__":
    main()
