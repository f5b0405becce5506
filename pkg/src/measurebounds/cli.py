"""Command-line front end.

    measurebounds bound   --poly "x1" --n 1 --d-min 1 --d-max 10
    measurebounds dkhl    --poly "x1 + x2" --n 2 --d-max 6
    measurebounds roots   --alpha 0 --beta 0 --k-min 2 --k-max 40
    measurebounds rate    --hierarchy lasserre --poly "x1" --n 1 --d-min 5 --d-max 60
    measurebounds compare --poly "x1^2 + x1" --n 1 --d-max 20
    measurebounds certify --certificate certs.json

Exit codes: 0 success, 2 configuration error, 3 numeric failure, 4 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from .analysis import compute_bound, rate_fit, reference_minimum
from .errors import InvalidArgument, NumericFailure, ResourceLimit
from .lasserre import HIERARCHIES, BoundResult, DensityCertificate, certificate_check
from .orthopoly import JacobiParams, extremal_root_bounds, smallest_root
from .polycore import MultiIndexSet, SparsePolynomial, parse_polynomial
from .quadrature import ProductJacobiMeasure

log = logging.getLogger("measurebounds")

EXIT_CONFIG, EXIT_NUMERIC, EXIT_LIMIT = 2, 3, 4
CERTIFICATE_FORMAT = "measurebounds-certificate/1"
BOUND_COLUMNS = ("d", "hierarchy", "value", "gap", "wall_time_ms")


@dataclass
class RunConfig:
    polynomial: str
    n: int
    measure: str = "-1/2,-1/2"
    scaling: float = 1.0
    hierarchies: tuple[str, ...] = ("lasserre",)
    d_min: int = 1
    d_max: int = 1
    output_format: str = "csv"
    tol: float = 1e-8
    seed: int = 0
    timing: bool = False
    f: SparsePolynomial = field(init=False, repr=False)
    mu: ProductJacobiMeasure = field(init=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise InvalidArgument(f"--n must be >= 1, got {self.n}")
        if self.d_min > self.d_max:
            raise InvalidArgument(f"--d-min {self.d_min} exceeds --d-max {self.d_max}")
        if self.d_min < 0:
            raise InvalidArgument("--d-min must be >= 0")
        if not self.tol > 0:
            raise InvalidArgument("--tol must be positive")
        if self.output_format not in ("csv", "json"):
            raise InvalidArgument(f"unknown format {self.output_format!r}")
        for h in self.hierarchies:
            if h not in HIERARCHIES:
                raise InvalidArgument(f"unknown hierarchy {h!r}; choose from {', '.join(HIERARCHIES)}")
        self.f = parse_polynomial(self.polynomial, self.n)
        self.mu = ProductJacobiMeasure.from_string(self.measure, self.n, self.scaling)

    @property
    def degrees(self) -> range:
        return range(self.d_min, self.d_max + 1)


def fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, float):
        return f"{v:.15g}"
    return str(v)


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, float):
        return float(f"{v:.15g}")
    return v


def render(rows: list[dict], columns, output_format: str, extra: dict | None = None) -> str:
    if output_format == "json":
        doc = {"rows": [{c: _json_value(r.get(c)) for c in columns} for r in rows]}
        if extra:
            doc.update({k: {c: _json_value(x) for c, x in v.items()} for k, v in extra.items()})
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([fmt(r.get(c)) for c in columns])
    for table in (extra or {}).values():
        buf.write("\n")
        w.writerow(list(table))
        w.writerow([fmt(x) for x in table.values()])
    return buf.getvalue()


def _reference(cfg: RunConfig) -> float | None:
    try:
        return reference_minimum(cfg.f, cfg.seed)
    except NumericFailure as exc:
        log.warning("no reference minimum, gap column left empty: %s", exc)
        return None


def _bound_rows(cfg: RunConfig, f_min, certificates: list | None = None) -> list[dict]:
    rows = []
    for d in cfg.degrees:
        for h in cfg.hierarchies:
            if h != "lasserre" and d < 1:
                continue
            t0 = time.perf_counter()
            res = compute_bound(h, cfg.f, cfg.mu, d, with_certificate=certificates is not None)
            elapsed = (time.perf_counter() - t0) * 1e3
            rows.append({
                "d": d,
                "hierarchy": h,
                "value": res.value,
                "gap": None if f_min is None else res.value - f_min,
                "wall_time_ms": elapsed if cfg.timing else None,
            })
            if certificates is not None and res.certificate is not None:
                certificates.append(certificate_to_dict(res, cfg))
    return rows


def cmd_bound(cfg: RunConfig, certificate_path: str | None = None) -> str:
    certificates = [] if certificate_path else None
    rows = _bound_rows(cfg, _reference(cfg), certificates)
    if certificate_path:
        with open(certificate_path, "w") as fh:
            json.dump({"format": CERTIFICATE_FORMAT, "certificates": certificates}, fh, indent=1)
            fh.write("\n")
    return render(rows, BOUND_COLUMNS, cfg.output_format)


def cmd_roots(p: JacobiParams, k_min: int, k_max: int, output_format: str = "csv", slack: float = 1e-12) -> str:
    if k_min < 2 or k_min > k_max:
        raise InvalidArgument(f"need 2 <= k-min <= k-max, got {k_min}..{k_max}")
    rows = []
    for k in range(k_min, k_max + 1):
        xi = smallest_root(p, k)
        b = extremal_root_bounds(p, k)
        ok = b.lower <= xi + slack and xi <= b.upper + slack
        rows.append({"k": k, "xi": xi, "dj_upper": b.upper, "dn_lower": b.lower, "sandwich_ok": ok})
    return render(rows, ("k", "xi", "dj_upper", "dn_lower", "sandwich_ok"), output_format)


def cmd_rate(cfg: RunConfig) -> str:
    """Per-degree gaps and a log-log fit; degrees where the minimum is hit exactly are excluded from the fit."""
    if len(cfg.hierarchies) != 1:
        raise InvalidArgument("rate takes exactly one hierarchy")
    f_min = _reference(cfg)
    if f_min is None:
        raise NumericFailure("rate fitting needs a reference minimum")
    rows = _bound_rows(cfg, f_min)
    for r in rows:
        r["in_fit"] = r["gap"] > 1e-14
    used = [r for r in rows if r["in_fit"]]
    fit = rate_fit([r["d"] for r in used], [r["gap"] for r in used])
    summary = {"slope": fit.slope, "intercept": fit.intercept, "r_squared": fit.r_squared, "points": len(used)}
    return render(rows, ("d", "hierarchy", "value", "gap", "in_fit"), cfg.output_format, {"fit": summary})


def cmd_compare(cfg: RunConfig) -> str:
    cfg.hierarchies = HIERARCHIES
    return render(_bound_rows(cfg, _reference(cfg)), BOUND_COLUMNS, cfg.output_format)


# certificate files


def _measure_to_dict(mu: ProductJacobiMeasure) -> dict:
    return {"params": [[p.alpha, p.beta] for p in mu.params], "scaling": mu.scaling}


def _measure_from_dict(doc: dict) -> ProductJacobiMeasure:
    return ProductJacobiMeasure(tuple(JacobiParams(a, b) for a, b in doc["params"]), doc.get("scaling", 1.0))


def certificate_to_dict(res: BoundResult, cfg: RunConfig) -> dict:
    cert = res.certificate
    reference = ProductJacobiMeasure.chebyshev(cfg.n) if res.hierarchy == "dkhl" else cfg.mu
    return {
        "polynomial": str(cfg.f),
        "n": cfg.n,
        "hierarchy": res.hierarchy,
        "d": res.d,
        "value": res.value,
        "measure": _measure_to_dict(reference),
        "basis_measure": _measure_to_dict(cert.basis_measure),
        "subset": list(cert.subset),
        "index_d": cert.index_set.d,
        "index_set": [list(a) for a in cert.index_set],
        "coefficients": [float(c) for c in cert.coefficients],
    }


def certificate_from_dict(doc: dict) -> tuple[DensityCertificate, SparsePolynomial, ProductJacobiMeasure, float]:
    try:
        n = int(doc["n"])
        members = tuple(tuple(int(e) for e in a) for a in doc["index_set"])
        index = MultiIndexSet(n, int(doc["index_d"]), members)
        cert = DensityCertificate(
            index,
            np.asarray(doc["coefficients"], dtype=float),
            _measure_from_dict(doc["basis_measure"]),
            tuple(int(i) for i in doc.get("subset", ())),
        )
        f = parse_polynomial(doc["polynomial"], n)
        mu = _measure_from_dict(doc["measure"])
        value = float(doc["value"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidArgument):
            raise
        raise InvalidArgument(f"malformed certificate entry: {exc}") from exc
    if len(cert.coefficients) != len(index):
        raise InvalidArgument("certificate coefficient count does not match its index set")
    return cert, f, mu, value


def cmd_certify(path: str, tol: float = 1e-8, output_format: str = "csv") -> tuple[str, bool]:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidArgument(f"cannot read certificate file {path}: {exc}") from exc
    entries = doc.get("certificates", [doc]) if isinstance(doc, dict) else doc
    rows = []
    for entry in entries:
        cert, f, mu, value = certificate_from_dict(entry)
        rep = certificate_check(cert, f, mu, value)
        rows.append({
            "d": entry["d"],
            "hierarchy": entry["hierarchy"],
            "value": value,
            "mass_error": rep.mass_error,
            "objective_error": rep.objective_error,
            "ok": rep.ok(tol),
        })
    all_ok = all(r["ok"] for r in rows)
    return render(rows, ("d", "hierarchy", "value", "mass_error", "objective_error", "ok"), output_format), all_ok


# argument parsing


def _add_problem_args(sp: argparse.ArgumentParser, hierarchy: bool = True) -> None:
    sp.add_argument("--poly", required=True, help='polynomial, e.g. "x1^2 + 1/2*x1*x2 - x2"')
    sp.add_argument("--n", type=int, required=True, help="number of variables")
    sp.add_argument("--measure", default="-1/2,-1/2", help='Jacobi parameters "a1,b1;a2,b2;..." (one pair is repeated)')
    sp.add_argument("--scaling", type=float, default=1.0, help="constant multiplier on the measure")
    sp.add_argument("--d-min", type=int, default=1)
    sp.add_argument("--d-max", type=int, default=None, help="defaults to --d-min")
    if hierarchy:
        sp.add_argument("--hierarchy", default="lasserre", help=f"comma-separated subset of {', '.join(HIERARCHIES)}")
    _add_output_args(sp)
    sp.add_argument("--seed", type=int, default=0, help="seed for the reference-minimum multi-start")
    sp.add_argument("--timing", action="store_true", help="fill wall_time_ms (output is then not reproducible)")


def _add_output_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out", default=None, help="write to this file instead of stdout")
    sp.add_argument("--tol", type=float, default=1e-8)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="measurebounds", description="Measure-based upper bounds on [-1,1]^n")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("bound", help="bound values over a degree range")
    _add_problem_args(sp)
    sp.add_argument("--certificate-out", default=None, help="save density certificates as JSON")

    sp = sub.add_parser("dkhl", help="DKHL bounds (subset-block densities, Chebyshev measure)")
    _add_problem_args(sp, hierarchy=False)
    sp.add_argument("--certificate-out", default=None)

    sp = sub.add_parser("roots", help="smallest Jacobi zeros and their closed-form bounds")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--k-min", type=int, default=2)
    sp.add_argument("--k-max", type=int, default=None)
    _add_output_args(sp)
    sp.set_defaults(tol=1e-12)

    sp = sub.add_parser("rate", help="log-log convergence fit over a degree range")
    _add_problem_args(sp)

    sp = sub.add_parser("compare", help="all hierarchies side by side")
    _add_problem_args(sp, hierarchy=False)

    sp = sub.add_parser("certify", help="re-check saved certificates")
    sp.add_argument("--certificate", required=True)
    _add_output_args(sp)
    return parser


def _config(args, hierarchies=None) -> RunConfig:
    if hierarchies is None:
        hierarchies = tuple(h.strip() for h in args.hierarchy.split(",") if h.strip())
    return RunConfig(
        polynomial=args.poly,
        n=args.n,
        measure=args.measure,
        scaling=args.scaling,
        hierarchies=hierarchies,
        d_min=args.d_min,
        d_max=args.d_min if args.d_max is None else args.d_max,
        output_format=args.format,
        tol=args.tol,
        seed=args.seed,
        timing=args.timing,
    )


def run(args) -> tuple[str, int]:
    if args.command == "bound":
        return cmd_bound(_config(args), args.certificate_out), 0
    if args.command == "dkhl":
        return cmd_bound(_config(args, ("dkhl",)), args.certificate_out), 0
    if args.command == "roots":
        k_max = args.k_min if args.k_max is None else args.k_max
        return cmd_roots(JacobiParams(args.alpha, args.beta), args.k_min, k_max, args.format, args.tol), 0
    if args.command == "rate":
        return cmd_rate(_config(args)), 0
    if args.command == "compare":
        return cmd_compare(_config(args, HIERARCHIES)), 0
    if args.command == "certify":
        text, ok = cmd_certify(args.certificate, args.tol, args.format)
        return text, 0 if ok else EXIT_NUMERIC
    raise InvalidArgument(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        text, code = run(args)
    except InvalidArgument as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericFailure as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
