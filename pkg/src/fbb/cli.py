"""
Command-line interface.

Exit status: 0 on success, 1 on a usage error (bad flags or out-of-range
options), 2 when a computation fails; failures print one diagnostic line
naming the operation and its inputs to standard error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from typing import Sequence

from . import density, edge, ncpart, rmt
from .errors import ArityError, FBBError, RangeError
from .laws import (LAW_NAMES, SeriesPoly, TensorSignature, hadamard_coeffs, hadamard_contour,
                   law_from_dict, moment, signature_coefficients_contour,
                   truncated_levy_area, truncated_square_norm)

OUT_ENV = "FBB_OUT_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _fmt(v: float) -> str:
    return f"{v:.16e}"


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}") from None
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _law(name: str):
    return law_from_dict({"law": name})


def _resolve_out(out: str | None, default_name: str) -> str | None:
    """Path to write to, or None for standard output."""
    if out == "-":
        return None
    if out is not None:
        return out
    directory = os.environ.get(OUT_ENV)
    if directory:
        os.makedirs(directory, exist_ok=True)
        return os.path.join(directory, default_name)
    return None


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_cumulants(args) -> str:
    law = _law(args.law)
    rows = ["n,cumulant"] + [f"{n},{_fmt(law.cumulant(n))}" for n in range(1, args.count + 1)]
    return "\n".join(rows) + "\n"


def cmd_moments(args) -> str:
    law = _law(args.law)
    ks = law.cumulants(args.count)
    ms = ncpart.moment_sequence(ks, args.count)
    rows = ["n,moment"] + [f"{n},{_fmt(m)}" for n, m in enumerate(ms, start=1)]
    return "\n".join(rows) + "\n"


def cmd_meanders(args) -> str:
    return ",".join(str(q) for q in ncpart.meander_numbers(args.count)) + "\n"


def cmd_density(args) -> str:
    law = _law(args.law)
    table = density.density_table(law, args.points)
    if args.boundary:
        curve = density.trace_boundary(law, density.chebyshev_t_grid(args.points))
        _emit(density.boundary_csv(curve), _resolve_out(args.boundary, f"{args.law}_boundary.csv"))
    return density.density_csv(table)


def cmd_edge(args) -> str:
    law = _law(args.law)
    methods = list(edge.METHODS) if args.method == "all" else [args.method]
    reports = []
    for name in methods:
        if name == "variational":
            reports.append(edge.edge_variational(law, args.horizon))
        else:
            reports.append(edge.METHODS[name](law))
    if args.format == "json":
        docs = [r.as_dict() for r in reports]
        return json.dumps(docs[0] if len(docs) == 1 else docs, indent=2, sort_keys=True) + "\n"
    rows = ["law,method,left,right"]
    for r in reports:
        left = "" if r.left is None else _fmt(r.left)
        rows.append(f"{r.law},{r.method},{left},{_fmt(r.right)}")
    return "\n".join(rows) + "\n"


def _mc_reference(law: str, modes: int, orders):
    if law == "gamma":
        ref = truncated_square_norm(modes)
    elif law == "levy-area":
        ref = truncated_levy_area(modes)
    elif law == "signature":
        ref = TensorSignature()
    else:
        ref = _law(law)
    return [moment(ref, p) for p in orders]


def cmd_mc(args):
    orders = (1, 2, 3, 4)
    rng = rmt.RngSpec(args.seed)
    started = time.perf_counter()
    if args.law == "signature":
        if args.dim > rmt.MAX_TENSOR_DIM:
            raise RangeError(f"signature model needs --dim <= {rmt.MAX_TENSOR_DIM}")
        sample = rmt.signature_spectrum(args.dim, args.modes, args.samples, rng, orders)
        table = None
    else:
        sample = rmt.sample_spectrum(args.law, args.dim, args.modes, args.samples, rng,
                                     orders, workers=args.workers)
        table = density.density_table(_law(args.law), 400)
    rows = rmt.histogram(sample, table, args.bins)
    lines = ["bin_lo,bin_hi,count,empirical_density,analytic_density"]
    for lo, hi, count, emp, ana in rows:
        lines.append(f"{_fmt(lo)},{_fmt(hi)},{count},{_fmt(emp)},{_fmt(ana)}")
    reference = _mc_reference(args.law, args.modes, orders)
    moments = [{"order": p, "mean": m, "stderr": e, "reference": ref}
               for p, (m, e), ref in zip(orders, sample.moment_estimates(), reference)]
    meta = {"law": args.law, "N": args.dim, "M": args.modes, "samples": args.samples,
            "seed": args.seed, "ks": None if table is None else rmt.ks_distance(sample, table),
            "trace_moments": moments}
    if args.timing:
        meta["seconds"] = time.perf_counter() - started
    return "\n".join(lines) + "\n", meta


def cmd_mercer(args) -> str:
    values = rmt.mercer_nystrom(args.nodes, args.count)
    rows = ["n,lambda,exact"]
    for n, v in enumerate(values, start=1):
        rows.append(f"{n},{_fmt(v)},{_fmt(1.0 / (n * n * math.pi ** 2))}")
    return "\n".join(rows) + "\n"


def cmd_hadamard(args):
    geometric = SeriesPoly(tuple(0.5 ** j for j in range(16)))
    self_test = max(abs(c - 0.25 ** j) for j, c in
                    enumerate(hadamard_coeffs(geometric, geometric).coeffs))
    # the contour route on 1/(1 - a u) and 1/(1 - b u) must give 1/(1 - a b z^2)
    for z in (0.4, 0.3 + 0.5j, -0.7j):
        value = hadamard_contour(lambda u: 1 / (1 - 0.5 * u), lambda u: 1 / (1 - 0.8 * u), z)
        self_test = max(self_test, abs(value - 1 / (1 - 0.4 * z * z)))
    contour = signature_coefficients_contour(args.order)
    sig = TensorSignature()
    rows = ["n,contour,series,abs_diff"]
    worst = 0.0
    for n, c in enumerate(contour, start=1):
        s = sig.cumulant(2 * n)
        worst = max(worst, abs(c - s))
        rows.append(f"{n},{_fmt(c)},{_fmt(s)},{_fmt(abs(c - s))}")
    text = "\n".join(rows) + "\n"
    ok = worst < 1e-6 and self_test < 1e-12
    return text, ok, worst, self_test


def cmd_figures(args) -> None:
    directory = args.out_dir or os.environ.get(OUT_ENV) or "."
    os.makedirs(directory, exist_ok=True)
    for name, law in (("gamma", "gamma"), ("levy_area", "levy-area")):
        table = density.density_table(_law(law), args.points)
        path = os.path.join(directory, f"{name}_density.csv")
        _emit(density.density_csv(table), path)
        print(f"{path}: {len(table)} rows, support [{table.left:.6f}, {table.right:.6f}], "
              f"mass {table.meta['mass']:.6f}", file=sys.stderr)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fbb", description="Laws of functionals of the free Brownian "
                     "bridge: cumulants, densities, support edges and matrix models.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    laws = sorted(LAW_NAMES)

    p = sub.add_parser("cumulants", help="free cumulants k_1..k_K of a law",
                       description="Print the free cumulants k_1..k_K of a law.")
    p.add_argument("--law", required=True, choices=laws)
    p.add_argument("--count", type=_positive, default=10)

    p = sub.add_parser("moments", help="moments m_1..m_K from the free cumulants",
                       description="Print the moments m_1..m_K, computed from the free "
                       "cumulants through the non-crossing moment-cumulant relation.")
    p.add_argument("--law", required=True, choices=laws)
    p.add_argument("--count", type=_positive, default=10)

    p = sub.add_parser("meanders", help="2-irreducible meander numbers q_1..q_K",
                       description="Print q_1..q_K, the even free cumulants of the law with "
                       "even moments C_k^2 (2-irreducible meander numbers).")
    p.add_argument("--count", type=_positive, default=12)

    p = sub.add_parser("density", help="density table Phi(x) from the boundary curve of K",
                       description="Tabulate the density Phi(x) = -r sin(t)/pi along the curve "
                       "Im K(r e^{it}) = 0, t in (pi, 2pi).  CSV header x,phi.")
    p.add_argument("--law", required=True, choices=["gamma", "levy-area", "commutator",
                                                    "semicircle"])
    p.add_argument("--points", type=_positive, default=400)
    p.add_argument("--out", default=None, help="output file, '-' for stdout")
    p.add_argument("--boundary", default=None,
                   help="also write the boundary curve (t,r,x,im_residual) to this file")

    p = sub.add_parser("edge", help="support edges rho by three methods",
                       description="Support edges: critical points of K (kmin), the "
                       "variational supremum over tilted cumulant weights (variational), "
                       "and the implicit m* equations (implicit).")
    p.add_argument("--law", required=True, choices=laws)
    p.add_argument("--method", default="all", choices=["kmin", "variational", "implicit", "all"])
    p.add_argument("--format", default="json", choices=["json", "csv"])
    p.add_argument("--horizon", type=_positive, default=40)
    p.add_argument("--out", default=None)

    p = sub.add_parser("mc", help="GUE Monte Carlo spectrum and trace moments",
                       description="Pooled spectrum of the truncated GUE series model "
                       "(Gamma-hat, ell-hat, a GUE matrix, or the Kronecker model of Z): "
                       "histogram CSV with header bin_lo,bin_hi,count,empirical_density,"
                       "analytic_density and a JSON sidecar with KS distance and trace "
                       "moments.")
    p.add_argument("--law", required=True, choices=["gamma", "levy-area", "semicircle",
                                                    "signature"])
    p.add_argument("--dim", type=_positive, default=200)
    p.add_argument("--modes", type=_positive, default=2000)
    p.add_argument("--samples", type=_positive, default=50)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--bins", type=_positive, default=50)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--timing", action="store_true", help="record wall time in the sidecar")
    p.add_argument("--out", default=None)

    p = sub.add_parser("mercer", help="Nystrom eigenvalues of the bridge covariance",
                       description="Top eigenvalues of the kernel min(s,t) - st on [0,1] by "
                       "the Nystrom method, next to the exact 1/(n^2 pi^2).")
    p.add_argument("--nodes", type=_positive, default=800)
    p.add_argument("--count", type=_positive, default=5)

    p = sub.add_parser("hadamard-check", help="signature cumulants 2 zeta(2n) q_n by contour",
                       description="Compare the coefficients 2 zeta(2n) q_n of the signature "
                       "R-transform, extracted from the Hadamard contour integral of the "
                       "digamma form with the meander series, against the direct product.")
    p.add_argument("--order", type=_positive, default=6)

    p = sub.add_parser("figures", help="400-point density tables of Gamma and ell",
                       description="Write gamma_density.csv and levy_area_density.csv, the "
                       "densities of the squared L2-norm and of the Levy area.")
    p.add_argument("--points", type=_positive, default=400)
    p.add_argument("--out-dir", default=None)
    return parser


def _validate(args) -> None:
    if args.command == "meanders" and args.count > ncpart.MAX_MEANDER:
        raise UsageError(f"fbb meanders: --count must be <= {ncpart.MAX_MEANDER}")
    if args.command in ("cumulants", "moments") and args.law == "signature" \
            and args.count > TensorSignature().horizon:
        raise UsageError(f"fbb {args.command}: signature cumulants known up to order "
                         f"{TensorSignature().horizon}")
    if args.command == "density" and args.points < 2:
        raise UsageError("fbb density: --points must be >= 2")
    if args.command == "edge" and args.horizon < 16:
        raise UsageError("fbb edge: --horizon must be >= 16")
    if args.command == "mc":
        if args.law != "signature" and args.modes < 10:
            raise UsageError("fbb mc: --modes must be >= 10")
        if args.dim < 2:
            raise UsageError("fbb mc: --dim must be >= 2")
        if args.law == "signature" and args.dim > rmt.MAX_TENSOR_DIM:
            raise UsageError(f"fbb mc: signature model needs --dim <= {rmt.MAX_TENSOR_DIM}")
    if args.command == "mercer":
        if args.nodes < 100:
            raise UsageError("fbb mercer: --nodes must be >= 100")
        if args.count > 10:
            raise UsageError("fbb mercer: --count must be <= 10")


def _describe(args) -> str:
    skip = {"command"}
    opts = " ".join(f"--{k.replace('_', '-')}={v}" for k, v in sorted(vars(args).items())
                    if k not in skip and v is not None)
    return f"{args.command} {opts}".strip()


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
        _validate(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except SystemExit as exc:            # --help
        return int(exc.code or 0)
    try:
        if args.command == "mc":
            text, meta = cmd_mc(args)
            path = _resolve_out(args.out, f"mc_{args.law}.csv")
            _emit(text, path)
            doc = json.dumps(meta, indent=2, sort_keys=True) + "\n"
            if path is None:
                sys.stderr.write(doc)
            else:
                _emit(doc, path + ".json")
        elif args.command == "hadamard-check":
            text, ok, worst, self_test = cmd_hadamard(args)
            sys.stdout.write(text)
            if not ok:
                print(f"fbb hadamard-check: contour mismatch {worst:.3e}, geometric "
                      f"self-test {self_test:.3e}", file=sys.stderr)
                return 2
        elif args.command == "figures":
            cmd_figures(args)
        else:
            handler = {"cumulants": cmd_cumulants, "moments": cmd_moments,
                       "meanders": cmd_meanders, "density": cmd_density, "edge": cmd_edge,
                       "mercer": cmd_mercer}[args.command]
            text = handler(args)
            default = {"density": f"{getattr(args, 'law', '')}_density.csv",
                       "edge": f"edge_{getattr(args, 'law', '')}.{getattr(args, 'format', 'json')}"}
            name = default.get(args.command)
            out = getattr(args, "out", None)
            _emit(text, _resolve_out(out, name) if name else None)
    except (RangeError, ArityError) as exc:
        print(f"fbb {_describe(args)}: {exc}", file=sys.stderr)
        return 1
    except (FBBError, ArithmeticError, ValueError) as exc:
        print(f"fbb {_describe(args)}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
