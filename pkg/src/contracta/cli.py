"""``contracta`` command line: estimate, verify, sweep.

Exit codes: 0 success, 1 failed verification, 2 bad input, 3 map not completely positive,
4 unsupported kappa/geodesic combination.
"""

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .contraction import Budget, eta_geod, eta_relent, eta_riem, eta_tr
from .errors import ContractaError, InvalidInput, Unsupported
from .functions import parse_g, parse_kappa
from .geometry import geodesic_kind_for
from .jsonio import SpecError, estimate_to_json, load_channel
from .qubit import AffineQubitMap, cq_closed_form, cq_map
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_NOT_CP = 3
EXIT_UNSUPPORTED = 4

SWEEP_COLUMNS = ("alpha", "tau", "kappa", "status", "eta_riem", "closed_form", "closed_form_kind",
                 "gap", "lower", "upper", "eta_tr", "converged")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SpecError(message)


def _seed(args) -> int:
    env = os.environ.get("CONTRACTA_SEED")
    if env is None or env == "":
        return args.seed
    try:
        return int(env)
    except ValueError:
        raise SpecError(f"CONTRACTA_SEED must be an integer, got {env!r}") from None


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.12g}"
    return str(x)


# ---------------------------------------------------------------- estimate


def cmd_estimate(args) -> int:
    phi = load_channel(args.channel)
    budget = Budget(args.starts, args.iters)
    seed = _seed(args)

    if isinstance(phi, AffineQubitMap) and not phi.is_cp():
        if args.coef != "tr":
            print("error: map is not completely positive", file=sys.stderr)
            return EXIT_NOT_CP
        if not phi.is_positive():
            print("error: map is not positive", file=sys.stderr)
            return EXIT_NOT_CP

    if args.coef == "tr":
        est = eta_tr(phi, budget, seed)
    elif args.coef == "riem":
        est = eta_riem(phi, parse_kappa(args.kappa or "bkm"), budget, seed)
    elif args.coef == "relent":
        est = eta_relent(phi, parse_g(args.g or "xlogx"), budget, seed)
    else:
        if args.geodesic:
            kind = {"wy": "wy_arc", "bures": "bures_arc"}[args.geodesic]
            if args.kappa is not None:
                implied = geodesic_kind_for(parse_kappa(args.kappa))
                if implied != kind:
                    raise Unsupported(f"kappa {args.kappa} does not match geodesic {args.geodesic}")
        elif args.kappa is not None:
            kind = geodesic_kind_for(parse_kappa(args.kappa))
        else:
            raise SpecError("--coef geod needs --geodesic or --kappa")
        est = eta_geod(phi, kind, budget, seed)

    print(json.dumps(estimate_to_json(est)))
    return EXIT_OK


# ---------------------------------------------------------------- verify


def cmd_verify(args) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    seed = _seed(args)
    reports = [run_suite(name, seed) for name in names]
    for rep in reports:
        print("\n".join(rep.lines()))
    doc = {"seed": seed, "passed": all(r.passed for r in reports),
           "suites": [r.to_json() for r in reports]}
    text = json.dumps(doc, indent=2)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK if doc["passed"] else EXIT_VERIFY


# ---------------------------------------------------------------- sweep


def parse_grid(text: str) -> np.ndarray:
    """``a:b:n`` -> ``n`` evenly spaced points from ``a`` to ``b`` inclusive."""
    parts = text.split(":")
    if len(parts) != 3:
        raise SpecError(f"grid {text!r} is not of the form a:b:n")
    try:
        a, b = float(parts[0]), float(parts[1])
        n = int(parts[2])
    except ValueError:
        raise SpecError(f"grid {text!r} is not of the form a:b:n") from None
    if n < 1 or not (np.isfinite(a) and np.isfinite(b)):
        raise SpecError(f"grid {text!r} needs finite ends and n >= 1")
    return np.linspace(a, b, n)


def _parse_kappa_list(text: str) -> list[str]:
    names = [s.strip() for s in text.split(",") if s.strip()]
    if not names:
        raise SpecError("empty kappa list")
    for name in names:
        parse_kappa(name)
    return names


def _sweep_point(job) -> list[list[str]]:
    alpha, tau, kappa_names, starts, iters, seed = job
    lower, upper = alpha**2, (alpha**2 / (1 - tau**2) if tau**2 < 1 else np.inf)
    if alpha < 0 or alpha**2 + tau**2 > 1 + 1e-12:
        return [[_fmt(alpha), _fmt(tau), name, "not_cp"] + [""] * (len(SWEEP_COLUMNS) - 4)
                for name in kappa_names]
    phi = cq_map(alpha, tau)
    budget = Budget(starts, iters)
    rows = []
    for name in kappa_names:
        k = parse_kappa(name)
        est = eta_riem(phi, k, budget, seed)
        ref = cq_closed_form(k, alpha, tau)
        gap = est.value - ref.value if ref is not None else None
        rows.append([
            _fmt(alpha), _fmt(tau), name, "ok", _fmt(est.value),
            _fmt(None if ref is None else ref.value), "" if ref is None else ref.kind,
            _fmt(gap), _fmt(lower), _fmt(upper), _fmt(float(abs(alpha))), _fmt(est.converged),
        ])
    return rows


def sweep_csv(alphas, taus, kappa_names, starts=8, iters=400, seed=0, parallel=1) -> str:
    jobs = [(float(a), float(t), tuple(kappa_names), starts, iters, seed)
            for a in alphas for t in taus]
    if parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            chunks = list(pool.map(_sweep_point, jobs))
    else:
        chunks = [_sweep_point(j) for j in jobs]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for rows in chunks:
        writer.writerows(rows)
    return buf.getvalue()


def cmd_sweep(args) -> int:
    if args.family != "cq":
        raise SpecError(f"unknown family {args.family!r}")
    alphas = parse_grid(args.alpha_grid)
    taus = parse_grid(args.tau_grid)
    names = _parse_kappa_list(args.kappa)
    if args.parallel < 1:
        raise SpecError("--parallel must be at least 1")
    text = sweep_csv(alphas, taus, names, args.starts, args.iters, _seed(args), args.parallel)
    with open(args.out, "w", newline="") as fh:
        fh.write(text)
    return EXIT_OK


# ---------------------------------------------------------------- entry


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="contracta", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("estimate", help="estimate a contraction coefficient")
    e.add_argument("--channel", required=True, help="channel spec JSON file")
    e.add_argument("--coef", required=True, choices=("tr", "riem", "relent", "geod"))
    e.add_argument("--kappa", help="kappa name, e.g. bkm, wyd:0.3, extreme:0.5")
    e.add_argument("--g", help="g name, e.g. xlogx, quadratic, sym:gs:1")
    e.add_argument("--geodesic", choices=("wy", "bures"))
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--starts", type=int, default=8)
    e.add_argument("--iters", type=int, default=400)
    e.set_defaults(func=cmd_estimate)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=SUITES + ("all",))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", metavar="PATH", help="write the JSON report here instead of stdout")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="tabulate coefficients over a parameter grid")
    s.add_argument("--family", required=True, choices=("cq",))
    s.add_argument("--alpha-grid", required=True)
    s.add_argument("--tau-grid", required=True)
    s.add_argument("--kappa", required=True, help="comma-separated kappa names")
    s.add_argument("--out", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--parallel", type=int, default=1)
    s.add_argument("--starts", type=int, default=8)
    s.add_argument("--iters", type=int, default=400)
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except Unsupported as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (InvalidInput, ContractaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
