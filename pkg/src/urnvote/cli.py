"""``urnvote`` command line tool.

Exit status: 0 on success, 1 when a checked invariant fails, 2 on bad usage
or an invalid instance.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from fractions import Fraction

import numpy as np

from urnvote import io as uio
from urnvote.condorcet import coeff_a, coeff_b, conjecture_scan
from urnvote.engine import (
    SYSTEMS,
    SimulationConfig,
    estimate_failure,
    minimal_voters,
    voter_budget,
    worst_case_failure,
)
from urnvote.landmarks import build_flexible_scheme, margin_floor, validate_landmarks
from urnvote.model import BichromaticInstance, InstanceError, MulticolorInstance, lower_bound_instance
from urnvote.multicolor import kernel_margin_floor, multicolor_vote_kernel
from urnvote.plurality2 import build_plurality_scheme, expected_shares, margin
from urnvote.scoring import efficiency_experiment, induced_kernel, induced_strategy

SCAN_HEADER = ["p", "min_beta", "mass_residual", "tail_at_K"]
SCORING_HEADER = ["eps", "m_scoring", "m_plurality", "ratio"]
SCALING_HEADER = ["n", "eps", "m_min"]
MAX_TALLY = 2**62


class UsageError(Exception):
    pass


def worker_count(requested: int | None) -> int:
    """Workers to use: ``requested`` (default 1), capped by ``URNVOTE_THREADS``."""
    cap = os.environ.get("URNVOTE_THREADS")
    n = requested if requested is not None else (int(cap) if cap else 1)
    if cap:
        n = min(n, int(cap))
    return max(1, n)


def parse_float_list(text: str) -> list:
    try:
        return [uio.decode_number(tok) for tok in text.split(",") if tok.strip()]
    except InstanceError as exc:
        raise UsageError(str(exc)) from exc


def parse_range(text: str) -> list[float]:
    """``start:stop:step`` (stop included) or a comma list."""
    if ":" not in text:
        return [float(v) for v in parse_float_list(text)]
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"range must look like start:stop:step, got {text!r}")
    start, stop, step = (float(v) for v in parts)
    if step <= 0:
        raise UsageError("range step must be positive")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + k * step, 12) for k in range(count)]


def _num(v):
    return uio.encode_number(v)


def _vec(values) -> list:
    return [_num(v) for v in values]


def _instance(args):
    if args.instance is None:
        raise UsageError("--instance is required")
    return uio.load_instance(args.instance)


# -- scheme ----------------------------------------------------------------


def cmd_scheme(args) -> int:
    if args.kind == "plurality":
        inst = _instance(args)
        if not isinstance(inst, BichromaticInstance):
            raise UsageError("plurality schemes need a two-color instance")
        s = build_plurality_scheme(inst)
        bad = []
        for i in range(1, inst.n + 1):
            for j in range(1, inst.n + 1):
                if i != j and margin(s, inst, i, j) < abs(i - j) / s.m_norm:
                    bad.append([i, j])
        cap = 2 * inst.n * (inst.n - 1) / inst.eps
        doc = {
            "kind": "plurality",
            "M": _num(s.m_norm),
            "M_cap": _num(cap),
            "b": _vec(s.b_weights),
            "r": _vec(s.r_weights),
            "blue": _vec(s.blue_votes),
            "red": _vec(s.red_votes),
            "violations": bad,
        }
        ok = not bad and s.m_norm <= cap
    else:
        doc_in = uio.read_json(args.instance)
        probs = doc_in.get("probs")
        if probs is None:
            raise UsageError("flexible schemes need an instance with 'probs'")
        if "landmarks" in doc_in:
            points = doc_in["landmarks"]
        else:
            size = args.landmarks
            points = [Fraction(k, size - 1) for k in range(size)]
        lms = validate_landmarks(points)
        s = build_flexible_scheme(probs, lms)
        bad = []
        for i in range(1, s.n + 1):
            for j in range(1, s.n + 1):
                if s.probs[i - 1] != s.probs[j - 1] and s.margin(i, j) < margin_floor(s, i, j):
                    bad.append([i, j])
        doc = {
            "kind": "flexible",
            "landmarks": _vec(lms.points),
            "phi": list(s.phi),
            "M": _num(s.m_norm),
            "blue": _vec(s.blue_votes),
            "red": _vec(s.red_votes),
            "violations": bad,
        }
        ok = not bad
    uio.write_json(args.out, doc)
    return 0 if ok else 1


# -- kernel ----------------------------------------------------------------


def cmd_kernel(args) -> int:
    inst = _instance(args)
    violations = []
    if isinstance(inst, MulticolorInstance):
        kernel = multicolor_vote_kernel(inst, worker_count(args.workers))
        floor = kernel_margin_floor(inst)
        system = "multicolor"
    else:
        if args.system == "scoring":
            kernel = induced_kernel(induced_strategy(inst), inst)
            floor = None
        else:
            s = build_plurality_scheme(inst)
            kernel = [expected_shares(s, inst, i) for i in range(1, inst.n + 1)]
            floor = 1 / s.m_norm
        system = args.system
    n = len(kernel)
    for i in range(n):
        if abs(sum(kernel[i]) - 1) > 1e-12 or min(kernel[i]) < 0:
            violations.append([i + 1, i + 1])
        for j in range(n):
            if i == j:
                continue
            gap = kernel[i][i] - kernel[i][j]
            need = 0 if floor is None else floor
            if gap <= 0 or gap < need:
                violations.append([i + 1, j + 1])
    doc = {
        "system": system,
        "kernel": [_vec(row) for row in kernel],
        "margin_floor": None if floor is None else _num(floor),
        "violations": violations,
    }
    uio.write_json(args.out, doc)
    return 0 if not violations else 1


# -- simulate / budget / run ----------------------------------------------


def simulate_config(
    system, instance, trials, seed, m=None, eta=None, true_urn=None, scale=1.0, workers=1, terms=200
) -> SimulationConfig:
    try:
        return SimulationConfig(
            system=system,
            instance=instance,
            trials=trials,
            seed=seed,
            m=m,
            eta=eta,
            true_urn=true_urn,
            scale=scale,
            workers=workers,
            terms=terms,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def stats_document(stats, eta=None) -> dict:
    doc = stats.to_dict()
    doc["eta"] = eta
    return doc


def run_simulation(config: SimulationConfig, out, check: bool = False) -> int:
    if voter_budget(config) > MAX_TALLY:
        raise UsageError("voter budget exceeds the tally range; lower --scale")
    stats = estimate_failure(config)
    uio.write_json(out, stats_document(stats, config.eta))
    ok = stats.ci95[0] <= stats.rate <= stats.ci95[1]
    if check and config.eta is not None:
        sigma = math.sqrt(config.eta * (1 - config.eta) / config.trials)
        ok = ok and stats.rate <= config.eta + 3 * sigma
    return 0 if ok else 1


def cmd_simulate(args) -> int:
    if (args.m is None) == (args.eta is None):
        raise UsageError("pass exactly one of --m and --eta")
    config = simulate_config(
        args.system,
        _instance(args),
        args.trials,
        args.seed,
        m=args.m,
        eta=args.eta,
        true_urn=args.true_urn,
        scale=args.scale,
        workers=worker_count(args.workers),
        terms=args.terms,
    )
    return run_simulation(config, args.out, args.check)


def cmd_budget(args) -> int:
    config = simulate_config(args.system, _instance(args), 1, 0, eta=args.eta, scale=args.scale)
    try:
        m = voter_budget(config)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    uio.write_json(args.out, {"system": args.system, "eta": args.eta, "scale": args.scale, "m": m})
    return 0


def run_experiment(config: dict, base_dir=".") -> int:
    """Run a simulation described by a JSON config.

    Required keys: ``system``, ``instance`` (path or inline object),
    ``trials``, ``seed`` and exactly one of ``eta`` / ``m``. Optional:
    ``true_urn``, ``scale``, ``workers``, ``terms``, ``out``, ``check``.
    """
    for key in ("system", "instance", "trials", "seed"):
        if key not in config:
            raise UsageError(f"config is missing {key!r}")
    if ("eta" in config) == ("m" in config):
        raise UsageError("config must set exactly one of 'eta' and 'm'")
    source = config["instance"]
    if isinstance(source, str):
        path = source if os.path.isabs(source) else os.path.join(base_dir, source)
        inst = uio.load_instance(path)
    else:
        inst = uio.instance_from_dict(source)
    cfg = simulate_config(
        config["system"],
        inst,
        int(config["trials"]),
        int(config["seed"]),
        m=config.get("m"),
        eta=config.get("eta"),
        true_urn=config.get("true_urn"),
        scale=float(config.get("scale", 1.0)),
        workers=worker_count(config.get("workers")),
        terms=int(config.get("terms", 200)),
    )
    out = config.get("out")
    if out and not os.path.isabs(out):
        out = os.path.join(base_dir, out)
    return run_simulation(cfg, out, bool(config.get("check", False)))


def cmd_run(args) -> int:
    try:
        config = uio.read_json(args.config)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    return run_experiment(config, os.path.dirname(os.path.abspath(args.config)))


# -- coefficient tables and scans -----------------------------------------


def coefficient_rows(table: str, max_k: int, max_l: int) -> list[list]:
    rows = []
    for k in range(max_k + 1):
        for l in range(max_l + 1):
            value = coeff_b(k, l) if table == "b" else coeff_a(k, l)
            rows.append([k, l, str(value)])
    return rows


def cmd_coeffs(args) -> int:
    rows = coefficient_rows(args.table, args.max_k, args.max_l)
    if args.format == "csv":
        uio.write_csv(args.out, ["k", "l", args.table], rows)
    else:
        uio.write_json(args.out, {"table": args.table, "entries": [{"k": k, "l": l, "value": v} for k, l, v in rows]})
    return 0


def cmd_conjecture_scan(args) -> int:
    ps = parse_range(args.p)
    if any(not 0.5 < p < 1 for p in ps):
        raise UsageError("scan values must lie in (1/2, 1)")
    rows = conjecture_scan(ps, args.step, args.terms)
    uio.write_csv(args.out, SCAN_HEADER, [[r.p, r.min_beta, r.mass_residual, r.tail_at_K] for r in rows])
    return 0


def cmd_scoring_experiment(args) -> int:
    rows = efficiency_experiment(
        args.n, parse_float_list(args.eps), args.target, args.trials, args.seed, worker_count(args.workers)
    )
    uio.write_csv(args.out, SCORING_HEADER, [[r[h] for h in SCORING_HEADER] for r in rows])
    return 0


def scaling_study(n_list, target: float, trials: int, seed: int, workers: int = 1) -> tuple[list[list], float]:
    """Smallest electorate for the gap-weight scheme on ``I(n, 1/n)`` per ``n``,
    plus the fitted log-log slope of ``m`` against ``n``."""
    rows = []
    for n in n_list:
        inst = lower_bound_instance(n, Fraction(1, n))
        s = build_plurality_scheme(inst)
        kernel = [expected_shares(s, inst, i) for i in range(1, n + 1)]
        m = minimal_voters(lambda m: worst_case_failure(kernel, m, trials, seed, (n,), workers), target)
        rows.append([n, Fraction(1, n), m])
    slope = float("nan")
    if len(rows) >= 2:
        slope = float(np.polyfit(np.log([r[0] for r in rows]), np.log([r[2] for r in rows]), 1)[0])
    return rows, slope


def cmd_scaling_study(args) -> int:
    n_list = [int(v) for v in args.n.split(",")]
    if any(n < 2 for n in n_list):
        raise UsageError("every n must be at least 2")
    rows, slope = scaling_study(n_list, args.target, args.trials, args.seed, worker_count(args.workers))
    uio.write_csv(args.out, SCALING_HEADER, rows)
    print(f"log-log slope {slope:.3f} (asymptotic exponent 5)", file=sys.stderr)
    return 0


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="urnvote", description="Voting schemes that find the true urn.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, instance=True):
        if instance:
            p.add_argument("--instance", help="instance JSON file")
        p.add_argument("--out", default="-", help="output file ('-' for stdout)")

    p = sub.add_parser("scheme", help="construct a two-color scheme and check its margins")
    p.add_argument("--kind", choices=("plurality", "flexible"), default="plurality")
    p.add_argument("--landmarks", type=int, default=10, help="uniform grid size when the instance has none")
    common(p)
    p.set_defaults(func=cmd_scheme)

    p = sub.add_parser("kernel", help="per-voter vote distribution for each true urn")
    p.add_argument("--system", choices=("plurality", "scoring"), default="plurality")
    p.add_argument("--workers", type=int)
    common(p)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("simulate", help="estimate the failure rate of an election")
    p.add_argument("--system", choices=SYSTEMS, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--eta", type=float)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--true-urn", type=int)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--terms", type=int, default=200)
    p.add_argument("--workers", type=int)
    p.add_argument("--check", action="store_true", help="exit 1 if rate exceeds eta + 3 sigma")
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("budget", help="electorate size for a target failure probability")
    p.add_argument("--system", choices=SYSTEMS, required=True)
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--scale", type=float, default=1.0)
    common(p)
    p.set_defaults(func=cmd_budget)

    p = sub.add_parser("run", help="run a simulation from a JSON config")
    p.add_argument("config")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("coeffs", help="exact series coefficients")
    p.add_argument("--max-k", type=int, default=5)
    p.add_argument("--max-l", type=int, default=5)
    p.add_argument("--table", choices=("b", "a"), default="b")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    common(p, instance=False)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("conjecture-scan", help="numerical checks of the ranking density")
    p.add_argument("--p", default="0.55:0.95:0.05")
    p.add_argument("--terms", type=int, default=200)
    p.add_argument("--step", type=float, default=1e-3)
    common(p, instance=False)
    p.set_defaults(func=cmd_conjecture_scan)

    p = sub.add_parser("scoring-experiment", help="electorate sizes: scoring rule vs gap weights")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--eps", default="0.2,0.1,0.05")
    p.add_argument("--target", type=float, default=0.9)
    p.add_argument("--trials", type=int, default=400)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int)
    common(p, instance=False)
    p.set_defaults(func=cmd_scoring_experiment)

    p = sub.add_parser("scaling-study", help="smallest electorate on I(n, 1/n)")
    p.add_argument("--n", default="3,4,5,6")
    p.add_argument("--target", type=float, default=0.9)
    p.add_argument("--trials", type=int, default=400)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int)
    common(p, instance=False)
    p.set_defaults(func=cmd_scaling_study)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InstanceError, ValueError) as exc:
        print(f"urnvote: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
