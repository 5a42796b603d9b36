"""Command-line entry point: JSON-configured experiments with JSON/CSV reports.

Commands:
    norm        evaluate the norms of a symbol in a list of spaces
    spaces      space calculus for a pair (dual, multiplier, product, Boyd)
                plus the symbolic identity suite
    toeplitz    two-sided multiplier sandwich for the Toeplitz operator
    hankel      Nehari-distance sandwich for the Hankel operator
    nehari-l2   Hankel singular values over a truncation sweep
    factorize   outer-function factorization round-trip for an analytic symbol
    noncompact  noncompactness lower bound and separation certificate
    suite       the full acceptance battery

Reports are emitted as JSON on stdout (byte-reproducible for a fixed config
and seed, apart from the wall_time_s field); --out writes per-row CSV tables.
Exit codes: 0 all verdicts pass, 1 some verdict failed, 2 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time

import numpy as np

from .analytic import FactorizationError, analytic_factorize, riesz_norm_estimate
from .circle import FourierSeries, GridFunction, make_grid, synthesize
from .compactness import noncompactness_bound, separated_sequence
from .nehari import hankel_norm_l2, nehari_check
from .operators import brown_halmos_check
from .orlicz import PowerLogOrlicz, PowerOrlicz
from .spaces import (
    BOUNDED,
    Space,
    boyd_indices,
    boyd_indices_numeric,
    koethe_dual,
    lebesgue,
    lorentz,
    multiplier_space,
    norm,
    orlicz_space,
    product_space,
    space_identity_suite,
)
from .suite import DEFAULT_BUDGETS, run_suite

_INF = float("inf")


class ConfigError(Exception):
    """Configuration problems: parse failures, invalid spaces, bad budgets."""


# ---------------------------------------------------------------------------
# config parsing
# ---------------------------------------------------------------------------

def _num(obj, what: str) -> float:
    if obj in ("inf", "infinity"):
        return _INF
    if not isinstance(obj, (int, float)):
        raise ConfigError(f"{what} must be a number or 'inf', got {obj!r}")
    return float(obj)


def parse_space(obj) -> Space:
    if obj == "bounded" or obj == {"bounded": {}}:
        return BOUNDED
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ConfigError(f"space spec must be a single-key object, got {obj!r}")
    tag, params = next(iter(obj.items()))
    if tag == "bounded":
        return BOUNDED
    if not isinstance(params, dict):
        raise ConfigError(f"space parameters must be an object, got {params!r}")
    try:
        if tag == "lebesgue":
            return lebesgue(_num(params["p"], "lebesgue p"))
        if tag == "lorentz":
            return lorentz(_num(params["p"], "lorentz p"),
                           _num(params["q"], "lorentz q"))
        if tag == "orlicz":
            family = params.get("family", "power")
            if family == "power":
                return orlicz_space(PowerOrlicz(_num(params["p"], "orlicz p")))
            if family == "power-log":
                return orlicz_space(PowerLogOrlicz(_num(params["p"], "orlicz p"),
                                                   _num(params.get("a", 0.0),
                                                        "orlicz a")))
            raise ConfigError(f"unknown orlicz family {family!r}")
    except KeyError as exc:
        raise ConfigError(f"space spec {tag!r} is missing parameter {exc}") from exc
    except ValueError as exc:
        raise ConfigError(f"invalid space parameters: {exc}") from exc
    raise ConfigError(f"unknown space tag {tag!r}")


def parse_symbol(obj, seed: int) -> FourierSeries:
    if isinstance(obj, dict) and "coeffs" in obj:
        obj = obj["coeffs"]
    if isinstance(obj, list):
        coeffs = {}
        for triple in obj:
            if not (isinstance(triple, list) and len(triple) == 3):
                raise ConfigError(f"symbol coefficients are [n, re, im] triples, "
                                  f"got {triple!r}")
            n, re, im = triple
            coeffs[int(n)] = complex(float(re), float(im))
        return FourierSeries(coeffs)
    if isinstance(obj, dict) and "family" in obj:
        family = obj["family"]
        degree = int(obj.get("degree", 8))
        if degree < 1:
            raise ConfigError("symbol family degree must be positive")
        if family == "hilbert":
            return FourierSeries({n: 1.0 / n for n in range(1, degree + 1)})
        if family == "random":
            rng = np.random.default_rng([seed, degree])
            lo = int(obj.get("low", -degree))
            z = rng.standard_normal(2 * (degree - lo + 1)).view(np.complex128)
            return FourierSeries({n: z[i] for i, n in enumerate(range(lo, degree + 1))})
        raise ConfigError(f"unknown symbol family {family!r}")
    raise ConfigError(f"cannot parse symbol descriptor {obj!r}")


def parse_budgets(obj) -> dict:
    budgets = dict(DEFAULT_BUDGETS)
    if obj is None:
        return budgets
    if not isinstance(obj, dict):
        raise ConfigError("budgets must be an object")
    for key, value in obj.items():
        if key == "eps":
            value = float(value)
            if not 0.0 < value < 1.0:
                raise ConfigError("budget eps must lie in (0, 1)")
        else:
            value = int(value)
            if value <= 0:
                raise ConfigError(f"budget {key} must be positive, got {value}")
        budgets[key] = value
    n = budgets["N"]
    if n % 2 != 0 or n < 8:
        raise ConfigError(f"budget N must be even and >= 8, got {n}")
    if 2 * budgets["d"] >= n:
        raise ConfigError(f"budget overflow: polynomial degree d={budgets['d']} "
                          f"exceeds the Nyquist band of N={n}")
    if 2 * budgets["M"] >= n:
        raise ConfigError(f"budget overflow: truncation M={budgets['M']} "
                          f"exceeds the Nyquist band of N={n}")
    return budgets


def load_config(path: str, seed_override) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be a JSON object")
    if seed_override is not None:
        cfg["seed"] = int(seed_override)
    if "seed" not in cfg:
        raise ConfigError("seed is mandatory (config key 'seed' or --seed); "
                          "wall-clock defaults are not used")
    cfg["seed"] = int(cfg["seed"])
    cfg["budgets"] = parse_budgets(cfg.get("budgets"))
    return cfg


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------

def _est(e) -> dict:
    out = {"value": e.value, "mode": e.mode}
    if e.note:
        out["note"] = e.note
    return out


def _space_str(result) -> dict:
    out = {"outcome": result.outcome}
    if result.space is not None:
        out["space"] = str(result.space)
        out["approx"] = result.space.approx
        out["quasi"] = result.space.is_quasi
    if result.constants:
        out["constants"] = list(result.constants)
    if result.reason:
        out["reason"] = result.reason
    return out


def _verdict(name: str, ok: bool, detail: str = "", exploratory: bool = False) -> dict:
    status = "exploratory" if exploratory else ("pass" if ok else "fail")
    return {"name": name, "status": status, "detail": detail}


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_norm(cfg):
    budgets = cfg["budgets"]
    ctx = make_grid(budgets["N"])
    a = parse_symbol(cfg.get("symbol"), cfg["seed"])
    if 2 * a.degree >= ctx.n:
        raise ConfigError(f"budget overflow: symbol degree {a.degree} exceeds "
                          f"the Nyquist band of N={ctx.n}")
    specs = cfg.get("spaces")
    if not specs:
        raise ConfigError("the norm command needs a nonempty 'spaces' list")
    f = synthesize(a, ctx)
    results, rows = {}, []
    for obj in specs:
        sp = parse_space(obj)
        est = norm(f, sp)
        results[str(sp)] = _est(est)
        rows.append({"space": str(sp), "value": est.value, "mode": est.mode})
    return {"norms": results}, [], rows


def cmd_spaces(cfg):
    X = parse_space(cfg.get("source_space"))
    Y = parse_space(cfg.get("target_space"))
    mult = multiplier_space(X, Y)
    prod = product_space(X, Y)
    bx, by = boyd_indices(X), boyd_indices(Y)
    numeric = boyd_indices_numeric(X, n=cfg["budgets"].get("boyd_n", 8192))
    suite = space_identity_suite()
    results = {
        "source": str(X), "target": str(Y),
        "dual_source": str(koethe_dual(X)), "dual_target": str(koethe_dual(Y)),
        "multiplier": _space_str(mult), "product": _space_str(prod),
        "boyd_source": list(bx), "boyd_target": list(by),
        "boyd_source_numeric": {"alpha": numeric.alpha, "beta": numeric.beta,
                                "flagged": numeric.flagged},
        "identity_suite": {"entries": len(suite.entries),
                           "failures": [e.params for e in suite.failures()]},
    }
    verdicts = [
        _verdict("identity-suite", suite.ok,
                 f"{len(suite.entries)} identities checked"),
        _verdict("boyd-numeric-vs-closed-form",
                 abs(numeric.alpha - bx[0]) <= 0.05 and abs(numeric.beta - bx[1]) <= 0.05,
                 "numeric estimator within 0.05 of the closed form"),
    ]
    rows = [{"check": e.name, "params": e.params, "ok": e.ok} for e in suite.entries]
    return results, verdicts, rows


def cmd_toeplitz(cfg):
    budgets = cfg["budgets"]
    a = parse_symbol(cfg.get("symbol"), cfg["seed"])
    X = parse_space(cfg.get("source_space"))
    Y = parse_space(cfg.get("target_space"))
    rep = brown_halmos_check(a, X, Y, degree=budgets["d"], restarts=budgets["r"],
                             seed=cfg["seed"], ctx=make_grid(budgets["N"]))
    results = {"multiplier_space": _space_str(rep.multiplier), "verdict": rep.verdict}
    verdicts = []
    if rep.verdict == "unbounded for every nonzero symbol":
        results["note"] = "trivial multiplier space"
        verdicts.append(_verdict("zero-multiplier-space", True, rep.verdict))
        rows = []
    else:
        results.update({
            "multiplier_norm": _est(rep.multiplier_norm),
            "operator_norm": _est(rep.operator_norm),
            "riesz_norm": _est(rep.riesz_norm),
            "slacks": rep.slacks,
        })
        verdicts.append(_verdict(
            "toeplitz-lower-bound", bool(rep.lower_ok),
            f"operator norm >= {rep.slacks['lower']} * multiplier norm"))
        verdicts.append(_verdict(
            "toeplitz-upper-bound", bool(rep.upper_ok),
            f"operator norm <= {rep.slacks['upper']} * riesz * multiplier norm"))
        rows = [{"quantity": "multiplier_norm", "value": rep.multiplier_norm.value},
                {"quantity": "operator_norm", "value": rep.operator_norm.value},
                {"quantity": "riesz_norm", "value": rep.riesz_norm.value}]
    return results, verdicts, rows


def cmd_hankel(cfg):
    budgets = cfg["budgets"]
    a = parse_symbol(cfg.get("symbol"), cfg["seed"])
    X = parse_space(cfg.get("source_space"))
    Y = parse_space(cfg.get("target_space"))
    rep = nehari_check(a, X, Y, corrector_degree=budgets["dc"],
                       degree=budgets["d"], restarts=budgets["r"],
                       seed=cfg["seed"], ctx=make_grid(budgets["N"]))
    results = {"verdict": rep.verdict, "conditions": rep.conditions}
    verdicts = []
    rows = []
    if rep.distance is not None:
        results.update({
            "distance": _est(rep.distance.value),
            "hankel_norm": _est(rep.hankel_norm),
            "riesz_norm": _est(rep.riesz_norm),
            "observed_ratio": rep.observed_ratio,
            "slacks": rep.slacks,
        })
        verdicts.append(_verdict(
            "hankel-upper-sandwich", bool(rep.upper_ok),
            "hankel norm <= riesz-upper * distance * sandwich slack",
            exploratory=not rep.hypothesis_ok))
        rows = [{"quantity": "distance", "value": rep.distance.value.value},
                {"quantity": "hankel_norm", "value": rep.hankel_norm.value},
                {"quantity": "observed_ratio", "value": rep.observed_ratio}]
    else:
        verdicts.append(_verdict("zero-multiplier-space", True, rep.verdict))
    return results, verdicts, rows


def cmd_nehari_l2(cfg):
    budgets = cfg["budgets"]
    a = parse_symbol(cfg.get("symbol"), cfg["seed"])
    sweep = cfg.get("m_sweep")
    if sweep is None:
        sweep, m = [], 8
        while m <= budgets["M"]:
            sweep.append(m)
            m *= 2
    sweep = [int(m) for m in sweep]
    if not sweep or min(sweep) < 1:
        raise ConfigError("m_sweep must list positive truncation sizes")
    values = [hankel_norm_l2(a, m).value for m in sweep]
    monotone = all(b >= a_ - 1e-12 for a_, b in zip(values, values[1:]))
    results = {"sweep": sweep, "sigmas": values}
    verdicts = [_verdict("hankel-truncation-monotone", monotone,
                         "largest singular value is non-decreasing in M")]
    rows = [{"M": m, "sigma": v} for m, v in zip(sweep, values)]
    return results, verdicts, rows


def cmd_factorize(cfg):
    budgets = cfg["budgets"]
    ctx = make_grid(budgets["N"])
    a = parse_symbol(cfg.get("symbol"), cfg["seed"])
    if any(n < 0 for n in a.support()):
        raise ConfigError("factorize needs an analytic symbol (no negative modes)")
    split = float(cfg.get("modulus_split", 0.5))
    if not 0.0 <= split <= 1.0:
        raise ConfigError("modulus_split must lie in [0, 1]")
    h_grid = synthesize(a, ctx)
    mags = np.abs(h_grid.samples)
    mod_f = GridFunction(ctx, mags ** split)
    mod_g = GridFunction(ctx, mags ** (1.0 - split))
    try:
        x, y = analytic_factorize(a, mod_f, mod_g)
    except FactorizationError as exc:
        return ({"error": str(exc)},
                [_verdict("factorization-round-trip", False, str(exc))], [])
    xg = synthesize(x, ctx).samples
    yg = synthesize(y, ctx).samples
    scale = float(np.max(np.abs(h_grid.samples)))
    recon = float(np.max(np.abs(xg * yg - h_grid.samples))) / scale
    modulus = float(np.max(np.abs(np.abs(xg) - mod_f.samples))) / max(
        float(np.max(mod_f.samples)), 1e-300)
    ok = recon <= 1e-6 and modulus <= 1e-6
    results = {"reconstruction_error": recon, "modulus_error": modulus,
               "modulus_split": split}
    verdicts = [_verdict("factorization-round-trip", ok,
                         "x*y reproduces the symbol with the prescribed moduli")]
    rows = [{"quantity": "reconstruction_error", "value": recon},
            {"quantity": "modulus_error", "value": modulus}]
    return results, verdicts, rows


def cmd_noncompact(cfg):
    budgets = cfg["budgets"]
    a = parse_symbol(cfg.get("symbol"), cfg["seed"])
    Y = parse_space(cfg.get("target_space", {"lebesgue": {"p": 2}}))
    ctx = make_grid(budgets["N"])
    bound = noncompactness_bound(a, Y, ctx)
    cert = separated_sequence(a, budgets["eps"], budgets["L"], ctx)
    results = {
        "noncompactness_lower_bound": bound,
        "target": str(Y),
        "certificate": {
            "indices": list(cert.indices), "epsilon": cert.epsilon,
            "peak": cert.peak, "peak_index": cert.peak_index,
            "k0": cert.k0, "k1": cert.k1,
            "pairwise_min_l1": cert.pairwise_min, "bound": cert.bound,
        },
    }
    verdicts = [_verdict("separation-certificate",
                         cert.pairwise_min >= cert.bound - 1e-10,
                         "brute-force pairwise L1 separations meet the bound")]
    rows = [{"index": k} for k in cert.indices]
    return results, verdicts, rows


def cmd_suite(cfg):
    budgets = dict(cfg["budgets"])
    budgets["seed"] = cfg["seed"]
    outcomes = run_suite(budgets)
    results = {"criteria": [{
        "cid": r.cid, "name": r.name, "passed": r.passed, "details": r.details,
    } for r in outcomes]}
    verdicts = [_verdict(f"criterion-{r.cid}", r.passed, r.name) for r in outcomes]
    rows = [{"cid": r.cid, "name": r.name, "passed": r.passed,
             "wall_time_s": round(r.wall_time_s, 3)} for r in outcomes]
    return results, verdicts, rows


COMMANDS = {
    "norm": cmd_norm,
    "spaces": cmd_spaces,
    "toeplitz": cmd_toeplitz,
    "hankel": cmd_hankel,
    "nehari-l2": cmd_nehari_l2,
    "factorize": cmd_factorize,
    "noncompact": cmd_noncompact,
    "suite": cmd_suite,
}


def run(command: str, config_path: str, out_path=None, seed_override=None):
    """Execute one command; returns (report dict, exit code)."""
    t0 = time.time()
    cfg = load_config(config_path, seed_override)
    results, verdicts, rows = COMMANDS[command](cfg)
    report = {
        "command": command,
        "config": {k: v for k, v in cfg.items()},
        "results": results,
        "verdicts": verdicts,
        "wall_time_s": round(time.time() - t0, 3),
    }
    if out_path and rows:
        with open(out_path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            writer.writerows(rows)
    failed = any(v["status"] == "fail" for v in verdicts)
    return report, (1 if failed else 0)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hardy",
        description="Toeplitz/Hankel operators between Hardy-type spaces: "
                    "norms, space calculus, and bound verification")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="path to a JSON config")
        p.add_argument("--out", default=None, help="optional CSV output path")
        p.add_argument("--seed", default=None, type=int,
                       help="overrides the config seed")
    args = parser.parse_args(argv)
    try:
        report, code = run(args.command, args.config, args.out, args.seed)
    except ConfigError as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True), file=sys.stderr)
        return 2
    print(json.dumps(report, indent=2, sort_keys=True, default=str))
    return code


if __name__ == "__main__":
    sys.exit(main())
