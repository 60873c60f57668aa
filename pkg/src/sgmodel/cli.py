"""Command-line front end: validate, plan, eigen, simulate, verify, report.

Exit codes: 0 success/pass, 1 verification fail, 2 infeasible target,
3 config/validation error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .config import RunConfig, config_hash, load_config, validate_config
from .errors import CapabilityError, InfeasibleTargetError, SGModelError, StaleArtifactError
from .karhunen_loeve import build_kl_model, save_eigensystem, simulate_kl, two_grid_eigensystem
from .montecarlo import verify_plan
from .series import ModelPlan, choose_N, evaluate_model, load_decomposition
from .subgaussian import sample, substream

SCHEMA_VERSION = 1


def _plan_record(plan: ModelPlan, cfg: RunConfig) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "config_hash": cfg.config_hash,
        "feasible": plan.feasible,
        "N": plan.n_terms,
        "c_N": plan.c_N,
        "bound_eq1": plan.report.bound_eq1,
        "eq1_ok": plan.report.eq1_ok,
        "eq2_ok": plan.report.eq2_ok,
        "margin": plan.report.margin,
        "eq2_margin": plan.report.eq2_margin,
        "tail_bound": plan.report.tail_bound,
        "route": plan.route,
        "mode": plan.mode,
    }


def _make_plan(cfg: RunConfig, mode: str | None = None) -> ModelPlan:
    mode = mode or cfg.mode
    if cfg.route.startswith("series"):
        dec = load_decomposition(cfg.series_manifest)
        return choose_N(dec, cfg.target, cfg.spec, N_max=dec.n_terms)
    return build_kl_model(
        cfg.kernel,
        cfg.spec,
        cfg.source,
        cfg.target,
        route=cfg.route,
        n_nodes=cfg.n_nodes,
        modes=cfg.modes,
        safety=cfg.safety,
        mode=mode,
    )


def _check_stale(cfg: RunConfig, plan_record: dict):
    if plan_record.get("config_hash") != cfg.config_hash:
        raise StaleArtifactError(
            "plan was produced from a different config (hash mismatch); re-run plan"
        )


def cmd_validate(args) -> int:
    cfg = load_config(args.config)
    problems = validate_config(cfg)
    for msg in problems:
        print(f"FAIL: {msg}")
    if not problems:
        print("OK: configuration is runnable")
    return 0 if not problems else 3


def cmd_plan(args) -> int:
    cfg = load_config(args.config)
    problems = validate_config(cfg)
    if problems:
        for msg in problems:
            print(f"FAIL: {msg}", file=sys.stderr)
        return 3
    plan = _make_plan(cfg, mode=args.mode)
    record = _plan_record(plan, cfg)
    text = json.dumps(record, sort_keys=True, indent=2)
    print(text)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "plan.json").write_text(text + "\n")
        if plan.eigensystem is not None:
            save_eigensystem(plan.eigensystem, out)
    return 0 if plan.feasible else 2


def cmd_eigen(args) -> int:
    cfg = load_config(args.config)
    if cfg.kernel is None:
        print("FAIL: eigen requires a [kernel] section", file=sys.stderr)
        return 3
    eig = two_grid_eigensystem(cfg.kernel, cfg.n_nodes, cfg.modes, safety=cfg.safety)
    out = Path(args.out or ".")
    save_eigensystem(eig, out)
    print(f"wrote eigendata for {eig.n_modes} modes to {out}")
    return 0


def _load_plan_record(path: str) -> dict:
    return json.loads(Path(path).read_text())


def cmd_simulate(args) -> int:
    cfg = load_config(args.config)
    record = _load_plan_record(args.plan)
    _check_stale(cfg, record)
    if not record.get("feasible", False):
        print("FAIL: plan is infeasible; nothing to simulate", file=sys.stderr)
        return 2
    plan = _make_plan(cfg, mode=record.get("mode"))
    if plan.n_terms != record["N"]:
        raise StaleArtifactError("re-derived plan disagrees with plan.json; re-run plan")
    n_paths = args.paths or 100
    seed = cfg.seed if args.seed is None else args.seed
    if cfg.route.startswith("series"):
        dec = plan.decomposition
        paths = np.empty((n_paths, dec.grid.n))
        for i in range(n_paths):
            xi = sample(cfg.source, substream(seed, i), size=plan.n_terms)
            paths[i] = evaluate_model(dec, plan.n_terms, xi)
        grid_t = dec.grid.t
    else:
        paths = simulate_kl(plan, n_paths, seed)
        grid_t = plan.grid.t
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    dest = out / "paths.csv"
    with open(dest, "w") as fh:
        fh.write(",".join(repr(float(t)) for t in grid_t) + "\n")
        for row in paths:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")
    print(f"wrote {n_paths} paths to {dest}")
    return 0


def cmd_verify(args) -> int:
    cfg = load_config(args.config)
    record = _load_plan_record(args.plan)
    _check_stale(cfg, record)
    if not record.get("feasible", False):
        print("FAIL: plan is infeasible; nothing to verify", file=sys.stderr)
        return 2
    if cfg.route.startswith("series"):
        raise CapabilityError("verification requires a kernel-based route")
    plan = _make_plan(cfg, mode=record.get("mode"))
    if plan.n_terms != record["N"]:
        raise StaleArtifactError("re-derived plan disagrees with plan.json; re-run plan")
    n_paths = args.paths or cfg.n_paths
    seed = cfg.seed if args.seed is None else args.seed
    report = verify_plan(plan, cfg.kernel, cfg.source, n_paths=n_paths, seed=seed)
    payload = json.loads(report.to_json())
    payload["schema_version"] = SCHEMA_VERSION
    payload["config_hash"] = cfg.config_hash
    text = json.dumps(payload, sort_keys=True, indent=2)
    print(text)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "verify.json").write_text(text + "\n")
        if args.norms:
            from .montecarlo import per_path_norms

            norms = per_path_norms(plan, cfg.kernel, cfg.source, n_paths, seed)
            with open(out / "norms.csv", "w") as fh:
                fh.write("path,lp_norm\n")
                for i, v in enumerate(norms):
                    fh.write(f"{i},{float(v)!r}\n")
    return 0 if report.passed else 1


def cmd_report(args) -> int:
    cfg = load_config(args.config)
    out = Path(args.out or ".")
    plan_path = out / "plan.json"
    if not plan_path.exists():
        print(f"FAIL: no plan.json under {out}", file=sys.stderr)
        return 3
    record = _load_plan_record(plan_path)
    _check_stale(cfg, record)
    print(f"route {record['route']} (mode {record['mode']})")
    print(f"feasible: {record['feasible']}  N = {record['N']}")
    print(f"c_N = {record['c_N']:.6g}  admissible threshold = {record['bound_eq1']:.6g}")
    print(f"conditions: eq1 {record['eq1_ok']}  eq2 {record['eq2_ok']}")
    print(f"certified tail bound = {record['tail_bound']:.3g} "
          f"(target alpha = {cfg.target.alpha})")
    verify_path = out / "verify.json"
    if verify_path.exists():
        v = json.loads(verify_path.read_text())
        print(f"verified: pass = {v['pass']}  p_hat = {v['p_hat']:.5f}  "
              f"wilson_upper = {v['wilson_upper']:.5f} over {v['n_paths']} paths")
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="sgmodel",
        description="Plan, simulate and verify truncated models of "
        "sub-Gaussian processes with certified L_p accuracy.",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    for name, fn in (
        ("validate", cmd_validate),
        ("plan", cmd_plan),
        ("eigen", cmd_eigen),
        ("simulate", cmd_simulate),
        ("verify", cmd_verify),
        ("report", cmd_report),
    ):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="path to the run config")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--seed", type=int, default=None, help="override [numerics] seed")
        p.add_argument("--paths", type=int, default=None, help="number of paths")
        p.add_argument("--mode", choices=("consistent", "paper-literal"), default=None)
        if name in ("simulate", "verify"):
            p.add_argument("--plan", required=True, help="path to plan.json")
        if name == "verify":
            p.add_argument("--norms", action="store_true",
                           help="also write per-path L_p norms to <out>/norms.csv")
        p.set_defaults(fn=fn)
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except InfeasibleTargetError as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return 2
    except SGModelError as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
