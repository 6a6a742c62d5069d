"""Command line entry point and parameter sweeps.

Every subcommand prints JSON (or writes CSV) and exits 0 once it has run,
also when individual checks fail.  Exit status 2 is reserved for bad
configuration or I/O.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .exceptions import KAFourierError
from .inequalities import (
    default_suite,
    hormander_bound,
    hy_ratio,
    hyp_ratio,
    paley_ratio,
)
from .measure import build_quadrature, paley_functional, superlevel_measure
from .multiplier import empirical_opnorm, verify_multiplier_theorem
from .params import Params, validate
from .pde import (
    CauchyProblem,
    heat_tstar,
    parse_initial,
    parse_time_coefficient,
    solve_heat,
    solve_wave,
    wave_tstar_selfconsistent,
)
from .symbols import MultiplierSymbol, parse_symbol
from .transform import (
    build_basis,
    build_transform,
    forward,
    kernel_eval,
    kernel_sup_estimate,
    project,
)

__all__ = ["RunConfig", "DEFAULT_CONFIG", "run_sweep", "write_bundle", "main"]

FAMILIES = ("unitarity", "hy", "paley", "multiplier", "heat", "wave")


class ConfigError(Exception):
    """Invalid configuration or unreadable input; maps to exit status 2."""


def fmt(x):
    """17 significant digits for floats, plain text otherwise."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return "%.17g" % x
    return str(x)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else ("inf" if x > 0 else "-inf" if x < 0 else "nan")
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, frozenset):
        return sorted(obj)
    return obj


def dumps(obj):
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True)


# ---------------------------------------------------------------- sweeps


@dataclass
class RunConfig:
    """Sweep description, read from JSON.

    ``params`` holds ``[N, k, a]`` triples; ``families`` selects the checks
    run for each of them.  Every numeric knob has an explicit default so the
    same file always yields the same bundle.
    """

    params: list = field(default_factory=list)
    families: list = field(default_factory=lambda: list(FAMILIES))
    p_grid: list = field(default_factory=lambda: [1.25, 1.5, 2.0])
    pq_grid: list = field(default_factory=lambda: [[2.0, 4.0], [1.5, 3.0]])
    hyp_b: list = field(default_factory=lambda: [])
    n_basis: int = 48
    seeds: list = field(default_factory=lambda: [0])
    opnorm_seed: int = 42
    opnorm_samples: int = 64
    tolerance_factor: float = 10.0
    unitarity_tol: float = 1e-8
    hy_slack: float = 1e-2
    uniformity_factor: float = 10.0
    pde_params: list = field(default_factory=list)
    pde_n_basis: int = 96
    pde_scale: float = 0.1
    pde_c: float = math.sqrt(2.0)
    pde_p: float = 2.0
    pde_T_fraction: float = 0.5
    pde_residual_tol: float = 1e-6
    output_dir: str = "sweep_out"
    workers: int = 1

    @classmethod
    def from_dict(cls, d):
        if not isinstance(d, dict):
            raise ConfigError("config must be a JSON object")
        known = set(cls.__dataclass_fields__)
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**d)
        cfg.check()
        return cfg

    @classmethod
    def load(cls, path):
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc

    def check(self):
        for t in list(self.params) + list(self.pde_params):
            if not (isinstance(t, (list, tuple)) and len(t) == 3):
                raise ConfigError(f"params entries must be [N, k, a], got {t!r}")
        bad = set(self.families) - set(FAMILIES)
        if bad:
            raise ConfigError(f"unknown families {sorted(bad)}")
        for s in self.seeds:
            if not isinstance(s, int):
                raise ConfigError("seeds must be explicit integers")
        for pq in self.pq_grid:
            if len(pq) != 2:
                raise ConfigError("pq_grid entries must be [p, q]")


DEFAULT_CONFIG = {
    "params": [[1, 0.0, 2.0], [1, 0.5, 2.0], [2, 0.0, 1.0], [1, 0.7, 1.5]],
    "families": list(FAMILIES),
    "p_grid": [1.25, 1.5, 2.0],
    "pq_grid": [[2.0, 4.0], [1.5, 3.0], [2.0, 3.0], [1.5, 2.0]],
    "hyp_b": [1.8],
    "pde_params": [[1, 0.0, 2.0], [1, 0.5, 2.0]],
    "n_basis": 48,
    "seeds": [0],
    "opnorm_seed": 42,
    "opnorm_samples": 64,
    "output_dir": "sweep_out",
}


def _case_key(family, N, k, a, **extra):
    parts = [family, f"N={N}", f"k={k:g}", f"a={a:g}"]
    parts += [f"{key}={val:g}" if isinstance(val, float) else f"{key}={val}"
              for key, val in extra.items()]
    return "|".join(parts)


def _cases(cfg):
    cases = []
    for N, k, a in cfg.params:
        base = {"N": int(N), "k": float(k), "a": float(a)}
        for fam in cfg.families:
            if fam == "unitarity":
                cases.append(("unitarity", dict(base)))
            elif fam in ("hy", "paley"):
                for p in cfg.p_grid:
                    if fam == "paley" and p == 2.0:
                        continue
                    for seed in cfg.seeds:
                        cases.append((fam, dict(base, p=float(p), seed=seed)))
                if fam == "paley":
                    for p in cfg.p_grid:
                        for b in cfg.hyp_b:
                            if p < 2 and p <= b <= p / (p - 1):
                                for seed in cfg.seeds:
                                    cases.append(("hyp", dict(base, p=float(p), b=float(b), seed=seed)))
            elif fam == "multiplier":
                for p, q in cfg.pq_grid:
                    cases.append(("multiplier", dict(base, p=float(p), q=float(q))))
    for N, k, a in cfg.pde_params:
        for fam in ("heat", "wave"):
            if fam in cfg.families:
                cases.append((fam, {"N": int(N), "k": float(k), "a": float(a)}))
    keyed = [(_case_key(f, **c), f, c) for f, c in cases]
    return sorted(keyed, key=lambda t: t[0])


_CACHE = {}


def _operator(N, k, a, n_basis):
    key = (N, k, a, n_basis)
    if key not in _CACHE:
        _CACHE.clear()
        params = Params(N, k, a)
        _CACHE[key] = build_transform(build_basis(params, n_basis))
    return _CACHE[key]


def _run_case(args):
    key, fam, case, cfg = args
    row = {"key": key, "family": fam, **case}
    try:
        row.update(_evaluate(fam, case, cfg))
        row["error"] = ""
    except KAFourierError as exc:
        row.update(passed=False, error=f"{type(exc).__name__}: {exc}")
    return row


def _evaluate(fam, case, cfg):
    N, k, a = case["N"], case["k"], case["a"]
    if fam in ("heat", "wave"):
        T = _operator(N, k, a, cfg.pde_n_basis)
    else:
        T = _operator(N, k, a, cfg.n_basis)
    if fam == "unitarity":
        e0 = np.zeros(T.n_basis)
        e0[0] = 1.0
        fixed = float(np.max(np.abs(forward(T, e0) - e0)))
        return {
            "unitarity_defect": T.unitarity_defect,
            "ground_state_defect": fixed,
            "passed": T.unitarity_defect < cfg.unitarity_tol and fixed < cfg.unitarity_tol,
        }
    if fam == "hy":
        M_hat = kernel_sup_estimate(T)
        ratios = [hy_ratio(T, c, case["p"], M_hat).ratio for _, c in default_suite(T, case["seed"])]
        return {"M_hat": M_hat, "max_ratio": max(ratios), "median_ratio": float(np.median(ratios)),
                "passed": max(ratios) <= 1 + cfg.hy_slack}
    if fam in ("paley", "hyp"):
        psi = MultiplierSymbol.power(T.params.D)
        M = paley_functional(psi, T.params)
        suite = default_suite(T, case["seed"])
        if fam == "paley":
            ratios = [paley_ratio(T, c, psi, case["p"], M).ratio for _, c in suite]
        else:
            ratios = [hyp_ratio(T, c, psi, case["p"], case["b"], M).ratio for _, c in suite]
        mx, med = max(ratios), float(np.median(ratios))
        return {"M_psi": M, "max_ratio": mx, "median_ratio": med,
                "passed": math.isfinite(mx) and mx <= cfg.uniformity_factor * med}
    if fam == "multiplier":
        p, q = case["p"], case["q"]
        gamma = T.params.D * (1 / p - 1 / q)
        if gamma <= 0:
            h = MultiplierSymbol.indicator(1.0)
        else:
            h = MultiplierSymbol.power(gamma)
        rep = verify_multiplier_theorem(T, h, p, q, cfg.tolerance_factor,
                                        n_samples=cfg.opnorm_samples, seed=cfg.opnorm_seed)
        return {"symbol": rep.symbol, "H": rep.H, "max_ratio": rep.max_ratio,
                "ratio_over_H": rep.max_ratio / rep.H, "passed": rep.passed}
    u0 = parse_initial(f"groundstate:scale={cfg.pde_scale!r}", T.basis)
    n0 = float(np.linalg.norm(u0))
    if fam == "heat":
        Ts = heat_tstar(cfg.pde_c, cfg.pde_p, n0)
        prob = CauchyProblem("heat", T, u0, cfg.pde_p, cfg.pde_T_fraction * Ts, cfg.pde_c)
        sol = solve_heat(prob)
    else:
        b = parse_time_coefficient("const:1")
        Ts = wave_tstar_selfconsistent(cfg.pde_c, cfg.pde_p, b, n0, 0.0)
        prob = CauchyProblem("wave", T, u0, cfg.pde_p, cfg.pde_T_fraction * Ts, cfg.pde_c,
                             u1=np.zeros_like(u0), b=b)
        sol = solve_wave(prob)
    d = sol.diagnostics()
    return {"T": prob.T, "T_star": d["T_star"], "residual": d["residual"],
            "iterations": d["iterations"], "in_Sc": d["in_Sc"],
            "passed": d["residual"] < cfg.pde_residual_tol and d["in_Sc"]}


def run_sweep(config):
    """Run every case of a :class:`RunConfig` (or dict).

    Returns ``{"rows": {family: [row, ...]}, "summary": {...}}``.  Cases are
    keyed and sorted, so the bundle does not depend on scheduling.  Errors of
    single cases are recorded in their rows.
    """
    cfg = config if isinstance(config, RunConfig) else RunConfig.from_dict(config)
    jobs = []
    invalid = []
    for key, fam, case in _cases(cfg):
        try:
            Params(case["N"], case["k"], case["a"])
        except KAFourierError as exc:
            invalid.append({"key": key, "family": fam, **case, "passed": False,
                            "error": f"{type(exc).__name__}: {exc}"})
            continue
        jobs.append((key, fam, case, cfg))
    if cfg.workers > 1 and jobs:
        with ProcessPoolExecutor(cfg.workers) as pool:
            rows = list(pool.map(_run_case, jobs))
    else:
        rows = [_run_case(j) for j in jobs]
    rows = sorted(rows + invalid, key=lambda r: r["key"])

    grouped = {}
    for r in rows:
        grouped.setdefault(r["family"], []).append(r)
    families = {}
    for fam, rs in sorted(grouped.items()):
        ratios = [r["max_ratio"] for r in rs if "max_ratio" in r]
        families[fam] = {
            "case_total": len(rs),
            "pass_total": sum(bool(r["passed"]) for r in rs),
            "max_ratio": max(ratios) if ratios else None,
        }
    summary = {
        "case_total": len(rows),
        "pass_total": sum(bool(r["passed"]) for r in rows),
        "families": families,
        "errors": {r["key"]: r["error"] for r in rows if r.get("error")},
        # scheduling knobs do not belong in the bundle
        "config": {k: v for k, v in asdict(cfg).items() if k != "workers"},
    }
    return {"rows": grouped, "summary": summary}


def _csv_text(rows):
    cols = []
    for r in rows:
        for c in r:
            if c not in cols:
                cols.append(c)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([fmt(r.get(c, "")) for c in cols])
    return buf.getvalue()


def write_bundle(bundle, out_dir):
    """One CSV per family plus ``summary.json``; returns written paths."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        paths = []
        for fam, rows in sorted(bundle["rows"].items()):
            path = out / f"{fam}.csv"
            path.write_text(_csv_text(rows))
            paths.append(path)
        path = out / "summary.json"
        path.write_text(dumps(bundle["summary"]) + "\n")
        paths.append(path)
    except OSError as exc:
        raise ConfigError(f"cannot write bundle to {out}: {exc}") from exc
    return paths


# ---------------------------------------------------------------- subcommands


def _params(args):
    return Params(args.N, args.k, args.a)


def _transform(args):
    params = _params(args)
    rule = build_quadrature(params, args.n_nodes) if args.n_nodes else None
    return build_transform(build_basis(params, args.n, rule))


def _read_grid_csv(path, nodes):
    try:
        data = np.genfromtxt(path, delimiter=",")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    data = np.atleast_2d(data)
    data = data[~np.isnan(data).any(axis=1)]
    if data.shape[1] not in (2, 3):
        raise ConfigError(f"{path}: expected columns node,value or node,re,im")
    vals = data[:, 1] + (1j * data[:, 2] if data.shape[1] == 3 else 0)
    if len(data) == len(nodes) and np.allclose(data[:, 0], nodes, rtol=1e-12, atol=0):
        return vals
    order = np.argsort(data[:, 0])
    x = data[order, 0]
    return (np.interp(nodes, x, vals.real[order], left=0, right=0)
            + 1j * np.interp(nodes, x, vals.imag[order], left=0, right=0))


def _write_rows(path, header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(float(v)) if not isinstance(v, str) else v for v in r])
    if path in (None, "-"):
        sys.stdout.write(buf.getvalue())
    else:
        try:
            Path(path).write_text(buf.getvalue())
        except OSError as exc:
            raise ConfigError(f"cannot write {path}: {exc}") from exc


def cmd_check_params(args):
    try:
        report = validate(args.N, args.k, args.a)
        print(report.to_json(indent=2))
    except KAFourierError as exc:
        print(dumps({"N": args.N, "k": args.k, "a": args.a, "admissible": False,
                     "error": f"{type(exc).__name__}: {exc}"}))


def cmd_measure(args):
    params = _params(args)
    psi = parse_symbol(args.psi)
    rule = None
    if psi.kind in ("sampled", "composite"):
        rule = build_quadrature(params, args.n_nodes or 192)
    out = {"psi": psi.describe(), "params": [args.N, args.k, args.a]}
    if args.t is not None:
        mu, trunc = superlevel_measure(psi, args.t, params, rule, full_output=True)
        out.update(t=args.t, measure=mu, truncated=trunc)
    if args.paley or args.t is None:
        out["M_psi"] = paley_functional(psi, params, rule)
    print(dumps(out))


def cmd_oscillator(args):
    T = _transform(args)
    basis = T.basis
    if args.dump_matrix:
        _write_rows(args.dump_matrix, [f"c{j}" for j in range(basis.n_basis)], basis.D)
    print(dumps({
        "params": [args.N, args.k, args.a],
        "n_basis": basis.n_basis,
        "gram_defect": basis.gram_defect,
        "symmetry_defect": basis.symmetry_defect,
        "eigvals": basis.eigvals.tolist(),
        "eig_parity": basis.eig_parity.tolist(),
    }))


def cmd_transform(args):
    T = _transform(args)
    nodes = T.rule.nodes
    if args.input:
        vals = _read_grid_csv(args.input, nodes)
    else:
        a = T.params.a
        vals = np.exp(-np.abs(nodes) ** a / a)
    coeffs, res = project(T.basis, vals, max_residual=args.max_residual)
    out_c = forward(T, coeffs) if not args.inverse else T.U.conj().T @ coeffs
    out = out_c @ T.basis.funcs
    _write_rows(args.output, ["node", "re", "im"], zip(nodes, out.real, out.imag))
    sys.stderr.write(dumps({"projection_residual": res,
                            "unitarity_defect": T.unitarity_defect}) + "\n")


def cmd_kernel(args):
    T = _transform(args)
    val, err = kernel_eval(T, args.xi, args.x, eps=args.eps,
                           extrapolate=args.extrapolate, normalized=args.normalized)
    out = {"xi": args.xi, "x": args.x, "value": complex(val), "abs": abs(val),
           "truncation_error": err}
    if args.sup:
        out["M_hat"] = kernel_sup_estimate(T, extent=args.extent)
    print(dumps(out))


def cmd_verify(args):
    T = _transform(args)
    p = args.p
    suite = default_suite(T, args.seed)
    rows = []
    if args.which == "hy":
        M_hat = kernel_sup_estimate(T) if args.m_hat is None else args.m_hat
        for name, c in suite:
            r = hy_ratio(T, c, p, M_hat)
            rows.append((f"hy|p={p:g}|{name}", r.lhs, r.rhs_core, r.ratio))
    else:
        psi = parse_symbol(args.psi) if args.psi else MultiplierSymbol.power(T.params.D)
        M = paley_functional(psi, T.params, T.rule)
        b = p if args.which == "paley" else args.b
        if b is None:
            raise ConfigError("--b is required for --which hyp")
        for name, c in suite:
            r = hyp_ratio(T, c, psi, p, b, M)
            rows.append((f"{args.which}|p={p:g}|b={b:g}|{name}", r.lhs, r.rhs_core, r.ratio))
    _write_rows(args.output, ["tuple", "lhs", "rhs_core", "ratio"], rows)


def cmd_bound(args):
    params = _params(args)
    h = parse_symbol(args.h)
    rule = build_quadrature(params, args.n_nodes or 192) if h.kind in ("sampled", "composite") else None
    H = hormander_bound(h, args.p, args.q, params, rule)
    print(dumps({"h": h.describe(), "p": args.p, "q": args.q, "H": H, "finite": math.isfinite(H)}))


def cmd_opnorm(args):
    T = _transform(args)
    h = parse_symbol(args.h)
    mx, info = empirical_opnorm(T, h, args.p, args.q, args.suite, args.samples, args.seed,
                                full_output=True)
    H = hormander_bound(h, args.p, args.q, T.params, T.rule)
    print(dumps({"h": h.describe(), "p": args.p, "q": args.q, "max_ratio": mx, "H": H,
                 "ratio_over_H": mx / H if math.isfinite(H) and H > 0 else None, **info}))


def _pde(args, kind):
    T = _transform(args)
    u0 = parse_initial(args.u0, T.basis)
    n0 = float(np.linalg.norm(u0))
    h = parse_symbol(args.h)
    if kind == "heat":
        Ts = heat_tstar(args.c, args.p, n0)
    else:
        u1 = parse_initial(args.u1, T.basis)
        b = parse_time_coefficient(args.b)
        Ts = wave_tstar_selfconsistent(args.c, args.p, b, n0, float(np.linalg.norm(u1)))
    if args.T == "auto":
        if not math.isfinite(Ts):
            raise ConfigError("T* is infinite for these data; give --T explicitly")
        horizon = 0.9 * Ts
    else:
        horizon = float(args.T)
    if kind == "heat":
        prob = CauchyProblem("heat", T, u0, args.p, horizon, args.c, B_symbol=h)
        sol = solve_heat(prob, args.n_time, args.max_iter, args.tol, override=args.override)
    else:
        prob = CauchyProblem("wave", T, u0, args.p, horizon, args.c, B_symbol=h, u1=u1, b=b)
        sol = solve_wave(prob, args.n_time, args.max_iter, args.tol, override=args.override)
    _write_rows(args.output, ["t", "norm_l2"], zip(sol.times, sol.norms()))
    diag = sol.diagnostics()
    diag.update(T=horizon, no_guarantee=not diag["guaranteed"])
    text = dumps(diag) + "\n"
    if args.diagnostics:
        try:
            Path(args.diagnostics).write_text(text)
        except OSError as exc:
            raise ConfigError(f"cannot write {args.diagnostics}: {exc}") from exc
    else:
        sys.stderr.write(text)


def cmd_sweep(args):
    if args.dump_default:
        print(dumps(DEFAULT_CONFIG))
        return
    if args.config in (None, "default"):
        cfg = RunConfig.from_dict(dict(DEFAULT_CONFIG))
    else:
        cfg = RunConfig.load(args.config)
    if args.workers is not None:
        cfg.workers = args.workers
    bundle = run_sweep(cfg)
    out = args.out or cfg.output_dir
    write_bundle(bundle, out)
    s = bundle["summary"]
    print(dumps({"case_total": s["case_total"], "pass_total": s["pass_total"],
                 "output_dir": str(out)}))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="kafourier", description="(k,a)-generalised Fourier transform toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_params(p, n_default=48):
        p.add_argument("--N", type=int, default=1)
        p.add_argument("--k", type=float, required=True)
        p.add_argument("--a", type=float, required=True)
        p.add_argument("--n", type=int, default=n_default, help="number of basis functions")
        p.add_argument("--n-nodes", type=int, default=None, help="quadrature order")

    p = sub.add_parser("check-params", help="admissibility report")
    p.add_argument("--N", type=int, default=1)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--a", type=float, required=True)
    p.set_defaults(func=cmd_check_params)

    p = sub.add_parser("measure", help="superlevel measure and Paley functional")
    add_params(p)
    p.add_argument("--psi", required=True)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--paley", action="store_true")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("oscillator", help="Galerkin matrix of the oscillator")
    add_params(p, 32)
    p.add_argument("--dump-matrix", default=None)
    p.set_defaults(func=cmd_oscillator)

    p = sub.add_parser("transform", help="apply the transform to sampled data")
    add_params(p)
    p.add_argument("--input", default=None, help="CSV node,value or node,re,im")
    p.add_argument("--output", default="-")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--max-residual", type=float, default=1e-4)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("kernel", help="evaluate the transform kernel")
    add_params(p, 64)
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--eps", type=float, default=1e-3)
    p.add_argument("--extrapolate", action="store_true")
    p.add_argument("--normalized", action="store_true")
    p.add_argument("--sup", action="store_true", help="also estimate the kernel sup")
    p.add_argument("--extent", type=float, default=2.0)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("verify", help="Paley / Hausdorff-Young(-Paley) ratios")
    add_params(p)
    p.add_argument("--which", choices=("paley", "hy", "hyp"), required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--psi", default=None, help="weight (default: matched power)")
    p.add_argument("--suite", default="default", choices=("default",))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m-hat", type=float, default=None)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="Hormander bound H(h; p, q)")
    add_params(p)
    p.add_argument("--h", required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=float, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("opnorm", help="empirical multiplier norm")
    add_params(p)
    p.add_argument("--h", required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--suite", default="default")
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_opnorm)

    for kind in ("heat", "wave"):
        p = sub.add_parser(kind, help=f"Picard solver for the {kind} problem")
        add_params(p, 96)
        p.add_argument("--h", default="one")
        p.add_argument("--p", type=float, default=2.0)
        p.add_argument("--c", type=float, default=math.sqrt(2.0))
        p.add_argument("--T", default="auto", help="horizon or 'auto' (0.9 T*)")
        p.add_argument("--u0", default="groundstate:scale=0.1")
        if kind == "wave":
            p.add_argument("--u1", default="zero")
            p.add_argument("--b", default="const:1")
        p.add_argument("--n-time", type=int, default=128)
        p.add_argument("--max-iter", type=int, default=100)
        p.add_argument("--tol", type=float, default=1e-12)
        p.add_argument("--override", action="store_true", help="allow T > T*")
        p.add_argument("--output", default="-")
        p.add_argument("--diagnostics", default=None, help="JSON file (default stderr)")
        p.set_defaults(func=lambda a, kind=kind: _pde(a, kind))

    p = sub.add_parser("sweep", help="run a configured parameter sweep")
    p.add_argument("--config", default="default", help="JSON file or 'default'")
    p.add_argument("--out", default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--dump-default", action="store_true", help="print the default config")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except KAFourierError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
