"""Command line front end: scenario files, experiment subcommands, CSV/JSON artifacts.

Subcommands: solve, partition, converge, sensitivity, counterexample,
verify, ensemble.  Scenarios are JSON files; flags override scenario
fields.  All artifacts are deterministic given the scenario and seeds:
floats print at 17 significant digits and no timestamps are emitted.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import coefficients as co
from . import drivers, paths, sensitivity, solver, young
from .errors import DomainError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2


# ---------------------------------------------------------------------------
# Scenario files.

@dataclass(frozen=True)
class Scenario:
    name: str
    coefficients: co.CoefficientSet
    driver: drivers.DriverSpec
    eta: paths.Segment
    direction: paths.Segment
    config: solver.SolverConfig
    checks: tuple
    raw: dict


_ALL_CHECKS = ("regularity", "young", "partition", "solve", "euler",
               "uniqueness", "growth", "continuity", "differentiability",
               "estimates", "counterexample")


def _segment_from_spec(d, config, dim):
    r, mesh = config.r, config.mesh
    n = config.n_history
    u = -r + mesh * np.arange(n + 1)
    form = d.get("form", "constant")
    if form == "constant":
        value = np.broadcast_to(np.atleast_1d(np.asarray(d.get("value", 1.0),
                                                         dtype=float)), (dim,))
        vals = np.tile(value, (n + 1, 1))
    elif form == "linear":
        value = np.broadcast_to(np.atleast_1d(np.asarray(d.get("value", 1.0),
                                                         dtype=float)), (dim,))
        slope = np.broadcast_to(np.atleast_1d(np.asarray(d.get("slope", 0.0),
                                                         dtype=float)), (dim,))
        vals = value[None, :] + np.outer(u, slope)
    elif form == "cosine":
        amp = float(d.get("amplitude", 1.0))
        freq = float(d.get("frequency", 1.0))
        offset = float(d.get("offset", 0.0))
        vals = np.tile((offset + amp * np.cos(2 * math.pi * freq * u))[:, None],
                       (1, dim))
    elif form == "samples":
        vals = np.asarray(d["samples"], dtype=float)
    else:
        raise DomainError(f"unknown segment form {form!r}")
    return paths.Segment(r, mesh, vals)


def default_direction(config, dim):
    """Cosine bump scaled to infty,beta norm 1/2: a generic test direction."""
    spec = {"form": "cosine", "amplitude": 1.0, "frequency": 1.0}
    seg = _segment_from_spec(spec, config, dim)
    return scale_segment_to_norm(seg, config.beta, 0.5)


def scale_segment_to_norm(seg, beta, target):
    norm = paths.segment_norm(seg, beta)
    if norm <= 0:
        raise DomainError("cannot scale a zero segment to a positive norm")
    return seg.with_values(seg.values * (target / norm))


def build_scenario(d):
    d = dict(d)
    name = d.get("name", "scenario")
    coeffs = co.coefficients_from_json(d["coefficients"])
    config = solver.SolverConfig(**d["config"])
    drv = dict(d["driver"])
    drv.setdefault("T", config.T)
    drv.setdefault("mesh", config.mesh)
    spec = drivers.spec_from_json(drv)
    if abs(spec.mesh - config.mesh) > 1e-12 * config.mesh:
        raise DomainError("driver mesh != config mesh")
    if spec.T < config.T - 1e-12:
        raise DomainError("driver horizon shorter than config T")
    eta = _segment_from_spec(d.get("eta", {}), config, coeffs.dim)
    if "direction" in d:
        direction = _segment_from_spec(d["direction"], config, coeffs.dim)
    else:
        direction = default_direction(config, coeffs.dim)
    checks = tuple(d.get("checks", _ALL_CHECKS))
    unknown = set(checks) - set(_ALL_CHECKS)
    if unknown:
        raise DomainError(f"unknown checks {sorted(unknown)}")
    return Scenario(name=name, coefficients=coeffs, driver=spec, eta=eta,
                    direction=direction, config=config, checks=checks, raw=d)


def load_scenario(path, seed=None, mesh=None):
    with open(path) as f:
        d = json.load(f)
    if seed is not None:
        d.setdefault("driver", {})["seed"] = int(seed)
    if mesh is not None:
        d.setdefault("config", {})["mesh"] = float(mesh)
        d.setdefault("driver", {})["mesh"] = float(mesh)
    return build_scenario(d)


# ---------------------------------------------------------------------------
# Emission: deterministic CSV / JSON artifacts.

def _fmt(x):
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, float) or isinstance(x, np.floating):
        return f"{float(x):.17g}"
    return str(x)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, float) and math.isinf(obj):
        return "inf" if obj > 0 else "-inf"
    return obj


def write_table(rows, header, fileobj):
    """CSV table; an empty row list still yields a valid header-only file."""
    writer = csv.writer(fileobj, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(x) for x in row])


def write_json_file(obj, filepath):
    with open(filepath, "w") as f:
        json.dump(_jsonable(obj), f, sort_keys=True, indent=1)
        f.write("\n")


def emit(report, fmt, outdir, basename):
    """Write a report as CSV (rows + header) or a JSON document.

    ``report`` is either ``(header, rows)`` for tabular data or any
    JSON-able mapping.  Returns the written file path.
    """
    os.makedirs(outdir, exist_ok=True)
    if fmt == "csv" and isinstance(report, tuple):
        header, rows = report
        filepath = os.path.join(outdir, basename + ".csv")
        with open(filepath, "w") as f:
            write_table(rows, header, f)
        return filepath
    filepath = os.path.join(outdir, basename + ".json")
    if isinstance(report, tuple):
        header, rows = report
        report = {"header": list(header),
                  "rows": [list(r) for r in rows]}
    write_json_file(report, filepath)
    return filepath


def partition_rows(partition):
    return [(t, r) for t, r in zip(partition.times[1:], partition.residuals)]


def solve_diagnostics(report, partition_bound=None):
    d = {
        "n_windows": report.partition.n_windows,
        "N": report.partition.N,
        "threshold": report.partition.threshold,
        "C": report.partition.C,
        "mu": report.partition.mu,
        "eta_norm": report.eta_norm,
        "ball_ok": report.ball_ok,
        "nu_seminorm": report.nu_seminorm,
        "max_residual": max(report.window_residuals),
        "total_iterations": int(sum(report.window_iterations)),
        "windows": [
            {"t_start": w.t_start, "t_end": w.t_end,
             "iterations": w.iterations, "residual": w.residual,
             "ball_radius": w.ball_radius,
             "max_iterate_norm": w.max_iterate_norm, "split": w.split}
            for w in report.windows],
    }
    if partition_bound is not None:
        d["stopping_count_bound"] = partition_bound
    return d


# ---------------------------------------------------------------------------
# Subcommands.

def _solve_scenario(scenario, collect_first_iterate=False):
    omega = drivers.gen_driver(scenario.driver)
    report = solver.picard_solve(scenario.coefficients, scenario.eta, omega,
                                 scenario.config,
                                 collect_first_iterate=collect_first_iterate)
    return omega, report


def cmd_solve(args, scenario, out, say):
    omega, report = _solve_scenario(scenario)
    with open(os.path.join(out, "solution.csv"), "w") as f:
        paths.write_csv(report.solution, f)
    with open(os.path.join(out, "partition.csv"), "w") as f:
        write_table(partition_rows(report.partition), ["t_i", "residual"], f)
    bound = None
    if report.partition.C > 0:
        bound = solver.stopping_count_bound(omega, scenario.config,
                                            report.partition.C)
    write_json_file(solve_diagnostics(report, bound),
                    os.path.join(out, "diagnostics.json"))
    say(f"solved {scenario.name}: {report.partition.n_windows} windows, "
        f"max residual {max(report.window_residuals):.3e}")
    return EXIT_OK


def cmd_partition(args, scenario, out, say):
    omega = drivers.gen_driver(scenario.driver)
    config = scenario.config
    if args.C is not None:
        C = float(args.C)
    else:
        C = solver.compute_contraction_constants(scenario.coefficients,
                                                 config).C
    part = solver.greedy_partition(omega, config, C)
    bound = solver.stopping_count_bound(omega, config, C)
    with open(os.path.join(out, "partition.csv"), "w") as f:
        write_table(partition_rows(part), ["t_i", "residual"], f)
    analytic = (config.mu / C) ** (1.0 / (1.0 - config.beta))
    snapped = max(1, math.floor(analytic / config.mesh)) * config.mesh
    info = {
        "C": C, "mu": config.mu, "threshold": part.threshold,
        "n_windows": part.n_windows, "N": part.N,
        "stopping_count_bound": bound,
        "count_margin": bound - part.N,
        "driverless_window_length": analytic,
        "driverless_window_snapped": snapped,
        "driverless_expected_count": math.ceil(config.T / snapped),
    }
    write_json_file(info, os.path.join(out, "partition.json"))
    say(f"partition: N={part.N} windows={part.n_windows} "
        f"bound={bound:.3g} margin={bound - part.N:.3g}")
    return EXIT_OK if part.N <= bound else EXIT_CHECK_FAILED


def cmd_converge(args, scenario, out, say):
    levels = int(args.levels)
    if levels < 2:
        raise DomainError("converge needs at least 2 levels")
    spec = scenario.driver
    fine = replace(spec, mesh=spec.mesh / 2 ** (levels - 1))
    omega_fine = drivers.gen_driver(fine)
    target = 0.5 * float(omega_fine.values[-1, 0] ** 2
                         - omega_fine.values[0, 0] ** 2)
    rows = []
    prev_err = None
    decreasing = True
    for lev in range(levels):
        om = omega_fine.subsample(2 ** (levels - 1 - lev))
        val = float(young.young_integral(om, om)[0])
        err = abs(val - target)
        rel = err / abs(target) if target != 0 else math.inf
        rows.append((om.mesh, val, err, rel))
        if prev_err is not None and err > prev_err:
            decreasing = False
        prev_err = err
    with open(os.path.join(out, "converge.csv"), "w") as f:
        write_table(rows, ["mesh", "integral", "abs_error", "rel_error"], f)
    final_rel = rows[-1][3]
    ok = decreasing and final_rel <= float(args.rtol)
    say(f"converge: target {target:.6g}, final rel error {final_rel:.3e}, "
        f"errors {'decreasing' if decreasing else 'NOT decreasing'}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_sensitivity(args, scenario, out, say):
    omega = drivers.gen_driver(scenario.driver)
    coeffs, config = scenario.coefficients, scenario.config
    perts = [float(p) for p in (args.pert or [1e-1, 1e-2])]
    unit = scale_segment_to_norm(scenario.direction, config.beta, 1.0)
    continuity = {}
    cont_ok = True
    for size in perts:
        eta2 = scenario.eta.with_values(
            scenario.eta.values + size * unit.values)
        rep = sensitivity.continuity_check(coeffs, scenario.eta, eta2,
                                           omega, config)
        continuity[f"{size:.17g}"] = {
            "eta_gap": rep.eta_gap, "N_T": rep.N_T, "C": rep.C,
            "pointwise_ok": rep.pointwise_ok,
            "pointwise_min_margin": rep.pointwise_min_margin,
            "full_ok": rep.full_ok, "full_margin": rep.full_margin,
        }
        cont_ok = cont_ok and rep.pointwise_ok and rep.full_ok
    ladder = [float(e) for e in (args.eps or [1e-1, 1e-2, 1e-3])]
    diff = sensitivity.differentiability_check(
        coeffs, scenario.eta, scenario.direction, omega, config,
        eps_ladder=ladder)
    with open(os.path.join(out, "differentiability.csv"), "w") as f:
        write_table(diff.table, ["eps", "rho"], f)
    verdict = {
        "continuity": continuity,
        "differentiability": {
            "decreasing": diff.decreasing,
            "final_over_initial": diff.final_over_initial,
            "max_rho": diff.max_rho,
        },
    }
    write_json_file(verdict, os.path.join(out, "sensitivity.json"))
    nonlinear = scenario.coefficients.family != "linear_delay"
    diff_ok = (diff.decreasing and diff.final_over_initial <= 0.5) \
        if nonlinear else diff.max_rho <= 1e-5
    say(f"sensitivity: continuity {'ok' if cont_ok else 'FAILED'}, "
        f"rho ladder {'ok' if diff_ok else 'FAILED'} "
        f"(ratio {diff.final_over_initial:.3g})")
    return EXIT_OK if cont_ok and diff_ok else EXIT_CHECK_FAILED


def cmd_counterexample(args, scenario, out, say):
    beta, p = float(args.beta), float(args.p)
    ns = [int(n) for n in (args.n or [100, 1000, 10000])]
    rows = []
    for n in ns:
        value = paths.counterexample_growth(beta, p, n)
        bound = n ** ((1.0 - beta * p) / p)
        rows.append((n, value, bound))
    with open(os.path.join(out, "counterexample.csv"), "w") as f:
        write_table(rows, ["n", "partition_sum", "lower_bound"], f)
    ok = all(v >= b * (1.0 - 1e-12) for _, v, b in rows)
    if len(rows) > 1:
        ok = ok and all(rows[i + 1][1] > rows[i][1] for i in range(len(rows) - 1))
    for n, v, b in rows:
        say(f"n={n}: partition sum {v:.6g} >= lower bound {b:.6g}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _verify_checks(scenario, args):
    """Run the scenario's enabled checks; yields (name, passed, detail)."""
    coeffs, config = scenario.coefficients, scenario.config
    omega = drivers.gen_driver(scenario.driver)
    checks = scenario.checks
    report = None
    results = []
    tables = []

    def run(name, fn):
        if name in checks:
            results.append((name,) + fn())

    def chk_regularity():
        sampler = co.bounded_segment_sampler(config.r, config.mesh,
                                             coeffs.dim, 2.0)
        rep = co.verify_regularity(coeffs, sampler, M=2.0, trials=200, seed=1)
        worst = max(rep.f_lipschitz, rep.dg_bound, rep.dg_holder)
        return rep.passed, f"worst ratio {worst:.6f}"

    run("regularity", chk_regularity)

    report = solver.picard_solve(coeffs, scenario.eta, omega, config,
                                 collect_first_iterate=True)

    def chk_solve():
        ok = max(report.window_residuals) <= config.picard_tol
        ok = ok and report.ball_ok
        ok = ok and np.array_equal(
            report.solution.values[:config.n_history + 1], scenario.eta.values)
        return ok, (f"max residual {max(report.window_residuals):.3e}, "
                    f"ball_ok {report.ball_ok}")

    run("solve", chk_solve)

    def chk_partition():
        part = report.partition
        ok = bool(np.all(part.residuals <= part.threshold * (1 + 1e-12)))
        for i, (ta, tb) in enumerate(part.windows()):
            nxt = tb + config.mesh
            if nxt <= config.T + 1e-12:
                if solver.window_residual(omega, config.beta, config.nu,
                                          ta, nxt) <= part.threshold:
                    ok = False
        if part.C > 0:
            bound = solver.stopping_count_bound(omega, config, part.C)
            ok = ok and part.N <= bound
        return ok, f"N={part.N}, threshold={part.threshold:.4g}"

    run("partition", chk_partition)

    def chk_euler():
        eu = solver.euler_solve(coeffs, scenario.eta, omega, config)
        diff = paths.GridPath(eu.t0, eu.mesh,
                              eu.values - report.solution.values)
        gap = paths.holder_norm(diff, config.beta)
        return gap <= 10 * config.picard_tol, f"gap {gap:.3e}"

    run("euler", chk_euler)

    def chk_young():
        consts = config.young(coeffs.delta)
        integrands = [report.solution.restrict(0.0, config.T),
                      co.composition_path(coeffs.g, report.solution, config.r,
                                          (0.0, config.T))]
        if report.first_iterate is not None:
            integrands.append(report.first_iterate.restrict(0.0, config.T))
        sweep = young.certificate_sweep(integrands, omega, (0.0, config.T),
                                        consts, n_windows=34, seed=2)
        tables.append(("young_certificate",
                       ["integrand", "t_start", "t_end", "gap", "bound"],
                       sweep.rows))
        return sweep.violations == 0, (f"{sweep.n_windows} windows, "
                                       f"worst gap/bound {sweep.worst_ratio:.4f}")

    run("young", chk_young)

    def chk_growth():
        rep = solver.growth_bound_check(report, scenario.eta)
        return rep.passed, f"min log-margin {rep.min_margin:.3f}"

    run("growth", chk_growth)

    def chk_uniqueness():
        rep = solver.uniqueness_probe(coeffs, scenario.eta, omega, config)
        return rep.passed, f"max pairwise {rep.max_pairwise:.3e}"

    run("uniqueness", chk_uniqueness)

    def chk_continuity():
        unit = scale_segment_to_norm(scenario.direction, config.beta, 1.0)
        ok = True
        margins = []
        for size in (1e-1, 1e-2):
            eta2 = scenario.eta.with_values(scenario.eta.values
                                            + size * unit.values)
            rep = sensitivity.continuity_check(coeffs, scenario.eta, eta2,
                                               omega, config)
            ok = ok and rep.pointwise_ok and rep.full_ok
            margins.append(rep.pointwise_min_margin)
        return ok, f"min margins {[f'{m:.2f}' for m in margins]}"

    run("continuity", chk_continuity)

    def chk_differentiability():
        rep = sensitivity.differentiability_check(
            coeffs, scenario.eta, scenario.direction, omega, config)
        if coeffs.family == "linear_delay":
            ok = rep.max_rho <= 1e-5
            return ok, f"max rho {rep.max_rho:.3e} (linear)"
        ok = rep.decreasing and rep.final_over_initial <= 0.5
        return ok, f"ratio {rep.final_over_initial:.4f}"

    run("differentiability", chk_differentiability)

    def chk_estimates():
        rng = np.random.Generator(np.random.Philox(key=3))
        sol = report.solution
        n0 = sol.index_of(0.0)
        nT = sol.index_of(config.T)
        ok = True
        for _ in range(30):
            i = int(rng.integers(n0, nT - 1))
            j = int(rng.integers(i + 2, nT + 1))
            a, b = sol.t0 + i * sol.mesh, sol.t0 + j * sol.mesh
            enl = paths.holder_seminorm(sol, config.beta,
                                        (a - config.r, b)).seminorm
            lem1 = paths.segment_path_holder(sol, config.beta, config.r,
                                             (a, b)).seminorm
            ok = ok and lem1 <= enl * (1 + 1e-9) + 1e-12
            comp = co.composition_holder(coeffs, sol, config.beta,
                                         config.r, (a, b)).seminorm
            ok = ok and comp <= coeffs.L_g * enl * (1 + 1e-9) + 1e-12
        bump = paths.GridPath(sol.t0, sol.mesh, sol.values + 0.05 * np.sin(
            2 * math.pi * np.linspace(0, 1, sol.values.shape[0]))[:, None])
        for _ in range(10):
            i = int(rng.integers(n0, nT - 1))
            j = int(rng.integers(i + 2, nT + 1))
            a, b = sol.t0 + i * sol.mesh, sol.t0 + j * sol.mesh
            rep = co.composition_holder_diff(coeffs, sol, bump, config.beta,
                                             config.r, (a, b))
            ok = ok and rep.lhs <= rep.bound_tight * (1 + 1e-9) + 1e-12
            ok = ok and rep.bound_tight <= rep.bound_weak * (1 + 1e-9)
        i = n0
        window12 = (sol.t0 + i * sol.mesh, sol.t0 + (i + 11) * sol.mesh)
        dp = paths.pvar_seminorm(sol, 2.0, window12).seminorm
        ex = paths.pvar_seminorm_exhaustive(sol, 2.0, window12)
        ok = ok and abs(dp - ex) <= 1e-9 * max(1.0, ex)
        p = 1.0 / config.beta
        pv = paths.pvar_seminorm(sol, p, (0.0, config.T)).seminorm
        hb = paths.holder_seminorm(sol, config.beta, (0.0, config.T)).seminorm
        ok = ok and pv <= hb * config.T ** config.beta * (1 + 1e-9)
        return ok, ("translation/composition/difference estimates, "
                    "p-var DP, p-var vs Holder")

    run("estimates", chk_estimates)

    def chk_counterexample():
        vals = [paths.counterexample_growth(0.4, 2.0, n) for n in (100, 1000)]
        bounds = [n ** 0.1 for n in (100, 1000)]
        ok = all(v >= b * (1 - 1e-12) for v, b in zip(vals, bounds))
        ok = ok and vals[1] > vals[0]
        return ok, f"values {[f'{v:.4f}' for v in vals]}"

    run("counterexample", chk_counterexample)
    return omega, report, results, tables


def cmd_verify(args, scenario, out, say):
    omega, report, results, tables = _verify_checks(scenario, args)
    all_ok = all(ok for _, ok, _ in results)
    for name, ok, detail in results:
        say(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    with open(os.path.join(out, "solution.csv"), "w") as f:
        paths.write_csv(report.solution, f)
    with open(os.path.join(out, "partition.csv"), "w") as f:
        write_table(partition_rows(report.partition), ["t_i", "residual"], f)
    for name, header, rows in tables:
        with open(os.path.join(out, name + ".csv"), "w") as f:
            write_table(rows, header, f)
    write_json_file(
        {"scenario": scenario.name,
         "checks": {name: {"passed": ok, "detail": detail}
                    for name, ok, detail in results},
         "all_passed": all_ok},
        os.path.join(out, "verify.json"))
    say(f"verify: {'all checks passed' if all_ok else 'CHECKS FAILED'}")
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


def _ensemble_worker(raw_scenario, seed):
    d = json.loads(raw_scenario)
    d.setdefault("driver", {})["seed"] = int(seed)
    scenario = build_scenario(d)
    omega = drivers.gen_driver(scenario.driver)
    report = solver.picard_solve(scenario.coefficients, scenario.eta, omega,
                                 scenario.config)
    growth = solver.growth_bound_check(report, scenario.eta)
    return {
        "seed": int(seed),
        "n_windows": report.partition.n_windows,
        "N": report.partition.N,
        "max_residual": max(report.window_residuals),
        "growth_margin": growth.min_margin,
        "growth_ok": growth.passed,
    }


def cmd_ensemble(args, scenario, out, say):
    base_seed = int(scenario.driver.seed)
    seeds = [base_seed + k for k in range(int(args.seeds))]
    raw = json.dumps(scenario.raw)
    if int(args.workers) > 1:
        with ProcessPoolExecutor(max_workers=int(args.workers)) as ex:
            rows = list(ex.map(_ensemble_worker, [raw] * len(seeds), seeds))
    else:
        rows = [_ensemble_worker(raw, s) for s in seeds]
    rows.sort(key=lambda r: r["seed"])
    table = [(r["seed"], r["N"], r["n_windows"], r["max_residual"],
              r["growth_margin"]) for r in rows]
    with open(os.path.join(out, "ensemble.csv"), "w") as f:
        write_table(table, ["seed", "N", "n_windows", "max_residual",
                            "growth_margin"], f)
    ok = all(r["growth_ok"] for r in rows)
    say(f"ensemble: {len(rows)} seeds, min growth margin "
        f"{min(r['growth_margin'] for r in rows):.3f}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# Entry point.

def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", help="scenario JSON file")
    common.add_argument("--seed", type=int, help="override driver seed")
    common.add_argument("--mesh", type=float, help="override grid mesh")
    common.add_argument("--out", help="output directory (default $YDDE_OUT or .)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--quiet", action="store_true")

    parser = argparse.ArgumentParser(
        prog="ydde",
        description="Pathwise Young delay equation experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("solve", parents=[common],
                   help="solve the scenario; emit solution and partition")
    p = sub.add_parser("partition", parents=[common],
                       help="greedy stopping-time partition and count bound")
    p.add_argument("--C", type=float, help="override the partition constant C")
    p = sub.add_parser("converge", parents=[common],
                       help="mesh-halving ladder for the self-integral")
    p.add_argument("--levels", type=int, default=4)
    p.add_argument("--rtol", type=float, default=1e-3)
    p = sub.add_parser("sensitivity", parents=[common],
                       help="continuity and differentiability tables")
    p.add_argument("--pert", type=float, action="append",
                   help="continuity perturbation size (repeatable)")
    p.add_argument("--eps", type=float, action="append",
                   help="differentiability ladder entry (repeatable)")
    p = sub.add_parser("counterexample", parents=[common],
                       help="p-variation growth table for x(t) = |t|^beta")
    p.add_argument("--beta", type=float, default=0.4)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--n", type=int, action="append",
                   help="partition size (repeatable)")
    sub.add_parser("verify", parents=[common],
                   help="full property suite; exit 0 iff all checks pass")
    p = sub.add_parser("ensemble", parents=[common],
                       help="growth-bound margins across seeds")
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--workers", type=int, default=1)
    return parser


_NEEDS_SCENARIO = ("solve", "partition", "converge", "sensitivity",
                   "verify", "ensemble")

_COMMANDS = {
    "solve": cmd_solve,
    "partition": cmd_partition,
    "converge": cmd_converge,
    "sensitivity": cmd_sensitivity,
    "counterexample": cmd_counterexample,
    "verify": cmd_verify,
    "ensemble": cmd_ensemble,
}


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    out = args.out or os.environ.get("YDDE_OUT") or "."
    say = (lambda *a: None) if args.quiet else (lambda *a: print(*a))
    try:
        os.makedirs(out, exist_ok=True)
        scenario = None
        if args.command in _NEEDS_SCENARIO:
            if not args.scenario:
                raise DomainError(f"{args.command} requires --scenario FILE")
            scenario = load_scenario(args.scenario, seed=args.seed,
                                     mesh=args.mesh)
        elif args.scenario:
            scenario = load_scenario(args.scenario, seed=args.seed,
                                     mesh=args.mesh)
        return _COMMANDS[args.command](args, scenario, out, say)
    except (DomainError, OSError, KeyError, json.JSONDecodeError) as exc:
        if args.format == "json":
            write_json_file({"error": {"type": type(exc).__name__,
                                       "message": str(exc)}},
                            os.path.join(out, "error.json"))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
