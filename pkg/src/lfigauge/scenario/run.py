"""Dispatch a validated scenario to the physics modules."""

import hashlib
import platform
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path as FsPath

import numpy as np
import scipy

from .. import __version__
from ..andreev import JunctionSpec, andreev_analytic, andreev_numeric, extract_period
from ..classical import ParticleState, gauge_invariance_experiment, simulate
from ..fields import (FieldConfiguration, Path, apply_gauge, line_integral_pi, pi_closed_form,
                      pi_quadrature)
from ..quantum import PiProfile, RingModel, WireModel, ring_spectrum, wire_scatter
from ..units import C, E_CHARGE, PHI0
from .emit import Table, emit
from .parse import canonical_json, expand_grid


@dataclass
class RunReport:
    scenario_digest: str
    wall_time: float
    warnings: list = field(default_factory=list)
    paths: list = field(default_factory=list)
    versions: dict = field(default_factory=dict)

    def to_dict(self):
        return {"scenario_digest": self.scenario_digest, "wall_time": self.wall_time,
                "warnings": list(self.warnings), "paths": [str(p) for p in self.paths],
                "versions": dict(self.versions)}


def versions():
    return {"lfigauge": __version__, "numpy": np.__version__, "scipy": scipy.__version__,
            "python": platform.python_version()}


def _map(fn, items, threads):
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _config(sources):
    return FieldConfiguration.from_dict({"sources": sources})


def _pi_field(p, tol, threads, warnings):
    config = _config(p["sources"])
    tables = []
    if "points" in p:
        def one(x):
            if p["method"] == "quadrature":
                fm = pi_quadrature(config, p["charge"], x, tol) if tol else \
                    pi_quadrature(config, p["charge"], x)
            else:
                fm = pi_closed_form(config, p["charge"], x)
            return [*x, fm.pi0, *fm.pi]
        tables.append(Table("field", ("x", "y", "z", "pi0", "pi_x", "pi_y", "pi_z"),
                            _map(one, p["points"], threads), {"method": p["method"]}))
    if "path" in p:
        path = Path(p["path"]["points"], closed=p["path"].get("closed", False))
        kw = {"method": p["method"]}
        if tol:
            kw["tol"] = tol
        value = line_integral_pi(config, p["charge"], path, **kw)
        tables.append(Table("line_integral", ("closed", "method", "integral", "phase_over_2pi"),
                            [[path.closed, p["method"], value, value / (2 * np.pi)]]))
    return tables


def _classical(p, tol, threads, warnings):
    state = ParticleState(p["position"], p["momentum"], p["charge"], p["mass"])
    tr = simulate(_config(p["sources"]), state, p["t_final"], p["tol"], p["n_samples"])
    rows = np.column_stack([tr.t, tr.position, tr.momentum, tr.energy]).tolist()
    meta = {"mass_shell_error": tr.mass_shell_error(),
            "energy_drift": float(np.max(np.abs(tr.energy - tr.energy[0])))}
    return [Table("trajectory", ("t", "x", "y", "z", "px", "py", "pz", "energy"), rows, meta)]


def _gauge_check(p, tol, threads, warnings):
    a, b = _config(p["config_a"]["sources"]), _config(p["config_b"]["sources"])
    lam = apply_gauge(a, b, (p["region"]["lo"], p["region"]["hi"]), p["charge"], p["n_probe"])
    row = [lam.kind, lam.winding_flux, lam.time_rate]
    cols = ["gauge_kind", "winding_flux_over_phi0", "time_rate"]
    if "trajectory" in p:
        t = p["trajectory"]
        state = ParticleState(t["position"], t["momentum"], p["charge"], t["mass"])
        res = gauge_invariance_experiment(a, b, state, t["t_final"], t["tol"], t["n_samples"])
        row += [res.max_deviation, res.max_delta_pi]
        cols += ["max_deviation", "max_delta_pi"]
    return [Table("gauge", tuple(cols), [row])]


def _ring(p, tol, threads, warnings):
    grid = expand_grid(p["flux_over_phi0"])
    k = min(p["n_levels"], p["n_sites"])

    def one(f):
        ev = ring_spectrum(RingModel(p["radius"], p["mass"], p["n_sites"], float(f))).eigenvalues
        return [float(f), *ev[:k]]
    cols = ("flux_over_phi0", *(f"E_{i}" for i in range(k)))
    return [Table("spectrum", cols, _map(one, grid, threads))]


def _wire(p, tol, threads, warnings):
    a, b = p["pi_region"]
    grid = expand_grid(p["flux_over_phi0"])

    def one(f):
        # straight line past a flux line: integral of pi is (theta/2pi) e Phi / c
        total = p["theta"] / (2 * np.pi) * E_CHARGE * float(f) * PHI0 / C
        prof = PiProfile.rectangle(a, b, total / (b - a))
        res = wire_scatter(WireModel(p["energy"], p["mass"], p["barrier"], prof))
        return [float(f), res.T, float(np.angle(res.transmission_amplitude))]
    return [Table("scattering", ("flux_over_phi0", "T", "arg_t"), _map(one, grid, threads))]


ANDREEV_COLUMNS = ("flux_over_phi0", "theta", "Z", "phi_B", "E_plus_over_delta0",
                   "E_minus_over_delta0", "method")


def _andreev_rows(specs, method, tol, threads):
    methods = ["analytic", "numeric"] if method == "both" else [method]

    def one(s):
        out = []
        for m in methods:
            lv = andreev_analytic(s) if m == "analytic" else \
                (andreev_numeric(s, tol) if tol else andreev_numeric(s))
            out.append([s.flux, s.theta, s.Z, s.phi_b, lv.e_plus / s.delta0,
                        lv.e_minus / s.delta0, lv.method])
        return out
    return [r for rows in _map(one, specs, threads) for r in rows]


def _andreev(p, tol, threads, warnings):
    zs = p["Z"] if isinstance(p["Z"], list) else [p["Z"]]
    th = p["theta"]
    if "phi_B" in p:
        fluxes = expand_grid(p["phi_B"]) / (2 * th)
    else:
        fluxes = expand_grid(p["flux_over_phi0"])
    specs = [JunctionSpec(z, p["delta0"], p["mu"], p["phi0"], th, float(f))
             for z in zs for f in fluxes]
    return [Table("levels", ANDREEV_COLUMNS, _andreev_rows(specs, p["method"], tol, threads))]


def _flux_sweep(p, tol, threads, warnings):
    thetas = p["theta"] if isinstance(p["theta"], list) else [p["theta"]]
    grid = expand_grid(p["flux_over_phi0"])
    method = "both" if p["numeric"] else "analytic"
    level_rows, period_rows = [], []
    for th in thetas:
        specs = [JunctionSpec(p["Z"], p["delta0"], p["mu"], p["phi0"], th, float(f)) for f in grid]
        rows = _andreev_rows(specs, method, tol, threads)
        level_rows += rows
        ana = [r[4] for r in rows if r[6] == "analytic"]
        num = [r[4] for r in rows if r[6] != "analytic"]
        period_rows.append([th, np.pi / th, extract_period(grid, ana),
                            extract_period(grid, num) if num else None, float(grid[1] - grid[0])])
    return [Table("levels", ANDREEV_COLUMNS, level_rows),
            Table("period", ("theta", "expected_period", "analytic_period", "numeric_period",
                             "resolution"), period_rows)]


DISPATCH = {"pi_field": _pi_field, "classical": _classical, "gauge_check": _gauge_check,
            "ring": _ring, "wire": _wire, "andreev": _andreev, "flux_sweep": _flux_sweep}


def compute(scenario, threads=1):
    """Result tables for ``scenario`` without writing anything."""
    warnings = []
    tables = DISPATCH[scenario.kind](scenario.params, scenario.tolerances, threads, warnings)
    return tables, warnings


def run(scenario, output_dir=".", fmt=None, threads=1):
    """Compute, write the result files and return a RunReport."""
    start = time.perf_counter()
    tables, warnings = compute(scenario, threads)
    paths = emit(tables, fmt or scenario.output_format, FsPath(output_dir), scenario.stem)
    digest = hashlib.sha256(canonical_json(scenario)).hexdigest()
    return RunReport(digest, time.perf_counter() - start, warnings, paths, versions())
