"""Scenario files: schema validation, defaults and canonical serialization."""

import copy
import json
import math
from dataclasses import dataclass
from importlib import resources

import jsonschema
import numpy as np

from ..core.vectors import ToleranceSpec
from ..errors import SchemaError
from ..fields.sources import FieldConfiguration

KINDS = ("pi_field", "classical", "gauge_check", "ring", "wire", "andreev", "flux_sweep")

DEFAULTS = {
    "pi_field": {"charge": 1.0, "method": "closed_form"},
    "classical": {"charge": 1.0, "mass": 1.0, "n_samples": 201, "tol": 1e-10},
    "gauge_check": {"charge": 1.0, "n_probe": 5},
    "ring": {"n_sites": 256, "radius": 1.0, "mass": 1.0, "n_levels": 8},
    "wire": {"mass": 1.0, "barrier": 0.0, "theta": math.pi, "pi_region": [-1.0, 1.0]},
    "andreev": {"mu": 1000.0, "delta0": 1.0, "phi0": 0.0, "theta": 2 * math.pi, "method": "both"},
    "flux_sweep": {"Z": 1.0, "mu": 1000.0, "delta0": 1.0, "phi0": 0.0, "numeric": True},
}
PARTICLE_DEFAULTS = {"mass": 1.0, "n_samples": 201, "tol": 1e-10}

_RELATIONS = {"minimum": "≥", "maximum": "≤", "exclusiveMinimum": ">", "exclusiveMaximum": "<"}


def load_schema():
    text = resources.files(__package__).joinpath("scenario.schema.json").read_text("utf-8")
    return json.loads(text)


_VALIDATOR = jsonschema.Draft202012Validator(load_schema())


@dataclass(frozen=True)
class Scenario:
    kind: str
    params: dict
    output_format: str = "csv"
    stem: str = ""
    tolerances: ToleranceSpec | None = None

    def to_dict(self):
        out = {"kind": self.kind, "params": copy.deepcopy(self.params),
               "output": {"format": self.output_format, "stem": self.stem}}
        if self.tolerances is not None:
            t = self.tolerances
            out["tolerances"] = {"rel_tol": t.rel_tol, "abs_tol": t.abs_tol,
                                 "max_iterations": t.max_iterations}
        return out


def canonical_json(scenario):
    """UTF-8 bytes with sorted keys; the digest and round trip are based on these."""
    return (json.dumps(scenario.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)
            + "\n").encode("utf-8")


def _path(parts):
    out = "$"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def _schema_error(err):
    parts = list(err.absolute_path)
    if err.validator == "required":
        missing = err.message.split("'")[1]
        return SchemaError(_path(parts + [missing]), "required field is missing")
    names = [p for p in parts if isinstance(p, str)]
    name = names[-1] if names else "value"
    if err.validator in _RELATIONS:
        return SchemaError(_path(parts), f"{name} must be {_RELATIONS[err.validator]} {err.validator_value}")
    if err.validator == "additionalProperties":
        return SchemaError(_path(parts), f"unexpected field: {err.message}")
    return SchemaError(_path(parts), err.message)


def expand_grid(spec):
    """Grid object to a float array; ``step`` grids include ``stop`` unless endpoint is false."""
    if isinstance(spec, (int, float)):
        return np.array([float(spec)])
    if isinstance(spec, list):
        return np.array(spec, dtype=float)
    start, stop = float(spec["start"]), float(spec["stop"])
    endpoint = spec.get("endpoint", True)
    if "num" in spec:
        return np.linspace(start, stop, int(spec["num"]), endpoint=endpoint)
    step = float(spec["step"])
    n = math.floor((stop - start) / step + 1e-9)
    values = start + step * np.arange(n + 1)
    if not endpoint and len(values) and abs(values[-1] - stop) <= 1e-9 * max(1.0, abs(stop)):
        values = values[:-1]
    return values


def _check_grid(spec, path):
    if isinstance(spec, dict) and spec["stop"] < spec["start"]:
        raise SchemaError(path, "stop must be ≥ start")


def _check_sources(sources, path):
    try:
        FieldConfiguration.from_dict({"sources": sources})
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def _check_box(box, path):
    if not all(a < b for a, b in zip(box["lo"], box["hi"])):
        raise SchemaError(path, "lo must be < hi componentwise")


def _semantic_checks(kind, p):
    if kind in ("pi_field", "classical"):
        _check_sources(p["sources"], "$.params.sources")
    if kind == "pi_field" and "path" in p:
        pts = np.array(p["path"]["points"], dtype=float)
        if np.any(np.linalg.norm(np.diff(pts, axis=0), axis=1) == 0):
            raise SchemaError("$.params.path.points", "consecutive path points must differ")
    if kind == "gauge_check":
        _check_sources(p["config_a"]["sources"], "$.params.config_a.sources")
        _check_sources(p["config_b"]["sources"], "$.params.config_b.sources")
        _check_box(p["region"], "$.params.region")
    for key in ("flux_over_phi0", "phi_B"):
        if key in p:
            _check_grid(p[key], f"$.params.{key}")
    if kind == "wire" and not p["pi_region"][0] < p["pi_region"][1]:
        raise SchemaError("$.params.pi_region", "pi_region must be an increasing pair")
    if kind in ("andreev", "flux_sweep"):
        if p["mu"] / p["delta0"] < 100:
            raise SchemaError("$.params.mu", "mu/delta0 must be ≥ 100")
    if kind == "flux_sweep":
        grid = expand_grid(p["flux_over_phi0"])
        thetas = p["theta"] if isinstance(p["theta"], list) else [p["theta"]]
        for th in thetas:
            if len(grid) < 2 or grid[-1] - grid[0] < 2 * math.pi / th - 1e-12:
                raise SchemaError("$.params.flux_over_phi0",
                                  f"grid must span two periods (pi/theta each) for theta={th}")


def scenario_from_dict(data):
    if not isinstance(data, dict):
        raise SchemaError("$", "scenario must be a JSON object")
    errors = sorted(_VALIDATOR.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        raise _schema_error(jsonschema.exceptions.best_match(errors))
    kind = data["kind"]
    params = {**DEFAULTS[kind], **copy.deepcopy(data["params"])}
    if kind == "andreev" and "phi_B" not in params:
        params.setdefault("flux_over_phi0", 0.0)
    if kind == "gauge_check" and "trajectory" in params:
        params["trajectory"] = {**PARTICLE_DEFAULTS, **params["trajectory"]}
    _semantic_checks(kind, params)
    out = data.get("output", {})
    tol = data.get("tolerances")
    tolerances = None
    if tol is not None:
        base = ToleranceSpec()
        tolerances = ToleranceSpec(tol.get("rel_tol", base.rel_tol), tol.get("abs_tol", base.abs_tol),
                                   tol.get("max_iterations", base.max_iterations))
    return Scenario(kind, params, out.get("format", "csv"), out.get("stem", kind), tolerances)


def parse_scenario(raw):
    """Bytes or text of a scenario file to a validated Scenario."""
    if isinstance(raw, bytes):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SchemaError("$", f"not UTF-8: {exc}") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc.msg} at line {exc.lineno}") from None
    return scenario_from_dict(data)


def load_scenario(path):
    with open(path, "rb") as fh:
        return parse_scenario(fh.read())
