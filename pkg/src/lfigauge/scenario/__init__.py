from .emit import Table, csv_bytes, emit, json_bytes
from .parse import Scenario, canonical_json, expand_grid, load_schema, parse_scenario
from .run import RunReport, compute, run

__all__ = ["RunReport", "Scenario", "Table", "canonical_json", "compute", "csv_bytes", "emit",
           "expand_grid", "json_bytes", "load_schema", "parse_scenario", "run"]
