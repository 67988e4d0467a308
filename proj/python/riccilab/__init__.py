"""Python face of the verification laboratory.

Thin wrapper over the C++ core: scenarios load through the same strict
validator the CLI uses, and `run` returns the CLI's structured report as a
dict, so nothing can drift between the two surfaces.
"""

import json as _json

from ._riccilab import (
    Scenario,
    ScenarioError,
    digest,
    load_file,
    load_text,
    overall_pass,
    ricci,
    run_json,
    run_text,
    scalar_curvature,
)

__all__ = [
    "Scenario",
    "ScenarioError",
    "digest",
    "load_file",
    "load_text",
    "overall_pass",
    "ricci",
    "run",
    "run_json",
    "run_text",
    "scalar_curvature",
]


def run(scenario, command="report"):
    """Run the requested check group and return the report as a dict."""
    return _json.loads(run_json(scenario, command))
