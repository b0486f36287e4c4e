"""Threshold dynamics for curve shortening: kernels, evolvers and convergence studies."""

import json as _json

from ._tdflow import *  # noqa: F401,F403
from ._tdflow import run_circle_lte as _run_circle_lte
from ._tdflow import run_graph_convergence as _run_graph_convergence

__version__ = "0.1.0"


def graph_convergence(config_text: str) -> dict:
    """Run a graph-converge study and return its table as a dict."""
    return _json.loads(_run_graph_convergence(config_text))


def circle_lte(config_text: str = "schema = 1\n") -> list:
    """Run the shrinking-circle one-step study and return one dict per radius."""
    return [_json.loads(t) for t in _run_circle_lte(config_text)]
