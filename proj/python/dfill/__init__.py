"""Dehn filling intervals, boundary train tracks and ladder checks.

Thin wrappers over the C++ core.  Documents come back as plain dicts and
lists decoded from the same JSON the command line tool prints.
"""

import json

from . import _core
from ._core import PreconditionError, StructuralError

__all__ = [
    "PreconditionError",
    "StructuralError",
    "analyze",
    "analyze_action",
    "build_track",
    "canonical_meridian",
    "carried_slopes",
    "census",
    "census_verify",
    "interval_j",
    "normalize_slope",
    "refine_arcs",
    "run_cli",
    "slope_distance",
    "validate_arcs",
    "verify_ladders",
]

normalize_slope = _core.normalize_slope


def slope_distance(a, b):
    return int(_core.slope_distance(a, b))


def interval_j(p, q, c=1):
    return json.loads(_core.interval_j(p, q, c))


def analyze(p, q, c=1, slopes=()):
    return json.loads(_core.analyze(p, q, c, list(slopes)))


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def analyze_action(action, slopes=()):
    return json.loads(_core.analyze_action(_text(action), list(slopes)))


def canonical_meridian(delta):
    d = json.loads(_core.canonical_meridian(delta))
    d["k"] = int(d["k"])
    return d


def census():
    return json.loads(_core.census())


def census_verify():
    return json.loads(_core.census_verify())


def refine_arcs(action):
    return json.loads(_core.refine_arcs(_text(action)))


def validate_arcs(system):
    return json.loads(_core.validate_arcs(_text(system)))


def build_track(p, q, c=1, config="default"):
    return json.loads(_core.build_track(p, q, c, config))


def carried_slopes(track):
    return json.loads(_core.carried_slopes(_text(track)))


def verify_ladders(levels=8, rungs=6, cases=1000, seed=0):
    return json.loads(_core.verify_ladders(levels, rungs, cases, seed))


def run_cli(*args):
    """Run the command line tool in process; returns (exit code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
