"""Percolating subcategories of one-sided exact categories of quiver representations.

Reports come back as plain dicts with the same layout as ``percolate --json``.
"""

import json

from ._core import Instance, InputError, builtin_names, export_dot, load
from . import _core

__all__ = [
    "Instance",
    "InputError",
    "builtin_names",
    "check",
    "classify",
    "demo",
    "export_dot",
    "k0",
    "lift",
    "load",
    "lochom",
]


def _instance(spec):
    return load(spec) if isinstance(spec, str) else spec


def check(spec, axioms=()):
    return json.loads(_core.check_json(_instance(spec), list(axioms)))


def classify(spec):
    return json.loads(_core.classify_json(_instance(spec)))


def lochom(spec, source, target, depth=-1):
    return json.loads(_core.lochom_json(_instance(spec), source, target, depth))


def k0(spec):
    return json.loads(_core.k0_json(_instance(spec)))


def lift(spec, conflation, weak):
    return json.loads(_core.lift_json(_instance(spec), conflation, weak))


def demo(name, **options):
    return json.loads(_core.demo_json(name, **options))
