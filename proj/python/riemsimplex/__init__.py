"""Riemannian simplices, Karcher means and triangulation checks."""

import json

from ._core import (
    Error,
    altitudes,
    fatness,
    karcher_mean,
    run_cli,
    scale_h,
    thickness,
    volume,
)
from . import _core

__all__ = [
    "Error",
    "altitudes",
    "canonical_mesh",
    "certify",
    "distort_report",
    "fatness",
    "generate",
    "karcher_mean",
    "property_suite",
    "run_cli",
    "scale_h",
    "thickness",
    "triangulate_check",
    "volume",
]


def _text(mesh):
    return mesh if isinstance(mesh, str) else json.dumps(mesh)


def canonical_mesh(mesh):
    """Canonical JSON text of a mesh document."""
    return _core.canonical_mesh(_text(mesh))


def generate(kind, **kwargs):
    """Mesh document (dict) for one of the built-in families."""
    return json.loads(_core.generate(kind, **kwargs))


def certify(mesh, samples=500, seed=1):
    code, text = _core.certify(_text(mesh), samples, seed)
    return code, json.loads(text)


def triangulate_check(mesh, t0, variant="main", samples=100000, seed=1):
    code, text = _core.triangulate_check(_text(mesh), t0, variant, samples, seed)
    return code, json.loads(text)


def distort_report(mesh, t0, pairs=10000, seed=1):
    code, text = _core.distort_report(_text(mesh), t0, pairs, seed)
    return code, json.loads(text)


def property_suite(samples=0, oracle_samples=500, seed=1):
    code, text = _core.property_suite(samples, oracle_samples, seed)
    return code, json.loads(text)
