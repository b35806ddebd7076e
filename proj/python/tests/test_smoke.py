import math

import numpy as np
import pytest

import riemsimplex as rs


def test_equilateral_triangle():
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]])
    assert rs.thickness(pts) == pytest.approx(math.sqrt(3) / 4, abs=1e-12)
    assert rs.volume(pts) == pytest.approx(math.sqrt(3) / 4, abs=1e-12)
    assert len(rs.altitudes(pts)) == 3


def test_sphere_midpoint():
    a = np.array([1.0, 0.0, 0.0])
    b = np.array([math.cos(0.4), math.sin(0.4), 0.0])
    point, iterations, residual = rs.karcher_mean("sphere", np.vstack([a, b]), [0.5, 0.5])
    assert np.allclose(point, [math.cos(0.2), math.sin(0.2), 0.0], atol=1e-10)
    assert iterations <= 50
    assert residual < 1e-10


def test_scale_h():
    assert rs.scale_h("torus", 2, 0.25, periods=[1.0, 1.0]) == pytest.approx(0.125, rel=1e-12)
    assert rs.scale_h("sphere", 2, 0.25) == pytest.approx(math.sqrt(2) * 0.25 / 6, rel=1e-12)


def test_torus_triangulates():
    mesh = rs.generate("torus", n=12)
    code, doc = rs.triangulate_check(mesh, 0.25, samples=2000)
    assert code == 0
    assert doc["report"]["verdict"] is True


def test_icosahedron_fails_condition_one():
    code, doc = rs.triangulate_check(rs.generate("icosahedron", level=0), 0.25, samples=2000)
    assert code == 1
    assert doc["report"]["condition1"]["holds"] is False


def test_certify_small_triangle():
    mesh = {
        "manifold": {"kind": "sphere", "dim": 2, "radius": 1.0},
        "vertices": [[1.0, 0.0, 0.0], [math.cos(0.01), math.sin(0.01), 0.0], [math.cos(0.01), 0.0, math.sin(0.01)]],
        "simplices": [[0, 1, 2]],
    }
    code, doc = rs.certify(mesh, samples=100)
    assert code == 0
    assert doc["verdict"] == "Certified"


def test_canonical_round_trip():
    text = rs.canonical_mesh(rs.generate("octahedron", level=1))
    assert rs.canonical_mesh(text) == text


def test_bad_mesh_raises():
    with pytest.raises(rs.Error):
        rs.certify("{}")


def test_cli_unknown_flag():
    code, out, err = rs.run_cli(["certify", "--no-such-flag"])
    assert code == 2
    assert "Usage" in err
