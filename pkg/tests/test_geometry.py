import numpy as np
import pytest

from lenscryst.builders import LensParams, VertexLabel
from lenscryst.geometry import (
    barycentric_point,
    check_commuting_square,
    facet_vertices,
    h_map,
    phi,
    pl_rho,
    pl_rho_blockwise,
    rho_vertex,
    sample_points,
    vertex_coords,
)


def test_vertex_coords():
    P = LensParams(2, [1])
    assert np.allclose(vertex_coords(VertexLabel(0, 0), P), [1, 0])
    assert np.allclose(vertex_coords(VertexLabel(0, 2), P), [-1, 0])
    assert np.allclose(vertex_coords(VertexLabel(1, 1), P), [0, 1j])
    P5 = LensParams(5, [2, 3])
    assert np.allclose(vertex_coords(VertexLabel(0, 5), P5), [-1, 0, 0])
    with pytest.raises(ValueError):
        vertex_coords(VertexLabel(2, 0), P)


def test_h_antipodal_for_p2():
    rng = np.random.default_rng(1)
    z = phi(rng.normal(size=3) + 1j * rng.normal(size=3))
    assert np.allclose(h_map(z, LensParams(2, [1, 1])), -z, atol=1e-15)


@pytest.mark.parametrize("p,q", [(2, [1]), (3, [2]), (5, [2, 3])])
def test_h_period_norm_and_no_fixed_points(p, q):
    P = LensParams(p, q)
    rng = np.random.default_rng(2)
    n1 = len(q) + 1
    z = phi(rng.normal(size=(1000, n1)) + 1j * rng.normal(size=(1000, n1)))
    w = z
    for _ in range(p):
        w = h_map(w, P)
    assert np.abs(w - z).max() < 1e-9
    assert np.abs(np.linalg.norm(h_map(z, P), axis=1) - 1).max() < 1e-12
    # |h(z) - z| >= |1 - exp(2 pi i / p)| * |z| > 0 since every q_j is a unit mod p
    assert np.linalg.norm(h_map(z, P) - z, axis=1).min() > 0.5 * abs(1 - np.exp(2j * np.pi / p))


def test_phi():
    assert np.allclose(phi(np.array([2, 0])), [1, 0])
    u = np.array([0.6, 0.8j])
    assert np.allclose(phi(u), u)
    with pytest.raises(ValueError):
        phi(np.zeros(2))


def test_pl_rho_on_vertices():
    P = LensParams(3, [2])
    key = (4, 1)
    for k, v in enumerate(facet_vertices(key, P)):
        t = np.zeros(4)
        t[k] = 1
        assert np.allclose(pl_rho(key, t, P), vertex_coords(rho_vertex(v, P), P))


def test_pl_rho_midpoint():
    P = LensParams(2, [1])
    mid = pl_rho((0, 0), [0.5, 0.5, 0, 0], P)
    expected = 0.5 * (vertex_coords(VertexLabel(0, 2), P) + vertex_coords(VertexLabel(0, 3), P))
    assert np.allclose(mid, expected)


def test_pl_rho_rejects_non_convex():
    P = LensParams(2, [1])
    with pytest.raises(ValueError):
        pl_rho((0, 0), [0.7, 0.7, -0.4, 0], P)
    with pytest.raises(ValueError):
        pl_rho((0, 0), [0.5, 0.5, 0.5, 0], P)


@pytest.mark.parametrize("p,q", [(2, [1]), (4, [3]), (5, [2, 4])])
def test_pl_rho_blockwise_and_norm(p, q):
    P = LensParams(p, q)
    rng = np.random.default_rng(3)
    keys, coeffs = sample_points(P, 300, rng)
    for key, t in zip(keys, coeffs):
        w = barycentric_point(key, t, P)
        rw = pl_rho(key, t, P)
        assert np.allclose(rw, pl_rho_blockwise(w, P), atol=1e-13)
        assert abs(np.linalg.norm(rw) - np.linalg.norm(w)) < 1e-12
        assert np.abs(phi(rw) - h_map(phi(w), P)).max() < 1e-9


@pytest.mark.parametrize("p,q", [(2, [1]), (3, [1, 2]), (5, [4])])
def test_commuting_square(p, q):
    res = check_commuting_square(LensParams(p, q), samples=2000)
    assert res.ok
    assert res.max_error < 1e-9 and res.max_norm_drift < 1e-12


def test_commuting_square_deterministic():
    P = LensParams(3, [2])
    assert check_commuting_square(P, 500, seed=5) == check_commuting_square(P, 500, seed=5)


def test_wrong_rotation_breaks_square():
    # rotating Σ by q=1 while h uses q=2 must not commute
    from lenscryst.geometry import _batch_points

    P1, P2 = LensParams(3, [1]), LensParams(3, [2])
    keys, coeffs = sample_points(P1, 100, np.random.default_rng(0))
    w = _batch_points(keys, coeffs, P1, rotate=False)
    rw = _batch_points(keys, coeffs, P1, rotate=True)
    assert np.abs(phi(rw) - h_map(phi(w), P2)).max() > 0.1
