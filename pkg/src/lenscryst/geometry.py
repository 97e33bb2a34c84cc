"""Floating-point realization of Σ in C^{n+1} and the commuting-square check.

Points of C^{n+1} are complex numpy arrays of length n+1 (or arrays of
shape (..., n+1) for batches).  A point of |Σ| is given by a facet key
``(l_0, ..., l_n)`` and 2(n+1) convex coefficients ordered as
``(w_{0,l_0}, w_{0,l_0+1}, w_{1,l_1}, w_{1,l_1+1}, ...)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .builders import LensParams, VertexLabel

DEFAULT_SEED = 20260322
TOL = 1e-9
CONVEX_TOL = 1e-12


def _rotations(params: LensParams) -> np.ndarray:
    k = np.array([params.rotation(j) for j in range(params.n + 1)], dtype=float)
    return np.exp(2j * np.pi * k / params.p)


def vertex_coords(label: VertexLabel, params: LensParams) -> np.ndarray:
    j, l = label
    if not (0 <= j <= params.n and 0 <= l < 2 * params.p):
        raise ValueError(f"vertex {label} out of range for {params}")
    z = np.zeros(params.n + 1, dtype=complex)
    z[j] = np.exp(1j * np.pi * l / params.p)
    return z


def h_map(z: np.ndarray, params: LensParams) -> np.ndarray:
    """Rotate coordinate j by exp(2 pi i q_j / p), with q_0 = 1."""
    return np.asarray(z) * _rotations(params)


def phi(w: np.ndarray, eps: float = 1e-9) -> np.ndarray:
    """Radial projection onto the unit sphere."""
    w = np.asarray(w)
    norm = np.linalg.norm(w, axis=-1, keepdims=True)
    if np.any(norm <= eps):
        raise ValueError("cannot project a point this close to the origin")
    return w / norm


def facet_vertices(key: Sequence[int], params: LensParams) -> list[VertexLabel]:
    m = 2 * params.p
    out = []
    for j, l in enumerate(key):
        out += [VertexLabel(j, l % m), VertexLabel(j, (l + 1) % m)]
    return out


def rho_vertex(label: VertexLabel, params: LensParams) -> VertexLabel:
    j, l = label
    return VertexLabel(j, (l + 2 * params.rotation(j)) % (2 * params.p))


def _check_convex(t: np.ndarray) -> None:
    if np.any(t < -CONVEX_TOL) or np.any(np.abs(t.sum(axis=-1) - 1) > CONVEX_TOL):
        raise ValueError("coefficients must be nonnegative and sum to 1")


def _vertex_matrix(labels: Sequence[VertexLabel], params: LensParams) -> np.ndarray:
    return np.stack([vertex_coords(v, params) for v in labels])


def barycentric_point(key: Sequence[int], t: Sequence[float], params: LensParams) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    _check_convex(t)
    return t @ _vertex_matrix(facet_vertices(key, params), params)


def pl_rho(key: Sequence[int], t: Sequence[float], params: LensParams) -> np.ndarray:
    """|ρ| on a point of a facet: the same coefficients on the image vertices."""
    t = np.asarray(t, dtype=float)
    _check_convex(t)
    images = [rho_vertex(v, params) for v in facet_vertices(key, params)]
    return t @ _vertex_matrix(images, params)


def pl_rho_blockwise(w: np.ndarray, params: LensParams) -> np.ndarray:
    """|ρ| computed block by block: the part of w in coordinate j is rotated
    by exp(2 pi i q_j / p).  Agrees with :func:`pl_rho` on |Σ|."""
    return np.asarray(w) * _rotations(params)


def sample_points(params: LensParams, count: int, rng: np.random.Generator):
    """Random facets and Dirichlet(1) coefficients; returns (keys, coeffs)."""
    m = 2 * params.p
    keys = rng.integers(0, m, size=(count, params.n + 1))
    coeffs = rng.dirichlet(np.ones(2 * (params.n + 1)), size=count)
    return keys, coeffs


def _batch_points(keys: np.ndarray, coeffs: np.ndarray, params: LensParams, rotate: bool) -> np.ndarray:
    """Vectorised barycentric points (or their |ρ| images) for many samples."""
    p = params.p
    count, n1 = keys.shape
    out = np.zeros((count, n1), dtype=complex)
    for j in range(n1):
        shift = 2 * params.rotation(j) if rotate else 0
        a = (keys[:, j] + shift) % (2 * p)
        b = (keys[:, j] + 1 + shift) % (2 * p)
        out[:, j] = coeffs[:, 2 * j] * np.exp(1j * np.pi * a / p) + coeffs[:, 2 * j + 1] * np.exp(1j * np.pi * b / p)
    return out


@dataclass
class SquareCheck:
    samples: int
    max_error: float
    max_norm_drift: float
    max_period_error: float
    tolerance: float

    @property
    def ok(self) -> bool:
        return max(self.max_error, self.max_norm_drift, self.max_period_error) <= self.tolerance


def check_commuting_square(
    params: LensParams, samples: int = 10_000, seed: int = DEFAULT_SEED, tol: float = TOL
) -> SquareCheck:
    """Compare phi(|ρ|(w)) with h(phi(w)) on random points of |Σ|.

    Also reports the norm drift of |ρ| and the error of h^p = id.
    """
    rng = np.random.default_rng(seed)
    keys, coeffs = sample_points(params, samples, rng)
    w = _batch_points(keys, coeffs, params, rotate=False)
    rw = _batch_points(keys, coeffs, params, rotate=True)
    lhs = phi(rw)
    z = phi(w)
    rhs = h_map(z, params)
    err = np.abs(lhs - rhs).max()
    drift = np.abs(np.linalg.norm(rw, axis=1) - np.linalg.norm(w, axis=1)).max()
    zp = z
    for _ in range(params.p):
        zp = h_map(zp, params)
    period = np.abs(zp - z).max()
    return SquareCheck(samples, float(err), float(drift), float(period), tol)
