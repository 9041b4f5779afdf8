"""Known Lie algebras and random presentations of them, for property tests and experiments.

A random presentation is a direct sum of small algebras written in a random
unimodular integer basis with a random rational inner product, so the
Jacobi identity holds by construction while every structure constant and
metric entry is generically nonzero.
"""

from __future__ import annotations

import random
from typing import Optional

import numpy as np

from .frame import FrameManifold, mat_inverse, scalar_array, zeros

__all__ = ["BASE_ALGEBRAS", "direct_sum", "change_basis", "random_frame_manifold"]

# name -> (dim, {(i, j): {k: coefficient}}) with [e_i, e_j] = sum_k coefficient e_k
BASE_ALGEBRAS = {
    "so3": (3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}}),
    "sl2": (3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}),
    "heis3": (3, {(0, 1): {2: 1}}),
    "aff": (2, {(0, 1): {1: 1}}),
    "r1": (1, {}),
}


def _constants(name: str) -> np.ndarray:
    d, table = BASE_ALGEBRAS[name]
    c = zeros(d, d, d)
    for (i, j), out in table.items():
        for k, v in out.items():
            c[k, i, j] = c[k, i, j] + v
            c[k, j, i] = c[k, j, i] - v
    return c


def direct_sum(names: list[str]) -> np.ndarray:
    blocks = [_constants(n) for n in names]
    d = sum(b.shape[0] for b in blocks)
    c = zeros(d, d, d)
    at = 0
    for b in blocks:
        s = slice(at, at + b.shape[0])
        c[s, s, s] = b
        at += b.shape[0]
    return c


def change_basis(c: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Structure constants in the basis f_i = sum_a p[a, i] e_a."""
    return np.einsum("km,mab,ai,bj->kij", mat_inverse(p), c, p, p)


def _unimodular(rng: random.Random, d: int, spread: int) -> np.ndarray:
    lower = np.eye(d, dtype=int)
    upper = np.eye(d, dtype=int)
    for i in range(d):
        for j in range(i):
            lower[i, j] = rng.randint(-spread, spread)
            upper[j, i] = rng.randint(-spread, spread)
    perm = np.eye(d, dtype=int)[rng.sample(range(d), d)]
    return perm @ lower @ upper


def _inner_product(rng: random.Random, d: int, spread: int) -> np.ndarray:
    low = np.zeros((d, d), dtype=int)
    for i in range(d):
        low[i, i] = rng.randint(1, spread + 1)
        for j in range(i):
            low[i, j] = rng.randint(-spread, spread)
    return low @ low.T


def _split(rng: random.Random, dim: int) -> list[str]:
    names, left = [], dim
    while left:
        fits = [n for n, (d, _) in BASE_ALGEBRAS.items() if d <= left]
        name = rng.choice(fits)
        names.append(name)
        left -= BASE_ALGEBRAS[name][0]
    return names


def random_frame_manifold(dim: int, seed: int, spread: int = 1, orthonormal: bool = False,
                          summands: Optional[list[str]] = None) -> FrameManifold:
    """A random valid presentation of a direct sum of known algebras, deterministic in ``seed``."""
    rng = random.Random(seed)
    names = summands or _split(rng, dim)
    c = direct_sum(names)
    if c.shape[0] != dim:
        raise ValueError(f"summands {names} have total dimension {c.shape[0]}, not {dim}")
    p = scalar_array(_unimodular(rng, dim, spread))
    metric = np.eye(dim, dtype=int) if orthonormal else _inner_product(rng, dim, spread)
    frame = tuple(f"e{i + 1}" for i in range(dim))
    return FrameManifold(f"random-{'+'.join(names)}-{seed}", dim, frame, change_basis(c, p),
                         scalar_array(metric))
