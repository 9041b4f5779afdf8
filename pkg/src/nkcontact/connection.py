"""Levi-Civita connection and curvature of a constant-bracket frame.

Every field here has constant frame components, so directional derivatives of
components vanish and all derivative operators reduce to finite algebra in the
structure constants.
"""

from __future__ import annotations

import itertools
import os
import string
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .frame import FrameManifold, TensorField, bracket, zeros
from .scalar import Scalar, as_scalar

__all__ = [
    "Connection",
    "Curvature",
    "levi_civita",
    "riemann",
    "covariant_derivative",
    "lie_derivative",
    "lie_derivative_via_connection",
    "lie_derivative_of_connection",
    "lie_derivative_of_curvature",
    "divergence",
    "hessian_candidate",
    "is_gradient_like",
    "default_curvature_sign",
]


def default_curvature_sign() -> int:
    raw = os.environ.get("GEOM_CURVATURE_SIGN", "1").strip()
    if raw not in ("1", "+1", "-1"):
        raise ValueError(f"GEOM_CURVATURE_SIGN must be +1 or -1, got {raw!r}")
    return -1 if raw == "-1" else 1


@dataclass(frozen=True, eq=False)
class Connection:
    """``gamma[k, i, j]`` is the e_k component of nabla_{e_i} e_j."""

    manifold: FrameManifold
    gamma: np.ndarray

    def nabla(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """nabla_X Y for constant-component X, Y."""
        return np.einsum("i,j,kij->k", x, y, self.gamma)

    def nabla_matrix(self, y: np.ndarray) -> np.ndarray:
        """Matrix of X -> nabla_X Y."""
        return np.einsum("j,kij->ki", y, self.gamma)

    def as_tensor(self) -> TensorField:
        return TensorField(1, 2, self.gamma)


@dataclass(frozen=True, eq=False)
class Curvature:
    """``riem[l, k, i, j]`` is the e_l component of R(e_i, e_j) e_k."""

    riem: np.ndarray
    ricci: TensorField
    scalar: Scalar
    sign: int = 1

    def apply(self, x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
        """R(X, Y) Z."""
        return np.einsum("lkij,i,j,k->l", self.riem, x, y, z)

    def as_tensor(self) -> TensorField:
        return TensorField(1, 3, self.riem)

    def lowered(self, m: FrameManifold) -> np.ndarray:
        """R(X,Y,Z,W) = g(R(X,Y)Z, W), axes (X, Y, Z, W)."""
        return np.einsum("lkij,lw->ijkw", self.riem, m.metric)


def levi_civita(m: FrameManifold) -> Connection:
    # C[i,j,k] = g([e_i,e_j], e_k)
    cl = np.einsum("mij,mk->ijk", m.c, m.metric)
    half = Scalar.const(1) / 2
    # transpose(2,0,1)[i,j,k] = cl[j,k,i]
    low = (cl - cl.transpose(2, 0, 1) + cl.transpose(1, 2, 0)) * half
    # low[i,j,k] = g(nabla_{e_i} e_j, e_k)
    gamma = np.einsum("km,ijm->kij", m.metric_inv, low)
    return Connection(m, gamma)


def riemann(m: FrameManifold, conn: Connection, sign: Optional[int] = None) -> Curvature:
    """Curvature with R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y], times ``sign``."""
    if sign is None:
        sign = default_curvature_sign()
    if sign not in (1, -1):
        raise ValueError("curvature sign must be +1 or -1")
    g = conn.gamma
    riem = (np.einsum("lim,mjk->lkij", g, g)
            - np.einsum("ljm,mik->lkij", g, g)
            - np.einsum("mij,lmk->lkij", m.c, g))
    if sign == -1:
        riem = -riem
    # Ric(X,Y) = trace(Z -> R(Z,X)Y)
    ricci = np.einsum("lbla->ab", riem)
    scal = np.einsum("ab,ab->", m.metric_inv, ricci)
    return Curvature(riem, TensorField(0, 2, ricci), as_scalar(scal), sign)


def _letters(count: int, skip: str = "") -> str:
    pool = [c for c in string.ascii_letters if c not in skip]
    return "".join(pool[:count])


def covariant_derivative(t: TensorField, conn: Connection) -> TensorField:
    """nabla T as a (r, s+1) tensor; the differentiation slot is appended last.

    ``out[..., m]`` holds the components of nabla_{e_m} T.
    """
    r, s = t.r, t.s
    rank = r + s
    idx = _letters(rank, "mx")
    total = None
    for slot in range(rank):
        swapped = idx[:slot] + "x" + idx[slot + 1:]
        if slot < r:
            # + Gamma[a, m, x] T[..x..]
            term = np.einsum(f"{idx[slot]}mx,{swapped}->{idx}m", conn.gamma, t.comps)
        else:
            # - Gamma[x, m, b] T[..x..]
            term = -np.einsum(f"xm{idx[slot]},{swapped}->{idx}m", conn.gamma, t.comps)
        total = term if total is None else total + term
    if total is None:
        total = zeros(conn.manifold.dim)
    return TensorField(r, s + 1, total)


def _derivation(t: TensorField, a: np.ndarray) -> np.ndarray:
    """Extend the endomorphism ``a`` to tensors as a derivation.

    Contravariant slots get ``a``, covariant slots get ``-a^T``.
    """
    rank = t.r + t.s
    idx = _letters(rank, "x")
    total = None
    for slot in range(rank):
        swapped = idx[:slot] + "x" + idx[slot + 1:]
        if slot < t.r:
            term = np.einsum(f"{idx[slot]}x,{swapped}->{idx}", a, t.comps)
        else:
            term = -np.einsum(f"x{idx[slot]},{swapped}->{idx}", a, t.comps)
        total = term if total is None else total + term
    return t.comps.copy() * 0 if total is None else total


def lie_derivative(t, v: np.ndarray, m: FrameManifold):
    """Lie derivative along constant V using brackets only.

    Vectors map to [V, X]; tensors follow the Leibniz rule with X -> [V, X].
    """
    if isinstance(t, np.ndarray):
        return bracket(m, v, t)
    return TensorField(t.r, t.s, _derivation(t, m.ad(v)))


def lie_derivative_via_connection(t, v: np.ndarray, conn: Connection):
    """Lie derivative along V through nabla: L_V = nabla_V - (nabla V) acting as a derivation.

    Independent of :func:`lie_derivative`; both must agree for a torsion-free nabla.
    """
    nv = conn.nabla_matrix(v)  # X -> nabla_X V
    if isinstance(t, np.ndarray):
        return conn.nabla(v, t) - nv @ t
    nabla_t = covariant_derivative(t, conn).comps
    along_v = np.einsum(f"{_letters(t.r + t.s, 'z')}z,z->{_letters(t.r + t.s, 'z')}", nabla_t, v)
    return TensorField(t.r, t.s, along_v - _derivation(t, nv))


def lie_derivative_of_connection(v: np.ndarray, conn: Connection) -> TensorField:
    """(L_V nabla)(X, Y) = [V, nabla_X Y] - nabla_[V,X] Y - nabla_X [V,Y]; axes (k, X, Y)."""
    m = conn.manifold
    return TensorField(1, 2, _derivation(conn.as_tensor(), m.ad(v)))


def lie_derivative_of_curvature(v: np.ndarray, m: FrameManifold, curv: Curvature) -> TensorField:
    """(L_V R)(X,Y)Z with axes (l, Z, X, Y), matching ``Curvature.riem``."""
    return TensorField(1, 3, _derivation(curv.as_tensor(), m.ad(v)))


def hessian_candidate(v: np.ndarray, conn: Connection) -> TensorField:
    """Hess(X, Y) = g(nabla_X V, Y), treating V as a gradient Df."""
    m = conn.manifold
    nv = conn.nabla_matrix(v)  # nv[k, i] = (nabla_{e_i} V)^k
    return TensorField(0, 2, np.einsum("ki,kj->ij", nv, m.metric))


def divergence(v: np.ndarray, conn: Connection) -> Scalar:
    return as_scalar(np.trace(conn.nabla_matrix(v)))


def is_gradient_like(v: np.ndarray, conn: Connection) -> bool:
    """Symmetric Hessian: necessary for V to be locally a gradient."""
    return asymmetry_witness(hessian_candidate(v, conn)) is None


def asymmetry_witness(t: TensorField):
    """First (i, j) with T[i,j] != T[j,i], with the difference, or None."""
    d = t.dim
    for i, j in itertools.combinations(range(d), 2):
        diff = t.comps[i, j] - t.comps[j, i]
        if not diff.is_zero():
            return (i, j), diff
    return None
