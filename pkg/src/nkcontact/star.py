"""The *-Ricci tensor by direct trace, and identities it satisfies on N(k) manifolds."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .connection import Connection, Curvature, asymmetry_witness, covariant_derivative, riemann
from .contact import ContactStructure, nullity_from_h
from .frame import FrameManifold, TensorField, scalar_array
from .report import CheckEntry, Witness, residual_entry
from .scalar import Scalar, as_scalar

__all__ = [
    "StarRicci",
    "star_ricci",
    "check_star_symmetry",
    "check_eta_einstein_form",
    "check_star_derivative",
    "check_star_cyclic_derivative",
    "check_star_operator_derivative",
    "reconciling_signs",
]


@dataclass(frozen=True, eq=False)
class StarRicci:
    s_star: TensorField
    q_star: TensorField
    r_star: Scalar

    @property
    def is_symmetric(self) -> bool:
        return asymmetry_witness(self.s_star) is None


def star_ricci(m: FrameManifold, c: ContactStructure, curv: Curvature) -> StarRicci:
    """S*(X,Y) = 1/2 trace(Z -> phi R(X, phi Y) Z)."""
    phi = c.phi
    half = Scalar.const(1) / 2
    s = np.einsum("ml,lmib,bj->ij", phi, curv.riem, phi) * half
    q = np.einsum("ab,xb->ax", m.metric_inv, s)  # g(Q*X, Y) = S*(X, Y)
    return StarRicci(TensorField(0, 2, s), TensorField(1, 1, q), as_scalar(np.trace(q)))


def check_star_symmetry(m: FrameManifold, star: StarRicci) -> CheckEntry:
    w = asymmetry_witness(star.s_star)
    if w is None:
        return CheckEntry("star-sym", "pass", derived={"r*": star.r_star})
    (i, j), diff = w
    names = m.frame_names
    return CheckEntry("star-sym", "fail", Witness((names[i], names[j]), diff, "S*(X,Y) - S*(Y,X)"))


def _eta_einstein_residual(m: FrameManifold, c: ContactStructure, s: np.ndarray, k: Scalar):
    return s + (m.metric - np.outer(c.eta, c.eta)) * k


def check_eta_einstein_form(m: FrameManifold, c: ContactStructure, star: StarRicci, k: Scalar,
                            reconciling: Optional[list[int]] = None) -> CheckEntry:
    """S* = -k (g - eta (x) eta), plus symmetry of S*."""
    res = _eta_einstein_residual(m, c, star.s_star.comps, k)
    derived = {"k": k, "r*": star.r_star}
    if reconciling is not None:
        derived["reconciling_sign"] = ",".join(f"{s:+d}" for s in reconciling) or "none"
    return residual_entry("lemma-3.2", [
        ("S* + k(g - eta(x)eta)", res),
        ("S*(X,Y) - S*(Y,X)", star.s_star.comps - star.s_star.comps.T),
    ], m.frame_names, derived=derived)


def reconciling_signs(m: FrameManifold, c: ContactStructure, conn: Connection) -> list[int]:
    """Curvature signs under which the traced S* equals -k(g - eta (x) eta).

    k is taken from h^2 = (k - 1) phi^2, which does not depend on the sign.
    """
    k = nullity_from_h(m, c)
    if k is None:
        return []
    out = []
    for sign in (1, -1):
        star = star_ricci(m, c, riemann(m, conn, sign))
        res = _eta_einstein_residual(m, c, star.s_star.comps, k)
        if all(v.is_zero() for v in res.flat):
            out.append(sign)
    return out


def _nabla_s(star: StarRicci, conn: Connection) -> np.ndarray:
    """n[x, y, z] = (nabla_{e_z} S*)(e_x, e_y)."""
    return covariant_derivative(star.s_star, conn).comps


def check_star_derivative(m: FrameManifold, c: ContactStructure, conn: Connection,
                          star: StarRicci, k: Scalar) -> CheckEntry:
    """(nabla_Z S*)(X,Y) = k[eta(Y) g(Z + hZ, phi X) + eta(X) g(Z + hZ, phi Y)]."""
    ident = scalar_array(np.eye(m.dim, dtype=int))
    gz = (ident + c.h).T @ m.metric @ c.phi  # [z, x] = g(Z + hZ, phi X)
    rhs = (np.einsum("y,zx->xyz", c.eta, gz) + np.einsum("x,zy->xyz", c.eta, gz)) * k
    return residual_entry("nabla-sstar-3.4to3.6", [("(nabla_Z S*)(X,Y) - rhs", _nabla_s(star, conn) - rhs)],
                          m.frame_names, derived={"k": k})


def check_star_cyclic_derivative(m: FrameManifold, c: ContactStructure, conn: Connection,
                                 star: StarRicci, k: Scalar) -> CheckEntry:
    """(nabla_Z S*)(X,Y) - (nabla_X S*)(Y,Z) - (nabla_Y S*)(X,Z) over all frame triples."""
    n = _nabla_s(star, conn)
    lhs = n - n.transpose(2, 0, 1) - n.transpose(0, 2, 1)
    ident = scalar_array(np.eye(m.dim, dtype=int))
    p = c.phi.T @ m.metric @ (ident + c.h)  # [x, z] = g(phi X, Z) + g(phi X, hZ)
    rhs = (np.einsum("y,xz->xyz", c.eta, p) + np.einsum("x,yz->xyz", c.eta, p)) * (k * -2)
    return residual_entry("lemma-3.4", [("cyclic nabla S* - rhs", lhs - rhs)], m.frame_names,
                          derived={"k": k})


def check_star_operator_derivative(m: FrameManifold, c: ContactStructure, conn: Connection,
                                   star: StarRicci, k: Scalar) -> list[CheckEntry]:
    """(nabla_X Q*)Y = k[g(X + hX, phi Y) xi - eta(Y)(phi X + phi h X)], read both ways round."""
    ident = scalar_array(np.eye(m.dim, dtype=int))
    nq = covariant_derivative(star.q_star, conn).comps  # [a, y, x] = ((nabla_x Q*) y)^a
    gxy = (ident + c.h).T @ m.metric @ c.phi  # [x, y] = g(X + hX, phi Y)
    php = c.phi @ (ident + c.h)  # [a, x] = (phi X + phi h X)^a
    rhs = (np.einsum("a,xy->ayx", c.xi, gxy) - np.einsum("y,ax->ayx", c.eta, php)) * k
    first = residual_entry("eq-3.28", [("(nabla_X Q*)Y - rhs", nq - rhs)], m.frame_names,
                           derived={"k": k})
    # same identity with the roles of X and Y exchanged: axes (a, x, y)
    swapped_lhs = nq
    swapped_rhs = (np.einsum("a,yx->axy", c.xi, gxy) - np.einsum("x,ay->axy", c.eta, php)) * k
    second = residual_entry("eq-3.29", [("(nabla_Y Q*)X - rhs", swapped_lhs - swapped_rhs)],
                            m.frame_names, derived={"k": k})
    return [first, second]
