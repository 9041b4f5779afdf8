"""Almost contact / contact metric structures, h, d(eta) and the nullity constant."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .config import ContactData
from .connection import Connection, Curvature, covariant_derivative
from .frame import FrameManifold, TensorField, scalar_array
from .report import NA, CheckEntry, Witness, residual_entry
from .scalar import Scalar

__all__ = [
    "NullityError",
    "NotNullityError",
    "HSquareMismatch",
    "ContactStructure",
    "build_contact",
    "verify_almost_contact",
    "exterior_derivative_eta",
    "contact_condition",
    "compute_h",
    "check_h",
    "nullity_from_curvature",
    "nullity_from_h",
    "detect_nullity_k",
    "check_nullity_identities",
    "CONTACT_FORMS",
]

CONTACT_FORMS = ("A", "B")


class NullityError(ValueError):
    pass


class NotNullityError(NullityError):
    """R(X,Y)xi is not a single multiple of eta(Y)X - eta(X)Y."""


class HSquareMismatch(NullityError):
    """k read off the curvature disagrees with h^2 = (k - 1) phi^2."""


def _identity(d: int) -> np.ndarray:
    return scalar_array(np.eye(d, dtype=int))


@dataclass(frozen=True, eq=False)
class ContactStructure:
    """(phi, xi, eta) with derived h and, once detected, the nullity constant k.

    ``phi`` and ``h`` are matrices with ``phi[i, j]`` the e_i component of phi(e_j).
    """

    xi: np.ndarray
    eta: np.ndarray
    phi: np.ndarray
    h: np.ndarray
    k: Optional[Scalar] = None

    def with_k(self, k: Optional[Scalar]) -> "ContactStructure":
        return replace(self, k=k)

    @property
    def phi_h(self) -> np.ndarray:
        return self.phi @ self.h

    def phi_tensor(self) -> TensorField:
        return TensorField(1, 1, self.phi)

    def eta_tensor(self) -> TensorField:
        return TensorField(0, 1, self.eta)


def compute_h(m: FrameManifold, xi: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """h = 1/2 L_xi phi, i.e. 1/2 (ad_xi phi - phi ad_xi)."""
    a = m.ad(xi)
    return (a @ phi - phi @ a) * (Scalar.const(1) / 2)


def build_contact(m: FrameManifold, data: ContactData) -> ContactStructure:
    xi, phi = data.xi, data.phi
    return ContactStructure(xi, m.flat(xi), phi, compute_h(m, xi, phi))


def verify_almost_contact(m: FrameManifold, c: ContactStructure) -> list[CheckEntry]:
    names = m.frame_names
    d = m.dim
    ident = _identity(d)
    eta, xi, phi, g = c.eta, c.xi, c.phi, m.metric
    ac1 = residual_entry("ac-2.1", [
        ("phi^2 + I - xi(x)eta", phi @ phi + ident - np.outer(xi, eta)),
        ("eta(xi) - 1", np.array(eta @ xi - 1, dtype=object)),
        ("phi xi", phi @ xi),
        ("eta o phi", eta @ phi),
    ], names)
    ac2 = residual_entry("ac-2.2", [
        ("g(phi X, phi Y) - g(X,Y) + eta(X)eta(Y)", phi.T @ g @ phi - g + np.outer(eta, eta)),
    ], names)
    ac3 = residual_entry("ac-2.3", [
        ("g(phi X, Y) + g(X, phi Y)", phi.T @ g + g @ phi),
    ], names)
    return [ac1, ac2, ac3]


def exterior_derivative_eta(m: FrameManifold, c: ContactStructure) -> TensorField:
    """d(eta)(e_i, e_j) = -1/2 eta([e_i, e_j]) (constant components, 1/2 convention)."""
    half = Scalar.const(1) / 2
    return TensorField(0, 2, -np.einsum("kij,k->ij", m.c, c.eta) * half)


def contact_condition(m: FrameManifold, c: ContactStructure, form: str = "B") -> CheckEntry:
    """Compare d(eta) with the phi 2-form.

    Form A: g(phi X, Y) = d eta(X, Y).  Form B: g(X, phi Y) = d eta(X, Y).
    The entry passes iff the requested form holds; ``derived['holds']`` lists
    every form that does.
    """
    if form not in CONTACT_FORMS:
        raise ValueError(f"contact form must be one of {CONTACT_FORMS}")
    deta = exterior_derivative_eta(m, c).comps
    forms = {"A": c.phi.T @ m.metric, "B": m.metric @ c.phi}
    residuals = {f: deta - forms[f] for f in CONTACT_FORMS}
    holds = [f for f in CONTACT_FORMS if all(x.is_zero() for x in residuals[f].flat)]
    entry = residual_entry("contact-cond", [(f"d eta - form {form}", residuals[form])], m.frame_names)
    entry.derived["form"] = form
    entry.derived["holds"] = ",".join(holds) if holds else "none"
    if holds and form not in holds:
        entry.note = "sign-flipped: the other convention holds"
    return entry


def check_h(m: FrameManifold, c: ContactStructure) -> CheckEntry:
    names = m.frame_names
    g, h, phi = m.metric, c.h, c.phi
    return residual_entry("h-2.4", [
        ("g(hX,Y) - g(X,hY)", h.T @ g - g @ h),
        ("h phi + phi h", h @ phi + phi @ h),
        ("trace h", np.array(np.trace(h), dtype=object)),
        ("trace phi h", np.array(np.trace(phi @ h), dtype=object)),
        ("h xi", h @ c.xi),
    ], names)


def _r_xi(curv: Curvature, xi: np.ndarray) -> np.ndarray:
    """rx[l, i, j] = component l of R(e_i, e_j) xi."""
    return np.einsum("lkij,k->lij", curv.riem, xi)


def _nullity_rhs(eta: np.ndarray, d: int) -> np.ndarray:
    """b[l, i, j] = component l of eta(e_j) e_i - eta(e_i) e_j."""
    ident = _identity(d)
    return np.einsum("li,j->lij", ident, eta) - np.einsum("lj,i->lij", ident, eta)


def nullity_from_curvature(m: FrameManifold, c: ContactStructure, curv: Curvature) -> Scalar:
    """The k with R(X,Y)xi = k[eta(Y)X - eta(X)Y], or raise NotNullityError."""
    rx = _r_xi(curv, c.xi)
    b = _nullity_rhs(c.eta, m.dim)
    k = None
    for idx, bv in np.ndenumerate(b):
        if not bv.is_zero():
            k = rx[idx] / bv
            break
    if k is None:
        raise NotNullityError("eta vanishes identically")
    res = rx - b * k
    for idx, v in np.ndenumerate(res):
        if not v.is_zero():
            l, i, j = idx
            raise NotNullityError(
                f"R({m.frame_names[i]},{m.frame_names[j]})xi is not {k} times "
                f"eta(Y)X - eta(X)Y (component {m.frame_names[l]} off by {v})")
    return k


def nullity_from_h(m: FrameManifold, c: ContactStructure) -> Optional[Scalar]:
    """The k with h^2 = (k - 1) phi^2, None if phi^2 = 0, or raise NotNullityError."""
    h2 = c.h @ c.h
    p2 = c.phi @ c.phi
    k = None
    for idx, pv in np.ndenumerate(p2):
        if not pv.is_zero():
            k = h2[idx] / pv + 1
            break
    if k is None:
        return None
    res = h2 - p2 * (k - 1)
    if any(not v.is_zero() for v in res.flat):
        raise NotNullityError("h^2 is not a multiple of phi^2")
    return k


def detect_nullity_k(m: FrameManifold, c: ContactStructure, curv: Curvature) -> Scalar:
    """Nullity constant read from the curvature and cross-checked against h^2."""
    k = nullity_from_curvature(m, c, curv)
    res = c.h @ c.h - (c.phi @ c.phi) * (k - 1)
    for idx, v in np.ndenumerate(res):
        if not v.is_zero():
            i, j = idx
            raise HSquareMismatch(
                f"h^2 - (k - 1) phi^2 with k = {k} is {v} at "
                f"[{m.frame_names[i]},{m.frame_names[j]}]")
    return k


def check_nullity_identities(m: FrameManifold, c: ContactStructure, conn: Connection,
                              curv: Curvature) -> list[CheckEntry]:
    """Nullity detection plus the derivative identities of an N(k)-contact metric structure.

    Returns entries h-sq-2.6, nullity-2.7, nullity-2.8, nabla-xi-2.5,
    nabla-eta-2.9, nabla-phi-2.10, nabla-phih-2.11.  Identities that need k
    are not-applicable when no consistent k exists.
    """
    names = m.frame_names
    d = m.dim
    g, xi, eta, phi, h = m.metric, c.xi, c.eta, c.phi, c.h
    ident = _identity(d)
    out = []

    out.append(residual_entry("nabla-xi-2.5", [
        ("nabla_X xi + phi X + phi h X", conn.nabla_matrix(xi) + phi + phi @ h),
    ], names))

    k_curv = k_h = None
    why = None
    try:
        k_curv = nullity_from_curvature(m, c, curv)
    except NotNullityError as exc:
        why = str(exc)
    try:
        k_h = nullity_from_h(m, c)
    except NotNullityError as exc:
        why = why or str(exc)

    if k_curv is None:
        rx = _r_xi(curv, xi)
        out.append(CheckEntry("nullity-2.7", "fail", _witness_from(rx, names, "R(X,Y)xi"), note=why))
    else:
        out.append(CheckEntry("nullity-2.7", "pass", derived={"k": k_curv}))

    if k_h is None:
        out.append(CheckEntry("h-sq-2.6", NA, note=why or "phi^2 vanishes"))
    elif k_curv is None:
        out.append(CheckEntry("h-sq-2.6", "pass", derived={"k": k_h},
                              note="k from h^2 only; curvature gives no nullity constant"))
    else:
        entry = residual_entry("h-sq-2.6", [
            ("h^2 - (k - 1) phi^2", h @ h - (phi @ phi) * (k_curv - 1)),
        ], names, derived={"k": k_curv, "k_from_h": k_h})
        out.append(entry)

    k = k_curv if (k_curv is not None and (k_h is None or k_h == k_curv)) else None
    if k is None:
        reason = "no nullity constant consistent with both R(X,Y)xi and h^2"
        for cid in ("nullity-2.8", "nabla-eta-2.9", "nabla-phi-2.10", "nabla-phih-2.11"):
            out.append(CheckEntry(cid, NA, note=reason))
        return out

    # R(xi, X)Y = k[g(X,Y)xi - eta(Y)X]; axes (l, X, Y)
    r_xi_xy = np.einsum("lkai,a->lik", curv.riem, xi)
    rhs8 = (np.einsum("l,ik->lik", xi, g) - np.einsum("li,k->lik", ident, eta)) * k
    out.append(residual_entry("nullity-2.8", [("R(xi,X)Y - rhs", r_xi_xy - rhs8)], names,
                              derived={"k": k}))

    # (nabla_X eta)Y = g(X + hX, phi Y); covariant_derivative puts X last
    nabla_eta = covariant_derivative(c.eta_tensor(), conn).comps  # [Y, X]
    ih = ident + h
    rhs9 = ih.T @ g @ phi  # [X, Y]
    out.append(residual_entry("nabla-eta-2.9", [("(nabla_X eta)Y - rhs", nabla_eta.T - rhs9)], names))

    # (nabla_X phi)Y = g(X + hX, Y)xi - eta(Y)(X + hX); axes (a, Y, X)
    nabla_phi = covariant_derivative(c.phi_tensor(), conn).comps
    gxy = ih.T @ g  # [X, Y] = g(X + hX, Y)
    rhs10 = np.einsum("a,xy->ayx", xi, gxy) - np.einsum("y,ax->ayx", eta, ih)
    out.append(residual_entry("nabla-phi-2.10", [("(nabla_X phi)Y - rhs", nabla_phi - rhs10)], names))

    # (nabla_X phi h)Y = [g(X,hY) + (k-1) g(X, -Y + eta(Y)xi)] xi
    #                    + eta(Y)[hX + (k-1)(-X + eta(X)xi)]
    nabla_phih = covariant_derivative(TensorField(1, 1, phi @ h), conn).comps  # (a, Y, X)
    proj = -ident + np.outer(xi, eta)  # Y -> -Y + eta(Y)xi
    coeff = g @ h + (g @ proj) * (k - 1)  # [X, Y]
    vec = h + proj * (k - 1)  # column X -> hX + (k-1)(-X + eta(X)xi)
    rhs11 = np.einsum("a,xy->ayx", xi, coeff) + np.einsum("y,ax->ayx", eta, vec)
    out.append(residual_entry("nabla-phih-2.11", [("(nabla_X phi h)Y - rhs", nabla_phih - rhs11)],
                              names, derived={"k": k}))
    return out


def _witness_from(arr: np.ndarray, names, label: str) -> Witness:
    for idx, v in np.ndenumerate(arr):
        if not v.is_zero():
            return Witness(tuple(names[i] for i in idx), v, label)
    return Witness((), Scalar(), label)
