"""Identities every Levi-Civita connection and its curvature must satisfy."""

from __future__ import annotations

from typing import Optional

import numpy as np

from .connection import (
    Connection,
    Curvature,
    covariant_derivative,
    lie_derivative,
    lie_derivative_of_connection,
    lie_derivative_via_connection,
)
from .frame import FrameManifold
from .report import CheckEntry, residual_entry

__all__ = ["CONNECTION_CHECKS", "connection_checks"]

CONNECTION_CHECKS = (
    "torsion-free",
    "metric-compat",
    "bianchi-1",
    "riem-antisym",
    "riem-pair-sym",
    "ricci-sym",
    "lie-g-routes",
    "lie-nabla-sym",
)


def connection_checks(m: FrameManifold, conn: Connection, curv: Curvature,
                      probes: Optional[list[np.ndarray]] = None) -> list[CheckEntry]:
    """One entry per id in CONNECTION_CHECKS.

    The two Lie derivative checks run over ``probes`` (default: the frame vectors).
    """
    names = m.frame_names
    g = conn.gamma
    riem = curv.riem
    low = curv.lowered(m)  # (X, Y, Z, W)
    if probes is None:
        probes = [m.e(i) for i in range(m.dim)]

    out = [
        residual_entry("torsion-free", [
            ("nabla_X Y - nabla_Y X - [X,Y]", g - g.transpose(0, 2, 1) - m.c)], names),
        residual_entry("metric-compat", [
            ("nabla g", covariant_derivative(m.metric_tensor(), conn).comps)], names),
        residual_entry("bianchi-1", [
            ("R(X,Y)Z + R(Y,Z)X + R(Z,X)Y",
             riem + riem.transpose(0, 2, 3, 1) + riem.transpose(0, 3, 1, 2))], names),
        residual_entry("riem-antisym", [
            ("R(X,Y) + R(Y,X)", riem + riem.transpose(0, 1, 3, 2)),
            ("R(X,Y,Z,W) + R(X,Y,W,Z)", low + low.transpose(0, 1, 3, 2))], names),
        residual_entry("riem-pair-sym", [
            ("R(X,Y,Z,W) - R(Z,W,X,Y)", low - low.transpose(2, 3, 0, 1))], names),
        residual_entry("ricci-sym", [
            ("Ric(X,Y) - Ric(Y,X)", curv.ricci.comps - curv.ricci.comps.T)], names),
    ]

    gt = m.metric_tensor()
    route_parts, sym_parts = [], []
    for v in probes:
        route_parts.append(("L_V g by brackets - by nabla",
                            lie_derivative(gt, v, m).comps
                            - lie_derivative_via_connection(gt, v, conn).comps))
        ln = lie_derivative_of_connection(v, conn).comps
        sym_parts.append(("(L_V nabla)(X,Y) - (L_V nabla)(Y,X)", ln - ln.transpose(0, 2, 1)))
    out.append(residual_entry("lie-g-routes", route_parts, names, derived={"probes": len(probes)}))
    out.append(residual_entry("lie-nabla-sym", sym_parts, names, derived={"probes": len(probes)}))
    return out
