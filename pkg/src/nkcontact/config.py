"""Plain data carried by a manifold file besides the frame itself."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .frame import FrameManifold
from .scalar import Scalar

__all__ = ["ContactData", "SolitonConfig", "GeomDocument", "P_SYMBOL"]

P_SYMBOL = "p"


def _sub(arr: np.ndarray, value, var) -> np.ndarray:
    out = np.empty(arr.shape, dtype=object)
    for idx, s in np.ndenumerate(arr):
        out[idx] = s.substitute(value, var)
    return out


@dataclass(frozen=True, eq=False)
class ContactData:
    """Declared almost contact data: xi as a vector, phi as a matrix.

    ``phi[i, j]`` is the e_i component of phi(e_j).
    """

    xi: np.ndarray
    phi: np.ndarray

    def substitute(self, value, var) -> "ContactData":
        return ContactData(_sub(self.xi, value, var), _sub(self.phi, value, var))


@dataclass(frozen=True, eq=False)
class SolitonConfig:
    """Potential field V, the scalar p, optional lambda, gradient flag.

    ``p`` is either a rational Scalar or the symbol ``p``; ``lam`` lives in
    Q(p).  When ``gradient`` is set, V stands for Df.
    """

    V: np.ndarray
    p: Scalar
    lam: Optional[Scalar] = None
    gradient: bool = False

    def with_lambda(self, lam: Optional[Scalar]) -> "SolitonConfig":
        return replace(self, lam=lam)

    def substitute(self, value, var) -> "SolitonConfig":
        return replace(self, V=_sub(self.V, value, var))


@dataclass(frozen=True, eq=False)
class GeomDocument:
    manifold: FrameManifold
    contact: Optional[ContactData] = None
    soliton: Optional[SolitonConfig] = None

    def substitute(self, value) -> "GeomDocument":
        """Specialize the manifold parameter everywhere it occurs."""
        var = self.manifold.param
        if var is None:
            return self
        return GeomDocument(
            self.manifold.substitute(value),
            self.contact.substitute(value, var) if self.contact else None,
            self.soliton.substitute(value, var) if self.soliton else None,
        )
