"""Frame manifolds with constant structure constants, and dense exact tensors."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "FrameError",
    "JacobiError",
    "FrameManifold",
    "TensorField",
    "bracket",
    "vector",
    "basis_vector",
    "zeros",
    "scalar_array",
    "mat_inverse",
    "mat_det",
]


class FrameError(ValueError):
    pass


class JacobiError(FrameError):
    def __init__(self, triple, k, residual):
        self.triple = triple
        self.k = k
        self.residual = residual
        i, j, l = (x + 1 for x in triple)
        super().__init__(
            f"Jacobi identity fails for triple ({i},{j},{l}): component {k + 1} = {residual}")


def zeros(*shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(ZERO)
    return out


def scalar_array(values) -> np.ndarray:
    """Object array of Scalars from a nested sequence of Scalars/ints/Fractions."""
    arr = np.array(values, dtype=object)
    flat = arr.reshape(-1)
    for idx, v in enumerate(flat):
        flat[idx] = as_scalar(v)
    return arr


def vector(values: Sequence) -> np.ndarray:
    return scalar_array(list(values))


def basis_vector(dim: int, i: int) -> np.ndarray:
    v = zeros(dim)
    v[i] = ONE
    return v


def mat_det(m: np.ndarray) -> Scalar:
    """Determinant by Gaussian elimination over Scalars."""
    a = m.copy()
    n = a.shape[0]
    det = ONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if not a[r, col].is_zero()), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            det = -det
        det = det * a[col, col]
        for r in range(col + 1, n):
            if not a[r, col].is_zero():
                f = a[r, col] / a[col, col]
                a[r, col:] = a[r, col:] - f * a[col, col:]
    return det


def mat_inverse(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    a = np.concatenate([m.copy(), scalar_array(np.eye(n, dtype=int))], axis=1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if not a[r, col].is_zero()), None)
        if pivot is None:
            raise FrameError("singular matrix")
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
        a[col] = a[col] / a[col, col]
        for r in range(n):
            if r != col and not a[r, col].is_zero():
                a[r] = a[r] - a[r, col] * a[col]
    return a[:, n:]


@dataclass(frozen=True, eq=False)
class TensorField:
    """Frame-constant tensor of valence (r, s).

    ``comps`` has ``r + s`` axes of length ``dim``; contravariant axes come
    first.  For a (1, 1) tensor ``comps[i, j]`` is the ``e_i`` component of
    ``T(e_j)``.
    """

    r: int
    s: int
    comps: np.ndarray

    def __post_init__(self):
        if self.comps.ndim != self.r + self.s:
            raise FrameError(
                f"valence ({self.r},{self.s}) needs {self.r + self.s} axes, got {self.comps.ndim}")

    @property
    def dim(self) -> int:
        return self.comps.shape[0] if self.comps.ndim else 0

    @property
    def valence(self) -> tuple[int, int]:
        return (self.r, self.s)

    def __getitem__(self, idx):
        return self.comps[idx]

    def _check(self, other: "TensorField"):
        if self.valence != other.valence or self.comps.shape != other.comps.shape:
            raise FrameError(f"valence mismatch {self.valence} vs {other.valence}")

    def __add__(self, other: "TensorField") -> "TensorField":
        self._check(other)
        return TensorField(self.r, self.s, self.comps + other.comps)

    def __sub__(self, other: "TensorField") -> "TensorField":
        self._check(other)
        return TensorField(self.r, self.s, self.comps - other.comps)

    def __neg__(self) -> "TensorField":
        return TensorField(self.r, self.s, -self.comps)

    def __mul__(self, factor) -> "TensorField":
        return TensorField(self.r, self.s, self.comps * as_scalar(factor))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps.flat)

    def first_nonzero(self) -> Optional[tuple[tuple[int, ...], Scalar]]:
        """Lexicographically first nonzero component, or None."""
        for idx in itertools.product(range(self.dim), repeat=self.comps.ndim):
            c = self.comps[idx]
            if not c.is_zero():
                return idx, c
        return None

    def map(self, fn) -> "TensorField":
        out = np.empty(self.comps.shape, dtype=object)
        for idx, c in np.ndenumerate(self.comps):
            out[idx] = fn(c)
        return TensorField(self.r, self.s, out)

    def lines(self, names: Optional[Sequence[str]] = None, label: str = "T") -> list[str]:
        """Stable ``label[i,j,...] = value`` lines in lexicographic index order."""
        names = names or [str(i + 1) for i in range(self.dim)]
        if self.comps.ndim == 0:
            return [f"{label} = {self.comps[()]}"]
        out = []
        for idx in itertools.product(range(self.dim), repeat=self.comps.ndim):
            out.append(f"{label}[{','.join(names[i] for i in idx)}] = {self.comps[idx]}")
        return out

    def equals(self, other: "TensorField") -> bool:
        return (self - other).is_zero()


@dataclass(frozen=True, eq=False)
class FrameManifold:
    """Manifold presented by a frame e_1..e_d with constant brackets.

    ``c[k, i, j]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.
    """

    name: str
    dim: int
    frame_names: tuple[str, ...]
    c: np.ndarray
    metric: np.ndarray
    param: Optional[str] = None
    metric_inv: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        d = self.dim
        if d < 3 or d % 2 == 0:
            raise FrameError(f"dimension must be odd and >= 3, got {d}")
        if len(self.frame_names) != d or len(set(self.frame_names)) != d:
            raise FrameError("frame needs dim distinct names")
        if self.c.shape != (d, d, d) or self.metric.shape != (d, d):
            raise FrameError("structure constants or metric have the wrong shape")
        for k, i, j in itertools.product(range(d), repeat=3):
            if self.c[k, i, j] != -self.c[k, j, i]:
                raise FrameError(
                    f"brackets not antisymmetric at [{self.frame_names[i]},{self.frame_names[j]}]")
        for i, j in itertools.combinations(range(d), 2):
            if self.metric[i, j] != self.metric[j, i]:
                raise FrameError("metric is not symmetric")
        if mat_det(self.metric).is_zero():
            raise FrameError("metric is degenerate")
        self._check_jacobi()
        object.__setattr__(self, "metric_inv", mat_inverse(self.metric))

    def _check_jacobi(self):
        # J[k,i,j,l] = sum_m c[m,j,l] c[k,i,m], summed over cyclic (i,j,l)
        t = np.einsum("mjl,kim->kijl", self.c, self.c)
        jac = t + t.transpose(0, 2, 3, 1) + t.transpose(0, 3, 1, 2)
        d = self.dim
        for i, j, l in itertools.combinations(range(d), 3):
            for k in range(d):
                if not jac[k, i, j, l].is_zero():
                    raise JacobiError((i, j, l), k, jac[k, i, j, l])

    @property
    def n(self) -> int:
        """Half of dim - 1."""
        return (self.dim - 1) // 2

    @property
    def is_orthonormal(self) -> bool:
        return all(
            self.metric[i, j] == (1 if i == j else 0)
            for i in range(self.dim) for j in range(self.dim))

    def index(self, name: str) -> int:
        try:
            return self.frame_names.index(name)
        except ValueError:
            raise FrameError(f"unknown frame vector {name!r}") from None

    def g(self, x: np.ndarray, y: np.ndarray) -> Scalar:
        return x @ self.metric @ y

    def flat(self, x: np.ndarray) -> np.ndarray:
        """Covector g(x, .)."""
        return self.metric @ x

    def sharp(self, w: np.ndarray) -> np.ndarray:
        return self.metric_inv @ w

    def e(self, i: int) -> np.ndarray:
        return basis_vector(self.dim, i)

    def metric_tensor(self) -> TensorField:
        return TensorField(0, 2, self.metric.copy())

    def ad(self, v: np.ndarray) -> np.ndarray:
        """Matrix of X -> [v, X]."""
        return np.einsum("i,kij->kj", v, self.c)

    def substitute(self, value) -> "FrameManifold":
        sub = np.vectorize(lambda s: s.substitute(value, self.param), otypes=[object])
        return FrameManifold(self.name, self.dim, self.frame_names, sub(self.c),
                             sub(self.metric), None)


def bracket(m: FrameManifold, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """[X, Y] for constant-component fields."""
    if len(x) != m.dim or len(y) != m.dim:
        raise FrameError(f"vectors must have {m.dim} components")
    return np.einsum("i,j,kij->k", x, y, m.c)
