"""Recompute reference values for the three-dimensional family with sympy and freeze them.

The computation here shares no code with the package: connection, curvature
and every derived tensor are built vector by vector from their definitions.
Output goes to tests/data/oracle_family.json; run this only when the
definitions themselves change.
"""

from __future__ import annotations

import argparse
import itertools
import json
from pathlib import Path

import sympy as sp

a = sp.Symbol("a")
DIM = 3
E = [sp.Matrix([1 if r == i else 0 for r in range(DIM)]) for i in range(DIM)]
NAMES = ("e1", "e2", "e3")

# [e1,e2] = (1+a) e3, [e2,e3] = 2 e1, [e3,e1] = (1-a) e2
_TABLE = {(0, 1): (1 + a) * E[2], (1, 2): 2 * E[0], (2, 0): (1 - a) * E[1]}


def br(x, y):
    out = sp.zeros(DIM, 1)
    for (i, j), v in _TABLE.items():
        out += (x[i] * y[j] - x[j] * y[i]) * v
    return out


def g(x, y):
    return (x.T * y)[0]


def nabla_basis(i, j):
    # orthonormal Koszul: g(nabla_ei ej, ek) = 1/2 (g([ei,ej],ek) - g([ej,ek],ei) + g([ek,ei],ej))
    return sp.Matrix([sp.Rational(1, 2) * (g(br(E[i], E[j]), E[k]) - g(br(E[j], E[k]), E[i])
                                           + g(br(E[k], E[i]), E[j])) for k in range(DIM)])


NB = [[nabla_basis(i, j) for j in range(DIM)] for i in range(DIM)]


def nabla(x, y):
    out = sp.zeros(DIM, 1)
    for i, j in itertools.product(range(DIM), repeat=2):
        out += x[i] * y[j] * NB[i][j]
    return out


def curvature(x, y, z):
    return nabla(x, nabla(y, z)) - nabla(y, nabla(x, z)) - nabla(br(x, y), z)


XI = E[0]
PHI = sp.Matrix([[0, 0, 0], [0, 0, -1], [0, 1, 0]])


def phi(x):
    return PHI * x


def eta(x):
    return g(XI, x)


def h(x):
    # h = 1/2 L_xi phi : X -> 1/2([xi, phi X] - phi [xi, X])
    return sp.Rational(1, 2) * (br(XI, phi(x)) - phi(br(XI, x)))


def s_star(x, y):
    # 1/2 trace(Z -> phi R(X, phi Y) Z)
    return sp.Rational(1, 2) * sum(g(E[m], phi(curvature(x, phi(y), E[m]))) for m in range(DIM))


def nabla_s_star(z, x, y):
    return -s_star(nabla(z, x), y) - s_star(x, nabla(z, y))


def lie_g(v, x, y):
    return -g(br(v, x), y) - g(x, br(v, y))


def _s(expr) -> str:
    return str(sp.factor(sp.simplify(expr))).replace("**", "^")


def compute() -> dict:
    out: dict = {"frame": list(NAMES)}
    idx2 = list(itertools.product(range(DIM), repeat=2))
    idx3 = list(itertools.product(range(DIM), repeat=3))
    out["nabla"] = {f"{NAMES[i]},{NAMES[j]}": [_s(c) for c in NB[i][j]] for i, j in idx2}
    out["riemann"] = {f"{NAMES[i]},{NAMES[j]},{NAMES[k]}": [_s(c) for c in curvature(E[i], E[j], E[k])]
                      for i, j, k in idx3}
    ric = {(x, y): sum(g(E[l], curvature(E[l], E[x], E[y])) for l in range(DIM)) for x, y in idx2}
    out["ricci"] = {f"{NAMES[x]},{NAMES[y]}": _s(v) for (x, y), v in ric.items()}
    out["scalar"] = _s(sum(ric[(i, i)] for i in range(DIM)))
    out["h"] = {NAMES[i]: [_s(c) for c in h(E[i])] for i in range(DIM)}
    # k from h^2 = (k - 1) phi^2 on e2
    hh = h(h(E[1]))
    pp = phi(phi(E[1]))
    k = sp.simplify(hh[1] / pp[1] + 1)
    out["k"] = _s(k)
    ss = {(x, y): s_star(E[x], E[y]) for x, y in idx2}
    out["s_star"] = {f"{NAMES[x]},{NAMES[y]}": _s(v) for (x, y), v in ss.items()}
    out["r_star"] = _s(sum(ss[(i, i)] for i in range(DIM)))
    out["lie_xi_g"] = {f"{NAMES[x]},{NAMES[y]}": _s(lie_g(XI, E[x], E[y])) for x, y in idx2}
    out["nabla_xi"] = {NAMES[i]: [_s(c) for c in nabla(E[i], XI)] for i in range(DIM)}
    out["d_eta"] = {f"{NAMES[x]},{NAMES[y]}": _s(-sp.Rational(1, 2) * eta(br(E[x], E[y]))) for x, y in idx2}

    cyclic, printed, corrected = {}, {}, {}
    for x, y, z in idx3:
        X, Y, Z = E[x], E[y], E[z]
        lhs = nabla_s_star(Z, X, Y) - nabla_s_star(X, Y, Z) - nabla_s_star(Y, X, Z)
        key = f"{NAMES[x]},{NAMES[y]},{NAMES[z]}"
        cyclic[key] = _s(lhs)
        printed[key] = _s(lhs + 2 * k * (eta(Y) * g(phi(X), Z) + eta(Y) * g(phi(X), h(Z))
                                         + eta(X) * g(phi(Y), Z) + eta(X) * g(phi(Y), h(Z))))
        corrected[key] = _s(lhs - k * (2 * eta(Y) * g(phi(X), Z) + 2 * eta(X) * g(phi(Y), Z)
                                       - 2 * eta(Z) * g(h(phi(X)), Y)))
    out["cyclic_nabla_s_star"] = cyclic
    out["cyclic_residual_printed"] = printed
    out["cyclic_residual_corrected"] = corrected
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path,
                    default=Path(__file__).resolve().parents[1] / "tests" / "data" / "oracle_family.json")
    args = ap.parse_args()
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(compute(), indent=1, sort_keys=True) + "\n")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
