"""*-conformal Ricci solitons on frame manifolds: residuals, lambda, and consequences.

Throughout, ``mu`` denotes the shifted constant lambda - (p/2 + 1/(2n+1)), the
only combination of lambda and p that enters any of the equations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import P_SYMBOL, SolitonConfig
from .connection import (
    Connection,
    Curvature,
    asymmetry_witness,
    divergence,
    hessian_candidate,
    lie_derivative,
    lie_derivative_of_connection,
    lie_derivative_of_curvature,
)
from .contact import ContactStructure
from .frame import FrameManifold, TensorField, bracket, scalar_array
from .report import ERROR, FAIL, NA, PASS, CheckEntry, Witness, residual_entry
from .scalar import MultivariateError, Scalar, as_scalar
from .star import StarRicci

__all__ = [
    "SolitonError",
    "DefinitionInconsistent",
    "NotGradientError",
    "ClassifyResult",
    "steady_lambda",
    "shift",
    "soliton_residual",
    "solve_lambda",
    "solve_shift",
    "lambda_text",
    "gradient_residual",
    "poisson_check",
    "classify_field",
    "soliton_holds",
    "gradient_soliton_holds",
    "check_lie_connection",
    "check_lie_curvature",
    "check_xi_components",
    "check_gradient_curvature",
    "verify_conclusions",
    "verify_gradient_conclusions",
]


class SolitonError(ValueError):
    pass


class DefinitionInconsistent(SolitonError):
    """S* is not symmetric, so the soliton equation is not well posed."""


class NotGradientError(SolitonError):
    def __init__(self, pair, diff):
        self.pair = pair
        self.diff = diff
        super().__init__(f"Hessian candidate is not symmetric at {pair}: difference {diff}")


ICT_STRICT, ICT_NON_STRICT, ICT_NONE = "strict", "non-strict", "not-ict"


@dataclass(frozen=True)
class ClassifyResult:
    killing: bool
    conformal_sigma: Optional[Scalar]
    eta_lie_xi: Optional[Scalar]
    ict_status: Optional[str]

    def derived(self) -> dict:
        out = {"killing": self.killing,
               "conformal": self.conformal_sigma is not None}
        if self.conformal_sigma is not None:
            out["sigma"] = self.conformal_sigma
        if self.eta_lie_xi is not None:
            out["eta(L_V xi)"] = self.eta_lie_xi
        if self.ict_status is not None:
            out["ict"] = self.ict_status
        return out


def _p(cfg: SolitonConfig) -> Scalar:
    return cfg.p


def steady_lambda(m: FrameManifold, cfg: SolitonConfig) -> Scalar:
    """p/2 + 1/(2n+1): the lambda of a steady soliton."""
    return _p(cfg) / 2 + Scalar.const(1) / m.dim


def _lambda_value(cfg: SolitonConfig) -> Scalar:
    lam = cfg.lam
    if lam is None:
        raise SolitonError("lambda is not set")
    if cfg.p.is_constant():
        lam = lam.substitute(cfg.p.to_fraction(), P_SYMBOL)
    return lam


def shift(m: FrameManifold, cfg: SolitonConfig) -> Scalar:
    """mu = lambda - (p/2 + 1/(2n+1))."""
    return _lambda_value(cfg) - steady_lambda(m, cfg)


def _combine(fn, what: str):
    try:
        return fn()
    except MultivariateError as exc:
        raise SolitonError(
            f"{what}: lambda - p/2 depends on p while the manifold data depends on its "
            f"parameter; give lambda as p/2 + constant or substitute the parameter ({exc})") from None


def _require_symmetric(m: FrameManifold, star: StarRicci):
    w = asymmetry_witness(star.s_star)
    if w is not None:
        (i, j), diff = w
        raise DefinitionInconsistent(
            f"S* is not symmetric at ({m.frame_names[i]},{m.frame_names[j]}): difference {diff}")


def soliton_residual(m: FrameManifold, star: StarRicci, cfg: SolitonConfig) -> TensorField:
    """L_V g + 2 S* - 2 mu g; zero iff (g, V, lambda) is a *-conformal Ricci soliton."""
    return _shift_residual(m, star, cfg.V, shift(m, cfg))


def _shift_residual(m: FrameManifold, star: StarRicci, v: np.ndarray, mu: Scalar) -> TensorField:
    _require_symmetric(m, star)
    lg = lie_derivative(m.metric_tensor(), v, m)
    return _combine(lambda: lg + star.s_star * 2 - m.metric_tensor() * (mu * 2), "soliton residual")


def _traced_coefficient(m: FrameManifold, t: np.ndarray) -> Scalar:
    return as_scalar(np.einsum("ab,ab->", m.metric_inv, t)) / m.dim


def solve_lambda(m: FrameManifold, star: StarRicci, cfg: SolitonConfig,
                 trace_only: bool = False) -> Optional[Scalar]:
    """lambda with L_V g + 2S* = 2 mu g.

    With ``trace_only`` the equation is only traced, so a value is always
    returned; otherwise None unless L_V g + 2S* is a multiple of g.
    """
    mu = solve_shift(m, star, cfg, trace_only)
    if mu is None:
        return None
    return _combine(lambda: mu + steady_lambda(m, cfg), "solve lambda")


def solve_shift(m: FrameManifold, star: StarRicci, cfg: SolitonConfig,
                trace_only: bool = False) -> Optional[Scalar]:
    """mu with L_V g + 2S* = 2 mu g; lives in the manifold's ring, never involves p."""
    _require_symmetric(m, star)
    t = lie_derivative(m.metric_tensor(), cfg.V, m).comps + star.s_star.comps * 2
    coeff = _traced_coefficient(m, t)
    if not trace_only:
        rest = t - m.metric * coeff
        if any(not v.is_zero() for v in rest.flat):
            return None
    return coeff / 2


def lambda_text(m: FrameManifold, cfg: SolitonConfig, mu: Scalar) -> str:
    """lambda = mu + p/2 + 1/(2n+1) as a string, even when mu and p live in different rings."""
    try:
        return str(mu + steady_lambda(m, cfg))
    except MultivariateError:
        return f"{steady_lambda(m, cfg)} + ({mu})"


def _proportionality_witness(m: FrameManifold, star: StarRicci, cfg: SolitonConfig) -> Optional[Witness]:
    t = lie_derivative(m.metric_tensor(), cfg.V, m).comps + star.s_star.comps * 2
    rest = t - m.metric * _traced_coefficient(m, t)
    for idx, v in np.ndenumerate(rest):
        if not v.is_zero():
            return Witness(tuple(m.frame_names[i] for i in idx), v, "L_V g + 2S* - (trace/(2n+1)) g")
    return None


def gradient_residual(m: FrameManifold, star: StarRicci, cfg: SolitonConfig,
                      conn: Connection) -> TensorField:
    """Hess + S* - mu g with Hess(X, Y) = g(nabla_X V, Y)."""
    hess = hessian_candidate(cfg.V, conn)
    w = asymmetry_witness(hess)
    if w is not None:
        (i, j), diff = w
        raise NotGradientError((m.frame_names[i], m.frame_names[j]), diff)
    _require_symmetric(m, star)
    mu = shift(m, cfg)
    return _combine(lambda: hess + star.s_star - m.metric_tensor() * mu, "gradient residual")


def poisson_check(m: FrameManifold, cfg: SolitonConfig, conn: Connection) -> CheckEntry:
    """div V = (2n+1) mu, read as the Laplacian of the potential.

    Without lambda, reports the lambda that the equation demands.
    """
    lap = divergence(cfg.V, conn)
    derived = {"laplacian f": lap}
    if cfg.lam is None:
        derived["lambda"] = _combine(lambda: steady_lambda(m, cfg) + lap / m.dim, "poisson")
        derived["regime"] = "harmonic" if lap.is_zero() else "poisson"
        return CheckEntry("poisson", PASS, derived=derived,
                          note="lambda solved from the traced gradient equation")
    mu = shift(m, cfg)
    res = _combine(lambda: lap - mu * m.dim, "poisson")
    derived["(2n+1) mu"] = mu * m.dim
    if not res.is_zero():
        return CheckEntry("poisson", FAIL, Witness((), res, "laplacian f - (2n+1) mu"), derived)
    derived["regime"] = "harmonic" if lap.is_zero() else "poisson"
    return CheckEntry("poisson", PASS, derived=derived)


def classify_field(m: FrameManifold, c: Optional[ContactStructure], cfg: SolitonConfig) -> ClassifyResult:
    """Killing / conformal / infinitesimal contact transformation status of V."""
    v = cfg.V
    lg = lie_derivative(m.metric_tensor(), v, m).comps
    killing = all(x.is_zero() for x in lg.flat)
    sigma = _traced_coefficient(m, lg) / 2
    rest = lg - m.metric * (sigma * 2)
    conformal = sigma if all(x.is_zero() for x in rest.flat) else None
    if c is None:
        return ClassifyResult(killing, conformal, None, None)
    eta_lie_xi = c.eta @ bracket(m, v, c.xi)
    lie_eta = -(c.eta @ m.ad(v))  # (L_V eta)(X) = -eta([V, X])
    if all(x.is_zero() for x in lie_eta.flat):
        ict = ICT_STRICT
    else:
        f = lie_eta @ c.xi
        ict = ICT_NON_STRICT if all(x.is_zero() for x in (lie_eta - c.eta * f).flat) else ICT_NONE
    return ClassifyResult(killing, conformal, as_scalar(eta_lie_xi), ict)


def soliton_holds(m: FrameManifold, star: StarRicci, cfg: SolitonConfig) -> bool:
    if cfg.lam is None:
        return False
    try:
        return soliton_residual(m, star, cfg).is_zero()
    except SolitonError:
        return False


def gradient_soliton_holds(m: FrameManifold, star: StarRicci, cfg: SolitonConfig,
                           conn: Connection) -> bool:
    if cfg.lam is None or not cfg.gradient:
        return False
    try:
        return gradient_residual(m, star, cfg, conn).is_zero()
    except SolitonError:
        return False


def _gate(ids, reason: str) -> list[CheckEntry]:
    return [CheckEntry(i, NA, note=reason) for i in ids]


_NOT_SOLITON = "soliton equation does not hold for this configuration"


def check_lie_connection(m: FrameManifold, c: ContactStructure, cfg: SolitonConfig,
                         conn: Connection, k: Scalar, holds: bool) -> list[CheckEntry]:
    """L_V nabla against 2k[eta(Y)(phi + h phi)X + eta(X)(phi + h phi)Y], and its Y = xi slice."""
    if not holds:
        return _gate(("eq-3.11", "eq-3.12"), _NOT_SOLITON)
    ident = scalar_array(np.eye(m.dim, dtype=int))
    lnab = lie_derivative_of_connection(cfg.V, conn).comps  # [a, x, y]
    mm = (ident + c.h) @ c.phi  # [a, x] = (phi X + h phi X)^a
    rhs = (np.einsum("y,ax->axy", c.eta, mm) + np.einsum("x,ay->axy", c.eta, mm)) * (k * 2)
    full = residual_entry("eq-3.11", [("(L_V nabla)(X,Y) - rhs", lnab - rhs)], m.frame_names,
                          derived={"k": k})
    sliced = np.einsum("axy,y->ax", lnab, c.xi) - mm * (k * 2)
    part = residual_entry("eq-3.12", [("(L_V nabla)(X,xi) - rhs", sliced)], m.frame_names,
                          derived={"k": k})
    return [full, part]


def check_lie_curvature(m: FrameManifold, c: ContactStructure, cfg: SolitonConfig,
                        curv: Curvature, holds: bool) -> CheckEntry:
    """(L_V R)(X, xi)xi = 0."""
    if not holds:
        return _gate(("eq-3.16",), _NOT_SOLITON)[0]
    lr = lie_derivative_of_curvature(cfg.V, m, curv).comps  # [l, Z, X, Y]
    val = np.einsum("lkxj,k,j->lx", lr, c.xi, c.xi)
    return residual_entry("eq-3.16", [("(L_V R)(X,xi)xi", val)], m.frame_names)


def check_xi_components(m: FrameManifold, c: ContactStructure, cfg: SolitonConfig,
                        holds: bool) -> list[CheckEntry]:
    """(L_V g)(X, xi) = 2 mu eta(X) and eta(L_V xi) = -mu."""
    if not holds:
        return _gate(("eq-3.17", "eq-3.19"), _NOT_SOLITON)
    mu = shift(m, cfg)
    lg = lie_derivative(m.metric_tensor(), cfg.V, m).comps
    r17 = _combine(lambda: lg @ c.xi - c.eta * (mu * 2), "xi components")
    e17 = residual_entry("eq-3.17", [("(L_V g)(X,xi) - 2 mu eta(X)", r17)], m.frame_names,
                         derived={"mu": mu})
    eta_lie_xi = as_scalar(c.eta @ bracket(m, cfg.V, c.xi))
    r19 = _combine(lambda: eta_lie_xi + mu, "xi components")
    e19 = residual_entry("eq-3.19", [("eta(L_V xi) + mu", np.array(r19, dtype=object))],
                         m.frame_names, derived={"eta(L_V xi)": eta_lie_xi, "mu": mu})
    return [e17, e19]


def check_gradient_curvature(m: FrameManifold, c: ContactStructure, cfg: SolitonConfig,
                             curv: Curvature, k: Scalar, holds: bool) -> CheckEntry:
    """R(X,Y)V = k[2g(phi X, Y)xi - eta(X)(phi Y + phi h Y) + eta(Y)(phi X + phi h X)]."""
    if not holds:
        return _gate(("lemma-3.10",), "gradient soliton equation does not hold")[0]
    ident = scalar_array(np.eye(m.dim, dtype=int))
    rv = np.einsum("lkxy,k->lxy", curv.riem, cfg.V)
    nn = c.phi @ (ident + c.h)
    gpx = c.phi.T @ m.metric  # [x, y] = g(phi X, Y)
    rhs = (np.einsum("l,xy->lxy", c.xi, gpx) * 2
           - np.einsum("x,ly->lxy", c.eta, nn)
           + np.einsum("y,lx->lxy", c.eta, nn)) * k
    return residual_entry("lemma-3.10", [("R(X,Y)Df - rhs", rv - rhs)], m.frame_names,
                          derived={"k": k})


def _zero(arr) -> bool:
    return all(v.is_zero() for v in np.asarray(arr, dtype=object).flat)


def _r_xi_zero(curv: Curvature, c: ContactStructure) -> bool:
    return _zero(np.einsum("lkij,k->lij", curv.riem, c.xi))


def verify_conclusions(m: FrameManifold, c: ContactStructure, star: StarRicci, cfg: SolitonConfig,
                       curv: Curvature, k: Scalar, holds: bool) -> CheckEntry:
    """Consequences of a verified soliton on an N(k) manifold.

    For mu != 0: k = 0, S* = 0, R(X,Y)xi = 0 and L_V g = 2 mu g.  For mu = 0:
    k = 0 forces V Killing, k != 0 forces eta(L_V xi) = 0.  Anything failing is
    reported as a counterexample.
    """
    if not holds:
        return CheckEntry("thm-3.5", NA, note=_NOT_SOLITON)
    mu = shift(m, cfg)
    cls = classify_field(m, c, cfg)
    findings = []
    derived = {"mu": mu, "k": k}
    if not mu.is_zero():
        if not k.is_zero():
            findings.append(("k", k))
        if not star.s_star.is_zero():
            findings.append(("S*", star.s_star.first_nonzero()[1]))
        if not _r_xi_zero(curv, c):
            findings.append(("R(X,Y)xi", np.einsum("lkij,k->lij", curv.riem, c.xi).flat[0]))
        if cls.conformal_sigma is None or cls.conformal_sigma != mu:
            findings.append(("L_V g - 2 mu g", cls.conformal_sigma if cls.conformal_sigma is not None else mu))
        derived["sigma"] = cls.conformal_sigma if cls.conformal_sigma is not None else "none"
    elif k.is_zero():
        derived["killing"] = cls.killing
        if not cls.killing:
            lg = lie_derivative(m.metric_tensor(), cfg.V, m)
            findings.append(("L_V g", lg.first_nonzero()[1]))
    else:
        derived["eta(L_V xi)"] = cls.eta_lie_xi
        if not cls.eta_lie_xi.is_zero():
            findings.append(("eta(L_V xi)", cls.eta_lie_xi))
    if findings:
        label, value = findings[0]
        return CheckEntry("thm-3.5", FAIL, Witness((), as_scalar(value), label), derived,
                          note="COUNTEREXAMPLE: " + ", ".join(f for f, _ in findings))
    return CheckEntry("thm-3.5", PASS, derived=derived)


def verify_gradient_conclusions(m: FrameManifold, c: ContactStructure, star: StarRicci,
                                cfg: SolitonConfig, conn: Connection, curv: Curvature,
                                k: Scalar, holds: bool) -> CheckEntry:
    """Consequences of a verified gradient soliton: k = 0, S* = 0, R(X,Y)xi = 0,
    and div V = (2n+1) mu (harmonic when mu = 0).  When V is parallel to xi the
    forced values mu = -k and eta(V) = 0 are checked too.
    """
    if not holds:
        return CheckEntry("thm-3.11", NA, note="gradient soliton equation does not hold")
    mu = shift(m, cfg)
    lap = divergence(cfg.V, conn)
    findings = []
    derived = {"k": k, "mu": mu, "laplacian f": lap}
    if not k.is_zero():
        findings.append(("k", k))
    if not star.s_star.is_zero():
        findings.append(("S*", star.s_star.first_nonzero()[1]))
    if not _r_xi_zero(curv, c):
        findings.append(("R(X,Y)xi", next(v for v in np.einsum("lkij,k->lij", curv.riem, c.xi).flat
                                          if not v.is_zero())))
    poisson = _combine(lambda: lap - mu * m.dim, "gradient conclusions")
    if not poisson.is_zero():
        findings.append(("laplacian f - (2n+1) mu", poisson))
    xi_f = as_scalar(c.eta @ cfg.V)  # xi f = g(Df, xi)
    along_xi = _zero(cfg.V - c.xi * xi_f)
    if along_xi:
        derived["branch"] = "Df = (xi f) xi"
        if not (mu + k).is_zero():
            findings.append(("mu + k", mu + k))
        if not xi_f.is_zero():
            findings.append(("xi f", xi_f))
    else:
        derived["branch"] = "k = 0"
    derived["regime"] = "harmonic" if lap.is_zero() else "poisson"
    if findings:
        label, value = findings[0]
        return CheckEntry("thm-3.11", FAIL, Witness((), as_scalar(value), label), derived,
                          note="COUNTEREXAMPLE: " + ", ".join(f for f, _ in findings))
    return CheckEntry("thm-3.11", PASS, derived=derived)


def soliton_entry(m: FrameManifold, star: StarRicci, cfg: SolitonConfig,
                  trace_only: bool = False) -> tuple[CheckEntry, SolitonConfig]:
    """The ``soliton-1.1`` entry; solves for lambda when the config has none.

    Returns the entry and the config with the lambda that was used or solved.
    """
    try:
        _require_symmetric(m, star)
    except DefinitionInconsistent as exc:
        return CheckEntry("soliton-1.1", ERROR, note=str(exc)), cfg
    if cfg.lam is None:
        traced = solve_shift(m, star, cfg, trace_only=True)
        mu = traced if trace_only else solve_shift(m, star, cfg)
        derived = {} if trace_only else {"lambda (traced)": lambda_text(m, cfg, traced),
                                         "mu (traced)": traced}
        if mu is None:
            w = _proportionality_witness(m, star, cfg)
            return CheckEntry("soliton-1.1", FAIL, w, derived,
                              "no constant lambda: L_V g + 2S* is not a multiple of g"), cfg
        note = "lambda from the trace only" if trace_only else "lambda solved"
        derived["lambda"] = lambda_text(m, cfg, mu)
        derived["mu"] = mu
        try:
            cfg = cfg.with_lambda(mu + steady_lambda(m, cfg))
        except MultivariateError:
            note += "; lambda mixes p with the manifold parameter, so it is not carried further"
        res = _shift_residual(m, star, cfg.V, mu)
        return residual_entry("soliton-1.1", [("L_V g + 2S* - 2 mu g", res.comps)], m.frame_names,
                              derived=derived, note=note), cfg
    try:
        res = soliton_residual(m, star, cfg)
    except SolitonError as exc:
        return CheckEntry("soliton-1.1", ERROR, note=str(exc)), cfg
    entry = residual_entry("soliton-1.1", [("L_V g + 2S* - 2 mu g", res.comps)], m.frame_names,
                           derived={"lambda": cfg.lam, "mu": shift(m, cfg)})
    return entry, cfg


def gradient_entry(m: FrameManifold, star: StarRicci, cfg: SolitonConfig,
                   conn: Connection) -> CheckEntry:
    if not cfg.gradient:
        return CheckEntry("grad-soliton-1.2", NA, note="gradient = false")
    hess = hessian_candidate(cfg.V, conn)
    derived = {"laplacian f": divergence(cfg.V, conn)}
    if cfg.lam is None:
        return CheckEntry("grad-soliton-1.2", NA, derived=derived, note="lambda not set or solved")
    try:
        res = gradient_residual(m, star, cfg, conn)
    except NotGradientError as exc:
        i, j = exc.pair
        return CheckEntry("grad-soliton-1.2", FAIL, Witness((i, j), exc.diff, "Hess(X,Y) - Hess(Y,X)"),
                          derived, note="V is not gradient-like")
    except SolitonError as exc:
        return CheckEntry("grad-soliton-1.2", ERROR, note=str(exc))
    derived["hessian zero"] = hess.is_zero()
    return residual_entry("grad-soliton-1.2", [("Hess + S* - mu g", res.comps)], m.frame_names,
                          derived=derived)


__all__ += ["soliton_entry", "gradient_entry", "ICT_STRICT", "ICT_NON_STRICT", "ICT_NONE"]
