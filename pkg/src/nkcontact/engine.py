"""Run every applicable check on a loaded manifold document and assemble a report."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .config import GeomDocument, SolitonConfig
from .connection import Connection, Curvature, default_curvature_sign, levi_civita, riemann
from .contact import (
    ContactStructure,
    NotNullityError,
    build_contact,
    check_h,
    check_nullity_identities,
    contact_condition,
    nullity_from_curvature,
    nullity_from_h,
    verify_almost_contact,
)
from .invariants import CONNECTION_CHECKS, connection_checks
from .report import NA, CheckEntry, CheckReport
from .scalar import Scalar
from . import soliton as sol
from .star import (
    StarRicci,
    check_eta_einstein_form,
    check_star_cyclic_derivative,
    check_star_derivative,
    check_star_operator_derivative,
    check_star_symmetry,
    reconciling_signs,
    star_ricci,
)

__all__ = [
    "CONTACT_CHECKS",
    "STAR_CHECKS",
    "SOLITON_CHECKS",
    "GEOMETRY_CHECKS",
    "ALL_CHECKS",
    "Analysis",
    "analyze",
    "run_checks",
    "run_soliton",
]

CONTACT_CHECKS = (
    "ac-2.1", "ac-2.2", "ac-2.3", "contact-cond", "h-2.4", "nabla-xi-2.5", "h-sq-2.6",
    "nullity-2.7", "nullity-2.8", "nabla-eta-2.9", "nabla-phi-2.10", "nabla-phih-2.11",
)
STAR_CHECKS = ("star-sym", "lemma-3.2", "nabla-sstar-3.4to3.6", "lemma-3.4", "eq-3.28", "eq-3.29")
SOLITON_CHECKS = (
    "soliton-1.1", "grad-soliton-1.2", "poisson", "classify", "eq-3.11", "eq-3.12", "eq-3.16",
    "eq-3.17", "eq-3.19", "lemma-3.10", "thm-3.5", "thm-3.11",
)
GEOMETRY_CHECKS = CONNECTION_CHECKS + CONTACT_CHECKS + STAR_CHECKS
ALL_CHECKS = GEOMETRY_CHECKS + SOLITON_CHECKS


@dataclass
class Analysis:
    """Everything computed once per document and shared by the checks."""

    doc: GeomDocument
    conn: Connection
    curv: Curvature
    contact: Optional[ContactStructure] = None
    k: Optional[Scalar] = None
    k_note: Optional[str] = None
    star: Optional[StarRicci] = None
    reconciling: list[int] = field(default_factory=list)
    nk_note: Optional[str] = None

    @property
    def is_nk(self) -> bool:
        """Contact metric with xi in the k-nullity distribution, k agreeing with h^2."""
        return self.contact is not None and self.nk_note is None

    @property
    def manifold(self):
        return self.doc.manifold


def analyze(doc: GeomDocument, curvature_sign: Optional[int] = None) -> Analysis:
    """Connection, curvature and, with contact data, h, k (from h^2) and S*."""
    if curvature_sign is None:
        curvature_sign = default_curvature_sign()
    m = doc.manifold
    conn = levi_civita(m)
    curv = riemann(m, conn, curvature_sign)
    out = Analysis(doc, conn, curv)
    if doc.contact is None:
        return out
    c = build_contact(m, doc.contact)
    try:
        out.k = nullity_from_h(m, c)
        if out.k is None:
            out.k_note = "phi^2 vanishes"
    except NotNullityError as exc:
        out.k_note = str(exc)
    out.contact = c.with_k(out.k)
    out.star = star_ricci(m, out.contact, curv)
    out.reconciling = reconciling_signs(m, out.contact, conn)
    out.nk_note = _nk_obstruction(m, out.contact, curv, out.k)
    return out


def _nk_obstruction(m, c: ContactStructure, curv: Curvature, k: Optional[Scalar]) -> Optional[str]:
    if contact_condition(m, c).derived["holds"] == "none":
        return "d eta is not the fundamental 2-form in either convention"
    if k is None:
        return "no nullity constant from h^2"
    try:
        k_curv = nullity_from_curvature(m, c, curv)
    except NotNullityError as exc:
        return str(exc)
    if k_curv != k:
        return f"R(X,Y)xi gives k = {k_curv} but h^2 gives k = {k}"
    return None


def _convention(a: Analysis, contact_form: str) -> dict:
    conv = {"curvature_sign": f"{a.curv.sign:+d}", "contact_form": contact_form}
    if a.contact is not None:
        conv["star_reconciled_sign"] = ",".join(f"{s:+d}" for s in a.reconciling) or "none"
    return conv


def _na(ids: Sequence[str], note: str) -> list[CheckEntry]:
    return [CheckEntry(i, NA, note=note) for i in ids]


def _contact_entries(a: Analysis, contact_form: str) -> list[CheckEntry]:
    if a.contact is None:
        return _na(CONTACT_CHECKS, "no contact structure")
    m, c = a.manifold, a.contact
    entries = verify_almost_contact(m, c)
    entries.append(contact_condition(m, c, contact_form))
    entries.append(check_h(m, c))
    entries.extend(check_nullity_identities(m, c, a.conn, a.curv))
    order = {cid: i for i, cid in enumerate(CONTACT_CHECKS)}
    return sorted(entries, key=lambda e: order[e.id])


def _star_entries(a: Analysis) -> list[CheckEntry]:
    if a.contact is None:
        return _na(STAR_CHECKS, "no contact structure")
    m, c, star = a.manifold, a.contact, a.star
    entries = [check_star_symmetry(m, star)]
    if a.k is None:
        note = f"no nullity constant from h^2 ({a.k_note})"
        return entries + _na(STAR_CHECKS[1:], note)
    entries.append(check_eta_einstein_form(m, c, star, a.k, a.reconciling))
    entries.append(check_star_derivative(m, c, a.conn, star, a.k))
    entries.append(check_star_cyclic_derivative(m, c, a.conn, star, a.k))
    entries.extend(check_star_operator_derivative(m, c, a.conn, star, a.k))
    return entries


def _classify_entry(a: Analysis, cfg: SolitonConfig) -> CheckEntry:
    cls = sol.classify_field(a.manifold, a.contact, cfg)
    return CheckEntry("classify", "pass", derived=cls.derived())


def _soliton_entries(a: Analysis, cfg: Optional[SolitonConfig],
                     trace_only: bool = False) -> list[CheckEntry]:
    if cfg is None:
        return _na(SOLITON_CHECKS, "no soliton data")
    m, c, star = a.manifold, a.contact, a.star
    if c is None:
        return _na(SOLITON_CHECKS, "no contact structure")
    first, cfg = sol.soliton_entry(m, star, cfg, trace_only=trace_only)
    holds = first.status == "pass" and cfg.lam is not None
    grad = sol.gradient_entry(m, star, cfg, a.conn)
    grad_holds = cfg.gradient and grad.status == "pass"
    if cfg.gradient:
        poisson = sol.poisson_check(m, cfg, a.conn)
    else:
        poisson = CheckEntry("poisson", NA, note="gradient = false")
    k = a.k
    entries = [first, grad, poisson, _classify_entry(a, cfg)]
    if not a.is_nk:
        return entries + _na(SOLITON_CHECKS[4:], f"not an N(k)-contact metric manifold: {a.nk_note}")
    entries.extend(sol.check_lie_connection(m, c, cfg, a.conn, k, holds))
    entries.append(sol.check_lie_curvature(m, c, cfg, a.curv, holds))
    entries.extend(sol.check_xi_components(m, c, cfg, holds))
    entries.append(sol.check_gradient_curvature(m, c, cfg, a.curv, k, grad_holds))
    entries.append(sol.verify_conclusions(m, c, star, cfg, a.curv, k, holds))
    entries.append(sol.verify_gradient_conclusions(m, c, star, cfg, a.conn, a.curv, k, grad_holds))
    return entries


def _finish(a: Analysis, contact_form: str, entries: list[CheckEntry],
            ids: Optional[Sequence[str]]) -> CheckReport:
    report = CheckReport(a.manifold.name, _convention(a, contact_form))
    report.add(entries)
    if ids:
        report = report.select(list(dict.fromkeys(ids)))
    return report


def run_checks(doc: GeomDocument, curvature_sign: Optional[int] = None, contact_form: str = "B",
               ids: Optional[Sequence[str]] = None) -> CheckReport:
    """Geometry checks by default; soliton checks too when one of ``ids`` asks for them."""
    unknown = [i for i in ids or () if i not in ALL_CHECKS]
    if unknown:
        raise KeyError(f"unknown check id(s): {', '.join(unknown)}")
    a = analyze(doc, curvature_sign)
    entries = connection_checks(a.manifold, a.conn, a.curv)
    entries += _contact_entries(a, contact_form)
    entries += _star_entries(a)
    if ids and any(i in SOLITON_CHECKS for i in ids):
        entries += _soliton_entries(a, doc.soliton)
    return _finish(a, contact_form, entries, ids)


def run_soliton(doc: GeomDocument, curvature_sign: Optional[int] = None, contact_form: str = "B",
                trace_only: bool = False) -> CheckReport:
    """Soliton checks, solving for lambda when the document's config has none."""
    if doc.soliton is None:
        raise ValueError("document has no soliton data")
    a = analyze(doc, curvature_sign)
    return _finish(a, contact_form, _soliton_entries(a, doc.soliton, trace_only), None)
