from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import event, given, settings
from hypothesis import strategies as st

from conftest import DATA, family_doc, sa
from nkcontact.algebras import random_frame_manifold
from nkcontact.config import P_SYMBOL, GeomDocument, SolitonConfig
from nkcontact.engine import analyze
from nkcontact.frame import vector
from nkcontact.geomfile import load_manifold_file
from nkcontact.scalar import Scalar, parse_scalar
from nkcontact import soliton as sol

STEADY = parse_scalar("p/2 + 1/3", P_SYMBOL)


def lam(text):
    return parse_scalar(text, P_SYMBOL)


def _family(a=None, V=None, gradient=False, sign=1):
    doc = family_doc(a)
    cfg = doc.soliton
    if V is not None:
        cfg = replace(cfg, V=vector(V))
    doc = replace(doc, soliton=replace(cfg, gradient=gradient))
    return analyze(doc, sign), doc.soliton


def _abelian():
    doc = load_manifold_file(DATA / "abelian_contact.geom")
    return analyze(doc, 1), doc.soliton


def test_steady_lambda():
    an, cfg = _family()
    assert sol.steady_lambda(an.manifold, cfg) == STEADY
    assert sol.shift(an.manifold, cfg.with_lambda(STEADY)) == 0


def test_residual_at_a_equals_one_is_the_lie_derivative_of_g(oracle):
    an, cfg = _family(1)
    res = sol.soliton_residual(an.manifold, an.star, cfg.with_lambda(STEADY))
    # S* = 0 and mu = 0 here, so what is left is L_{e1} g
    assert res.comps[1, 2] == sa(oracle["lie_xi_g"]["e2,e3"]).substitute(1) == -2
    assert not res.is_zero()


@pytest.mark.parametrize("a", [0, 2, Fraction(1, 2)])
def test_no_constant_lambda_off_the_flat_points(a):
    an, cfg = _family(a)
    assert sol.solve_lambda(an.manifold, an.star, cfg) is None
    for guess in ("p/2 + 1/3", "p/2", "p/2 - 1/3", "p/2 + 7/3"):
        res = sol.soliton_residual(an.manifold, an.star, cfg.with_lambda(lam(guess)))
        assert not res.is_zero()


def test_symbolic_family_traced_shift():
    an, cfg = _family()
    mu = sol.solve_shift(an.manifold, an.star, cfg, trace_only=True)
    assert mu == sa("2/3*(a^2 - 1)")
    assert sol.solve_shift(an.manifold, an.star, cfg) is None
    assert sol.lambda_text(an.manifold, cfg, mu) == "1/2*p + 1/3 + (2/3*a^2 - 2/3)"


def test_traced_lambda_at_a_equals_one():
    an, cfg = _family(1)
    assert sol.solve_lambda(an.manifold, an.star, cfg, trace_only=True) == STEADY


def test_flat_abelian_zero_field():
    an, cfg = _abelian()
    assert sol.solve_lambda(an.manifold, an.star, cfg) == STEADY
    assert sol.soliton_residual(an.manifold, an.star, cfg.with_lambda(STEADY)).is_zero()
    off = sol.gradient_residual(an.manifold, an.star, cfg.with_lambda(lam("p/2 + 1")), an.conn)
    assert (off.comps == an.manifold.metric * Scalar.const(Fraction(-2, 3))).all()


def test_lambda_mixing_parameter_and_p_is_reported():
    an, cfg = _family()
    with pytest.raises(sol.SolitonError, match="substitute"):
        sol.soliton_residual(an.manifold, an.star, cfg.with_lambda(lam("p")))


def test_non_gradient_field_names_pair():
    an, cfg = _family(1, gradient=True)
    with pytest.raises(sol.NotGradientError) as info:
        sol.gradient_residual(an.manifold, an.star, cfg.with_lambda(STEADY), an.conn)
    assert info.value.pair == ("e2", "e3") and info.value.diff == -2


def test_gradient_zero_field():
    an, cfg = _family(1, V=[0, 0, 0], gradient=True)
    assert sol.gradient_residual(an.manifold, an.star, cfg.with_lambda(STEADY), an.conn).is_zero()


def test_poisson_demands_lambda():
    an, cfg = _family(1, gradient=True)
    entry = sol.poisson_check(an.manifold, cfg, an.conn)
    assert entry.status == "pass"
    assert entry.derived["lambda"] == STEADY and entry.derived["regime"] == "harmonic"
    assert entry.derived["laplacian f"] == 0
    assert sol.poisson_check(an.manifold, cfg.with_lambda(STEADY), an.conn).status == "pass"
    bad = sol.poisson_check(an.manifold, cfg.with_lambda(lam("p/2 + 1")), an.conn)
    assert bad.status == "fail" and bad.witness.residual == -2


def test_classify_at_a_equals_one():
    an, cfg = _family(1)
    cls = sol.classify_field(an.manifold, an.contact, cfg)
    assert cls.killing is False and cls.conformal_sigma is None
    assert cls.eta_lie_xi == 0 and cls.ict_status == sol.ICT_STRICT


def test_classify_sasakian_point():
    an, cfg = _family(0)
    assert sol.classify_field(an.manifold, an.contact, cfg).killing


def test_classify_scaled_xi_on_flat_abelian():
    an, cfg = _abelian()
    cls = sol.classify_field(an.manifold, an.contact, replace(cfg, V=vector([2, 0, 0])))
    assert cls.killing and cls.conformal_sigma == 0


@settings(max_examples=20)
@given(st.integers(0, 10_000), st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_killing_iff_zero_conformal_factor(seed, v):
    m = random_frame_manifold(3, seed, spread=1)
    cfg = SolitonConfig(vector(v), Scalar.symbol(P_SYMBOL))
    cls = sol.classify_field(m, None, cfg)
    assert cls.killing == (cls.conformal_sigma == 0 and cls.conformal_sigma is not None)


def test_gated_identities_are_not_applicable_when_soliton_fails():
    an, cfg = _family(1)
    m, c = an.manifold, an.contact
    cfg = cfg.with_lambda(STEADY)
    assert not sol.soliton_holds(m, an.star, cfg)
    gated = (sol.check_lie_connection(m, c, cfg, an.conn, an.k, False)
             + sol.check_xi_components(m, c, cfg, False)
             + [sol.check_lie_curvature(m, c, cfg, an.curv, False),
                sol.verify_conclusions(m, c, an.star, cfg, an.curv, an.k, False)])
    assert {e.status for e in gated} == {"not-applicable"}


def test_zero_field_soliton_passes_every_consequence():
    an, cfg = _family(1, V=[0, 0, 0], gradient=True)
    m, c = an.manifold, an.contact
    cfg = cfg.with_lambda(STEADY)
    assert sol.soliton_holds(m, an.star, cfg)
    assert sol.gradient_soliton_holds(m, an.star, cfg, an.conn)
    entries = (sol.check_lie_connection(m, c, cfg, an.conn, an.k, True)
               + sol.check_xi_components(m, c, cfg, True)
               + [sol.check_lie_curvature(m, c, cfg, an.curv, True),
                  sol.check_gradient_curvature(m, c, cfg, an.curv, an.k, True),
                  sol.verify_conclusions(m, c, an.star, cfg, an.curv, an.k, True),
                  sol.verify_gradient_conclusions(m, c, an.star, cfg, an.conn, an.curv, an.k, True)])
    assert {e.id: e.status for e in entries if e.status != "pass"} == {}


def test_conclusion_failure_is_reported_as_counterexample():
    # mu != 0 forces k = 0; feed the check a k it cannot accept
    an, cfg = _family(1, V=[0, 0, 0])
    m, c = an.manifold, an.contact
    entry = sol.verify_conclusions(m, c, an.star, cfg.with_lambda(lam("p/2 + 1")), an.curv,
                                   Scalar.const(1), True)
    assert entry.status == "fail" and entry.note.startswith("COUNTEREXAMPLE")


def test_soliton_entry_solves_or_explains():
    an, cfg = _family(1)
    entry, out = sol.soliton_entry(an.manifold, an.star, cfg)
    assert entry.status == "fail" and out.lam is None
    assert entry.derived["lambda (traced)"] == "1/2*p + 1/3"
    entry, out = sol.soliton_entry(an.manifold, an.star, cfg, trace_only=True)
    assert out.lam == STEADY
    assert entry.status == "fail" and entry.witness.indices == ("e2", "e3")
    an0, cfg0 = _family(1, V=[0, 0, 0])
    entry, out = sol.soliton_entry(an0.manifold, an0.star, cfg0)
    assert entry.status == "pass" and out.lam == STEADY


rationals = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@settings(max_examples=25)
@given(rationals, st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_solved_lambda_always_closes_the_equation(a, v):
    an, cfg = _family(a, V=v)
    m = an.manifold
    solved = sol.solve_lambda(m, an.star, cfg)
    event("solvable" if solved is not None else "not solvable")
    if solved is None:
        return
    cfg = cfg.with_lambda(solved)
    assert sol.soliton_residual(m, an.star, cfg).is_zero()
    mu = sol.shift(m, cfg)
    # consequences of a verified soliton on this N(k) family
    assert mu.is_zero() or an.k.is_zero()
    assert all(e.status == "pass" for e in sol.check_xi_components(m, an.contact, cfg, True))


@settings(max_examples=15)
@given(rationals)
def test_operator_derivative_identities_hold_without_any_soliton(a):
    from nkcontact.star import check_star_operator_derivative

    an, _ = _family(a)
    entries = check_star_operator_derivative(an.manifold, an.contact, an.conn, an.star, an.k)
    assert [e.status for e in entries] == ["pass", "pass"]


def test_asymmetric_star_ricci_is_rejected():
    an, cfg = _family(1)
    skew = an.star.s_star.comps.copy()
    skew[0, 1] = skew[0, 1] + 1
    bad = replace(an.star, s_star=replace(an.star.s_star, comps=skew))
    with pytest.raises(sol.DefinitionInconsistent):
        sol.soliton_residual(an.manifold, bad, cfg.with_lambda(STEADY))


def test_document_without_soliton_section():
    doc = load_manifold_file(DATA / "abelian.geom")
    assert isinstance(doc, GeomDocument) and doc.soliton is None
