from fractions import Fraction

import numpy as np
import pytest

from conftest import DATA, family_doc, sa
from nkcontact.connection import covariant_derivative, levi_civita, riemann
from nkcontact.contact import build_contact, nullity_from_h
from nkcontact.frame import scalar_array
from nkcontact.geomfile import load_manifold_file
from nkcontact.star import (
    check_eta_einstein_form,
    check_star_cyclic_derivative,
    check_star_derivative,
    check_star_operator_derivative,
    check_star_symmetry,
    reconciling_signs,
    star_ricci,
)

FRAME = ("e1", "e2", "e3")


def _setup(a=None, sign=1):
    doc = family_doc(a)
    m = doc.manifold
    conn = levi_civita(m)
    curv = riemann(m, conn, sign)
    c = build_contact(m, doc.contact)
    k = nullity_from_h(m, c)
    return m, c.with_k(k), conn, star_ricci(m, c, curv), k


def test_star_ricci_matches_oracle(oracle):
    m, c, conn, star, k = _setup()
    for key, value in oracle["s_star"].items():
        i, j = (FRAME.index(n) for n in key.split(","))
        assert star.s_star.comps[i, j] == sa(value), key
    assert star.r_star == sa(oracle["r_star"]) == sa("-2*(1 - a^2)")


def test_star_ricci_values_in_closed_form():
    m, c, conn, star, k = _setup()
    assert star.s_star.comps[0, 0] == 0
    assert star.s_star.comps[1, 1] == star.s_star.comps[2, 2] == -(1 - sa("a^2"))
    assert star.is_symmetric


@pytest.mark.parametrize("a", [0, 1, 2, Fraction(1, 3)])
def test_eta_einstein_form_at_points(a):
    m, c, conn, star, k = _setup(a)
    entry = check_eta_einstein_form(m, c, star, k)
    assert entry.status == "pass"


def test_sasakian_endpoint_star_ricci():
    m, c, conn, star, k = _setup(0)
    expected = -(m.metric - np.outer(c.eta, c.eta))
    assert (star.s_star.comps == expected).all()


def test_reconciling_sign_is_unique_on_family():
    m, c, conn, star, k = _setup()
    assert reconciling_signs(m, c, conn) == [1]
    m1, c1, conn1, _, _ = _setup(1)
    assert reconciling_signs(m1, c1, conn1) == [1, -1]


def test_wrong_sign_fails_eta_einstein_form_with_witness():
    m, c, conn, star, k = _setup(sign=-1)
    entry = check_eta_einstein_form(m, c, star, k, reconciling_signs(m, c, conn))
    assert entry.status == "fail"
    assert entry.witness.indices == ("e2", "e2")
    assert entry.derived["reconciling_sign"] == "+1"


def test_symmetry_and_derivative_identities():
    m, c, conn, star, k = _setup()
    assert check_star_symmetry(m, star).status == "pass"
    assert check_star_derivative(m, c, conn, star, k).status == "pass"
    assert [e.status for e in check_star_operator_derivative(m, c, conn, star, k)] == ["pass", "pass"]


def test_cyclic_lhs_matches_oracle(oracle):
    m, c, conn, star, k = _setup()
    n = covariant_derivative(star.s_star, conn).comps  # [x, y, z] = (nabla_z S*)(x, y)
    lhs = n - n.transpose(2, 0, 1) - n.transpose(0, 2, 1)
    for key, value in oracle["cyclic_nabla_s_star"].items():
        x, y, z = (FRAME.index(s) for s in key.split(","))
        assert lhs[x, y, z] == sa(value), key


def test_printed_cyclic_identity_fails_off_the_flat_points(oracle):
    m, c, conn, star, k = _setup()
    entry = check_star_cyclic_derivative(m, c, conn, star, k)
    assert entry.status == "fail"
    assert entry.witness.indices == ("e1", "e2", "e3")
    assert entry.witness.residual == sa(oracle["cyclic_residual_printed"]["e1,e2,e3"])
    assert entry.witness.residual == sa("2*(a - 2)*(a - 1)*(a + 1)")


@pytest.mark.parametrize("a", [1, -1])
def test_printed_cyclic_identity_holds_where_k_vanishes(a):
    m, c, conn, star, k = _setup(a)
    assert check_star_cyclic_derivative(m, c, conn, star, k).status == "pass"


def test_cyclic_identity_in_corrected_form(oracle):
    """The combination that the three single-derivative identities actually produce."""
    m, c, conn, star, k = _setup()
    n = covariant_derivative(star.s_star, conn).comps
    lhs = n - n.transpose(2, 0, 1) - n.transpose(0, 2, 1)
    g_phi = c.phi.T @ m.metric  # [x, z] = g(phi X, Z)
    g_hphi = (c.h @ c.phi).T @ m.metric  # [x, y] = g(h phi X, Y)
    rhs = (np.einsum("y,xz->xyz", c.eta, g_phi) * 2 + np.einsum("x,yz->xyz", c.eta, g_phi) * 2
           - np.einsum("z,xy->xyz", c.eta, g_hphi) * 2) * k
    assert all(v.is_zero() for v in (lhs - rhs).flat)
    assert set(oracle["cyclic_residual_corrected"].values()) == {"0"}


def test_star_ricci_shape_on_flat_abelian():
    doc = load_manifold_file(DATA / "abelian_contact.geom")
    m = doc.manifold
    conn = levi_civita(m)
    c = build_contact(m, doc.contact)
    star = star_ricci(m, c, riemann(m, conn, 1))
    assert star.s_star.is_zero() and star.r_star == 0
    assert (star.q_star.comps == scalar_array(np.zeros((3, 3), dtype=int))).all()
