import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import DATA, family_doc, sa
from nkcontact.algebras import random_frame_manifold
from nkcontact.frame import (
    FrameError,
    FrameManifold,
    JacobiError,
    TensorField,
    bracket,
    mat_det,
    mat_inverse,
    scalar_array,
    vector,
    zeros,
)
from nkcontact.geomfile import GeomParseError, dump_manifold, load_manifold, load_manifold_file

HEADER = "[manifold]\nname = t\ndim = 3\n"


def test_family_brackets():
    m = family_doc().manifold
    e1, e2, e3 = (m.e(i) for i in range(3))
    assert list(bracket(m, e1, e2)) == [0, 0, sa("1 + a")]
    assert list(bracket(m, e2, e3)) == [2, 0, 0]
    assert list(bracket(m, e3, e1)) == [0, sa("1 - a"), 0]
    assert list(bracket(m, e2, e1)) == [0, 0, sa("-1 - a")]
    assert m.n == 1 and m.is_orthonormal and m.param == "a"


def test_substitution_drops_parameter():
    m = family_doc(1).manifold
    assert m.param is None
    assert all(v.is_constant() for v in m.c.flat)
    assert m.c[1, 2, 0] == 0


def test_jacobi_violation_names_triple():
    with pytest.raises(JacobiError) as info:
        load_manifold_file(DATA / "jacobi_bad.geom")
    assert info.value.triple == (0, 1, 2)
    assert "triple (1,2,3)" in str(info.value)


def test_rejects_even_dimension():
    text = "[manifold]\ndim = 2\n[frame]\nnames = x, y\n"
    with pytest.raises(FrameError):
        load_manifold(text)


def test_rejects_degenerate_metric():
    text = HEADER + "[frame]\nnames = x, y, z\nmetric = explicit\ng x x = 1\ng y y = 1\n"
    with pytest.raises(FrameError, match="degenerate"):
        load_manifold(text)


def test_explicit_metric():
    text = HEADER + "[frame]\nnames = x, y, z\ng x x = 2\ng x y = 1\ng y y = 1\ng z z = 1/3\n"
    m = load_manifold(text).manifold
    assert m.metric[0, 1] == m.metric[1, 0] == 1
    assert not m.is_orthonormal
    assert (m.metric @ m.metric_inv == scalar_array(np.eye(3, dtype=int))).all()


@pytest.mark.parametrize("body, fragment", [
    ("[frame]\nnames = x, y, z\n[weird]\n", "unknown section"),
    ("[frame]\nnames = x, y\n", "2 frame names"),
    ("[frame]\nnames = x, y, z\n[brackets]\nx, w = x\n", "bad bracket pair"),
    ("[frame]\nnames = x, y, z\n[brackets]\nx, y = 2 q\n", "unknown frame vector"),
    ("[frame]\nnames = x, y, z\n[brackets]\nx, y = z\ny, x = z\n", "given twice"),
    ("[frame]\nnames = x, y, z\n[brackets]\nx, y = (1 + b) z\n", "undeclared parameter"),
    ("[frame]\nnames = x, y, z\nmetric = identity\ng x x = 2\n", "conflicts"),
    ("[frame]\nnames = x, y, z\n[soliton]\nV = x\ngradient = maybe\n", "gradient"),
])
def test_parse_errors(body, fragment):
    with pytest.raises(GeomParseError, match=fragment):
        load_manifold(HEADER + body)


def test_parse_error_reports_line():
    with pytest.raises(GeomParseError) as info:
        load_manifold(HEADER + "[frame]\nnames = x, y, z\n[brackets]\nx, y = (1 + ) z\n")
    assert info.value.line == 7


def test_reserved_parameter_name():
    with pytest.raises(GeomParseError, match="reserved"):
        load_manifold("[manifold]\ndim = 3\nparam = p\n[frame]\nnames = x, y, z\n")


def test_comments_and_blank_lines():
    text = "# heading\n\n" + HEADER + "[frame]  # trailing\nnames = x, y, z\n[brackets]\nx, y = z # note\n"
    m = load_manifold(text).manifold
    assert m.c[2, 0, 1] == 1


@pytest.mark.parametrize("name", ["example_nk.geom", "abelian.geom", "abelian_contact.geom",
                                  "example_nk_zero_field.geom"])
def test_dump_round_trip(name):
    doc = load_manifold_file(DATA / name)
    text = dump_manifold(doc)
    again = load_manifold(text)
    assert dump_manifold(again) == text
    assert (again.manifold.c == doc.manifold.c).all()
    assert (again.manifold.metric == doc.manifold.metric).all()
    if doc.contact is not None:
        assert (again.contact.phi == doc.contact.phi).all()
        assert (again.contact.xi == doc.contact.xi).all()
    if doc.soliton is not None:
        assert (again.soliton.V == doc.soliton.V).all()
        assert again.soliton.gradient == doc.soliton.gradient


def test_contact_and_soliton_sections():
    doc = family_doc()
    assert list(doc.contact.xi) == [1, 0, 0]
    assert doc.contact.phi[2, 1] == 1 and doc.contact.phi[1, 2] == -1
    assert list(doc.soliton.V) == [1, 0, 0]
    assert str(doc.soliton.p) == "p" and doc.soliton.lam is None


def test_tensor_lines_are_lexicographic():
    t = TensorField(0, 2, scalar_array([[1, 2], [3, 4]]))
    assert t.lines(("x", "y"), "T") == ["T[x,x] = 1", "T[x,y] = 2", "T[y,x] = 3", "T[y,y] = 4"]


def test_tensor_arithmetic():
    t = TensorField(1, 1, scalar_array([[1, 2], [3, 4]]))
    assert (t - t).is_zero()
    assert (t * 2).comps[1, 1] == 8
    assert (-t + t).is_zero()
    assert t.first_nonzero() == ((0, 0), 1)
    with pytest.raises(ValueError):
        t + TensorField(0, 2, t.comps)


def test_matrix_inverse_and_det():
    m = scalar_array([[2, 1, 0], [1, 1, 0], [0, 0, 3]])
    assert mat_det(m) == 3
    inv = mat_inverse(m)
    assert (m @ inv == scalar_array(np.eye(3, dtype=int))).all()


@given(st.sampled_from([3, 5]), st.integers(0, 10_000))
def test_random_algebras_satisfy_jacobi_and_antisymmetry(dim, seed):
    m = random_frame_manifold(dim, seed, spread=2)
    for k, i, j in itertools.product(range(dim), repeat=3):
        assert m.c[k, i, j] == -m.c[k, j, i]
    x, y, z = (vector([(seed + 3 * i + j) % 5 - 2 for j in range(dim)]) for i in range(3))
    jac = (bracket(m, x, bracket(m, y, z)) + bracket(m, y, bracket(m, z, x))
           + bracket(m, z, bracket(m, x, y)))
    assert all(v.is_zero() for v in jac)


def test_manifold_validates_antisymmetry():
    c = zeros(3, 3, 3)
    c[2, 0, 1] = c[2, 0, 1] + 1
    with pytest.raises(FrameError, match="antisymmetric"):
        FrameManifold("x", 3, ("a", "b", "c"), c, scalar_array(np.eye(3, dtype=int)))
