from __future__ import annotations

import json
import warnings
from fractions import Fraction as Q
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meshkit import rectilinear_star
from sasplines.errors import (
    DegreeMismatch,
    HasBasepoints,
    InsufficientImageData,
    NotInNet,
    SchemaError,
    SpanDeficient,
)
from sasplines.exactalg import parse_form
from sasplines.hilbert import fit_hp, series_numerator
from sasplines.net import (
    MS_NET,
    c_table,
    cn_sum_check,
    hp_transform,
    image_mesh,
    load_net,
    net_check,
    net_membership,
    postulation_bound,
    tensor_dim,
    tensor_table,
)
from sasplines.splinespace import hf_table

from conftest import fixture_path, hf
from reference_values import NET_HF, NET_HP, NET_IMAGE_HF, NET_IMAGE_HP

P = parse_form


@pytest.fixture(scope="module")
def net():
    return net_check(*MS_NET)


def test_net_check_examples(net):
    assert net.n == 2 and net.basepoint_free
    lin = net_check(P("x"), P("y"), P("z"))
    assert lin.n == 1 and lin.basepoint_free
    with pytest.raises(HasBasepoints):
        net_check(P("x^2"), P("x*y"), P("y^2"))
    assert not net_check(P("x^2"), P("x*y"), P("y^2"), require_basepoint_free=False).basepoint_free


def test_net_check_errors():
    with pytest.raises(DegreeMismatch):
        net_check(P("x"), P("y^2"), P("z"))
    with pytest.raises(SpanDeficient):
        net_check(P("x"), P("y"), P("x + y"))
    with pytest.raises(SpanDeficient):
        net_check(P("0"), P("y"), P("x"))


def test_membership(net):
    assert net_membership(net, P("3*x^2 - x*z + y^2 - 3*y*z")) == (3, 1, 0)
    assert net_membership(net, MS_NET[0]) == (1, 0, 0)
    # x^2, y^2, z^2 force all three coefficients to 1, which adds an xy term
    assert net_membership(net, P("x^2 + y^2 + z^2")) is None
    with pytest.raises(DegreeMismatch):
        net_membership(net, P("x"))


def test_all_net_mesh_edges_in_net(net, net_ms):
    for e in net_ms.edges:
        coeffs = net_membership(net, e.form)
        assert coeffs is not None
        assert sum((c * F for c, F in zip(coeffs, MS_NET)), start=P("0")) == e.form


def test_c_table_examples():
    assert c_table(1) == [1]
    assert c_table(2) == [1, 3, 3, 1]
    assert c_table(3) == [1, 3, 6, 7, 6, 3, 1]


@pytest.mark.parametrize("n", range(1, 9))
def test_c_table_symmetry_and_sum(n):
    c = c_table(n)
    assert len(c) == 3 * n - 2
    assert c == c[::-1]
    assert sum(c) == n**3
    assert cn_sum_check(n)


def test_c_table_matches_quotient_dims(net):
    from sasplines.homology import quotient_dim

    assert [quotient_dim(list(MS_NET), j) for j in range(6)] == c_table(2) + [0, 0]


def test_image_mesh_of_net_mesh(net, net_ms):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        img = image_mesh(net_ms, net)
    assert (img.phi0, img.phi1, img.phi2) == (3, 9, 7)
    assert all(e.degree == 1 for e in img.edges)
    assert img.name == "net_ms_image"
    assert hf_table(img, 1, 6) == NET_IMAGE_HF


def test_image_mesh_identity_net():
    m = rectilinear_star()
    img = image_mesh(m, net_check(P("x"), P("y"), P("z")))
    for a, b in zip(m.edges, img.edges):
        assert a.id == b.id and a.form.is_proportional(b.form)
    assert [v.point for v in img.vertices] == [v.point for v in m.vertices]
    assert hf_table(img, 1, 5) == hf_table(m, 1, 5)


def test_image_mesh_not_in_net(net, fig1):
    with pytest.raises(NotInNet):
        image_mesh(fig1, net)


def test_tensor_examples():
    assert tensor_dim(NET_IMAGE_HF, 2, 7) == 55
    assert tensor_dim(NET_IMAGE_HF, 2, 4) == 16
    assert [tensor_dim(NET_IMAGE_HF, 1, d) for d in range(7)] == NET_IMAGE_HF


def test_tensor_needs_image_data():
    with pytest.raises(InsufficientImageData):
        tensor_dim(NET_IMAGE_HF, 2, 14)
    # the Hilbert polynomial fills degrees beyond the table
    assert tensor_dim(NET_IMAGE_HF, 2, 14, NET_IMAGE_HP) == int(
        Q(7, 2) * 196 - Q(51, 2) * 14 + 61
    )


def test_tensor_identity_net_mesh():
    assert tensor_table(NET_IMAGE_HF, 2, 10, NET_IMAGE_HP) == NET_HF
    assert list(hf("net_ms", 1, 10)) == NET_HF


def test_series_transform():
    image_values = list(NET_IMAGE_HF) + [int(Q(7, 2) * d * d - Q(15, 2) * d + 7) for d in range(7, 12)]
    p = series_numerator(image_values, NET_IMAGE_HP)
    delta_values = tensor_table(image_values, 2, 20)
    q = series_numerator(delta_values, NET_HP)
    p_t2 = [0] * (2 * len(p) - 1)
    for k, c in enumerate(p):
        p_t2[2 * k] = c
    assert q == p_t2


def test_hp_transform_examples():
    assert hp_transform(Q(7, 2), Q(-15, 2), 7, 2) == NET_HP
    assert hp_transform(3, -4, 5, 1) == (3, -4, 5)
    a, b, c = Q(5, 2), Q(-3), Q(11)
    assert hp_transform(a, b, c, 2) == (a, 2 * b - 3 * a, 3 * a - 3 * b + 4 * c)


def test_postulation_bound_net_mesh():
    assert postulation_bound(2, 2) == 7


@settings(max_examples=40, deadline=None)
@given(
    st.integers(1, 4),
    st.tuples(st.integers(0, 4), st.integers(-10, 10), st.integers(-10, 10)),
    st.lists(st.integers(0, 40), max_size=4),
)
def test_hp_transform_agrees_with_fitting(n, q, prefix):
    """Fit the transferred table and compare with the closed-form transform."""
    a, b, c = q
    poly = lambda d: a * comb(d + 2, 2) + b * d + c  # noqa: E731
    d0 = len(prefix) - 1
    image = [prefix[d] if d <= d0 else poly(d) for d in range(d0 + 12)]
    hp = (Q(a, 2), Q(3 * a, 2) + b, a + c)
    d_max = postulation_bound(max(d0, 0), n) + 8
    values = tensor_table(image, n, d_max, hp)
    assert fit_hp(values) == hp_transform(*hp, n)


def test_load_net(tmp_path):
    spec = load_net(fixture_path("net"))
    assert spec.forms == MS_NET
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"forms": ["x", "y"]}))
    with pytest.raises(SchemaError):
        load_net(bad)
    bad.write_text("[")
    with pytest.raises(SchemaError):
        load_net(bad)
    with pytest.raises(FileNotFoundError):
        load_net(tmp_path / "missing.json")
