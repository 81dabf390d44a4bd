from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sasplines.errors import NotHomogeneous, PolySyntaxError
from sasplines.exactalg import (
    Form,
    RatMatrix,
    SparseMatrix,
    binom2,
    dehomogenize,
    divides,
    evaluate,
    form_divmod,
    form_mul,
    form_pow,
    gradient_at,
    homogenize,
    kernel_basis,
    kernel_dim,
    monomial_basis,
    parse_form,
    parse_rational,
    rank,
    rank_bareiss,
    rank_modular,
    rank_naive,
    rref,
)

X = parse_form("x")
Y = parse_form("y")
Z = parse_form("z")


# -------------------------------------------------------------- parsing


def test_parse_downward_parabola():
    f = parse_form("y*z + x^2 - z^2")
    assert f.degree == 2
    assert dict(f.coeffs) == {(2, 0, 0): 1, (0, 1, 1): 1, (0, 0, 2): -1}


@pytest.mark.parametrize("text", ["0", "x*(x+z) - x^2 - x*z"])
def test_parse_zero(text):
    f = parse_form(text)
    assert f.is_zero()
    assert f.degree == 0
    assert f == Form()


def test_parse_rational_literals_and_spacing():
    f = parse_form(" 3/11 * x ^ 2 -  y*z ")
    assert f.coefficient((2, 0, 0)) == Fraction(3, 11)
    assert f.coefficient((0, 1, 1)) == -1


def test_parse_errors():
    with pytest.raises(PolySyntaxError):
        parse_form("x +* y")
    with pytest.raises(PolySyntaxError):
        parse_form("x^y")
    with pytest.raises(PolySyntaxError):
        parse_form("w + x")
    with pytest.raises(PolySyntaxError):
        parse_form("x / y")
    with pytest.raises(NotHomogeneous):
        parse_form("x^2 + y")


def test_parse_rational_values():
    assert parse_rational("3/11") == Fraction(3, 11)
    assert parse_rational(4) == 4
    assert parse_rational("-2") == -2


def test_homogenize_examples():
    assert homogenize("y - x^2 + 1") == parse_form("y*z - x^2 + z^2")
    assert homogenize("y") == Y
    assert homogenize("2*x + y + 2") == parse_form("2*x + y + 2*z")


@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-5, 5), max_size=6))
def test_homogenize_roundtrip(poly):
    poly = {k: v for k, v in poly.items() if v}
    text = " + ".join(f"({c})*x^{a}*y^{b}" for (a, b), c in poly.items()) or "0"
    f = homogenize(text)
    assert dehomogenize(f) == {k: Fraction(v) for k, v in poly.items()}


def test_string_roundtrip():
    f = parse_form("-3/2*x^2*y + 7*y*z^2 - z^3")
    assert parse_form(f.to_string()) == f


# -------------------------------------------------------------- arithmetic


def test_products_and_powers():
    assert form_pow(Y, 2) == parse_form("y^2")
    assert form_mul(parse_form("x+z"), parse_form("x+2*z")) == parse_form("x^2 + 3*x*z + 2*z^2")
    assert form_pow(parse_form("y*z - x^2 + z^2"), 2) == parse_form(
        "x^4 - 2*x^2*y*z - 2*x^2*z^2 + y^2*z^2 + 2*y*z^3 + z^4"
    )
    assert form_pow(X, 0) == Form({(0, 0, 0): 1})


def _convolution(a: Form, b: Form) -> dict:
    out: dict = {}
    for ea, ca in a.coeffs.items():
        for eb, cb in b.coeffs.items():
            e = tuple(i + j for i, j in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def test_square_matches_convolution_oracle():
    f = parse_form("y*z - x^2 + z^2")
    assert dict(form_pow(f, 2).coeffs) == _convolution(f, f)


def test_evaluate_and_gradient():
    assert evaluate(parse_form("y*z + x^2 - z^2"), (-1, 0, 1)) == 0
    assert gradient_at(Y, (1, 0, 1)) == (0, 1, 0)
    assert gradient_at(parse_form("y*z - x^2 + z^2"), (-1, 0, 1)) == (2, 1, 2)


def test_monomial_basis_order():
    assert monomial_basis(0) == ((0, 0, 0),)
    assert monomial_basis(1) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert len(monomial_basis(4)) == 15
    assert monomial_basis(2) == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))


def test_monomial_basis_lengths():
    for d in range(21):
        assert len(monomial_basis(d)) == (d + 1) * (d + 2) // 2
        assert len(set(monomial_basis(d))) == len(monomial_basis(d))


def test_binom2_clamps():
    assert [binom2(k) for k in (-3, 0, 1, 2, 5)] == [0, 0, 0, 1, 10]


def test_proportional_and_monic():
    f = parse_form("2*x^2 - 4*y*z")
    assert f.is_proportional(parse_form("-x^2 + 2*y*z"))
    assert not f.is_proportional(parse_form("x^2 + 2*y*z"))
    assert f.monic().leading_coefficient() == 1


def test_division():
    g = parse_form("y*z - x^2 + z^2")
    q = parse_form("x + 3*y - z")
    f = g * q
    quo, rem = form_divmod(f, g)
    assert rem.is_zero() and quo == q
    assert divides(g, f)
    assert not divides(g, f + parse_form("x^3"))


small_forms = st.builds(
    lambda d, cs: Form({m: c for m, c in zip(monomial_basis(d), cs) if c}),
    st.integers(0, 3),
    st.lists(st.integers(-4, 4), min_size=10, max_size=10),
)


@given(small_forms, small_forms, small_forms)
def test_distributive_law(a, b, c):
    if a.is_zero() or b.is_zero() or a.degree == b.degree:
        assert (a + b) * c == a * c + b * c


@given(small_forms, small_forms)
def test_degree_additive(a, b):
    if not a.is_zero() and not b.is_zero():
        assert (a * b).degree == a.degree + b.degree


@given(small_forms, small_forms)
def test_division_identity(f, g):
    if g.is_zero():
        return
    h = f * g
    quo, rem = form_divmod(h, g)
    assert rem.is_zero()
    assert quo * g == h


# -------------------------------------------------------------- linear algebra


def test_rank_examples():
    I3 = RatMatrix.identity(3)
    assert rank(I3) == 3 and kernel_basis(I3) == []
    Z = RatMatrix.zeros(2, 5)
    assert rank(Z) == 0 and len(kernel_basis(Z)) == 5
    M = RatMatrix.from_rows([[1, 2], [2, 4]])
    assert rank(M) == 1
    assert kernel_basis(M) == [[Fraction(-2), Fraction(1)]]


def test_rref_is_reduced():
    M = RatMatrix.from_rows([[2, 4, 1], [1, 2, 3], [0, 0, 5]])
    pivots, rows = rref(M)
    assert pivots == [0, 2]
    assert rows[0] == {0: 1, 1: 2}
    assert rows[1] == {2: 1}


def test_sparse_and_dense_agree():
    S = SparseMatrix(3, [{0: 1, 2: -1}, {1: 3}, {0: 2, 2: -2}])
    assert S.cols == 3
    assert rank(S) == rank(S.to_dense()) == 2
    for v in kernel_basis(S):
        assert all(x == 0 for x in S.matvec(v))


matrices = st.integers(1, 7).flatmap(
    lambda r: st.integers(1, 7).flatmap(
        lambda c: st.lists(
            st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


@given(matrices)
def test_rank_nullity_and_kernel(rows):
    M = RatMatrix.from_rows(rows)
    k = kernel_basis(M)
    assert rank(M) + len(k) == M.cols
    assert kernel_dim(M) == len(k)
    assert rank(M) <= min(M.rows, M.cols)
    for v in k:
        assert all(x == 0 for x in M.matvec(v))


@settings(max_examples=60)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=10, max_size=10), min_size=10, max_size=10))
def test_fraction_free_matches_naive_10x10(rows):
    M = RatMatrix.from_rows(rows)
    r = rank_naive(M)
    assert rank(M) == r
    assert rank_bareiss(M) == r
    assert rank_modular(M) == r


@settings(max_examples=30)
@given(
    st.integers(1, 4),
    st.lists(st.lists(st.integers(-3, 3), min_size=6, max_size=6), min_size=3, max_size=3),
)
def test_low_rank_products(k, seed):
    # rank of A * B with A 8xk, B kx6 never exceeds k
    A = [[(i * 7 + j * 3) % 5 - 2 for j in range(k)] for i in range(8)]
    B = [seed[j % 3] for j in range(k)]
    P = [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(6)] for i in range(8)]
    M = RatMatrix.from_rows(P)
    assert rank(M) <= k
    assert rank(M) == rank_naive(M)
