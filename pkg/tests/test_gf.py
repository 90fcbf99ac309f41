import numpy as np
import pytest
from hypothesis import given, strategies as st

from extclifford.gf import (
    FieldError,
    dual_basis,
    discrete_log,
    field_for_dimension,
    field_trace,
    legendre,
    load_conway_table,
    make_field,
    quadratic_character,
    set_conway_override,
    sqrt_in_ext,
)

DIMS = [3, 5, 7, 9, 25, 27, 49, 81, 121, 125]


@pytest.mark.parametrize("d", DIMS)
def test_field_axioms(d):
    f = field_for_dimension(d)
    xs = np.arange(1, d)
    assert len(set(f.log(xs).tolist())) == d - 1
    assert sorted(f.exp(np.arange(d - 1)).tolist()) == list(range(1, d))
    assert np.all(f.pow(xs, d - 1) == 1)
    assert np.all(f.mul(xs, f.inv(xs)) == 1)
    assert np.all(f.frobenius(xs, f.n) == xs)
    # theta has order exactly d - 1
    assert all(f.pow(f.theta, k) != 1 for k in range(1, d - 1))


def test_small_fields():
    f3 = make_field(3)
    assert f3.theta == 2
    f9 = make_field(3, 2, modulus=[2, 2, 1])
    g = f9.theta
    assert f9.pow(g, 4) == 2 and f9.pow(g, 8) == 1
    with pytest.raises(FieldError):
        make_field(2)
    with pytest.raises(FieldError):
        make_field(3, 2, modulus=[1, 0, 1])     # x^2 + 1 is reducible over Z_3
    with pytest.raises(FieldError):
        field_for_dimension(15)


def test_first_irreducible_not_primitive_is_rejected():
    # x^2 + 1 is irreducible over Z_7 but x has order 4, not 48
    with pytest.raises(FieldError, match="primitive"):
        make_field(7, 2, modulus=[1, 0, 1])


def test_trace():
    f5 = make_field(5)
    assert field_trace(f5(3)) == 3
    f9 = make_field(3, 2)
    x = f9.add(f9.theta, 1)
    assert f9.trace(x) == f9.add(x, f9.pow(x, 3))
    # x + 1 = x^2 in this field, and tr(x^2) = 0
    assert f9.mul(f9.theta, f9.theta) == x
    assert f9.trace(x) == 0
    assert f9.trace(0) == 0


@pytest.mark.parametrize("d", [9, 25, 27])
def test_trace_is_onto_and_balanced(d):
    f = field_for_dimension(d)
    counts = np.bincount(f.trace(np.arange(d)), minlength=f.p)
    assert np.all(counts == d // f.p)


def test_discrete_log():
    f5 = make_field(5)
    assert f5.theta == 2
    assert discrete_log(f5(4)) == 2
    assert discrete_log(f5(1)) == 0
    with pytest.raises(FieldError):
        discrete_log(f5(0))


def test_quadratic_character():
    f5 = make_field(5)
    assert quadratic_character(f5(2)) == -1
    assert quadratic_character(f5(4)) == 1
    assert quadratic_character(f5(0)) == 0
    f9 = make_field(3, 2)
    assert quadratic_character(f9(2)) == 1


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_character_matches_legendre(p):
    f = make_field(p)
    assert all(f.chi(z) == legendre(z, p) for z in range(p))


def test_sqrt_in_ext():
    f5 = make_field(5)
    ext = f5.extension
    E = ext.field
    assert sqrt_in_ext(f5(4)).code == ext.embed(2)
    y = sqrt_in_ext(f5(2)).code
    assert E.mul(y, y) == ext.embed(2)
    assert not ext.in_base(y)
    assert E.pow(y, 5) == E.neg(y)
    assert sqrt_in_ext(f5(1)).code == 1


@pytest.mark.parametrize("d", [3, 5, 7, 9, 25])
def test_extension_conventions(d):
    f = field_for_dimension(d)
    ext = f.extension
    E = ext.field
    assert ext.embed(f.theta) == E.pow(ext.theta_bar, d + 1)
    assert E.pow(ext.eta, d + 1) == E.neg(1)
    assert E.pow(ext.eta, d) == E.neg(E.inv(ext.eta))
    image = {ext.embed(a) for a in range(d)}
    fixed = {y for y in range(E.d) if E.frobenius(y, f.n) == y}
    assert image == fixed
    # embed is a ring homomorphism
    xs = np.arange(d)
    X, Y = np.meshgrid(xs, xs)
    assert np.array_equal(ext.embed(f.mul(X, Y)), E.mul(ext.embed(X), ext.embed(Y)))
    assert np.array_equal(ext.embed(f.add(X, Y)), E.add(ext.embed(X), ext.embed(Y)))


def test_dual_basis():
    f9 = make_field(3, 2)
    basis = [f9(1), f9(f9.theta)]
    dual = dual_basis(basis)
    for r, e in enumerate(basis):
        for s, ed in enumerate(dual):
            assert field_trace(e * ed) == (r == s)
    f7 = make_field(7)
    (e,) = dual_basis([f7(3)])
    assert f7.mul(3, e.code) == 1
    with pytest.raises(FieldError):
        dual_basis([f9(1), f9(1)])


def test_elem_wrapper():
    f9 = make_field(3, 2)
    g = f9(f9.theta)
    assert g * g == g + 1
    assert (g ** 8).code == 1
    assert f9(-1).code == f9.neg(1)
    assert int(f9(3)) == 3
    with pytest.raises(FieldError):
        f9(9)


def test_conway_override(tmp_path):
    path = tmp_path / "table.txt"
    path.write_text("# custom\n7 2 5,4,1\n")
    assert load_conway_table(path)[(7, 2)] == (5, 4, 1)
    set_conway_override(str(path))
    try:
        f = make_field(7, 2)
        assert f.modulus == (5, 4, 1)
    finally:
        set_conway_override(None)
    assert make_field(7, 2).modulus == (3, 6, 1)


@given(st.sampled_from([5, 9, 25, 27]), st.data())
def test_distributive(d, data):
    f = field_for_dimension(d)
    a, b, c = (data.draw(st.integers(0, d - 1)) for _ in range(3))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.trace(f.add(a, b)) == (f.trace(a) + f.trace(b)) % f.p
