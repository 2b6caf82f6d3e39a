from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from mfquiver.algebra import (
    CyclotomicInt,
    NonHomogeneous,
    Poly,
    RatMatrix,
    WeightSystem,
    check_quasi_homogeneous,
    chi_by_division,
    cyclotomic,
    is_regular_weight_system,
    milnor_number,
    partial_derivative,
    poly_arith,
    rat_kernel_image,
    residue_div,
    weighted_degree,
)

x = Poly.var(0, 2)
y = Poly.var(1, 2)
X = Poly.x_pow(1)


def test_poly_arith_examples():
    one = Poly.const(1)
    assert poly_arith(X + one, X - one, "mul") == Poly.x_pow(2) - one
    assert poly_arith(Poly.x_pow(3), Poly.zero(), "add") == Poly.x_pow(3)
    assert poly_arith(Poly.x_pow(1, 3), Fraction(2, 3), "scale") == Poly.x_pow(1, 2)


def test_poly_arith_rejects_mismatched_variables():
    with pytest.raises(ValueError):
        poly_arith(X, x, "add")


def test_canonical_term_order_is_descending_lex():
    p = Poly({(0, 1): 1, (2, 0): 3, (1, 1): -1}, nvars=2)
    assert [e for e, _ in p.items()] == [(2, 0), (1, 1), (0, 1)]


def test_weighted_degree():
    assert weighted_degree(Poly.x_pow(3), WeightSystem((1,), 4)) == Fraction(3, 2)
    assert weighted_degree(x**2 + y, WeightSystem((1, 2), 4)) == 1
    with pytest.raises(NonHomogeneous):
        weighted_degree(X + Poly.x_pow(2), WeightSystem((1,), 4))
    with pytest.raises(ValueError):
        weighted_degree(Poly.zero(), WeightSystem((1,), 4))


def test_quasi_homogeneous():
    three = Poly.var(0, 3) ** 3 + Poly.var(1, 3) ** 3 + Poly.var(2, 3) ** 3
    assert check_quasi_homogeneous(Poly.x_pow(4), WeightSystem((1,), 4))
    assert check_quasi_homogeneous(three, WeightSystem((1, 1, 1), 3))
    assert not check_quasi_homogeneous(Poly.x_pow(3) + X, WeightSystem((1,), 3))


def test_weight_system_gcd_rule():
    with pytest.raises(ValueError):
        WeightSystem((2,), 4)
    WeightSystem((2, 3), 6)


def test_residue_div():
    assert residue_div(Poly.x_pow(2), 4) == Fraction(1, 4)
    assert residue_div(Poly.x_pow(3), 4) == 0
    assert residue_div(Poly.x_pow(1, 5) + Poly.x_pow(4), 3) == Fraction(5, 3)
    with pytest.raises(ValueError):
        residue_div(X, 1)


def test_partial_derivative():
    assert partial_derivative(Poly.x_pow(4), 0) == Poly.x_pow(3, 4)
    assert partial_derivative(x**2 * y, 1) == x**2
    assert partial_derivative(Poly.const(7), 0) == Poly.zero()
    with pytest.raises((IndexError, ValueError)):
        partial_derivative(X, 1)


def test_kernel_image_examples():
    ki = rat_kernel_image(RatMatrix.identity(3))
    assert ki.rank == 3 and ki.kernel == []
    ki = rat_kernel_image(RatMatrix.zeros(2, 5))
    assert ki.rank == 0 and len(ki.kernel) == 5
    ki = rat_kernel_image(RatMatrix([[1, 2], [2, 4]]))
    assert ki.rank == 1
    (v,) = ki.kernel
    assert v[0] / v[1] == -2


def test_regular_weight_systems():
    wit = is_regular_weight_system(1, 1, 1, 3)
    assert wit.regular and wit.chi == (X + Poly.const(1)) ** 3
    assert is_regular_weight_system(1, 1, 2, 4).regular
    assert milnor_number(1, 1, 1, 3) == 8
    assert milnor_number(1, 1, 1, 4) == 27
    assert milnor_number(1, 1, 2, 4) == 9
    assert is_regular_weight_system(1, 1, 2, 4).chi.evaluate((1,)) == 9


def test_weight_system_from_independent_division():
    # frozen from a sympy cancellation: the quotient is a polynomial, mu = 14
    wit = is_regular_weight_system(2, 3, 4, 10)
    assert wit.regular
    assert milnor_number(2, 3, 4, 10) == 14
    t = sympy.Symbol("T")
    chi = sympy.cancel((t**8 - 1) * (t**7 - 1) * (t**6 - 1) / ((t**2 - 1) * (t**3 - 1) * (t**4 - 1)))
    assert sympy.Poly(chi, t).all_coeffs()[::-1] == [int(c) for c in wit.chi.univariate_coeffs()]


def test_non_regular_weight_system():
    wit = is_regular_weight_system(2, 2, 3, 4)
    assert not wit.regular and wit.poles == (3,)
    with pytest.raises(ValueError):
        milnor_number(2, 2, 3, 4)
    assert chi_by_division(2, 2, 3, 4)[1]


def test_cyclotomic_polynomials_match_sympy():
    t = sympy.Symbol("T")
    for d in range(1, 25):
        ref = sympy.Poly(sympy.cyclotomic_poly(d, t), t).all_coeffs()[::-1]
        assert [int(c) for c in cyclotomic(d).univariate_coeffs()] == ref


@pytest.mark.parametrize("h", range(1, 13))
def test_root_of_unity_sum_vanishes(h):
    z = CyclotomicInt(tuple([1] * h))
    if h == 1:
        assert abs(z.to_complex() - 1) < 1e-12
    else:
        assert abs(z.to_complex()) < 1e-12


def test_cyclotomic_times_omega_is_cyclic():
    z = CyclotomicInt((1, 2, 3, 4))
    assert z.times_omega(1).coeffs == (4, 1, 2, 3)
    assert z.times_omega(4) == z


# -- properties ---------------------------------------------------------------

small = st.integers(-5, 5)
terms = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), small, max_size=5)
polys = terms.map(lambda t: Poly(t, nvars=2))


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p - p == Poly.zero(2)


def _homogeneous(deg_units: int, coeffs):
    # weights (1, 2), h = 4: x has 2 units of 1/4, y has 4; pick monomials with 2i + 4j = deg_units
    mons = [(i, j) for i in range(0, 9) for j in range(0, 5) if 2 * i + 4 * j == deg_units]
    return Poly({m: c for m, c in zip(mons, coeffs)}, nvars=2)


@given(st.integers(0, 6), st.integers(0, 6), st.lists(st.integers(1, 4), min_size=1, max_size=4),
       st.lists(st.integers(1, 4), min_size=1, max_size=4))
def test_weighted_degree_is_additive(a, b, ca, cb):
    w = WeightSystem((1, 2), 4)
    p, q = _homogeneous(2 * a, ca), _homogeneous(2 * b, cb)
    assert weighted_degree(p * q, w) == weighted_degree(p, w) + weighted_degree(q, w)


@given(st.integers(1, 9), st.integers(1, 9), st.integers(1, 9), st.integers(2, 12))
def test_quasi_homogeneous_iff_degree_two(a, b, n, h):
    try:
        w = WeightSystem((a, b), h)
    except ValueError:
        return
    f = x**n + y**n
    try:
        two = weighted_degree(f, w) == 2
    except NonHomogeneous:
        two = False
    assert check_quasi_homogeneous(f, w) == two


@settings(max_examples=60)
@given(st.integers(2, 14).flatmap(
    lambda h: st.tuples(st.integers(1, h - 1), st.integers(1, h - 1), st.integers(1, h - 1), st.just(h))))
def test_regularity_matches_witness(abch):
    a, b, c, h = abch
    wit = is_regular_weight_system(a, b, c, h)
    q, r = chi_by_division(a, b, c, h)
    assert wit.regular == (not r)
    if wit.regular:
        assert q == wit.chi
        assert wit.chi.evaluate((1,)) == milnor_number(a, b, c, h)


matrices = st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3),
                                min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_rank_nullity_and_kernel(rows):
    m = RatMatrix(rows)
    ki = rat_kernel_image(m)
    assert ki.rank + len(ki.kernel) == m.cols
    for v in ki.kernel:
        assert all(c == 0 for c in m @ v)
    assert ki.rank == sympy.Matrix(rows).rank()


@given(matrices)
def test_inverse_when_square(rows):
    m = RatMatrix(rows)
    if m.rows != m.cols or m.det() == 0:
        return
    assert m @ m.inverse() == RatMatrix.identity(m.rows)
