import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mfquiver.algebra import Poly, WeightSystem
from mfquiver.decompose import decompose, is_isomorphic, labels_of
from mfquiver.homalg import Morphism, identity, m1, slot_basis
from mfquiver.mfcore import (
    GradedMF,
    cone,
    direct_sum,
    indecomposable,
    knorrer_double,
    pmat_is_zero,
    serre,
    shift,
    translate,
    trivial_pair,
    verify_mf,
    x_power_f,
    zero_object,
)

from conftest import hs, labels, objects

X = Poly.x_pow


def mf(even, odd, q_pm, q_mp, h=4):
    return GradedMF.build(even, odd, WeightSystem.univariate(h), x_power_f(h), q_pm, q_mp)


def test_verify_examples():
    assert verify_mf(indecomposable(2, 0, 5)).passed
    assert verify_mf(mf([0], [2], ((X(2),),), ((X(2),),))).passed
    bad = verify_mf(mf([0], [1], ((X(1),),), ((X(1),),)))
    assert not bad.passed and not bad.maurer_cartan


def test_verify_flags_inhomogeneous_entry():
    rep = verify_mf(mf([0], [2], ((X(2),),), ((X(2),),), h=4).__class__.build(
        [0], [1], WeightSystem.univariate(4), x_power_f(4), ((X(2),),), ((X(2),),)))
    assert not rep.passed and rep.homogeneity_failures


def test_indecomposable_examples():
    m = indecomposable(1, 0, 4)
    assert (m.q_pm, m.q_mp, m.even, m.odd) == (((X(1),),), ((X(3),),), (0,), (1,))
    m = indecomposable(3, 2, 4)
    assert (m.q_pm, m.q_mp, m.even, m.odd) == (((X(3),),), ((X(1),),), (2,), (5,))
    with pytest.raises(ValueError):
        indecomposable(0, 0, 4)
    with pytest.raises(ValueError):
        indecomposable(4, 0, 4)


def test_trivial_pairs():
    u = trivial_pair("unit", 0, 4)
    assert (u.even, u.odd, u.q_pm) == ((0,), (0,), ((X(0),),))
    fu = trivial_pair("f-unit", 0, 4)
    assert (fu.even, fu.odd, fu.q_pm) == ((0,), (4,), ((X(4),),))
    assert verify_mf(u).passed and verify_mf(fu).passed
    assert decompose(u).labels == [] and decompose(fu).stripped_trivial == 1


def test_translate_and_shift_on_labels():
    h = 4
    assert translate(indecomposable(2, 1, h), 1) == indecomposable(2, 2, h)
    for l in range(1, h):
        assert shift(indecomposable(l, 1, h), 1) == indecomposable(h - l, l + 1, h)


def test_serre_examples():
    assert serre(indecomposable(1, 0, 4)) == indecomposable(3, 0, 4)
    m = indecomposable(1, 0, 4)
    s4 = serre(serre(serre(serre(m))))
    assert is_isomorphic(s4, shift(m, 2))
    m2 = indecomposable(1, 0, 2)
    assert is_isomorphic(serre(serre(m2)), m2)


def test_direct_sum_examples():
    z = direct_sum([], WeightSystem.univariate(4), x_power_f(4))
    assert z.is_zero_object() and verify_mf(z).passed
    s = direct_sum([indecomposable(1, 0, 4), indecomposable(2, 0, 4)])
    assert s.q_pm == ((X(1), Poly.zero()), (Poly.zero(), X(2)))
    with pytest.raises(ValueError):
        direct_sum([indecomposable(1, 0, 4), indecomposable(1, 0, 5)])


def test_zero_object_everywhere():
    z = zero_object(WeightSystem.univariate(4), x_power_f(4))
    assert verify_mf(shift(z, 1)).passed
    assert decompose(z).labels == []
    assert slot_basis(z, indecomposable(1, 0, 4), 0).slots == ()


def test_cone_examples():
    for l, i in [(1, 0), (2, 3), (3, -1)]:
        c = cone(identity(indecomposable(l, i, 4)))
        assert verify_mf(c).passed
        d = decompose(c)
        assert d.labels == [] and d.stripped_trivial == 2
    a, b = indecomposable(1, 0, 4), indecomposable(2, 1, 4)
    assert is_isomorphic(cone(Morphism.zero(a, b, 0)), direct_sum([shift(a, 1), b]))
    # the closed generator M_{2,0} -> M_{2,1}
    src, tgt = indecomposable(2, 0, 4), indecomposable(2, 1, 4)
    gen = Morphism.from_slots(src, tgt, 0, {("++", 0, 0): 1, ("--", 0, 0): 1})
    assert m1(gen).is_zero() and verify_mf(cone(gen)).passed


def test_cone_rejects_bad_input():
    a = indecomposable(1, 0, 4)
    with pytest.raises(ValueError):
        cone(Morphism.zero(a, a, 1))


def test_knorrer_examples():
    d = knorrer_double(indecomposable(2, 0, 4), 1, 3)
    assert verify_mf(d).passed
    xyz = Poly.var(0, 3) ** 4 + Poly.var(1, 3) * Poly.var(2, 3)
    assert d.f == xyz
    assert verify_mf(knorrer_double(trivial_pair("unit", 1, 5), 2, 3)).passed
    with pytest.raises(ValueError):
        knorrer_double(indecomposable(1, 0, 4), 1, 1)


def test_knorrer_of_sum_is_sum_of_doubles():
    a, b = indecomposable(1, 0, 5), indecomposable(3, 2, 5)
    both = knorrer_double(direct_sum([a, b]), 2, 3)
    sep = direct_sum([knorrer_double(a, 2, 3), knorrer_double(b, 2, 3)])
    # the double of a sum lists (old a, old b, new a, new b); the sum of doubles interleaves
    pe = po = [0, 2, 1, 3]
    assert tuple(both.even[j] for j in pe) == sep.even
    assert tuple(both.odd[j] for j in po) == sep.odd
    assert tuple(tuple(both.q_pm[r][c] for c in pe) for r in po) == sep.q_pm
    assert tuple(tuple(both.q_mp[r][c] for c in po) for r in pe) == sep.q_mp


# -- properties ---------------------------------------------------------------

@given(objects(), st.integers(-6, 6))
def test_functor_images_verify(m, t):
    for img in (translate(m, t), shift(m, t % 5 - 2), serre(m)):
        assert verify_mf(img).passed


@given(objects(), st.integers(-5, 5), st.integers(-5, 5))
def test_functor_relations(m, a, b):
    h = m.h
    assert translate(translate(m, a), b) == translate(m, a + b)
    assert translate(m, 0) == m
    assert shift(m, 2) == translate(m, h)
    assert shift(shift(m, 1), 1) == translate(m, h)
    assert shift(shift(m, a), -a) == m


@given(hs.flatmap(lambda h: st.tuples(st.just(h), labels(h))))
def test_serre_power(hl):
    h, (l, i) = hl
    m = indecomposable(l, i, h)
    p = m
    for _ in range(h):
        p = serre(p)
    assert p == shift(m, h - 2)
    assert labels_of(serre(m)) == [(h - l, l + i - 1)]


@given(hs.flatmap(lambda h: st.tuples(labels(h), labels(h), st.just(h))), st.randoms(use_true_random=False))
def test_cone_maurer_cartan_iff_closed(data, rnd):
    (l1, i1), (l2, i2), h = data
    a, b = indecomposable(l1, i1, h), indecomposable(l2, i2, h)
    n = len(slot_basis(a, b, 0))
    if not n:
        return
    t = Morphism(a, b, 0, tuple(rnd.randint(-2, 2) for _ in range(n)))
    closed = m1(t).is_zero()
    if closed:
        assert verify_mf(cone(t)).passed
    else:
        with pytest.raises(ValueError):
            cone(t)
        assert not verify_mf(cone(t, check=False)).passed


@given(objects(max_summands=3))
def test_knorrer_doubles_verify(m):
    h = m.h
    for wt_y in range(1, h):
        try:
            WeightSystem((1, wt_y, h - wt_y), h)
        except ValueError:
            continue
        assert verify_mf(knorrer_double(m, wt_y, h - wt_y)).passed


def test_maurer_cartan_residual_reports_blocks():
    rep = verify_mf(mf([0], [1], ((X(1),),), ((X(1),),)))
    assert not pmat_is_zero(rep.residual_mp_pm) and not pmat_is_zero(rep.residual_pm_mp)
    assert rep.to_json()["residual_mp_pm"] == [[(X(4, -1) + X(2)).to_json()]]
