"""Witt-vector algebra: ghost oracle, universal polynomials, operator laws."""

import random

import pytest

from swanlog.fields import GF
from swanlog.rings import SeriesRing, SeriesW
from swanlog.witt import (IntegerRing, WittVec, apply_F_minus_1,
                          derive_witt_polys, frobenius, ghost, verschiebung,
                          witt_add, witt_mul_p, witt_neg, witt_sub)


def test_sum_polynomials_match_known_forms():
    w2 = derive_witt_polys(2, 2)
    assert w2.render_sum(0) == "a0 + b0"
    assert w2.render_sum(1) == "a1 + b1 + a0*b0"
    assert w2.render_neg(1) == "a1 + a0^2"
    w3 = derive_witt_polys(3, 2)
    assert w3.render_sum(1) == "a1 + b1 + 2*a0^2*b0 + 2*a0*b0^2"


def test_negation_is_sign_flip_for_odd_p():
    assert not derive_witt_polys(2, 3).neg_is_flip
    for p in (3, 5, 7):
        assert derive_witt_polys(p, 2).neg_is_flip


def test_derivation_ceilings():
    with pytest.raises(ValueError):
        derive_witt_polys(11, 1)
    with pytest.raises(ValueError):
        derive_witt_polys(2, 5)
    with pytest.raises(ValueError):
        derive_witt_polys(7, 4)


def test_sum_polynomials_are_weight_homogeneous():
    # with a_j, b_j of weight p^j, every monomial of S_i has weight p^i
    for p, n in [(2, 3), (3, 3), (5, 2)]:
        polys = derive_witt_polys(p, n)
        for i, s in enumerate(polys.sum_polys):
            for exps in s.terms:
                weight = sum(e * p ** (j % n) for j, e in enumerate(exps))
                assert weight == p ** i


@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3),
                                 (5, 1), (5, 2), (5, 3)])
def test_ghost_homomorphism(p, n):
    rng = random.Random(1000 * p + n)
    Z = IntegerRing(p)
    for _ in range(30):
        a = WittVec(Z, [rng.randint(-30, 30) for _ in range(n)])
        b = WittVec(Z, [rng.randint(-30, 30) for _ in range(n)])
        s = witt_add(a, b)
        assert ghost(s) == tuple(x + y for x, y in zip(ghost(a), ghost(b)))
        m = witt_neg(a)
        assert ghost(m) == tuple(-x for x in ghost(a))


def rand_series(rng, field, terms=3, lo=-4, hi=4):
    out = SeriesW.zero(field)
    for _ in range(rng.randint(0, terms)):
        out = out + SeriesW.monomial(field, rng.randint(lo, hi),
                                     field.elem(rng.randint(1, field.q - 1)))
    return out


def rand_witt(rng, ring, length):
    return WittVec(ring, [rand_series(rng, ring.field) for _ in range(length)])


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (2, 3), (3, 3), (5, 2)])
def test_group_laws_in_characteristic_p(p, n):
    rng = random.Random(7 * p + n)
    R = SeriesRing(GF(p))
    zero = WittVec.zero(R, n)
    for _ in range(20):
        a, b, c = (rand_witt(rng, R, n) for _ in range(3))
        assert witt_add(a, b) == witt_add(b, a)
        assert witt_add(witt_add(a, b), c) == witt_add(a, witt_add(b, c))
        assert witt_add(a, witt_neg(a)) == zero
        assert witt_sub(a, b) == witt_add(a, witt_neg(b))
        assert witt_add(a, zero) == a


@pytest.mark.parametrize("p", [2, 3, 5])
def test_frobenius_verschiebung_identities(p):
    rng = random.Random(p)
    R = SeriesRing(GF(p))
    for n in (1, 2):
        for _ in range(15):
            a = rand_witt(rng, R, n)
            fv = frobenius(verschiebung(a))
            vf = verschiebung(frobenius(a))
            assert fv == vf
            padded = WittVec(R, a.coords + (R.zero(),))
            assert fv == witt_mul_p(padded)
            # (F-1) commutes with V
            assert apply_F_minus_1(verschiebung(a)) == verschiebung(apply_F_minus_1(a))


def test_frobenius_is_additive():
    rng = random.Random(11)
    R = SeriesRing(GF(3))
    for _ in range(15):
        a, b = rand_witt(rng, R, 3), rand_witt(rng, R, 3)
        assert frobenius(witt_add(a, b)) == witt_add(frobenius(a), frobenius(b))


def test_ring_and_length_guards():
    Z = IntegerRing(2)
    R = SeriesRing(GF(2))
    with pytest.raises(ValueError):
        witt_add(WittVec(Z, [1]), WittVec(Z, [1, 0]))
    with pytest.raises(ValueError):
        witt_add(WittVec(Z, [1]), WittVec(R, [R.one()]))
    with pytest.raises(ValueError):
        frobenius(WittVec(Z, [1]))
    with pytest.raises(ValueError):
        ghost(WittVec(R, [R.one()]))


def test_verschiebung_shifts():
    R = SeriesRing(GF(3))
    a = WittVec(R, [R.w(-1), R.w(2)])
    v = verschiebung(a)
    assert v.length == 3
    assert not v.coords[0]
    assert v.coords[1:] == a.coords
