"""Curve families: weight vectors, restriction, experiments, bound checks."""

import random
from fractions import Fraction

import pytest

from swanlog.conductor import Character, sw_curve, sw_log
from swanlog.curves import (CurveMorphism, GoodVector, adjust_p_coprime,
                            apply_perm, b_good_vector, build_family_vector,
                            check_bounds, family_experiment,
                            pullback_multiplicity, restrict_character,
                            sample_curve, select_support)
from swanlog.fields import GF
from swanlog.rings import BoundaryLaurent, BoundaryRing, MPoly, substitute
from swanlog.witt import WittVec, witt_add

F2 = GF(2)
F3 = GF(3)
R3 = BoundaryRing(F3, 2)


def chi_of(ring, *coords):
    return Character.from_witt(WittVec(ring, list(coords)))


def test_select_support_minimal_cardinality():
    B = MPoly(F2, 2, {(1, 2): 1, (2, 1): 1})  # t2*t3^2 + t2^2*t3
    assert select_support(B) == (3, (0, 1))
    B = MPoly(F2, 2, {(1, 1): 1, (3, 0): 1})  # t2*t3 + t2^3: single-variable wins
    assert select_support(B) == (2, (0, 1))
    B = MPoly(F2, 3, {(1, 1, 0): 1, (0, 1, 1): 1})  # t2t3 + t3t4 -> {t2,t3}
    assert select_support(B) == (3, (0, 1, 2))
    with pytest.raises(ValueError):
        select_support(MPoly.zero(F2, 2))


def test_select_support_exponent_tiebreak():
    # same support size and set; smaller restricted exponent vector wins
    B = MPoly(F3, 2, {(2, 0): 1, (1, 0): 1})
    r, perm = select_support(B)
    assert (r, perm) == (2, (0, 1))
    gv = b_good_vector(apply_perm(B, perm), r, perm)
    assert gv.g == (1,)


def test_b_good_vector_examples():
    gv = b_good_vector(MPoly(F2, 2, {(1, 2): 1, (2, 1): 1}), 3)
    assert gv.g == (1, 2) and gv.m == (2, 1)
    assert gv.weighted_degree(gv.g) == 4
    assert gv.weighted_degree((2, 1)) == 5

    gv = b_good_vector(MPoly(F2, 1, {(1,): 1}), 2)
    assert gv.m == (1,)

    gv = b_good_vector(MPoly(F2, 2, {(1, 1): 1, (1, 3): 1}), 3)
    assert gv.g == (1, 1) and gv.m == (1, 1)
    assert gv.weighted_degree(gv.g) == 2 and gv.weighted_degree((1, 3)) == 4


def test_b_good_vector_requires_full_support():
    with pytest.raises(ValueError):
        b_good_vector(MPoly(F2, 2, {(0, 1): 1}), 3)


def test_good_vector_validation():
    with pytest.raises(ValueError):
        GoodVector(m=(2, 2), r=3, g=(1, 1), certified=True, perm=(0, 1))
    with pytest.raises(ValueError):
        GoodVector(m=(0,), r=2, g=(1,), certified=False, perm=(0,))
    with pytest.raises(ValueError):
        CurveMorphism(e=0, gv=GoodVector(m=(1,), r=2, g=None,
                                         certified=False, perm=(0,)))


def test_adjust_p_coprime_examples():
    B = MPoly(F2, 2, {(1, 2): 1, (2, 1): 1})
    gv = b_good_vector(B, 3)
    assert adjust_p_coprime(gv, B, 3) is gv  # Psi(g) = 4, coprime to 3
    gv2 = adjust_p_coprime(gv, B, 2)
    assert gv2.m == (3, 1)
    assert gv2.weighted_degree(gv2.g) == 5
    assert gv2.weighted_degree((2, 1)) == 7

    Bs = MPoly(F2, 1, {(1,): 1})
    gvs = b_good_vector(Bs, 2)
    assert adjust_p_coprime(gvs, Bs, 2) is gvs  # Psi = 1 already odd


def test_adjust_p_coprime_obstruction():
    # r = 2 with an even weighted degree cannot be fixed: m_r is pinned to 1
    B = MPoly(F2, 1, {(2,): 1})
    gv = b_good_vector(B, 2)
    assert gv.weighted_degree(gv.g) == 2
    with pytest.raises(ArithmeticError, match="p-power obstruction"):
        adjust_p_coprime(gv, B, 2)


def test_restriction_example():
    chi = chi_of(R3, R3.var(2) * R3.t1(-2))
    gv = b_good_vector(MPoly(F3, 1, {(1,): 1}), 2, (0,))
    cm = CurveMorphism.from_good_vector(3, gv)
    res = restrict_character(chi, cm)
    assert res.coords.coords[0].render() == "w^-5"
    assert sw_curve(res).sw == 5
    assert pullback_multiplicity(cm) == 3
    # the boundary coordinate itself restricts with valuation e
    assert substitute(R3.t1(1), cm).valuation() == cm.e


def test_restriction_is_additive():
    rng = random.Random(2)
    gv = b_good_vector(MPoly(F3, 1, {(1,): 1}), 2, (0,))
    cm = CurveMorphism.from_good_vector(2, gv)
    for _ in range(15):
        def rand_chi():
            coords = []
            for _ in range(2):
                f = R3.zero()
                for _ in range(rng.randint(0, 2)):
                    f = f + R3.var(2) ** rng.randint(0, 2) * R3.t1(rng.randint(-3, 1))
                coords.append(f)
            return WittVec(R3, coords)
        a, b = rand_chi(), rand_chi()
        ra = restrict_character(Character.from_witt(a), cm).coords
        rb = restrict_character(Character.from_witt(b), cm).coords
        rsum = restrict_character(Character.from_witt(witt_add(a, b)), cm).coords
        assert rsum == witt_add(ra, rb)


def test_family_nonfierce_example():
    chi = chi_of(R3, R3.var(2) * R3.t1(-2))
    res = family_experiment(chi, 5)
    assert [r.sw for r in res.rows] == [1, 1, 5, 7, 1]
    assert [r.case_tag for r in res.rows] == ["p-coprime", "p-divides",
                                              "p-coprime", "p-coprime",
                                              "p-divides"]
    assert res.summary["sw_log"] == 2
    assert res.summary["sup_ratio"] == [7, 4]
    assert not res.summary["fierce"]
    res30 = family_experiment(chi, 30)
    sup = Fraction(*res30.summary["sup_ratio"])
    assert Fraction(57, 29) <= sup <= 2
    # case (i): reduction strictly below 2e-1 exactly at the p-divides rows
    for row in res30.rows:
        if row.case_tag == "p-coprime":
            assert row.sw == 2 * row.e - 1
        else:
            assert row.sw < 2 * row.e - 1


def test_family_fierce_example():
    chi = chi_of(R3, R3.var(2) * R3.t1(-3))
    res = family_experiment(chi, 30)
    assert all(row.sw == 3 * row.e - 1 for row in res.rows)
    assert all(row.case_tag == "p-coprime" for row in res.rows)
    assert all(row.ratio == Fraction(3 * row.e - 1, row.e) for row in res.rows)
    assert res.summary["fierce"]
    assert res.summary["sw_log"] == 3


def test_family_tame_character():
    chi = chi_of(R3, R3.t1(2) + R3.one())
    res = family_experiment(chi, 4)
    assert [r.sw for r in res.rows] == [0, 0, 0, 0]
    assert res.summary["sw_log"] == 0
    assert res.summary["sup_ratio"] == [0, 1]


def test_family_skips_vanishing_restrictions():
    # (t2*t3 + t3*t1)/t1 over F_2: at e = 1 both monomials land on w and cancel
    R = BoundaryRing(F2, 3)
    f = (R.var(2) * R.var(3)) * R.t1(-1) + R.var(3)
    res = family_experiment(chi_of(R, f), 4)
    assert res.skipped == [1]
    assert [r.e for r in res.rows] == [2, 3, 4]


def test_family_constant_leading_coefficient():
    # B = 1: degenerate family with the default weights still runs
    chi = chi_of(R3, R3.t1(-1))
    res = family_experiment(chi, 4)
    # e = 3 reduces: w^-3 is equivalent to w^-1
    assert [r.sw for r in res.rows] == [1, 2, 1, 4]
    assert [r.case_tag for r in res.rows] == ["p-coprime", "p-coprime",
                                              "p-divides", "p-coprime"]
    assert res.summary["sw_log"] == 1
    assert res.summary["sup_ratio"] == [1, 1]


def test_family_respects_adjustment():
    # p = 2, N = 2, B = t2*t3^2 + t2^2*t3: weights must shift to (3, 1)
    R = BoundaryRing(F2, 3)
    f = (R.var(2) * R.var(3) ** 2 + R.var(2) ** 2 * R.var(3)) * R.t1(-2)
    chi = chi_of(R, f)
    gv, N, c = build_family_vector(chi, sw_log(chi))
    assert N == 2 and gv.m == (3, 1) and c == 5
    res = family_experiment(chi, 3)
    # v(Phi_e(f)) = c - N*e = 5 - 2e, odd for every e: no reduction on rows
    assert [r.sw for r in res.rows] == [max(0, 2 * e - 5) for e in (1, 2, 3)]


def test_certified_vector_keeps_valuation_independent_of_e():
    rng = random.Random(4)
    for _ in range(25):
        nvars = rng.randint(1, 3)
        terms = {}
        for _ in range(rng.randint(1, 4)):
            exps = tuple(rng.randint(0, 3) for _ in range(nvars))
            if any(exps):
                terms[exps] = 1
        if not terms:
            continue
        B = MPoly(F2, nvars, terms)
        r, perm = select_support(B)
        Bp = apply_perm(B, perm)
        gv = b_good_vector(Bp, r, perm)
        c = gv.weighted_degree(gv.g)
        vals = set()
        for e in (1, 2, 5):
            cm = CurveMorphism.from_good_vector(e, gv)
            img = substitute(BoundaryLaurent.from_mpoly(B, 0), cm)
            assert img
            vals.add(img.valuation())
        assert vals == {c}


def test_check_bounds_directions():
    chi2 = chi_of(R3, R3.var(2) * R3.t1(-2))
    v = check_bounds(chi2, 2, samples=40, seed=1)
    assert v["ok"] and v["upper_bound_holds"] and v["bounded_by_d_mult"]

    chi3 = chi_of(R3, R3.var(2) * R3.t1(-3))
    v = check_bounds(chi3, 2, samples=40, seed=1)
    assert v["ok"] and v["upper_bound_holds"]
    w = v["witness"]
    assert w is not None and w["sw"] > w["e"] * 2
    assert w == {"e": 2, "sw": 5, "bound": 4}

    tame = chi_of(R3, R3.t1(1))
    v = check_bounds(tame, 3, samples=30, seed=5)
    assert v["ok"] and not v["upper_bound_violations"]


def test_check_bounds_deterministic_in_seed():
    chi2 = chi_of(R3, R3.var(2) * R3.t1(-2))
    a = check_bounds(chi2, 1, samples=25, seed=42)
    b = check_bounds(chi2, 1, samples=25, seed=42)
    assert a == b


def test_sample_curve_shapes():
    rng = random.Random(0)
    for _ in range(30):
        cm = sample_curve(rng, 3)
        weights = cm.variable_weights(3)
        assert len(weights) == 3
        alive = [w for w in weights if w is not None]
        assert len(alive) == cm.gv.r - 1
        assert all(w >= 1 for w in alive)
        assert cm.e >= 1
