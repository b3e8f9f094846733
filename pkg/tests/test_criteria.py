from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dqsplit.arith import Poly, RatFunc
from dqsplit.criteria import (bilinear, derivation_matrix, finite_split_search, finite_split_witness_check,
                              nonsplit_algebraic_check, norm_constant_check, standard_analyze, witness_pq)
from dqsplit.quaternion import DerivationSpec, QuatAlgebra, apply_derivation
from dqsplit.tower import DiffBase
from conftest import T, nonzero_polys, ratfuncs, to_sympy

t = RatFunc.t()
ODD_ALPHAS = [t, t ** 3 - t, t + 2, t ** 3 + 1, 2 * t ** 5 - t]
NONSQUARE = [t, t * t + 1, t ** 3 - t, t + 2]
int_polys = st.lists(st.integers(-2, 2), max_size=3).map(lambda c: Poly([Fraction(x) for x in c]))


# -- finite splitting witnesses --------------------------------------------------------------


def test_witness_examples():
    p, q = witness_pq(t, 1, 1, 1)
    assert RatFunc(p) == 1 and RatFunc(q) == t - t * t
    assert finite_split_witness_check(t, 1 / (t - t * t), 1, 1, 1)
    assert not finite_split_witness_check(t, 1 / t, 1, 1, 1)
    assert finite_split_witness_check(t, 0, t + 1, 0, 2)
    assert not finite_split_witness_check(t, 1 / t, t + 1, 0, 2)
    with pytest.raises(ValueError):
        finite_split_witness_check(t, 1, 0, 0, 1)
    with pytest.raises(ValueError):
        finite_split_witness_check(t, 1, 1, 1, 0)


def test_witness_zero_q():
    with pytest.raises(ZeroDivisionError):
        finite_split_witness_check(t * t, 1, t, 1, 1)


def _theta_sympy(alpha, g0, g1, c=1):
    xi = sympy.sqrt(to_sympy(alpha))
    g0s, g1s = to_sympy(RatFunc(g0)), to_sympy(RatFunc(g1))
    return c * (g0s + xi * g1s) / (g0s - xi * g1s), xi


@settings(max_examples=60)
@given(st.sampled_from(NONSQUARE), int_polys, int_polys, st.integers(1, 4))
def test_witness_matches_direct_logderiv(alpha, g0, g1, n):
    assume(g0 or g1)
    p, q = witness_pq(alpha, g0, g1, n)
    assume(q)
    theta, xi = _theta_sympy(alpha, g0, g1)
    # a = theta'/(n xi theta), computed in sympy with xi = sqrt(alpha)
    expect = sympy.simplify(sympy.diff(theta, T) / (n * xi * theta))
    got = to_sympy(RatFunc(p, q))
    assert sympy.simplify(expect - got) == 0
    assert finite_split_witness_check(alpha, RatFunc(p, q), g0, g1, n)


def test_search_examples():
    res = finite_split_search(t, 1 / (t - t * t), degree_bound=1)
    assert res.status == "found"
    w = res.witness
    assert (w.g0, w.g1, w.n) == (Poly([1]), Poly([1]), 1)
    res = finite_split_search(t, 1 / t, degree_bound=2)
    assert res.status == "exhausted" and res.witness is None and res.candidates > 0
    res = finite_split_search(t, 0)
    assert res.status == "found" and not res.witness.g1


def test_search_budget():
    res = finite_split_search(t, 1 / t, degree_bound=2, budget=5)
    assert res.status == "exhausted" and res.candidates == 5


@settings(max_examples=40)
@given(st.sampled_from(NONSQUARE), int_polys, int_polys.filter(bool), st.integers(1, 3))
def test_search_finds_planted_witness(alpha, g0, g1, n):
    p, q = witness_pq(alpha, g0, g1, n)
    assume(q and p)
    a = RatFunc(p, q)
    res = finite_split_search(alpha, a, degree_bound=2, n_max=8, budget=200000)
    assert res.status == "found"
    w = res.witness
    assert finite_split_witness_check(alpha, a, w.g0, w.g1, w.n)


# -- norm criterion ----------------------------------------------------------------------


def test_norm_examples():
    # (1 + xi)/(1 - xi) = (1 + t + 2 xi)/(1 - t)
    assert norm_constant_check(t, (1 + t) / (1 - t), 2 / (1 - t)) == (True, True)
    assert norm_constant_check(t, t, 0) == (False, False)
    assert norm_constant_check(t, 0, 1) == (False, False)
    with pytest.raises(ValueError):
        norm_constant_check(t, 0, 0)


def _hilbert90(alpha, g0, g1, c):
    n = RatFunc(g0 * g0) - alpha * RatFunc(g1 * g1)
    return (RatFunc(g0 * g0) + alpha * RatFunc(g1 * g1)) * c / n, RatFunc(g0 * g1) * 2 * c / n


@settings(max_examples=50)
@given(st.sampled_from(NONSQUARE), int_polys, int_polys, st.integers(-3, 3).filter(bool))
def test_norm_equivalence_on_norm_one_quotients(alpha, g0, g1, c):
    assume(g0 or g1)
    h0, h1 = _hilbert90(alpha, g0, g1, c)
    assert norm_constant_check(alpha, h0, h1) == (True, True)


@settings(max_examples=50)
@given(st.sampled_from(NONSQUARE), ratfuncs(2), ratfuncs(2))
def test_norm_equivalence_generic(alpha, g0, g1):
    assume(g0 or g1)
    logd, const = norm_constant_check(alpha, g0, g1)
    assert logd == const
    norm = to_sympy(g0) ** 2 - to_sympy(alpha) * to_sympy(g1) ** 2
    assert const == (sympy.cancel(sympy.diff(norm, T)) == 0)


# -- non-splitting criterion ------------------------------------------------------------------


def test_nonsplit_examples():
    v = nonsplit_algebraic_check(t, 1 / t)
    assert (v.verdict, v.condition) == ("NotSplitByAlgebraic", "a") and v.tag
    v = nonsplit_algebraic_check(t ** 3 - t, 1 / (t * t * (t + 2)))
    assert (v.verdict, v.condition) == ("NotSplitByAlgebraic", "b")
    assert v.evidence["h"] == "t"
    v = nonsplit_algebraic_check(t, 1 / (t - t * t))
    assert v.verdict == "NoVerdict"
    with pytest.raises(ValueError):
        nonsplit_algebraic_check(t * t + 1, 1 / t)


def test_conjunction_mode():
    assert nonsplit_algebraic_check(t, 1 / t, conjunction=True).verdict == "NoVerdict"
    v = nonsplit_algebraic_check(t, (t + 1) / t ** 2, conjunction=True)
    assert (v.verdict, v.condition) == ("NotSplitByAlgebraic", "a")


@settings(max_examples=100)
@given(st.sampled_from(ODD_ALPHAS), int_polys, int_polys, st.integers(1, 4))
def test_witness_implies_no_verdict(alpha, g0, g1, n):
    assume(g0 or g1)
    p, q = witness_pq(alpha, g0, g1, n)
    assume(q)
    a = RatFunc(p, q)
    assert finite_split_witness_check(alpha, a, g0, g1, n)
    assert nonsplit_algebraic_check(alpha, a).verdict == "NoVerdict"
    assert nonsplit_algebraic_check(alpha, a, conjunction=True).verdict == "NoVerdict"


@settings(max_examples=100)
@given(st.sampled_from(ODD_ALPHAS), nonzero_polys(2), nonzero_polys(4))
def test_nonsplit_conditions_recomputed(alpha, f, g):
    a = RatFunc(f, g)
    v = nonsplit_algebraic_check(alpha, a)
    fs, gs = sympy.fraction(sympy.cancel(to_sympy(a)))
    gap = sympy.degree(gs, T) - sympy.degree(fs, T)
    cond_a = gap < sympy.Rational(alpha.num.degree + 3, 2)
    alpha_s = to_sympy(alpha)
    cond_b = any(sympy.degree(fac, T) > 0 and sympy.rem(gs, fac ** 2, T) == 0
                 for fac, _ in sympy.factor_list(alpha_s)[1])
    assert (v.verdict == "NotSplitByAlgebraic") == (cond_a or cond_b)
    if v.condition == "a":
        assert cond_a
    if v.condition == "b":
        assert cond_b and not cond_a


# -- standard derivations --------------------------------------------------------------------


def test_standard_example_not_standard():
    alg = QuatAlgebra(1, t)
    spec = DerivationSpec(-1 / (8 * t), 0, 0)
    rep = standard_analyze(alg, spec)
    assert rep.status == "NotStandard"
    for e in rep.eigen:
        x = e.elem(alg)
        d = apply_derivation(alg, spec, x)
        assert d == x * alg.elem(e.rate)
        sq = (x * x).c[0]
        # every eigen-element with a nonzero square is a multiple of u
        if sq:
            assert not e.coords[1] and not e.coords[2]


def test_standard_zero_derivation():
    alg = QuatAlgebra(1, t)
    rep = standard_analyze(alg, DerivationSpec(0, 0, 0))
    assert rep.status == "Standard"
    u, v = rep.pair
    assert (u, v) == (alg.u, alg.v)


def test_standard_inconclusive():
    alg = QuatAlgebra(1, t)
    rep = standard_analyze(alg, DerivationSpec(-1 / (8 * t), 0, 0), budget=1)
    assert rep.status == "Inconclusive" and any("exhausted" in r for r in rep.reasons)
    other = QuatAlgebra(t, t, DiffBase(t))
    assert standard_analyze(other, DerivationSpec(0, 0, 0)).status == "Inconclusive"


@settings(max_examples=30)
@given(st.sampled_from(NONSQUARE + [RatFunc(1)]), st.sampled_from(NONSQUARE + [RatFunc(1)]),
       st.sampled_from([0, 1]), st.builds(Fraction, st.integers(-3, 3), st.integers(1, 2)))
def test_standard_pairs_are_checked(alpha, beta, which, c):
    alg = QuatAlgebra(alpha, beta)
    spec = DerivationSpec(c / t, 0, 0) if which else DerivationSpec(0, c, 0)
    rep = standard_analyze(alg, spec)
    for e in rep.eigen:
        x = e.elem(alg)
        assert apply_derivation(alg, spec, x) == x * alg.elem(e.rate)
    if rep.status == "Standard":
        u, v = rep.pair
        for x in (u, v):
            sq = x * x
            assert sq.c[0] and not any(sq.c[1:])
            d = apply_derivation(alg, spec, x)
            ratio = d.c[1] / x.c[1] if x.c[1] else d.c[2] / x.c[2] if x.c[2] else d.c[3] / x.c[3]
            assert d == x * alg.elem(ratio)
        assert v * u == -(u * v)


def test_derivation_matrix_and_form():
    alg = QuatAlgebra(t, t + 1)
    spec = DerivationSpec(1 / t, 2, t)
    M = derivation_matrix(alg, spec)
    for j, e in enumerate((alg.u, alg.v, alg.uv)):
        d = apply_derivation(alg, spec, e)
        assert list(d.c[1:]) == [M[i][j] for i in range(3)]
    assert bilinear(alg, (1, 0, 0), (1, 0, 0)) == t
    assert bilinear(alg, (0, 0, 1), (0, 0, 1)) == -t * (t + 1)
