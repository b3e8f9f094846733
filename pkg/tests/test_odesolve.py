from fractions import Fraction
from math import lcm

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dqsplit.arith import RatFunc
from dqsplit.odesolve import (UnsupportedDerivation, logderiv_multiple, riccati_pattern_solutions,
                              riccati_rational_solutions, solve_linear_radical, zeropole_oracle)
from dqsplit.quaternion import DerivationSpec, QuatAlgebra, RiccatiEq, build_riccati
from dqsplit.tower import DiffBase, Radical, Tower, render_elem
from conftest import polys, small_fracs

t = RatFunc.t()
fracs = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))


def eq_of(a0, a1, a2):
    return RiccatiEq(RatFunc(a0) if not isinstance(a0, RatFunc) else a0,
                     RatFunc(a1) if not isinstance(a1, RatFunc) else a1,
                     RatFunc(a2) if not isinstance(a2, RatFunc) else a2)


def satisfies(coeffs, x):
    a0, a1, a2 = coeffs
    return x.diff() == a0 + a1 * x + a2 * x * x


# -- linear equations ---------------------------------------------------------------------


def test_logderiv_examples():
    assert logderiv_multiple(1 / (4 * t)) == (4, t)
    assert logderiv_multiple(2 / t) == (1, t * t)
    assert logderiv_multiple(RatFunc(1)) is None
    assert logderiv_multiple(1 / t ** 2) is None


def test_linear_radical_examples():
    s = solve_linear_radical(-1 / (8 * t))
    assert (s.n, s.f) == (8, 1 / t)
    s = solve_linear_radical(1 / (2 * t))
    assert (s.n, s.f) == (2, t)
    assert solve_linear_radical(t) is None
    assert solve_linear_radical(-1 / (8 * t), n_max=7) is None


def test_nonstandard_base_rejected():
    with pytest.raises(UnsupportedDerivation):
        logderiv_multiple(1 / t, DiffBase(t * t))
    with pytest.raises(UnsupportedDerivation):
        riccati_rational_solutions(eq_of(0, 0, 1), base=DiffBase(t))


simple_poles = st.lists(st.tuples(st.integers(-4, 4), fracs), min_size=1, max_size=3,
                        unique_by=lambda p: p[0])


@settings(max_examples=100)
@given(simple_poles, st.sampled_from([0, 1]))
def test_logderiv_minimal(poles, quadratic):
    a = RatFunc(0)
    residues = []
    for c, r in poles:
        a = a + RatFunc(r) / (t - c)
        residues.append(r)
    if quadratic:
        a = a + RatFunc(Fraction(1, 3)) * 2 * t / (t * t + 1)
        residues.append(Fraction(1, 3))
    got = logderiv_multiple(a)
    if all(r == 0 for r in residues):
        assert got == (1, RatFunc(1))
        return
    n, f = got
    assert n * a == f.diff() / f
    assert n == lcm(*(r.denominator for r in residues))
    for m in range(1, n):
        assert any((m * r).denominator != 1 for r in residues)
    sol = solve_linear_radical(a, n_max=64)
    tower = Tower().adjoin(Radical(sol.n, sol.f, "theta")) if sol.n > 1 else Tower()
    theta = tower.gen("theta") if sol.n > 1 else tower.elem(sol.f)
    assert tower.derive(theta) == tower.elem(a) * theta


@settings(max_examples=50)
@given(simple_poles, polys(2).filter(bool))
def test_logderiv_polynomial_part_blocks(poles, p):
    a = RatFunc(p)
    for c, r in poles:
        a = a + RatFunc(r) / (t - c)
    assert logderiv_multiple(a) is None


# -- Riccati: examples ----------------------------------------------------------------------


def test_riccati_examples():
    s = riccati_rational_solutions(eq_of(0, 0, 1 / t))
    assert s.isolated == [RatFunc(0)] and s.family is None and s.status == "complete"
    s = riccati_rational_solutions(eq_of(-t, 0, 1))
    assert s.is_empty() and s.status == "complete"
    s = riccati_rational_solutions(eq_of(0, 0, -1))
    assert s.isolated == [RatFunc(0)]
    assert list(s.family.representatives) == [1 / t, 1 / (t + 1)]


def test_riccati_linear_cases():
    s = riccati_rational_solutions(eq_of(0, 1 / (4 * t), 0))
    assert s.radical == (4, t) and s.isolated == [RatFunc(0)]
    s = riccati_rational_solutions(eq_of(0, 2 / t, 0))
    assert s.family is not None
    assert all(satisfies((RatFunc(0), 2 / t, RatFunc(0)), x) for x in s.family.representatives)
    # inhomogeneous: X' = 1 has X = t + c
    s = riccati_rational_solutions(eq_of(1, 0, 0))
    assert s.family is not None and all(x.diff() == 1 for x in s.family.representatives)


def test_solution_order_is_by_rendering():
    s = riccati_rational_solutions(eq_of(0, 0, -1))
    rendered = s.rendered()
    assert rendered["isolated"] == ["0"]
    assert rendered["family"]["representatives"] == ["1/t", "1/(t + 1)"]


# -- Riccati: planted solutions --------------------------------------------------------------


def rational_pole_funcs():
    """Rational functions whose poles are all rational."""
    def build(num, roots, scale):
        den = RatFunc(1)
        for r in roots:
            den = den * (t - r)
        return RatFunc(num) * scale / den
    return st.builds(build, polys(2), st.lists(st.integers(-3, 3), max_size=2), small_fracs.filter(bool))


def _in_solution_set(sol, x):
    if x in sol.isolated:
        return True
    if sol.family is None:
        return False
    m0, m1, m2 = (sol.family.member(c) for c in (0, 1, 2))
    if x in (m0, m1, m2):
        return True
    # the cross-ratio (x, m0; m1, m2) is preserved by the Moebius parametrisation,
    # so for x = member(c) it equals 2(c - 1)/(c - 2)
    kappa = ((x - m1) * (m0 - m2)) / ((x - m2) * (m0 - m1))
    if not kappa.is_constant():
        return False
    k = kappa.constant_value()
    if k == 2:
        return False  # c at infinity, which must have been listed as isolated
    return sol.family.member((2 * k - 2) / (k - 2)) == x


@settings(max_examples=60)
@given(rational_pole_funcs(), rational_pole_funcs(), rational_pole_funcs().filter(bool))
def test_planted_solution_found(x0, a1, a2):
    a0 = x0.diff() - a1 * x0 - a2 * x0 * x0
    coeffs = (a0, a1, a2)
    sol = riccati_rational_solutions(RiccatiEq(*coeffs), budget=20000)
    for x in sol.all_solutions():
        assert satisfies(coeffs, x)
    if sol.status == "complete":
        assert _in_solution_set(sol, x0)


@settings(max_examples=40)
@given(st.lists(polys(2), min_size=4, max_size=4), st.integers(-2, 2))
def test_planted_family(abcd, shift):
    A, B, C, D = (RatFunc(p) for p in abcd)
    W = A * D - B * C
    assume(W)
    # Y' = M Y with fundamental matrix [[A, B], [C, D]]; x = y1/y2 solves
    # x' = m12 + (m11 - m22) x - m21 x^2
    Ai, Bi, Ci, Di = D / W, -B / W, -C / W, A / W
    m11 = A.diff() * Ai + B.diff() * Ci
    m12 = A.diff() * Bi + B.diff() * Di
    m21 = C.diff() * Ai + D.diff() * Ci
    m22 = C.diff() * Bi + D.diff() * Di
    coeffs = (m12, m11 - m22, -m21)
    assume(coeffs[2])
    sol = riccati_rational_solutions(RiccatiEq(*coeffs), budget=20000)
    for x in sol.all_solutions():
        assert satisfies(coeffs, x)
    if sol.family is not None:
        for c in range(-3, 4):
            m = sol.family.member(c)
            assert satisfies(coeffs, m)
    if sol.status == "complete":
        for x in (A / C if C else None, B / D if D else None, (A + shift * B) / (C + shift * D)
                  if C + shift * D else None):
            if x is not None:
                assert _in_solution_set(sol, x)


def test_budget_exhaustion_reported():
    coeffs = (RatFunc(0), RatFunc(0), RatFunc(-1))
    short = riccati_rational_solutions(RiccatiEq(*coeffs), budget=1)
    full = riccati_rational_solutions(RiccatiEq(*coeffs), budget=2)
    assert short.status == "exhausted" and "candidate budget exhausted" in short.notes
    assert full.status == "complete" and full.family is not None
    for x in short.all_solutions():
        assert satisfies(coeffs, x)
        assert _in_solution_set(full, x)


def test_irrational_poles_best_effort():
    coeffs = (RatFunc(0), RatFunc(0), 1 / (t * t + 1))
    sol = riccati_rational_solutions(RiccatiEq(*coeffs))
    assert RatFunc(0) in sol.isolated
    for x in sol.all_solutions():
        assert satisfies(coeffs, x)


# -- pattern solutions -------------------------------------------------------------------------


def test_pattern_examples():
    alg = QuatAlgebra(t, t)
    spec = DerivationSpec(0, 1, 0)
    tower, xi = alg.resolve_xi(Tower())
    hit = riccati_pattern_solutions(build_riccati(alg, spec, xi), alg, spec, tower)
    assert [render_elem(x) for x in hit.roots] == ["xi", "-xi"]
    alg2 = QuatAlgebra(t, t * t)
    tower2, xi2 = alg2.resolve_xi(Tower())
    hit2 = riccati_pattern_solutions(build_riccati(alg2, spec, xi2), alg2, spec, tower2)
    assert [render_elem(x) for x in hit2.roots] == ["t", "-t"]
    other = DerivationSpec(1, 1, 0)
    assert riccati_pattern_solutions(build_riccati(alg, other, xi), alg, other, tower) is None


@settings(max_examples=30)
@given(st.sampled_from([t, t * t + 1, RatFunc(1), t ** 3 - t, RatFunc(2)]),
       st.sampled_from([t, t * t, t + 1, RatFunc(3), t ** 3 - t]), fracs.filter(bool), st.booleans())
def test_pattern_solutions_verify(alpha, beta, a, on_uv):
    alg = QuatAlgebra(alpha, beta)
    spec = DerivationSpec(0, 0, a) if on_uv else DerivationSpec(0, a, 0)
    tower, xi = alg.resolve_xi(Tower())
    eq = build_riccati(alg, spec, xi)
    hit = riccati_pattern_solutions(eq, alg, spec, tower)
    if hit is None:
        return
    eq2 = RiccatiEq(*(hit.tower.elem(c) for c in (eq.a0, eq.a1c, eq.a2c)))
    for x in hit.roots:
        assert eq2.satisfied_by(x, hit.tower.derive)
    assert hit.roots[0] != hit.roots[1]


# -- zero/pole oracle on quadratic t' -----------------------------------------------------------


@settings(max_examples=60)
@given(fracs, fracs, fracs.filter(bool), st.integers(-3, 3).filter(bool), st.booleans())
def test_zeropole_random_quadratic(r1, r2, c2, m, double):
    if double:
        r2 = r1
    tp = c2 * (t - r1) * (t - r2)
    base = DiffBase(tp)
    if r1 == r2:
        f, n = (t - r1) ** m, m
    else:
        f, n = ((t - r1) * (t - r2)) ** m, 2 * m
    rep = zeropole_oracle(base, f, n)
    assert rep.passed
    assert {p[0] for p in rep.points} == {r1, r2}
