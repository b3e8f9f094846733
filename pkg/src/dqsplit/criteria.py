"""Finite-splitting witnesses, non-splitting conditions and standard pairs.

For alpha in Q[t] and a derivation with inner part a*u, a finite splitting
field exists iff a = theta'/(n xi theta) for some theta in k(xi) whose norm
is constant; such theta have the form c (g0 + xi g1)/(g0 - xi g1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional

from .arith import Poly, RatFunc, as_ratfunc, is_perfect_power, poly_gcd, squarefree_factor
from .arith import render as render_ratfunc
from .odesolve import riccati_rational_solutions
from .quaternion import DerivationSpec, QuatAlgebra, QuatElem, RiccatiEq, apply_derivation
from .tower import render_elem

# -- finite splitting ------------------------------------------------------------------


def _poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    f = as_ratfunc(x)
    if not f.is_polynomial():
        raise ValueError(f"expected a polynomial, got {render_ratfunc(f)}")
    return f.num


def witness_pq(alpha, g0, g1, n: int):
    """p = 2 alpha (g0 g1' - g0' g1) + alpha' g0 g1 and q = n alpha (g0^2 - alpha g1^2)."""
    alpha, g0, g1 = _poly(alpha), _poly(g0), _poly(g1)
    p = alpha * (g0 * g1.diff() - g0.diff() * g1) * 2 + alpha.diff() * g0 * g1
    q = alpha * (g0 * g0 - alpha * g1 * g1) * n
    return p, q


def finite_split_witness_check(alpha, a, g0, g1, n: int, c=1) -> bool:
    """True iff a = theta'/(n xi theta) for theta = c (g0 + xi g1)/(g0 - xi g1)."""
    if not _poly(g0) and not _poly(g1):
        raise ValueError("g0 and g1 must not both vanish")
    if n < 1:
        raise ValueError("n must be positive")
    if not c:
        raise ValueError("c must be nonzero")
    p, q = witness_pq(alpha, g0, g1, n)
    if not q:
        raise ZeroDivisionError("q = 0")
    return as_ratfunc(a) == RatFunc(p, q)


@dataclass
class Witness:
    g0: Poly
    g1: Poly
    n: int
    c: Fraction = Fraction(1)

    def render(self) -> dict:
        return {"g0": render_ratfunc(RatFunc(self.g0)), "g1": render_ratfunc(RatFunc(self.g1)),
                "n": self.n, "c": str(self.c)}


@dataclass
class SearchResult:
    status: str  # found | exhausted
    witness: Optional[Witness] = None
    candidates: int = 0


def _polys(degree: int, height: int):
    """Integer polynomials of exact degree with max |coefficient| <= height."""
    rng = range(-height, height + 1)
    for v in itertools.product(rng, repeat=degree + 1):
        if v[-1]:
            yield Poly(list(v))


def _height(p: Poly) -> int:
    return max((abs(c) for c in p.coeffs), default=0)


def _candidates(degree_bound: int, max_height: int):
    """(g0, g1) pairs with g1 != 0, ordered by (max degree, max height); the
    overall sign is fixed by making the leading coefficient of g0 (or g1) positive."""
    for deg in range(degree_bound + 1):
        for h in range(1, max_height + 1):
            low = [Poly(())] + [p for d in range(deg) for p in _polys(d, h)]
            top = list(_polys(deg, h))
            for g0, g1 in itertools.chain(
                itertools.product(top, low + top), itertools.product(low, top)
            ):
                if not g1 or max(_height(g0), _height(g1)) != h:
                    continue
                if (g0 if g0 else g1).lc < 0:
                    continue
                yield g0, g1


def _ints(p: Poly):
    """Integer coefficient list and the denominator that was cleared."""
    den = 1
    for c in p.coeffs:
        den = lcm(den, c.denominator)
    return [int(c * den) for c in p.coeffs], den


def _imul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _iadd(a, b, sb=1):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + sb * (b[i] if i < len(b) else 0) for i in range(n)]
    while out and not out[-1]:
        out.pop()
    return out


def _idiff(a):
    return [i * c for i, c in enumerate(a)][1:]


def _iscale(a, k):
    return [k * c for c in a] if k else []


def finite_split_search(alpha, a, degree_bound: int = 4, n_max: int = 16, budget: int = 10000,
                        max_height: int = 2) -> SearchResult:
    """Enumerate (g0, g1) with small integer coefficients, smallest first, and
    accept when the induced p/q equals n*a for a positive integer n <= n_max."""
    alpha = _poly(alpha)
    a = as_ratfunc(a)
    if not a:
        return SearchResult("found", Witness(Poly([1]), Poly(()), 1), 0)
    # alpha = A/D and a = an/ad with integer polynomials; p/q = n a becomes
    # D (2 A W + A' g0 g1) ad = n A (D g0^2 - A g1^2) an  with W = g0 g1' - g0' g1
    A, D = _ints(alpha)
    dA = _idiff(A)
    an, s1 = _ints(a.num)
    ad, s2 = _ints(a.den)
    # a = (an/s1) / (ad/s2) = (an s2) / (ad s1)
    an, ad = _iscale(an, s2), _iscale(ad, s1)
    count = 0
    for g0, g1 in _candidates(degree_bound, max_height):
        count += 1
        if count > budget:
            return SearchResult("exhausted", None, count - 1)
        x0 = [int(c) for c in g0.coeffs]
        x1 = [int(c) for c in g1.coeffs]
        w = _iadd(_imul(x0, _idiff(x1)), _imul(_idiff(x0), x1), -1)
        pnum = _iadd(_iscale(_imul(A, w), 2), _imul(dA, _imul(x0, x1)))
        qnum = _imul(A, _iadd(_iscale(_imul(x0, x0), D), _imul(A, _imul(x1, x1)), -1))
        if not pnum or not qnum:
            continue
        lhs = _iscale(_imul(pnum, ad), D)
        rhs = _imul(qnum, an)
        if len(lhs) != len(rhs):
            continue
        n = Fraction(lhs[-1], rhs[-1])
        if n.denominator != 1 or not 1 <= n <= n_max:
            continue
        if lhs == _iscale(rhs, int(n)):
            return SearchResult("found", Witness(g0, g1, int(n)), count)
    return SearchResult("exhausted", None, count)


# -- norms over k(xi) ---------------------------------------------------------------------


def norm_constant_check(alpha, g0, g1):
    """For theta = g0 + xi g1 (xi^2 = alpha): (theta'/theta in xi*k, N(theta) constant),
    each computed on its own."""
    alpha, g0, g1 = as_ratfunc(alpha), as_ratfunc(g0), as_ratfunc(g1)
    if not g0 and not g1:
        raise ValueError("theta must be nonzero")
    if is_perfect_power(alpha, 2) is not None:
        raise ValueError("alpha must not be a square")
    # theta' = g0' + xi h with h = g1' + g1 alpha'/(2 alpha); the rational part of
    # theta' * conj(theta) is g0' g0 - alpha h g1
    h = g1.diff() + g1 * alpha.diff() / (2 * alpha)
    logderiv_in_xik = not (g0.diff() * g0 - alpha * h * g1)
    norm = g0 * g0 - alpha * g1 * g1
    return logderiv_in_xik, not norm.diff()


# -- non-splitting ---------------------------------------------------------------------------


@dataclass
class CriteriaVerdict:
    verdict: str  # FinitelySplit | NotSplitByAlgebraic | NoVerdict | Note
    condition: Optional[str] = None
    evidence: dict = field(default_factory=dict)
    tag: str = ""

    def render(self) -> dict:
        return {"verdict": self.verdict, "condition": self.condition, "tag": self.tag,
                "evidence": dict(self.evidence)}


DEGREE_TAG = "degree-gap condition"
SQUARE_TAG = "square-factor condition"


def nonsplit_algebraic_check(alpha, a, conjunction: bool = False) -> CriteriaVerdict:
    """alpha of odd degree, a = f/g.  (a) deg g - deg f < (deg alpha + 3)/2;
    (b) some nonconstant factor of alpha divides g at least twice."""
    alpha = _poly(alpha)
    if alpha.degree % 2 == 0:
        raise ValueError("alpha must have odd degree")
    a = as_ratfunc(a)
    if not a:
        return CriteriaVerdict("NoVerdict", None, {"reason": "a = 0 is split over k"}, "")
    f, g = a.num, a.den
    gap = g.degree - f.degree
    cond_a = 2 * gap < alpha.degree + 3
    repeated = Poly([1])
    for fac, m in squarefree_factor(g).factors:
        if m >= 2:
            repeated = repeated * fac
    h = poly_gcd(alpha, repeated)
    cond_b = h.degree > 0
    evidence = {
        "deg g - deg f": gap,
        "(deg alpha + 3)/2": str(Fraction(alpha.degree + 3, 2)),
        "h": render_ratfunc(RatFunc(h)) if cond_b else None,
    }
    hit = (cond_a and cond_b) if conjunction else (cond_a or cond_b)
    if not hit:
        return CriteriaVerdict("NoVerdict", None, evidence, "")
    if cond_a:
        return CriteriaVerdict("NotSplitByAlgebraic", "a", evidence, DEGREE_TAG)
    return CriteriaVerdict("NotSplitByAlgebraic", "b", evidence, SQUARE_TAG)


# -- standard pairs ---------------------------------------------------------------------------


def derivation_matrix(alg: QuatAlgebra, spec: DerivationSpec):
    """M with d(e_j) = sum_i M[i][j] e_i on the basis e = (u, v, uv)."""
    cols = []
    for e in (alg.u, alg.v, alg.uv):
        d = apply_derivation(alg, spec, e)
        if d.c[0]:
            raise AssertionError("derivation does not preserve trace-zero elements")
        cols.append(d.c[1:])
    return [[cols[j][i] for j in range(3)] for i in range(3)]


def bilinear(alg: QuatAlgebra, x, y):
    return alg.alpha * x[0] * y[0] + alg.beta * x[1] * y[1] - alg.alpha * alg.beta * x[2] * y[2]


@dataclass
class Eigen:
    coords: tuple  # coordinates on (u, v, uv)
    rate: RatFunc
    family: bool = False

    def elem(self, alg) -> QuatElem:
        return alg.elem(0, *self.coords)


@dataclass
class StandardReport:
    status: str  # Standard | NotStandard | Inconclusive
    pair: Optional[tuple] = None
    eigen: list = field(default_factory=list)
    reasons: list = field(default_factory=list)

    def render(self, alg: QuatAlgebra) -> dict:
        doc = {"status": self.status,
               "eigen_elements": [e.elem(alg).render() for e in self.eigen],
               "reasons": list(self.reasons)}
        if self.pair is not None:
            doc["pair"] = [x.render() for x in self.pair]
        return doc


def _rate(alg, spec, b):
    d = apply_derivation(alg, spec, alg.elem(0, *b))
    for i in range(3):
        if b[i]:
            return d.c[i + 1] / b[i]
    raise ValueError("zero element")


def _is_eigen(alg, spec, b) -> bool:
    d = apply_derivation(alg, spec, alg.elem(0, *b))
    lam = _rate(alg, spec, b)
    return all(d.c[i + 1] == lam * b[i] for i in range(3))


def _coords(idx, vals):
    out = [RatFunc(), RatFunc(), RatFunc()]
    for i, v in zip(idx, vals):
        out[i] = as_ratfunc(v)
    return tuple(out)


def standard_analyze(alg: QuatAlgebra, spec: DerivationSpec, budget: int = 10000) -> StandardReport:
    """Search trace-zero b with d(b) in k*b (coefficients in Q(t)), then look for
    two of them that anticommute and have nonzero squares."""
    if not alg.base.is_standard():
        return StandardReport("Inconclusive", reasons=["base derivation t' != 1"])
    M = derivation_matrix(alg, spec)
    eigen = []
    reasons = []

    def push(b, family=False):
        if not _is_eigen(alg, spec, b):
            raise AssertionError("eigen-element check failed")
        if not any(_proportional(b, e.coords) for e in eigen):
            eigen.append(Eigen(b, _rate(alg, spec, b), family))

    def solve(eq, label):
        res = riccati_rational_solutions(eq, budget)
        if res.status != "complete":
            reasons.append(f"{label}: solver status {res.status}")
        sols = list(res.isolated)
        fam = False
        if res.family is not None:
            sols.extend(res.family.representatives)
            fam = True
            reasons.append(f"{label}: one-parameter family of solutions, representatives only")
        return sols, fam

    # support of size 1
    for i in range(3):
        if all(not M[m][i] for m in range(3) if m != i):
            push(_coords((i,), (1,)))
    # support of size 2: b_j = 1, b_i = x
    for i, j in itertools.combinations(range(3), 2):
        m = 3 - i - j
        eq = RiccatiEq(-M[i][j], M[j][j] - M[i][i], M[j][i])
        if M[m][i]:
            x = -M[m][j] / M[m][i]
            if x and eq.satisfied_by(x, lambda f: f.diff()):
                push(_coords((i, j), (x, 1)))
            continue
        if M[m][j]:
            continue
        sols, fam = solve(eq, f"support {{{i}, {j}}}")
        for x in sols:
            if x:
                push(_coords((i, j), (x, 1)), fam)
    # support of size 3: tractable when one coordinate decouples
    decoupled = False
    for i, j in itertools.combinations(range(3), 2):
        m = 3 - i - j
        if M[i][m] or M[j][m]:
            continue
        decoupled = True
        eq = RiccatiEq(-M[i][j], M[j][j] - M[i][i], M[j][i])
        xs, fam = solve(eq, f"support {{0, 1, 2}} block {i}, {j}")
        for x in xs:
            if not x:
                continue
            lin = RiccatiEq(-(M[m][i] * x + M[m][j]), M[j][j] + M[j][i] * x - M[m][m], RatFunc())
            ws, wfam = solve(lin, f"support {{0, 1, 2}} coordinate {m}")
            for w in ws:
                if w:
                    push(_coords((i, j, m), (x, 1, w)), fam or wfam)
        break
    if not decoupled:
        reasons.append("support {0, 1, 2}: coupled system, not analysed")

    eigen.sort(key=lambda e: (sum(1 for c in e.coords if c), [not c for c in e.coords],
                              [render_ratfunc(c) for c in e.coords]))
    for x, y in itertools.combinations(eigen, 2):
        ex, ey = x.elem(alg), y.elem(alg)
        if bilinear(alg, x.coords, y.coords) or not (ex * ex) or not (ey * ey):
            continue
        if ey * ex == -(ex * ey):
            return StandardReport("Standard", (ex, ey), eigen, reasons)
    if reasons:
        return StandardReport("Inconclusive", None, eigen, reasons)
    squares = [render_elem((e.elem(alg) * e.elem(alg)).c[0]) for e in eigen]
    reasons.append("no two eigen-elements anticommute with nonzero squares; squares: " + ", ".join(squares))
    return StandardReport("NotStandard", None, eigen, reasons)


def _proportional(b, c) -> bool:
    ratio = None
    for x, y in zip(b, c):
        if bool(x) != bool(y):
            return False
        if x:
            r = x / y
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
    return True
