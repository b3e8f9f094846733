"""Exact solvers for first-order equations over Q(t) with t' = 1.

* ``logderiv_multiple(a)``: smallest n with n*a = f'/f, f in Q(t).
* ``solve_linear_radical(a)``: algebraic solution theta' = a*theta, theta**n in Q(t).
* ``riccati_rational_solutions(eq)``: all rational solutions of
  X' = a0 + a1 X + a2 X^2.  With a2 != 0 the equation is turned into
  y' + y^2 = r and solved by local analysis at the poles of r and at
  infinity, in the manner of the first case of Kovacic's algorithm.
* ``riccati_pattern_solutions``: the +-sqrt(beta) solutions that occur when
  the inner derivation is a multiple of v (or of uv).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Optional

from . import linalg
from .arith import (
    Poly,
    RatFunc,
    as_ratfunc,
    coprime_pieces,
    logderiv_residues,
    poly_gcd,
    poly_xgcd,
    rational_nth_root,
    rational_roots,
)
from .arith import render as render_ratfunc
from .quaternion import DerivationSpec, QuatAlgebra, RiccatiEq
from .tower import DiffBase, Tower, render_elem


class UnsupportedDerivation(ValueError):
    """The solver needs the base derivation t' = 1."""


def _require_standard(base: DiffBase | None):
    if base is not None and not base.is_standard():
        raise UnsupportedDerivation("solver requires the base derivation t' = 1")


# -- linear equations ------------------------------------------------------------


def logderiv_multiple(a, base: DiffBase | None = None):
    """Return the minimal (n, f) with n*a = f'/f, or None."""
    _require_standard(base)
    a = as_ratfunc(a)
    if not a:
        return 1, RatFunc(1)
    parts = logderiv_residues(a)
    if parts.polynomial_part or parts.reduced_remainder:
        return None
    n = 1
    for _, res in parts.terms:
        n = lcm(n, res.denominator)
    f = RatFunc(1)
    for fac, res in parts.terms:
        e = int(res * n)
        f = f * RatFunc(fac) ** e
    return n, f


@dataclass(frozen=True)
class RadicalSolution:
    """theta with theta**n = f and theta' = a*theta."""

    n: int
    f: RatFunc
    a: RatFunc

    def is_rational(self) -> bool:
        return self.n == 1


def solve_linear_radical(a, n_max: int = 16, base: DiffBase | None = None) -> Optional[RadicalSolution]:
    hit = logderiv_multiple(a, base)
    if hit is None or hit[0] > n_max:
        return None
    return RadicalSolution(hit[0], hit[1], as_ratfunc(a))


# -- solution sets ----------------------------------------------------------------


@dataclass
class RiccatiFamily:
    """A one-parameter family of solutions; ``member(c)`` gives the member for
    the rational constant c."""

    representatives: tuple
    member: Callable = field(repr=False, compare=False)
    description: str = ""


@dataclass
class RiccatiSolutionSet:
    isolated: list = field(default_factory=list)
    family: Optional[RiccatiFamily] = None
    radical: Optional[tuple] = None  # (n, f): solutions c * f**(1/n)
    status: str = "complete"  # complete | best-effort | exhausted
    notes: list = field(default_factory=list)

    def all_solutions(self):
        out = list(self.isolated)
        if self.family is not None:
            out.extend(self.family.representatives)
        return out

    def is_empty(self) -> bool:
        return not self.isolated and self.family is None and self.radical is None

    def rendered(self) -> dict:
        doc = {
            "status": self.status,
            "isolated": [render_elem(x) for x in self.isolated],
            "family": None,
            "radical": None,
        }
        if self.family is not None:
            doc["family"] = {
                "representatives": [render_elem(x) for x in self.family.representatives],
                "description": self.family.description,
            }
        if self.radical is not None:
            n, f = self.radical
            doc["radical"] = {"n": n, "radicand": render_ratfunc(f),
                              "description": f"c*({render_ratfunc(f)})^(1/{n})"}
        if self.notes:
            doc["notes"] = list(self.notes)
        return doc


def _sorted(xs):
    uniq = {}
    for x in xs:
        uniq.setdefault(x, x)
    return sorted(uniq.values(), key=lambda x: (len(render_elem(x)), render_elem(x)))


# -- local expansions ------------------------------------------------------------


def _low_order(p: Poly) -> int:
    for i, c in enumerate(p.coeffs):
        if c:
            return i
    raise ValueError("zero polynomial")


def _series_div(a, b, prec: int):
    q = []
    for i in range(prec):
        s = a[i] if i < len(a) else Fraction(0)
        for j in range(1, min(i, len(b) - 1) + 1):
            s -= b[j] * q[i - j]
        q.append(s / b[0])
    return q


def laurent_at(f: RatFunc, c: Fraction, prec: int):
    """(order of pole, coefficients) with f = sum coeffs[k] (t-c)**(k - order)."""
    num, den = f.num.shift(c), f.den.shift(c)
    kn, kd = _low_order(num), _low_order(den)
    a = num.coeffs[kn:]
    b = den.coeffs[kd:]
    return kd - kn, _series_div(a, b, prec)


def laurent_at_infinity(f: RatFunc, prec: int):
    """(o, coeffs) with f = sum coeffs[k] t**(-(o + k))."""
    a = tuple(reversed(f.num.coeffs))
    b = tuple(reversed(f.den.coeffs))
    return f.den.degree - f.num.degree, _series_div(a, b, prec)


def _sqrt_series(a, count: int):
    q0 = rational_nth_root(a[0], 2)
    if q0 is None:
        return None
    q = [q0]
    for i in range(1, count):
        s = a[i] if i < len(a) else Fraction(0)
        for j in range(1, i):
            s -= q[j] * q[i - j]
        q.append(s / (2 * q0))
    return q


def _half_pm_sqrt(b: Fraction):
    """The exponents 1/2 +- 1/2 sqrt(1 + 4b), or None when irrational."""
    s = rational_nth_root(1 + 4 * b, 2)
    if s is None:
        return None
    return sorted({Fraction(1, 2) + s / 2, Fraction(1, 2) - s / 2}, reverse=True)


@dataclass(frozen=True)
class _Option:
    omega: RatFunc
    alpha: Fraction


class _Local:
    def __init__(self):
        self.points = []  # list of option lists
        self.impossible = False
        self.best_effort = []

    def add(self, options):
        if not options:
            self.impossible = True
        self.points.append(options)


def _local_data(r: RatFunc) -> _Local:
    """Options at each pole of r and at infinity (last entry)."""
    loc = _Local()
    t = RatFunc.t()
    for fac, m in coprime_pieces(r.den) if r.den.degree > 0 else []:
        if fac.degree == 1:
            c = -fac.coeffs[0]
            if m == 1:
                loc.add([_Option(RatFunc(1) / (t - c), Fraction(1))])
            elif m == 2:
                _, coeffs = laurent_at(r, c, 1)
                alphas = _half_pm_sqrt(coeffs[0])
                loc.add([_Option(RatFunc(al) / (t - c), al) for al in alphas] if alphas else [])
            elif m % 2:
                loc.add([])
            else:
                nu = m // 2
                _, coeffs = laurent_at(r, c, nu)
                q = _sqrt_series(coeffs, nu - 1)
                if q is None:
                    loc.add([])
                    continue
                sq = sum((RatFunc(q[i]) / (t - c) ** (nu - i) for i in range(nu - 1)), RatFunc())
                b = coeffs[nu - 1] - sum(q[i] * q[nu - 1 - i] for i in range(1, nu - 1))
                a = q[0]
                opts = []
                for sign in (1, -1):
                    al = (sign * b / a + nu) / 2
                    opts.append(_Option(sq * sign + RatFunc(al) / (t - c), al))
                loc.add(opts)
        else:
            dq = fac.diff()
            log = RatFunc(dq, fac)
            if m == 1:
                loc.add([_Option(log, Fraction(fac.degree))])
            elif m == 2:
                rest = r.den.exact_div(fac ** 2)
                g, s, _ = poly_xgcd(rest * dq * dq, fac)
                b_poly = (r.num * s) % fac
                if b_poly.degree > 0:
                    loc.best_effort.append("order-2 pole at an irrational point with non-constant leading term")
                    loc.add([])
                    continue
                b = b_poly[0] if b_poly else Fraction(0)
                alphas = _half_pm_sqrt(b)
                if alphas is None:
                    loc.best_effort.append("irrational exponent at an irrational pole")
                    loc.add([])
                    continue
                if len(alphas) > 1 and fac.degree > 3:
                    loc.best_effort.append("pole factor of degree > 3 not checked for irreducibility")
                loc.add([_Option(log * al, al * fac.degree) for al in alphas])
            elif m % 2:
                loc.add([])
            else:
                loc.best_effort.append("higher-order pole at an irrational point")
                loc.add([])
    # infinity
    if not r:
        loc.add([_Option(RatFunc(), Fraction(0)), _Option(RatFunc(), Fraction(1))])
        return loc
    o = r.den.degree - r.num.degree
    if o > 2:
        loc.add([_Option(RatFunc(), Fraction(0)), _Option(RatFunc(), Fraction(1))])
    elif o == 2:
        b = r.num.lc / r.den.lc
        alphas = _half_pm_sqrt(b)
        loc.add([_Option(RatFunc(), al) for al in alphas] if alphas else [])
    elif o % 2:
        loc.add([])
    else:
        nu = -o // 2
        _, coeffs = laurent_at_infinity(r, nu + 2)
        q = _sqrt_series(coeffs, nu + 1)
        if q is None:
            loc.add([])
        else:
            sq = RatFunc(Poly([q[nu - k] for k in range(nu + 1)]))
            b = coeffs[nu + 1] - sum(q[i] * q[nu + 1 - i] for i in range(1, nu + 1))
            a = q[0]
            loc.add([_Option(sq * sign, (sign * b / a - nu) / 2) for sign in (1, -1)])
    return loc


def _poly_nullspace(omega: RatFunc, r: RatFunc, d: int):
    """Polynomials P of degree <= d with P'' + 2 omega P' + (omega' + omega^2 - r) P = 0,
    as a basis in echelon form (distinct degrees, monic)."""
    coef = omega.diff() + omega * omega - r
    two_omega = omega * 2
    den = two_omega.den * coef.den.exact_div(poly_gcd(two_omega.den, coef.den))
    A = den
    B = two_omega.num * den.exact_div(two_omega.den)
    C = coef.num * den.exact_div(coef.den)
    # [t^j] L(t^k); L(t^k) has degree <= k + D
    D = max(A.degree - 2, B.degree - 1 if B else -3, C.degree if C else -3)

    def entry(j, k):
        v = C[j - k] if 0 <= j - k else 0
        if k >= 1 and j - k + 1 >= 0:
            v += k * B[j - k + 1]
        if k >= 2 and j - k + 2 >= 0:
            v += k * (k - 1) * A[j - k + 2]
        return v

    # top-down: row j = m + D determines p_m from p_{m+1}, ..., or frees it
    # when the indicial coefficient [t^{m+D}] L(t^m) vanishes
    nparams = 0
    coeffs = {}  # k -> list of Fractions over the parameters (grown lazily)
    constraints = []

    def combo(j, lo):
        acc = {}
        for k in range(lo, min(d, j + 2) + 1):
            e = entry(j, k)
            if e:
                for i, c in enumerate(coeffs[k]):
                    if c:
                        acc[i] = acc.get(i, 0) + e * c
        return acc

    for m in range(d, -1, -1):
        j = m + D
        acc = combo(j, m + 1) if j >= 0 else {}
        piv = entry(j, m) if j >= 0 else 0
        if piv:
            coeffs[m] = [-acc.get(i, 0) / piv for i in range(nparams)]
        else:
            if any(acc.values()):
                constraints.append(acc)
            for k in coeffs:
                coeffs[k].append(Fraction(0))
            coeffs[m] = [Fraction(0)] * nparams + [Fraction(1)]
            nparams += 1
    for j in range(D - 1, -1, -1):
        acc = combo(j, 0)
        if any(acc.values()):
            constraints.append(acc)
    if not nparams:
        return []
    rows = [[Fraction(c.get(i, 0)) for i in range(nparams)] for c in constraints]
    params = linalg.nullspace(rows, nparams, Fraction(0), Fraction(1))
    vecs = [[sum((coeffs[k][i] * v[i] for i in range(nparams)), Fraction(0)) for k in range(d, -1, -1)]
            for v in params]
    linalg.row_reduce(vecs)
    return [Poly(v[::-1]) for v in vecs if any(v)]


@dataclass
class _Core:
    """Rational solutions y of y' + y^2 = r."""

    isolated: list
    family: Optional[tuple]  # (omega, P_a, P_b)
    status: str
    notes: list


def _riccati_normal(r: RatFunc, budget: int) -> _Core:
    loc = _local_data(r)
    notes = list(dict.fromkeys(loc.best_effort))
    status = "best-effort" if notes else "complete"
    if loc.impossible:
        return _Core([], None, status, notes)
    found = []
    family = None
    count = 0
    *finite, inf = loc.points
    for choice in itertools.product(*finite):
        for at_inf in inf:
            count += 1
            if count > budget:
                return _Core(found, family, "exhausted", notes + ["candidate budget exhausted"])
            d = at_inf.alpha - sum((o.alpha for o in choice), Fraction(0))
            if d.denominator != 1 or d < 0:
                continue
            omega = at_inf.omega + sum((o.omega for o in choice), RatFunc())
            basis = _poly_nullspace(omega, r, int(d))
            if not basis:
                continue
            if len(basis) >= 2 and family is None:
                basis.sort(key=lambda p: p.degree)
                family = (omega, basis[-1], basis[0])
            for p in basis:
                found.append(omega + RatFunc(p.diff(), p))
    return _Core(found, family, status, notes)


def _family_member(omega, pa, pb):
    def member(c):
        p = pa + pb * Fraction(c)
        return omega + RatFunc(p.diff(), p)

    return member


def _check(eq_coeffs, x) -> bool:
    a0, a1, a2 = eq_coeffs
    return x.diff() == a0 + a1 * x + a2 * x * x


def _linear_homogeneous(a1: RatFunc) -> RiccatiSolutionSet:
    hit = logderiv_multiple(a1)
    out = RiccatiSolutionSet(isolated=[RatFunc()])
    if hit is None:
        return out
    n, f = hit
    if n == 1:
        out.family = RiccatiFamily((f, f * 2), lambda c, f=f: f * Fraction(c),
                                   f"X = c*({render_ratfunc(f)})")
    else:
        out.radical = (n, f)
    return out


def riccati_rational_solutions(eq: RiccatiEq, budget: int = 10000, base: DiffBase | None = None) -> RiccatiSolutionSet:
    """All solutions in Q(t) of X' = a0 + a1 X + a2 X^2 (see module notes)."""
    _require_standard(base)
    coeffs = eq.rational_coeffs()
    if coeffs is None:
        raise ValueError("equation coefficients are not in Q(t)")
    a0, a1, a2 = coeffs
    if not a2:
        if not a0:
            return _linear_homogeneous(a1)
        # X = 1/Y turns the inhomogeneous linear equation into a Riccati one
        inner = riccati_rational_solutions(RiccatiEq(RatFunc(), -a1, -a0), budget)
        out = RiccatiSolutionSet(status=inner.status, notes=inner.notes)
        out.isolated = _sorted(1 / y for y in inner.isolated if y)
        if inner.family is not None:
            reps = []
            k = 0
            while len(reps) < 2 and k < 8:
                y = inner.family.member(k)
                if y and 1 / y not in reps:
                    reps.append(1 / y)
                k += 1
            inner_member = inner.family.member
            out.family = RiccatiFamily(tuple(reps), lambda c: 1 / inner_member(c), "X = 1/Y, Y in a family")
            out.isolated = [x for x in out.isolated if x not in reps]
        return out
    b1 = -(a1 + a2.diff() / a2)
    b0 = a0 * a2
    r = b1 * b1 / 4 + b1.diff() / 2 - b0
    core = _riccati_normal(r, budget)

    def back(y):
        return (b1 / 2 - y) / a2

    sols = []
    for y in core.isolated:
        x = back(y)
        if not _check(coeffs, x):
            raise AssertionError(f"solver produced a non-solution {render_ratfunc(x)}")
        sols.append(x)
    out = RiccatiSolutionSet(status=core.status, notes=core.notes)
    if core.family is not None:
        omega, pa, pb = core.family
        ymember = _family_member(omega, pa, pb)

        def member(c):
            return back(ymember(c))

        reps = (member(0), member(1))
        for x in reps:
            if not _check(coeffs, x):
                raise AssertionError("family representative fails substitution")
        out.family = RiccatiFamily(reps, member, "X = (b1/2 - y)/a2 with y = omega + P'/P, P = P_a + c*P_b")
        sols = [x for x in sols if x not in reps]
    out.isolated = _sorted(sols)
    return out


# -- pattern solutions ----------------------------------------------------------------


@dataclass
class PatternSolution:
    tower: Tower
    roots: tuple  # (eta, -eta)
    radicand: RatFunc


def riccati_pattern_solutions(eq: RiccatiEq, alg: QuatAlgebra, spec: DerivationSpec,
                              tower: Tower | None = None) -> Optional[PatternSolution]:
    """Solutions +-eta with eta**2 = beta (inner part in k v) or eta**2 = -beta
    (inner part in k uv), verified by substitution."""
    if spec.a1:
        return None
    if spec.a2 and not spec.a3:
        radicand = alg.beta
    elif spec.a3 and not spec.a2:
        radicand = -alg.beta
    else:
        return None
    tower = tower if tower is not None else Tower(alg.base)
    tower, eta = tower.adjoin_root(2, radicand, "eta")
    eq = RiccatiEq(*(tower.elem(c) for c in (eq.a0, eq.a1c, eq.a2c)))
    roots = (eta, -eta)
    if not all(eq.satisfied_by(x, tower.derive) for x in roots):
        return None
    return PatternSolution(tower, roots, radicand)


# -- zero/pole oracle ---------------------------------------------------------------


@dataclass
class ZeroPoleReport:
    points: list  # (gamma, "zero" | "pole", satisfied)
    passed: bool


def zeropole_oracle(base: DiffBase, f, n: int) -> ZeroPoleReport:
    """For t' = a0 + a1 t + a2 t^2 and f' = n (a1/2 + a2 t) f, check that every
    rational zero and pole gamma of f satisfies 0 = a0 + a1 gamma + a2 gamma^2."""
    tp = base.t_prime
    if not tp.is_polynomial() or tp.num.degree > 2:
        raise ValueError("t' must be a polynomial of degree at most 2")
    a = [tp.num[i] for i in range(3)]
    f = as_ratfunc(f)
    if not f:
        raise ValueError("f must be nonzero")
    if f.is_constant():
        return ZeroPoleReport([], True)
    rate = RatFunc(Poly([a[1] / 2, a[2]])) * n
    if base.derive(f) != rate * f:
        raise ValueError("precondition f' = n (a1/2 + a2 t) f fails")
    points = []
    for kind, p in (("zero", f.num), ("pole", f.den)):
        for g in rational_roots(p):
            points.append((g, kind, a[0] + a[1] * g + a[2] * g * g == 0))
    return ZeroPoleReport(points, all(ok for _, _, ok in points))
