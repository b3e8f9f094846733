"""Splitting certificates.

A certificate is a tower L over Q(t) together with a matrix F in GL_2(L)
satisfying F' = P F, where P is the matrix of the derivation in the
representation u -> diag(xi, -xi), v -> [[0, beta], [1, 0]].  F is assembled
from two distinct solutions lambda1, lambda2 of the splitting Riccati equation
and a hyperexponential mu:

    F = [[lambda1 mu, lambda2 / (mu (lambda1 - lambda2))],
         [mu,         1 / (mu (lambda1 - lambda2))]]
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .arith import Poly, RatFunc, hermite_reduce
from .arith import render as render_ratfunc
from .odesolve import (
    logderiv_multiple,
    riccati_pattern_solutions,
    riccati_rational_solutions,
    solve_linear_radical,
)
from .quaternion import (
    DerivationSpec,
    QuatAlgebra,
    RiccatiEq,
    build_mu_rate,
    build_P,
    build_riccati,
    d_P,
    mat_det,
    mat_eq,
    mat_inv,
    mat_map,
    mat_mul,
    mat_scale,
    phi_inverse,
)
from .tower import HyperExp, Primitive, RiccatiGen, Tower, lower, render_elem

MAX_TRDEG = 3


class CertificateError(AssertionError):
    """An engine-built certificate failed its own verification."""


@dataclass(frozen=True)
class Hint:
    """A user-supplied tower step: kind is radical, primitive, hyperexp or riccati."""

    kind: str
    expr: Optional[RatFunc] = None
    n: int = 0

    def render(self) -> str:
        if self.kind == "radical":
            return f"radical:{self.n}:{render_ratfunc(self.expr)}"
        if self.kind == "riccati":
            return "riccati:auto"
        return f"{self.kind}:{render_ratfunc(self.expr)}"


@dataclass
class SplitCertificate:
    algebra: QuatAlgebra
    spec: DerivationSpec
    tower: Tower
    xi: object
    P: tuple
    lambda1: object
    lambda2: object
    mu: object
    F: tuple
    verified: bool = False
    trdeg: int = 0
    sources: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def riccati(self) -> RiccatiEq:
        eq = build_riccati(self.algebra, self.spec, self.xi)
        return RiccatiEq(*(self.tower.elem(c) for c in (eq.a0, eq.a1c, eq.a2c)))


@dataclass
class VerifyResult:
    passed: bool
    det_nonzero: bool
    det_is_one: bool
    failing_entry: Optional[tuple] = None  # 1-based (row, col)
    messages: list = field(default_factory=list)


def build_F(l1, l2, mu):
    diff = l1 - l2
    if not diff:
        raise ValueError("lambda1 and lambda2 must be distinct")
    if not mu:
        raise ValueError("mu must be nonzero")
    w = 1 / (mu * diff)
    return ((l1 * mu, l2 * w), (mu, w))


def _tower_P(alg, spec, xi, tower):
    return mat_map(build_P(alg, spec, xi), tower.elem)


def verify_certificate(cert: SplitCertificate) -> VerifyResult:
    tower = cert.tower
    xi = tower.elem(cert.xi)
    msgs = []
    if xi * xi != tower.elem(cert.algebra.alpha):
        return VerifyResult(False, False, False, None, ["xi^2 != alpha"])
    P = _tower_P(cert.algebra, cert.spec, xi, tower)
    F = mat_map(cert.F, tower.elem)
    det = mat_det(F)
    det_one = det == 1
    if not det:
        msgs.append("F is singular (det F = 0)")
    elif not det_one:
        msgs.append(f"det F = {render_elem(det)}")
    PF = mat_mul(P, F)
    bad = None
    for i in range(2):
        for j in range(2):
            if bad is None and tower.derive(F[i][j]) != PF[i][j]:
                bad = (i + 1, j + 1)
                msgs.append(f"F' != P F at entry ({i + 1}, {j + 1})")
    return VerifyResult(bool(det) and bad is None, bool(det), det_one, bad, msgs)


# -- second solution from a primitive hint --------------------------------------------------


def _second_from_primitive(eq_rat, lam1: RatFunc, w: RatFunc):
    """With one rational solution lam1, the other solutions are lam1 + 1/V where
    V' = -(a1 + 2 a2 lam1) V - a2.  Try V = h (g + c*ell) with h' = A h rational
    and ell' = w.  Returns (h, g, c) or None."""
    a0, a1, a2 = eq_rat
    A = -(a1 + a2 * lam1 * 2)
    hit = logderiv_multiple(A)
    if hit is None or hit[0] != 1:
        return None
    h = hit[1]
    integrand = -a2 / h
    g, p, rem = hermite_reduce(integrand)
    if p:
        # polynomial part integrates termwise
        ip = Poly([0] + [c / (k + 1) for k, c in enumerate(p.coeffs)])
        g = g + RatFunc(ip)
    if not rem:
        return None
    ratio = rem / w
    if not ratio.is_constant():
        return None
    return h, g, ratio.constant_value()


# -- construction ------------------------------------------------------------------


class _Search:
    def __init__(self, alg, spec, tower, xi, n_max, budget):
        self.alg, self.spec = alg, spec
        self.tower, self.xi = tower, xi
        self.n_max, self.budget = n_max, budget
        self.found = []  # (value, source)
        self.notes = []

    def eq(self) -> RiccatiEq:
        eq = build_riccati(self.alg, self.spec, self.xi)
        return RiccatiEq(*(self.tower.elem(c) for c in (eq.a0, eq.a1c, eq.a2c)))

    def set_tower(self, tower):
        self.tower = tower
        self.xi = tower.elem(self.xi)
        self.found = [(tower.elem(v), s) for v, s in self.found]

    def add(self, value, source) -> bool:
        value = self.tower.elem(value)
        if any(v == value for v, _ in self.found):
            return False
        if not self.eq().satisfied_by(value, self.tower.derive):
            raise CertificateError(f"candidate {render_elem(value)} from {source} fails substitution")
        self.found.append((value, source))
        return True

    def done(self) -> bool:
        return len(self.found) >= 2


def construct_certificate(alg: QuatAlgebra, spec: DerivationSpec, hints=(), n_max: int = 16,
                          budget: int = 10000) -> SplitCertificate:
    tower, xi = alg.resolve_xi(Tower(alg.base))
    s = _Search(alg, spec, tower, xi, n_max, budget)
    standard = alg.base.is_standard()
    hints = list(hints)
    force_generic = any(h.kind == "riccati" for h in hints)
    eq = s.eq()
    rat = eq.rational_coeffs()
    rational_set = None

    if not force_generic:
        if not eq.a0:
            s.add(0, "zero")
        if rat is not None and standard:
            rational_set = riccati_rational_solutions(eq, budget)
            fam = rational_set.family.representatives if rational_set.family else ()
            for x in list(fam) + list(rational_set.isolated):
                if s.done():
                    break
                s.add(x, "rational")
            if rational_set.status != "complete":
                s.notes.append(f"rational Riccati search status: {rational_set.status}")
        if not s.done():
            hit = riccati_pattern_solutions(eq, alg, spec, s.tower)
            if hit is not None:
                s.set_tower(hit.tower)
                for x in hit.roots:
                    if s.done():
                        break
                    s.add(x, "pattern")
        if not s.done() and rational_set is not None and rational_set.radical is not None:
            n, f = rational_set.radical
            new, theta = s.tower.adjoin_root(n, f, "theta")
            s.set_tower(new)
            s.found = []
            s.add(theta, "radical")
            s.add(theta * 2, "radical")
        if not s.done():
            for hint in hints:
                if hint.kind == "radical":
                    new, g = s.tower.adjoin_root(hint.n, hint.expr, "rho")
                    eqn = RiccatiEq(*(new.elem(c) for c in (eq.a0, eq.a1c, eq.a2c)))
                    good = [x for x in (g, -g) if eqn.satisfied_by(x, new.derive)]
                    if good:
                        s.set_tower(new)
                        for x in good:
                            s.add(x, f"hint {hint.render()}")
                if s.done():
                    break
        if not s.done() and len(s.found) == 1 and rat is not None and standard:
            lam1 = lower(s.found[0][0])
            if isinstance(lam1, RatFunc):
                for hint in hints:
                    if hint.kind != "primitive":
                        continue
                    hit = _second_from_primitive(rat, lam1, hint.expr)
                    if hit is None:
                        continue
                    h, g, c = hit
                    name = s.tower.fresh_name("ell")
                    s.set_tower(s.tower.adjoin(Primitive(hint.expr, name)))
                    ell = s.tower.gen(name)
                    V = (ell * c + g) * h
                    s.add(lam1 + 1 / V, f"hint {hint.render()}")
                    break
        if rational_set is not None and len(rational_set.isolated) == 1 and rational_set.family is None \
                and rational_set.radical is None:
            only = render_ratfunc(rational_set.isolated[0])
            s.notes.append(
                f"rational Riccati solver output for {eq.render()}: {{{only}}}; "
                f"X = {only} is a rational solution and is used as lambda1"
            )
    # generic adjunction for whatever is still missing
    k = 1
    while not s.done():
        e = s.eq()
        name = s.tower.fresh_name(f"lam{k}" if not s.found else "lam2")
        s.set_tower(s.tower.adjoin(RiccatiGen(e.a0, e.a1c, e.a2c, name)))
        s.add(s.tower.gen(name), "generic")
        k += 1

    (l1, src1), (l2, src2) = s.found[:2]
    rate = lower(build_mu_rate(alg, spec, s.xi, l1, s.tower))
    mu_src = "generic"
    mu = None
    if not rate:
        mu, mu_src = s.tower.elem(1), "rational"
    elif isinstance(rate, RatFunc) and standard:
        rs = solve_linear_radical(rate, n_max)
        if rs is not None:
            new, mu = s.tower.adjoin_root(rs.n, rs.f, "mu")
            s.set_tower(new)
            mu_src = "rational" if rs.n == 1 else "radical"
    if mu is None:
        for hint in hints:
            if hint.kind == "hyperexp" and isinstance(rate, RatFunc) and hint.expr == rate:
                name = s.tower.fresh_name("mu")
                s.set_tower(s.tower.adjoin(HyperExp(rate, name)))
                mu, mu_src = s.tower.gen(name), f"hint {hint.render()}"
                break
    if mu is None:
        name = s.tower.fresh_name("mu")
        s.set_tower(s.tower.adjoin(HyperExp(rate, name)))
        mu = s.tower.gen(name)

    tower = s.tower
    l1, l2 = (tower.elem(v) for v, _ in s.found[:2])
    mu = tower.elem(mu)
    xi = tower.elem(s.xi)
    F = build_F(l1, l2, mu)
    cert = SplitCertificate(
        algebra=alg, spec=spec, tower=tower, xi=xi,
        P=_tower_P(alg, spec, xi, tower),
        lambda1=l1, lambda2=l2, mu=mu, F=F,
        sources={"lambda1": src1, "lambda2": src2, "mu": mu_src},
        notes=s.notes,
    )
    result = verify_certificate(cert)
    if not (result.passed and result.det_is_one):
        raise CertificateError("; ".join(result.messages) or "certificate failed verification")
    cert.verified = True
    cert.trdeg = tower.tr_degree()
    return cert


def trdeg_report(cert: SplitCertificate, engine_built: bool = True) -> int:
    n = cert.tower.tr_degree()
    if engine_built and n > MAX_TRDEG:
        raise CertificateError(f"transcendence degree {n} exceeds {MAX_TRDEG}")
    return n


# -- solutions read off from F --------------------------------------------------------


@dataclass
class FSolutions:
    ratio: list  # (label, value)
    linear: list  # (label, value), only when a2 = a3 = 0
    linear_equation: Optional[RiccatiEq] = None


def riccati_from_F(alg: QuatAlgebra, spec: DerivationSpec, xi, F, tower: Tower) -> FSolutions:
    """Ratios f11/f21 and f12/f22 solve the splitting Riccati equation.  When
    a2 = a3 = 0 the entries also give solutions of X' = (a1 xi + beta'/4beta) X."""
    xi = tower.elem(xi)
    F = mat_map(F, tower.elem)
    eq = build_riccati(alg, spec, xi)
    eq = RiccatiEq(*(tower.elem(c) for c in (eq.a0, eq.a1c, eq.a2c)))
    linear_branch = not spec.a2 and not spec.a3
    ratio = []
    for label, num, den in (("f11/f21", F[0][0], F[1][0]), ("f12/f22", F[0][1], F[1][1])):
        if not den:
            if linear_branch:
                continue
            raise ZeroDivisionError(f"{label}: zero denominator")
        x = num / den
        if not eq.satisfied_by(x, tower.derive):
            raise CertificateError(f"{label} does not solve {eq.render()}")
        ratio.append((label, x))
    linear = []
    lin_eq = None
    if linear_branch:
        s = alg.base.derive(alg.beta) / (4 * alg.beta)
        lin_eq = RiccatiEq(tower.elem(0), tower.elem(spec.a1 * xi + s), tower.elem(0))
        cands = (("f11", F[0][0]), ("f12", F[0][1]))
        cands += tuple((lab, 1 / x) for lab, x in (("1/f21", F[1][0]), ("1/f22", F[1][1])) if x)
        for label, x in cands:
            if lin_eq.satisfied_by(x, tower.derive):
                linear.append((label, x))
    return FSolutions(ratio, linear, lin_eq)


# -- standard pair from a splitting ------------------------------------------------------


@dataclass
class StandardPair:
    U: tuple
    V: tuple
    u_tilde: object
    v_tilde: object
    checks: dict


def standardize_from_split(cert: SplitCertificate, theta, rate=None) -> StandardPair:
    """U = F diag(theta, -theta) F^-1 and V = F antidiag(theta, theta) F^-1,
    pulled back to the algebra over the certificate tower."""
    tower = cert.tower
    theta = tower.elem(theta)
    if not theta:
        raise ValueError("theta must be nonzero")
    dtheta = tower.derive(theta)
    if rate is not None and dtheta != tower.elem(rate) * theta:
        raise ValueError("theta does not satisfy theta' = rate * theta")
    F = mat_map(cert.F, tower.elem)
    Finv = mat_inv(F)
    zero = tower.elem(0)
    U = mat_mul(mat_mul(F, ((theta, zero), (zero, -theta))), Finv)
    V = mat_mul(mat_mul(F, ((zero, theta), (theta, zero))), Finv)
    xi = tower.elem(cert.xi)
    P = _tower_P(cert.algebra, cert.spec, xi, tower)
    sq = theta * theta
    scalar = ((sq, zero), (zero, sq))
    log = dtheta / theta
    checks = {
        "U^2 = theta^2": mat_eq(mat_mul(U, U), scalar),
        "V^2 = theta^2": mat_eq(mat_mul(V, V), scalar),
        "VU = -UV": mat_eq(mat_mul(V, U), mat_scale(mat_mul(U, V), -1)),
        "d_P(U) = (theta'/theta) U": mat_eq(d_P(U, P, tower.derive), mat_scale(U, log)),
        "d_P(V) = (theta'/theta) V": mat_eq(d_P(V, P, tower.derive), mat_scale(V, log)),
    }
    ut = phi_inverse(cert.algebra, xi, U)
    vt = phi_inverse(cert.algebra, xi, V)
    checks["v~u~ = -u~v~"] = (vt * ut) == -(ut * vt)
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        raise CertificateError("standardization checks failed: " + ", ".join(failed))
    return StandardPair(U, V, ut, vt, checks)
