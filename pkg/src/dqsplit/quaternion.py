"""Quaternion algebras (alpha, beta) over Q(t) with a derivation.

Elements are written on the basis 1, u, v, uv with u^2 = alpha, v^2 = beta
and vu = -uv.  A derivation is given by the trace-zero element
theta = a1 u + a2 v + a3 uv: it acts as the standard derivation
(u' = (alpha'/2alpha) u, v' = (beta'/2beta) v) plus x -> x theta - theta x.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import RatFunc, as_ratfunc, is_perfect_power
from .arith import render as render_ratfunc
from .tower import DiffBase, Tower, _term, is_negative, lower, render_elem, render_polynomial


@dataclass(frozen=True)
class QuatAlgebra:
    alpha: RatFunc
    beta: RatFunc
    base: DiffBase = field(default_factory=DiffBase)

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_ratfunc(self.alpha))
        object.__setattr__(self, "beta", as_ratfunc(self.beta))
        if not self.alpha or not self.beta:
            raise ValueError("alpha and beta must be nonzero")

    def elem(self, c0=0, c1=0, c2=0, c3=0) -> "QuatElem":
        return QuatElem(self, (c0, c1, c2, c3))

    @property
    def one(self):
        return self.elem(1)

    @property
    def u(self):
        return self.elem(0, 1)

    @property
    def v(self):
        return self.elem(0, 0, 1)

    @property
    def uv(self):
        return self.elem(0, 0, 0, 1)

    def basis(self):
        return [self.one, self.u, self.v, self.uv]

    def resolve_xi(self, tower: Tower | None = None):
        """Return (tower, xi) with xi^2 = alpha.  A square alpha gives the
        in-field root with positive leading coefficient."""
        tower = tower if tower is not None else Tower(self.base)
        r = is_perfect_power(self.alpha, 2)
        if r is not None:
            return tower, (-r if is_negative(r) else r)
        return tower.adjoin_root(2, self.alpha, "xi")

    def check_xi(self, xi):
        if xi * xi != self.alpha:
            raise ValueError("xi^2 != alpha")


@dataclass(frozen=True)
class DerivationSpec:
    a1: RatFunc = RatFunc()
    a2: RatFunc = RatFunc()
    a3: RatFunc = RatFunc()

    def __post_init__(self):
        for name in ("a1", "a2", "a3"):
            object.__setattr__(self, name, as_ratfunc(getattr(self, name)))

    def theta(self, alg: QuatAlgebra) -> "QuatElem":
        return alg.elem(0, self.a1, self.a2, self.a3)

    def is_zero(self) -> bool:
        return not (self.a1 or self.a2 or self.a3)


class QuatElem:
    __slots__ = ("alg", "c")

    def __init__(self, alg: QuatAlgebra, coords):
        self.alg = alg
        self.c = tuple(coords)
        if len(self.c) != 4:
            raise ValueError("a quaternion has four coordinates")

    def __add__(self, other):
        if not isinstance(other, QuatElem):
            other = self.alg.elem(other)
        return QuatElem(self.alg, [a + b for a, b in zip(self.c, other.c)])

    __radd__ = __add__

    def __neg__(self):
        return QuatElem(self.alg, [-a for a in self.c])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QuatElem):
            return quat_mul(self, other)
        return QuatElem(self.alg, [a * other for a in self.c])

    def __rmul__(self, other):
        return QuatElem(self.alg, [other * a for a in self.c])

    def __eq__(self, other):
        if not isinstance(other, QuatElem):
            return NotImplemented
        return all(a == b for a, b in zip(self.c, other.c))

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def conj(self) -> "QuatElem":
        c0, c1, c2, c3 = self.c
        return QuatElem(self.alg, (c0, -c1, -c2, -c3))

    def norm(self):
        c0, c1, c2, c3 = self.c
        a, b = self.alg.alpha, self.alg.beta
        return c0 * c0 - a * c1 * c1 - b * c2 * c2 + a * b * c3 * c3

    def is_scalar(self) -> bool:
        return not any(self.c[1:])

    def map(self, fn) -> "QuatElem":
        return QuatElem(self.alg, [fn(a) for a in self.c])

    def render(self) -> str:
        parts = []
        for c, name in zip(self.c, ("", "u", "v", "uv")):
            if not c:
                continue
            s = render_elem(c)
            if not name:
                parts.append(s)
            else:
                parts.append(_term(c, name))
        out = parts[0] if parts else "0"
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __str__ = render

    def __repr__(self):
        return f"QuatElem({self.render()!r})"


def quat_mul(x: QuatElem, y: QuatElem) -> QuatElem:
    a, b = x.alg.alpha, x.alg.beta
    c0, c1, c2, c3 = x.c
    d0, d1, d2, d3 = y.c
    ab = a * b
    return QuatElem(x.alg, (
        c0 * d0 + a * (c1 * d1) + b * (c2 * d2) - ab * (c3 * d3),
        c0 * d1 + c1 * d0 - b * (c2 * d3) + b * (c3 * d2),
        c0 * d2 + c2 * d0 + a * (c1 * d3) - a * (c3 * d1),
        c0 * d3 + c3 * d0 + c1 * d2 - c2 * d1,
    ))


def quat_norm_conj(x: QuatElem):
    return x.norm(), x.conj()


def _scalar_derive(alg: QuatAlgebra, tower: Tower | None):
    if tower is not None:
        return tower.derive
    return lambda c: alg.base.derive(as_ratfunc(c))


def apply_derivation(alg: QuatAlgebra, spec: DerivationSpec, x: QuatElem, tower: Tower | None = None) -> QuatElem:
    """d(x) for d = standard derivation on (u, v) plus the inner part x theta - theta x."""
    derive = _scalar_derive(alg, tower)
    p = alg.base.derive(alg.alpha) / (2 * alg.alpha)
    q = alg.base.derive(alg.beta) / (2 * alg.beta)
    c0, c1, c2, c3 = x.c
    std = QuatElem(alg, (
        derive(c0),
        derive(c1) + c1 * p,
        derive(c2) + c2 * q,
        derive(c3) + c3 * (p + q),
    ))
    theta = spec.theta(alg)
    return std + (x * theta - theta * x)


# -- 2x2 matrices (tuples of rows) ----------------------------------------------


def mat(a, b, c, d):
    return ((a, b), (c, d))


def mat_mul(m, n):
    return (
        (m[0][0] * n[0][0] + m[0][1] * n[1][0], m[0][0] * n[0][1] + m[0][1] * n[1][1]),
        (m[1][0] * n[0][0] + m[1][1] * n[1][0], m[1][0] * n[0][1] + m[1][1] * n[1][1]),
    )


def mat_add(m, n):
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(m, n))


def mat_sub(m, n):
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(m, n))


def mat_scale(m, c):
    return tuple(tuple(x * c for x in r) for r in m)


def mat_map(m, fn):
    return tuple(tuple(fn(x) for x in r) for r in m)


def mat_det(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def mat_trace(m):
    return m[0][0] + m[1][1]


def mat_inv(m):
    det = mat_det(m)
    if not det:
        raise ZeroDivisionError("singular matrix")
    inv = 1 / det
    return ((m[1][1] * inv, -m[0][1] * inv), (-m[1][0] * inv, m[0][0] * inv))


def mat_eq(m, n) -> bool:
    return all(x == y for r, s in zip(m, n) for x, y in zip(r, s))


def mat_render(m):
    return [[render_elem(x) for x in row] for row in m]


# -- representation and the induced equations ----------------------------------------


def phi_map(alg: QuatAlgebra, xi, x: QuatElem):
    """Image of x under u -> diag(xi, -xi), v -> [[0, beta], [1, 0]]."""
    alg.check_xi(xi)
    c0, c1, c2, c3 = x.c
    b = alg.beta
    return (
        (c0 + c1 * xi, (c2 + c3 * xi) * b),
        (c2 - c3 * xi, c0 - c1 * xi),
    )


def phi_inverse(alg: QuatAlgebra, xi, m) -> QuatElem:
    alg.check_xi(xi)
    (m11, m12), (m21, m22) = m
    half = RatFunc(1) / 2
    inv_xi = 1 / xi
    w = m12 / alg.beta
    return QuatElem(alg, (
        (m11 + m22) * half,
        (m11 - m22) * inv_xi * half,
        (w + m21) * half,
        (w - m21) * inv_xi * half,
    ))


def build_P(alg: QuatAlgebra, spec: DerivationSpec, xi):
    alg.check_xi(xi)
    s = alg.base.derive(alg.beta) / (4 * alg.beta)
    a1, a2, a3 = spec.a1, spec.a2, spec.a3
    return (
        (a1 * xi + s, (a2 + a3 * xi) * alg.beta),
        (a2 - a3 * xi, -(a1 * xi) - s),
    )


def d_P(m, P, derive):
    """Entrywise derivative plus M P - P M."""
    return mat_add(mat_map(m, derive), mat_sub(mat_mul(m, P), mat_mul(P, m)))


@dataclass(frozen=True)
class RiccatiEq:
    """X' = a0 + a1c X + a2c X^2 (coefficients may live in a tower)."""

    a0: object
    a1c: object
    a2c: object
    var: str = "X"

    def rhs(self, x):
        return self.a0 + self.a1c * x + self.a2c * x * x

    def residual(self, x, derive):
        return derive(x) - self.rhs(x)

    def satisfied_by(self, x, derive) -> bool:
        return not self.residual(x, derive)

    def rational_coeffs(self):
        """(a0, a1c, a2c) as RatFuncs, or None if they involve generators."""
        out = tuple(lower(c) for c in (self.a0, self.a1c, self.a2c))
        return out if all(isinstance(c, RatFunc) for c in out) else None

    def render(self) -> str:
        return f"{self.var}' = {render_polynomial((self.a0, self.a1c, self.a2c), self.var)}"

    __str__ = render


def build_riccati(alg: QuatAlgebra, spec: DerivationSpec, xi) -> RiccatiEq:
    alg.check_xi(xi)
    s = alg.base.derive(alg.beta) / (4 * alg.beta)
    a1, a2, a3 = spec.a1, spec.a2, spec.a3
    return RiccatiEq(
        (a2 + a3 * xi) * alg.beta,
        2 * (a1 * xi + s),
        -(a2 - a3 * xi),
    )


def build_mu_rate(alg: QuatAlgebra, spec: DerivationSpec, xi, lambda1, tower: Tower | None = None):
    eq = build_riccati(alg, spec, xi)
    derive = _scalar_derive(alg, tower)
    if not eq.satisfied_by(lambda1, derive):
        raise ValueError("lambda1 does not solve the splitting Riccati equation")
    s = alg.base.derive(alg.beta) / (4 * alg.beta)
    return (spec.a2 - spec.a3 * xi) * lambda1 - (spec.a1 * xi + s)


def render_spec(spec: DerivationSpec) -> dict:
    return {"a1": render_ratfunc(spec.a1), "a2": render_ratfunc(spec.a2), "a3": render_ratfunc(spec.a3)}
