"""Differential field towers over Q(t).

A tower starts from Q(t) with a chosen derivative t' and adjoins generators
one at a time:

* ``Radical(n, f)``      theta**n = f,  theta' = f'/(n f) * theta
* ``Primitive(w)``       x' = w
* ``HyperExp(w)``        x' = w * x
* ``RiccatiGen(a0, a1, a2)``  x' = a0 + a1 x + a2 x**2

Elements of a radical level are coefficient vectors over the level below,
reduced modulo theta**n - f.  Elements of a transcendental level are reduced
fractions of polynomials in the generator over the level below with a monic
denominator.  Both forms are canonical, so equality is structural.
Non-radical generators are treated as independent indeterminates.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import linalg
from .arith import Poly, RatFunc, as_ratfunc, is_perfect_power, poly_gcd
from .arith import render as render_ratfunc


class TowerMismatch(ValueError):
    """Elements from unrelated towers were combined."""


# -- levels ----------------------------------------------------------------------


class DiffBase:
    """Q(t) with derivation t' = t_prime."""

    depth = 0
    parent = None

    def __init__(self, t_prime=1, name: str = "t"):
        self.t_prime = as_ratfunc(t_prime)
        self.name = name
        self.chain = (self,)

    def lift(self, x) -> RatFunc:
        if isinstance(x, (RadElem, TransElem)):
            raise TowerMismatch("cannot lower a tower element to the base field")
        return as_ratfunc(x)

    def derive(self, x: RatFunc) -> RatFunc:
        if x.is_constant():
            return RatFunc()
        return x.diff() * self.t_prime

    def is_standard(self) -> bool:
        return self.t_prime == 1

    def zero(self):
        return RatFunc()

    def one(self):
        return RatFunc(1)

    def __eq__(self, other):
        if not isinstance(other, DiffBase):
            return NotImplemented
        return self.name == other.name and self.t_prime == other.t_prime

    def __hash__(self):
        return hash((self.name, self.t_prime))

    def __repr__(self):
        return f"DiffBase(t'={render_ratfunc(self.t_prime)})"


def _in_chain(level, chain) -> bool:
    return any(level is c for c in chain)


class _Level:
    def __init__(self, parent, name: str):
        self.parent = parent
        self.name = name
        self.depth = parent.depth + 1
        self.chain = parent.chain + (self,)
        self.base = parent.chain[0]

    def zero(self):
        return self.wrap(self.parent.zero())

    def one(self):
        return self.wrap(self.parent.one())

    def lift(self, x):
        lvl = level_of(x)
        if lvl is self:
            return x
        if lvl is not None and not _in_chain(lvl, self.chain):
            raise TowerMismatch(f"element of level {lvl.name!r} does not belong under {self.name!r}")
        return self.wrap(self.parent.lift(x))


class RadicalLevel(_Level):
    kind = "radical"

    def __init__(self, parent, n: int, f, name: str):
        super().__init__(parent, name)
        self.n = n
        self.f = parent.lift(f)
        self.rate = parent.derive(self.f) / (self.f * n)
        self._zero = parent.zero()

    def wrap(self, y):
        return RadElem(self, (y,) + (self._zero,) * (self.n - 1))

    @property
    def gen(self):
        one = self.parent.one()
        return RadElem(self, (self._zero, one) + (self._zero,) * (self.n - 2))

    def derive(self, x):
        d = self.parent.derive
        return RadElem(self, tuple(d(c) + c * (self.rate * j) if c else c for j, c in enumerate(x.c)))

    def xprime_rate(self):
        return self.rate


class TransLevel(_Level):
    def __init__(self, parent, kind: str, xprime: Poly, name: str, data: tuple):
        super().__init__(parent, name)
        self.kind = kind
        self.xprime = Poly._raw([parent.lift(c) for c in xprime.coeffs])
        self.data = tuple(parent.lift(c) for c in data)

    def wrap(self, y):
        return TransElem._make(self, Poly._raw([y]), Poly._raw([self.parent.one()]))

    @property
    def gen(self):
        return TransElem._make(self, Poly._raw([self.parent.zero(), self.parent.one()]), Poly._raw([self.parent.one()]))

    def _dpoly(self, p: Poly) -> Poly:
        return p.map(self.parent.derive) + p.diff() * self.xprime

    def derive(self, x):
        if x.den.degree == 0:
            return TransElem(self, self._dpoly(x.num), x.den)
        dn, dd = self._dpoly(x.num), self._dpoly(x.den)
        return TransElem(self, dn * x.den - x.num * dd, x.den * x.den)


def level_of(x):
    if isinstance(x, (RadElem, TransElem)):
        return x.level
    if isinstance(x, (RatFunc, int, Fraction)):
        return None
    raise TypeError(f"not a field element: {x!r}")


def lift(x, level):
    return level.lift(x)


def lower(x):
    """Drop x to the lowest level that contains it."""
    while True:
        if isinstance(x, RadElem):
            if any(x.c[1:]):
                return x
            x = x.c[0]
        elif isinstance(x, TransElem):
            if x.den.degree > 0 or x.num.degree > 0:
                return x
            x = x.num[0] if x.num else x.level.parent.zero()
        else:
            return as_ratfunc(x)


# -- elements ---------------------------------------------------------------------


class _Elem:
    __slots__ = ()

    def _other(self, other):
        try:
            ol = level_of(other)
        except TypeError:
            return NotImplemented
        if ol is None or ol is self.level or _in_chain(ol, self.level.chain):
            return self.level.lift(other)
        if _in_chain(self.level, ol.chain):
            return NotImplemented
        raise TowerMismatch(f"levels {self.level.name!r} and {ol.name!r} are unrelated")

    def __radd__(self, other):
        return self + other

    def __rmul__(self, other):
        return self * other

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.level.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __repr__(self):
        return f"{type(self).__name__}({render_elem(self)!r})"

    def __str__(self):
        return render_elem(self)


class RadElem(_Elem):
    __slots__ = ("level", "c")

    def __init__(self, level: RadicalLevel, coeffs):
        self.level = level
        self.c = tuple(coeffs)

    def __bool__(self):
        return any(self.c)

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RadElem(self.level, tuple(a + b for a, b in zip(self.c, o.c)))

    def __neg__(self):
        return RadElem(self.level, tuple(-a for a in self.c))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        n = self.level.n
        a, b = self.c, o.c
        nzb = [(j, y) for j, y in enumerate(b) if y]
        zero = self.level._zero
        if len(nzb) == 1 and nzb[0][0] == 0:
            y = nzb[0][1]
            return RadElem(self.level, tuple(x * y if x else zero for x in a))
        prod = [zero] * (2 * n - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in nzb:
                prod[i + j] = prod[i + j] + x * y
        f = self.level.f
        for k in range(2 * n - 2, n - 1, -1):
            if prod[k]:
                prod[k - n] = prod[k - n] + prod[k] * f
        return RadElem(self.level, prod[:n])

    def conj_sqrt(self):
        """For a square-root level: c0 + c1 x -> c0 - c1 x."""
        if self.level.n != 2:
            raise ValueError("conjugation is defined for square-root levels only")
        return RadElem(self.level, (self.c[0], -self.c[1]))

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        n = self.level.n
        f = self.level.f
        if not any(self.c[1:]):
            return self.level.wrap(1 / self.c[0])
        if n == 2:
            c0, c1 = self.c
            norm = c0 * c0 - f * c1 * c1
            inv = 1 / norm
            return RadElem(self.level, (c0 * inv, -c1 * inv))
        # column j of the multiplication matrix = coefficients of self * theta**j
        cols = []
        for j in range(n):
            col = [None] * n
            for i in range(n):
                src = i - j
                col[i] = self.c[src] if src >= 0 else self.c[src + n] * f
            cols.append(col)
        matrix = [[cols[j][i] for j in range(n)] for i in range(n)]
        rhs = [self.level.parent.one()] + [self.level._zero] * (n - 1)
        return RadElem(self.level, linalg.solve(matrix, rhs))

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.c == o.c

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash(("rad", self.level.name, self.c))


class TransElem(_Elem):
    __slots__ = ("level", "num", "den")

    def __init__(self, level: TransLevel, num: Poly, den: Poly):
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.level = level
        if not num:
            self.num = Poly._raw(())
            self.den = Poly._raw([level.parent.one()])
            return
        if den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        lc = den.lc
        if lc != 1:
            inv = 1 / lc
            num, den = num * inv, den * inv
        lift = level.parent.lift
        self.num = Poly._raw([lift(c) for c in num.coeffs])
        self.den = Poly._raw([lift(c) for c in den.coeffs])

    @classmethod
    def _make(cls, level, num, den):
        x = cls.__new__(cls)
        x.level, x.num, x.den = level, num, den
        return x

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return TransElem(self.level, self.num + o.num, self.den)
        return TransElem(self.level, self.num * o.den + o.num * self.den, self.den * o.den)

    def __neg__(self):
        return TransElem._make(self.level, -self.num, self.den)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o.den.degree == 0 and o.num.degree == 0:
            c = o.num[0] if o.num else None
            if c is None:
                return self.level.zero()
            return TransElem._make(self.level, self.num * c, self.den)
        return TransElem(self.level, self.num * o.num, self.den * o.den)

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return TransElem(self.level, self.den, self.num)

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.den.degree == 0 and self.num.degree <= 0:
            return hash(self.num[0]) if self.num else 0
        return hash(("trans", self.level.name, self.num, self.den))


# -- rendering ------------------------------------------------------------------

_ATOM = re.compile(r"-?[A-Za-z0-9_]+(\^[0-9]+)?")
_PRODUCT = re.compile(r"-?[A-Za-z0-9_^]+(\*[A-Za-z0-9_^]+)*")
_FRACTION = re.compile(r"(-?)([A-Za-z0-9_^*]+)/([A-Za-z0-9_^]+|\([^()]*(\([^()]*\))*[^()]*\))")


def _wrap(s: str) -> str:
    return s if _ATOM.fullmatch(s) else f"({s})"


def _term(c, mono: str) -> str:
    s = render_elem(c)
    if not mono:
        return s
    if s == "1":
        return mono
    if s == "-1":
        return "-" + mono
    if _PRODUCT.fullmatch(s):
        return f"{s}*{mono}"
    m = _FRACTION.fullmatch(s)
    if m:
        sign, num, den = m.groups()[:3]
        head = mono if num == "1" else f"{num}*{mono}"
        return f"{sign}{head}/{den}"
    return f"({s})*{mono}"


def render_polynomial(coeffs, var: str) -> str:
    """Render sum coeffs[k] * var**k, highest power first."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        terms.append(_term(c, "" if k == 0 else (var if k == 1 else f"{var}^{k}")))
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def render_elem(x) -> str:
    """Canonical string form of a tower element."""
    if isinstance(x, RadElem):
        return render_polynomial(x.c, x.level.name)
    if isinstance(x, TransElem):
        ns = render_polynomial(x.num.coeffs, x.level.name)
        if x.den.degree == 0:
            return ns
        ds = render_polynomial(x.den.coeffs, x.level.name)
        if _PRODUCT.fullmatch(ns):
            return f"{ns}/{_wrap(ds)}"
        m = _FRACTION.fullmatch(ns)
        if m:
            sign, num, inner = m.groups()[:3]
            if inner.startswith("("):
                inner = inner[1:-1]
            parts = [p if _PRODUCT.fullmatch(p) else f"({p})" for p in (inner, ds)]
            return f"{sign}{num}/({parts[0]}*{parts[1]})"
        return f"({ns})/{_wrap(ds)}"
    return render_ratfunc(as_ratfunc(x))


def is_negative(x) -> bool:
    """Sign of the leading coefficient in the canonical form."""
    if isinstance(x, RadElem):
        for c in reversed(x.c):
            if c:
                return is_negative(c)
        return False
    if isinstance(x, TransElem):
        return is_negative(x.num.lc) if x.num else False
    x = as_ratfunc(x)
    return bool(x.num) and x.num.lc < 0


# -- steps and towers ----------------------------------------------------------


@dataclass(frozen=True)
class Radical:
    n: int
    f: object
    name: str = "theta"


@dataclass(frozen=True)
class Primitive:
    w: object
    name: str = "ell"


@dataclass(frozen=True)
class HyperExp:
    w: object
    name: str = "mu"


@dataclass(frozen=True)
class RiccatiGen:
    a0: object
    a1: object
    a2: object
    name: str = "lam"


_RESERVED = {"t", "X", "Y"}
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _prime_factors(n: int):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


class Tower:
    """An immutable differential field tower; ``adjoin`` returns a new tower."""

    def __init__(self, base: DiffBase | None = None):
        self.base = base if base is not None else DiffBase()
        self.levels = (self.base,)
        self.steps = ()
        self.aliases = {}
        self._images = {}

    def _copy(self) -> "Tower":
        new = Tower.__new__(Tower)
        new.base = self.base
        new.levels = self.levels
        new.steps = self.steps
        new.aliases = dict(self.aliases)
        new._images = dict(self._images)
        return new

    @property
    def top(self):
        return self.levels[-1]

    def names(self):
        return {lvl.name for lvl in self.levels[1:]} | set(self.aliases)

    # -- element access -------------------------------------------------------

    def elem(self, x):
        """Express x (from this tower or an ancestor of it) at the top level."""
        lvl = level_of(x)
        if lvl is None or _in_chain(lvl, self.levels):
            return self.top.lift(x) if len(self.levels) > 1 else as_ratfunc(x)
        entry = self._images.get(id(lvl))
        if entry is None:
            raise TowerMismatch(f"element from level {lvl.name!r} is not part of this tower")
        img = entry[1]
        if isinstance(x, RadElem):
            out = self.elem(0)
            for j, c in enumerate(x.c):
                if c:
                    out = out + self.elem(c) * img ** j
            return out
        num = self.elem(0)
        for j, c in enumerate(x.num.coeffs):
            if c:
                num = num + self.elem(c) * img ** j
        den = self.elem(0)
        for j, c in enumerate(x.den.coeffs):
            if c:
                den = den + self.elem(c) * img ** j
        return num / den

    def gen(self, name: str):
        if name in self.aliases:
            return self.aliases[name]
        for lvl in self.levels[1:]:
            if lvl.name == name:
                return self.elem(lvl.gen)
        raise KeyError(name)

    def symbols(self) -> dict:
        out = {lvl.name: self.elem(lvl.gen) for lvl in self.levels[1:]}
        out.update(self.aliases)
        return out

    def derive(self, x):
        x = self.elem(x)
        return self.top.derive(x)

    def is_constant(self, x) -> bool:
        return not self.derive(x)

    def equals(self, x, y) -> bool:
        return self.elem(x) == self.elem(y)

    def tr_degree(self) -> int:
        return sum(1 for lvl in self.levels[1:] if lvl.kind != "radical")

    def render(self, x) -> str:
        return render_elem(self.elem(x))

    def radical_levels(self):
        return [lvl for lvl in self.levels[1:] if lvl.kind == "radical"]

    # -- adjunction ------------------------------------------------------------

    def _check_name(self, name: str):
        if not _NAME.fullmatch(name) or name in _RESERVED:
            raise ValueError(f"invalid generator name {name!r}")
        if name in self.names():
            raise ValueError(f"duplicate generator name {name!r}")

    def fresh_name(self, stem: str) -> str:
        if stem not in self.names() and stem not in _RESERVED:
            return stem
        k = 2
        while f"{stem}{k}" in self.names():
            k += 1
        return f"{stem}{k}"

    def adjoin(self, step) -> "Tower":
        """Adjoin one step.  A radical over a radicand already present is merged
        into the existing generator (index becomes the lcm)."""
        if isinstance(step, Radical):
            return self._adjoin_radical(step)
        self._check_name(step.name)
        top = self.top
        if isinstance(step, Primitive):
            w = self.elem(step.w)
            lvl = TransLevel(top, "primitive", Poly._raw([w]), step.name, (w,))
        elif isinstance(step, HyperExp):
            w = self.elem(step.w)
            lvl = TransLevel(top, "hyperexp", Poly._raw([top.zero(), w]), step.name, (w,))
        elif isinstance(step, RiccatiGen):
            a = tuple(self.elem(x) for x in (step.a0, step.a1, step.a2))
            lvl = TransLevel(top, "riccati", Poly._raw(list(a)), step.name, a)
        else:
            raise TypeError(f"unknown tower step {step!r}")
        new = self._copy()
        new.levels = self.levels + (lvl,)
        new.steps = self.steps + (step,)
        return new

    def _adjoin_radical(self, step: Radical) -> "Tower":
        n = int(step.n)
        if n < 2:
            raise ValueError("radical index must be at least 2")
        f = self.elem(step.f)
        if not f:
            raise ValueError("zero radicand")
        for idx, lvl in enumerate(self.levels):
            if idx == 0 or lvl.kind != "radical":
                continue
            if lvl.parent is not self.levels[idx - 1]:
                continue
            if self.elem(lvl.f) == f:
                big = lcm(lvl.n, n)
                if step.name != lvl.name:
                    self._check_name(step.name)
                if big == lvl.n:
                    new = self._copy()
                    if step.name != lvl.name:
                        new.aliases[step.name] = new.elem(lvl.gen) ** (lvl.n // n)
                    return new
                return self._rebuild_radical(idx, big, n, step.name)
        self._check_name(step.name)
        lvl = RadicalLevel(self.top, n, f, step.name)
        new = self._copy()
        new.levels = self.levels + (lvl,)
        new.steps = self.steps + (Radical(n, f, step.name),)
        return new

    def _rebuild_radical(self, idx: int, big: int, n_new: int, new_name: str) -> "Tower":
        old = self.levels[idx]
        new = Tower(self.base)
        new.levels = self.levels[:idx]
        new.steps = self.steps[: idx - 1]
        new._images = dict(self._images)
        lvl = RadicalLevel(new.levels[-1], big, old.f, old.name)
        new.levels = new.levels + (lvl,)
        new.steps = new.steps + (Radical(big, old.f, old.name),)
        new._images[id(old)] = (old, lvl.gen ** (big // old.n))
        for step, prev in zip(self.steps[idx:], self.levels[idx + 1:]):
            if isinstance(step, Radical):
                stepped = Radical(step.n, new.elem(prev.f), step.name)
                new = new._adjoin_radical(stepped)
            else:
                new = new._plain_replay(step, prev)
            new._images[id(prev)] = (prev, new.elem(new.levels[-1].gen))
        # earlier images must now be expressed at the new top
        new._images = {k: (lv, new.elem(img)) for k, (lv, img) in new._images.items()}
        for name, val in self.aliases.items():
            new.aliases[name] = new.elem(val)
        if new_name != old.name:
            new.aliases[new_name] = new.elem(lvl.gen) ** (big // n_new)
        return new

    def _plain_replay(self, step, prev) -> "Tower":
        data = tuple(self.elem(d) for d in prev.data)
        if isinstance(step, Primitive):
            return self.adjoin(Primitive(data[0], step.name))
        if isinstance(step, HyperExp):
            return self.adjoin(HyperExp(data[0], step.name))
        return self.adjoin(RiccatiGen(*data, name=step.name))

    def adjoin_root(self, n: int, f, name: str = "theta"):
        """Return (tower, root) with root**n == f, reusing existing radicals
        when f differs from an existing radicand by a power."""
        f = lower(self.elem(f))
        if not f:
            raise ValueError("zero radicand")
        if n == 1:
            return self, f
        if level_of(f) is None:
            f = as_ratfunc(f)
            r = is_perfect_power(f, n)
            if r is not None:
                return self, self.elem(r)
            for p in _prime_factors(n):
                h = is_perfect_power(f, p)
                if h is not None:
                    return self.adjoin_root(n // p, h, name)
            if n % 4 == 0:
                c = is_perfect_power(f / -4, 4)
                if c is not None:
                    raise ValueError("radicand of the form -4c^4 gives a reducible radical")
            for lvl in self.radical_levels():
                g = lvl.f
                if level_of(g) is not None:
                    continue
                g = as_ratfunc(g)
                if g == f:
                    new = self._adjoin_radical(Radical(n, f, lvl.name))
                    big = lcm(lvl.n, n)
                    return new, new.gen(lvl.name) ** (big // n)
                for j in range(1, n):
                    r = is_perfect_power(f / g ** j, n)
                    if r is None:
                        continue
                    big = lcm(lvl.n, n)
                    new = self._adjoin_radical(Radical(big, g, lvl.name)) if big != lvl.n else self
                    return new, new.elem(r) * new.gen(lvl.name) ** (j * big // n)
        name = self.fresh_name(name)
        new = self._adjoin_radical(Radical(n, f, name))
        return new, new.gen(name)


def adjoin_step(tower: Tower, step) -> Tower:
    return tower.adjoin(step)


def derive_elem(tower: Tower, x):
    return tower.derive(x)


def normalize_equals(tower: Tower, x, y) -> bool:
    return tower.equals(x, y)


def is_constant(tower: Tower, x) -> bool:
    return tower.is_constant(x)


def tr_degree(tower: Tower) -> int:
    return tower.tr_degree()


def describe_step(step) -> dict:
    """JSON-ready description of a tower step."""
    if isinstance(step, Radical):
        f = render_elem(step.f)
        return {"kind": "radical", "name": step.name, "n": step.n, "radicand": f,
                "description": f"radical n={step.n} of {f}"}
    if isinstance(step, Primitive):
        w = render_elem(step.w)
        return {"kind": "primitive", "name": step.name, "derivative": w,
                "description": f"primitive {step.name}' = {w}"}
    if isinstance(step, HyperExp):
        w = render_elem(step.w)
        rhs = render_polynomial((0, step.w), step.name)
        return {"kind": "hyperexp", "name": step.name, "rate": w,
                "description": f"hyperexponential {step.name}' = {rhs}"}
    a = [render_elem(x) for x in (step.a0, step.a1, step.a2)]
    rhs = render_polynomial((step.a0, step.a1, step.a2), step.name)
    return {"kind": "riccati", "name": step.name, "a0": a[0], "a1": a[1], "a2": a[2],
            "description": f"riccati {step.name}' = {rhs}"}
