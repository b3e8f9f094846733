"""Exact polynomial and rational-function arithmetic over Q.

Polynomials are dense coefficient tuples, lowest degree first.  The same
:class:`Poly` class is reused with coefficients from any exact field (the
differential towers put tower elements in there); the gcd, squarefree and
residue routines below assume rational coefficients unless stated.

The zero polynomial has degree ``ZERO_DEGREE`` (-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd
from math import lcm as ilcm
from math import isqrt

ZERO_DEGREE = -1


def _rat(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not allowed")
    return x


class Poly:
    """Dense univariate polynomial; ``coeffs[i]`` is the coefficient of t**i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [_rat(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def _raw(cls, coeffs):
        p = cls.__new__(cls)
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        p.coeffs = tuple(c)
        return p

    @classmethod
    def monomial(cls, k: int, c=1):
        return cls([0] * k + [c])

    @classmethod
    def const(cls, c):
        return cls([c])

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly._raw([_rat(other)])

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            other = _rat(other)
            if not other:
                return Poly._raw(())
            return Poly._raw([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw(())
        out = [None] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                term = x * y
                k = i + j
                out[k] = term if out[k] is None else out[k] + term
        zero = a[0] - a[0]
        return Poly._raw([zero if c is None else c for c in out])

    def __rmul__(self, other):
        return self * other

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly._raw([self._one()])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def _one(self):
        if self.coeffs:
            c = self.coeffs[0]
            return c ** 0 if isinstance(c, Fraction) else c * 0 + 1
        return Fraction(1)

    def __divmod__(self, other):
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        if len(r) - 1 < db:
            return Poly._raw(()), self
        inv = 1 / other.lc
        q = [None] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] * inv
            q[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    r[k + i] = r[k + i] - c * b
        return Poly._raw(q), Poly._raw(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    # -- misc ----------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly._raw([_rat(other)]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __call__(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return Fraction(0) if acc is None else acc

    def diff(self) -> "Poly":
        return Poly._raw([c * i for i, c in enumerate(self.coeffs)][1:])

    def map(self, fn) -> "Poly":
        return Poly._raw([fn(c) for c in self.coeffs])

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        inv = 1 / self.lc
        return Poly._raw([c * inv for c in self.coeffs])

    def shift(self, c) -> "Poly":
        """Return p(t + c)."""
        out = Poly._raw(())
        lin = Poly._raw([c, 1])
        for coef in reversed(self.coeffs):
            out = out * lin + coef
        return out

    def reverse(self, n: int | None = None) -> "Poly":
        """Return t**n * p(1/t) with n defaulting to the degree."""
        n = self.degree if n is None else n
        c = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return Poly._raw(reversed(c[: n + 1]))

    def __repr__(self):
        return f"Poly({render_poly(self)!r})"

    def __str__(self):
        return render_poly(self)


T = Poly([0, 1])
ONE_POLY = Poly([1])


# -- integer helpers -------------------------------------------------------


def _int_primitive(p: Poly):
    """Write a rational polynomial as content * (integer primitive, lc > 0)."""
    den = 1
    for c in p.coeffs:
        den = ilcm(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for x in ints:
        g = igcd(g, x)
    if ints[-1] < 0:
        g = -g
    return Fraction(g, den), [x // g for x in ints]


def _int_prem(a, b):
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while a and len(a) - 1 >= db:
        k = len(a) - 1 - db
        la = a[-1]
        a = [lb * x for x in a]
        for i, y in enumerate(b):
            a[i + k] -= la * y
        while a and a[-1] == 0:
            a.pop()
    return a


def _int_primpart(a):
    g = 0
    for x in a:
        g = igcd(g, x)
    if a[-1] < 0:
        g = -g
    return [x // g for x in a]


_MOD_PRIMES = (2305843009213693951, 4611686018427387847)


def _coprime_mod(a, b, m) -> bool:
    """True when a and b (integer coefficient lists) have coprime images mod m
    and m keeps both degrees; that implies gcd 1 over Q."""
    if a[-1] % m == 0 or b[-1] % m == 0:
        return False
    a = [x % m for x in a]
    b = [x % m for x in b]
    while len(b) > 1:
        inv = pow(b[-1], -1, m)
        while len(a) >= len(b):
            c = a[-1] * inv % m
            k = len(a) - len(b)
            for i, y in enumerate(b):
                a[i + k] = (a[i + k] - c * y) % m
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        if not a:
            return False
        a, b = b, a
    return True


def _gcd_rational(p: Poly, q: Poly) -> Poly:
    _, a = _int_primitive(p)
    _, b = _int_primitive(q)
    if min(len(a), len(b)) > 8 and any(_coprime_mod(a, b, m) for m in _MOD_PRIMES):
        return ONE_POLY
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_prem(a, b)
        a, b = b, (_int_primpart(r) if r else [])
    return Poly(a).monic()


def _gcd_field(p: Poly, q: Poly) -> Poly:
    a, b = p.monic(), q.monic()
    if a.degree < b.degree:
        a, b = b, a
    while b:
        a, b = b, (a % b).monic()
    return a


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd; gcd(0, q) = monic(q) and gcd(0, 0) = 0."""
    if not p:
        return q.monic()
    if not q:
        return p.monic()
    if p.is_rational() and q.is_rational():
        if p.degree == 0 or q.degree == 0:
            return ONE_POLY
        return _gcd_rational(p, q)
    return _gcd_field(p, q)


def poly_xgcd(a: Poly, b: Poly):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b), g monic."""
    r0, r1 = a, b
    s0, s1 = ONE_POLY, Poly(())
    t0, t1 = Poly(()), ONE_POLY
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def poly_solve_bezout(a: Poly, b: Poly, c: Poly):
    """Find (s, t) with s*a + t*b = c and deg s < deg b."""
    g, s0, t0 = poly_xgcd(a, b)
    q, r = divmod(c, g)
    if r:
        raise ArithmeticError("c is not in the ideal (a, b)")
    s = s0 * q
    t = t0 * q
    if b.degree > 0:
        k, s = divmod(s, b)
        t = t + k * a
    return s, t


def poly_resultant(a: Poly, b: Poly):
    """Resultant of two rational polynomials (Euclidean scheme)."""
    if not a or not b:
        return Fraction(0)
    res = Fraction(1)
    while b.degree > 0:
        r = a % b
        if not r:
            return Fraction(0)
        m, n = a.degree, b.degree
        if (m * n) % 2:
            res = -res
        res *= b.lc ** (m - r.degree)
        a, b = b, r
    return res * b.lc ** a.degree


def interpolate(points) -> Poly:
    """Newton interpolation through (x, y) pairs with distinct rational x."""
    xs = [Fraction(x) for x, _ in points]
    coef = [Fraction(y) for _, y in points]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = Poly([coef[-1]])
    for i in range(n - 2, -1, -1):
        out = out * Poly([-xs[i], 1]) + coef[i]
    return out


# -- rational functions --------------------------------------------------------


class RatFunc:
    """Element of Q(t) as a reduced fraction with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None):
        if not isinstance(num, Poly):
            num = Poly([num])
        if den is None:
            den = ONE_POLY
        elif not isinstance(den, Poly):
            den = Poly([den])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = Poly(()), ONE_POLY
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
        self.num, self.den = num, den

    @classmethod
    def _make(cls, num: Poly, den: Poly) -> "RatFunc":
        r = cls.__new__(cls)
        r.num, r.den = num, den
        return r

    @classmethod
    def t(cls) -> "RatFunc":
        return cls._make(T, ONE_POLY)

    @staticmethod
    def _coerce(x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFunc._make(Poly([x]), ONE_POLY)
        if isinstance(x, Poly):
            return RatFunc._make(x, ONE_POLY)
        return None

    # -- queries -----------------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num[0]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._make(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_constant():
            c = o.num[0]
            if not c:
                return RatFunc()
            return RatFunc._make(self.num * c, self.den)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero rational function")
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc._make(self.num ** e, self.den ** e)

    def diff(self) -> "RatFunc":
        """Derivative with respect to t."""
        return RatFunc(self.num.diff() * self.den - self.num * self.den.diff(), self.den * self.den)

    def __call__(self, x):
        d = self.den(x)
        if not d:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / d

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.num[0])
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({render(self)!r})"

    def __str__(self):
        return render(self)


def as_ratfunc(x) -> RatFunc:
    r = RatFunc._coerce(x)
    if r is None:
        raise TypeError(f"cannot interpret {x!r} as an element of Q(t)")
    return r


def ratfunc_normalize(num: Poly, den: Poly) -> RatFunc:
    return RatFunc(num, den)


def ratfunc_arith(x: RatFunc, y: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


# -- rendering -------------------------------------------------------------------


def _render_int_poly(ints, var="t") -> str:
    parts = []
    for k in range(len(ints) - 1, -1, -1):
        c = ints[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts) if parts else "0"


def _is_atom(ints) -> bool:
    nz = [c for c in ints if c]
    if len(nz) != 1:
        return False
    k = len(ints) - 1
    return k == 0 or nz[0] == 1


def render_poly(p: Poly, var="t") -> str:
    if not p:
        return "0"
    if p.is_rational():
        return render(RatFunc._make(p, ONE_POLY), var)
    return " + ".join(f"({c})*{var}^{k}" for k, c in enumerate(p.coeffs) if c)


def int_normal_form(f: RatFunc):
    """Integer numerator/denominator coefficient lists with no common content."""
    den = 1
    for c in f.num.coeffs + f.den.coeffs:
        den = ilcm(den, c.denominator)
    n = [int(c * den) for c in f.num.coeffs]
    d = [int(c * den) for c in f.den.coeffs]
    g = 0
    for x in n + d:
        g = igcd(g, x)
    g = g or 1
    return [x // g for x in n], [x // g for x in d]


def render(f: RatFunc, var="t") -> str:
    """Canonical string form, re-readable by the expression parser."""
    if not f.num:
        return "0"
    n, d = int_normal_form(f)
    ns = _render_int_poly(n, var)
    if len(d) == 1 and d[0] == 1:
        return ns
    if len([c for c in n if c]) > 1:
        ns = f"({ns})"
    ds = _render_int_poly(d, var)
    if not _is_atom(d):
        ds = f"({ds})"
    return f"{ns}/{ds}"


# -- integer roots ---------------------------------------------------------------


def integer_nth_root(x: int, n: int):
    """Exact integer n-th root of x, or None."""
    if x < 0:
        if n % 2 == 0:
            return None
        r = integer_nth_root(-x, n)
        return None if r is None else -r
    if x < 2:
        return x
    if n == 2:
        r = isqrt(x)
        return r if r * r == x else None
    # Newton iteration from a starting point above the root
    r = 1 << (x.bit_length() // n + 1)
    while True:
        s = ((n - 1) * r + x // r ** (n - 1)) // n
        if s >= r:
            break
        r = s
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** n == x:
            return cand
    return None


def rational_nth_root(q: Fraction, n: int):
    a = integer_nth_root(q.numerator, n)
    b = integer_nth_root(q.denominator, n)
    if a is None or b is None:
        return None
    return Fraction(a, b)


# -- squarefree factorisation ------------------------------------------------------


@dataclass(frozen=True)
class SquarefreeFactorization:
    content: Fraction
    factors: tuple  # of (Poly, multiplicity)

    def expand(self) -> Poly:
        out = Poly([self.content])
        for f, m in self.factors:
            out = out * f ** m
        return out


def squarefree_factor(p: Poly) -> SquarefreeFactorization:
    """Yun's algorithm; factors are monic, squarefree and pairwise coprime."""
    if not p:
        raise ValueError("squarefree factorisation of the zero polynomial")
    content = p.lc
    a = p.monic()
    factors = []
    if a.degree > 0:
        c = poly_gcd(a, a.diff())
        w = a.exact_div(c)
        i = 1
        while w.degree > 0:
            y = poly_gcd(w, c)
            z = w.exact_div(y)
            if z.degree > 0:
                factors.append((z, i))
            i += 1
            w = y
            c = c.exact_div(y)
    return SquarefreeFactorization(content, tuple(factors))


def is_perfect_power(f: RatFunc, n: int):
    """Return g with g**n == f, or None."""
    if n == 1:
        return f
    if not f:
        return RatFunc()
    root = RatFunc(1)
    for part, sign in ((f.num, 1), (f.den, -1)):
        sq = squarefree_factor(part)
        c = rational_nth_root(sq.content, n)
        if c is None:
            return None
        piece = Poly([c])
        for fac, m in sq.factors:
            if m % n:
                return None
            piece = piece * fac ** (m // n)
        root = root * RatFunc(piece) if sign > 0 else root / RatFunc(piece)
    return root if root ** n == f else None


# -- rational roots ------------------------------------------------------------


def _divisors(n: int):
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def rational_roots(p: Poly) -> list:
    """All rational roots, sorted, each checked by exact substitution."""
    if not p:
        raise ValueError("rational roots of the zero polynomial")
    if p.degree <= 0:
        return []
    _, ints = _int_primitive(p)
    roots = set()
    k = 0
    while ints[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
    ints = ints[k:]
    n = len(ints) - 1
    if n >= 1:
        if n == 1:
            roots.add(Fraction(-ints[0], ints[1]))
        else:
            for d in _divisors(ints[0]):
                for e in _divisors(ints[-1]):
                    if igcd(d, e) != 1:
                        continue
                    for s in (d, -d):
                        # e**n * p(s/e) in integers
                        val = 0
                        pw_s, pw_e = 1, e ** n
                        for c in ints:
                            val += c * pw_s * pw_e
                            pw_s *= s
                            pw_e //= e
                        if val == 0:
                            roots.add(Fraction(s, e))
    return sorted(r for r in roots if p(r) == 0)


# -- partial fractions ---------------------------------------------------------


def coprime_pieces(den: Poly):
    """Split a polynomial into coprime monic (factor, multiplicity) pieces, with
    every rational linear factor separated out."""
    pieces = []
    for fac, m in squarefree_factor(den).factors:
        rest = fac
        for r in rational_roots(fac):
            lin = Poly([-r, 1])
            pieces.append((lin, m))
            rest = rest.exact_div(lin)
        if rest.degree > 0:
            pieces.append((rest.monic(), m))
    return pieces


@dataclass(frozen=True)
class PartialFractions:
    polynomial: Poly
    parts: tuple  # of (factor, (numerator over factor**1, ..., over factor**m))

    def total(self) -> RatFunc:
        out = RatFunc(self.polynomial)
        for fac, nums in self.parts:
            for j, a in enumerate(nums, start=1):
                if a:
                    out = out + RatFunc(a, fac ** j)
        return out


def partial_fractions(f: RatFunc) -> PartialFractions:
    q, r = divmod(f.num, f.den)
    parts = []
    if r and f.den.degree > 0:
        pieces = coprime_pieces(f.den)
        for fac, m in pieces:
            b = fac ** m
            cof = f.den.exact_div(b)
            # r / den = a / b + ..., a = r * cof^{-1} mod b
            g, s, _ = poly_xgcd(cof, b)
            a = (r * s) % b
            nums = [Poly(())] * m
            j = m
            while a and j > 0:
                a, c = divmod(a, fac)
                nums[j - 1] = c
                j -= 1
            parts.append((fac, tuple(nums)))
    return PartialFractions(q, tuple(parts))


# -- Hermite reduction and residues -------------------------------------------------


def hermite_reduce(f: RatFunc):
    """Write f = g' + p + h with p polynomial and h proper with squarefree
    denominator.  Returns (g, p, h).  Derivative is d/dt."""
    p, a = divmod(f.num, f.den)
    d = f.den
    g = RatFunc()
    if not a:
        return g, p, RatFunc()
    dm = poly_gcd(d, d.diff())
    ds = d.exact_div(dm)
    while dm.degree > 0:
        dm2 = poly_gcd(dm, dm.diff())
        dms = dm.exact_div(dm2)
        lhs = -(ds * dm.diff()).exact_div(dm)
        b, c = poly_solve_bezout(lhs, dms, a)
        a = c - (b.diff() * ds).exact_div(dms)
        g = g + RatFunc(b, dm)
        dm = dm2
    h = RatFunc(a, ds)
    hp, hr = divmod(h.num, h.den)
    if hp:
        p = p + hp
        h = RatFunc(hr, h.den)
    return g, p, h


@dataclass(frozen=True)
class LogDerivParts:
    polynomial_part: Poly
    terms: tuple  # of (pole_factor: Poly, residue: Fraction)
    reduced_remainder: RatFunc

    def total(self) -> RatFunc:
        out = RatFunc(self.polynomial_part) + self.reduced_remainder
        for fac, res in self.terms:
            out = out + RatFunc(fac.diff(), fac) * res
        return out


def _rt_resultant(a: Poly, d: Poly) -> Poly:
    """R(z) = res_t(d, a - z d') by evaluation and interpolation."""
    dd = d.diff()
    n = d.degree
    pts = [(z, poly_resultant(d, a - dd * z)) for z in range(n + 1)]
    return interpolate(pts)


def logderiv_residues(f: RatFunc) -> LogDerivParts:
    """Split off the part of f that is a rational combination of logarithmic
    derivative terms c * g'/g (Rothstein-Trager on the Hermite-reduced part)."""
    g, p, h = hermite_reduce(f)
    terms = []
    if h:
        a, d = h.num, h.den
        res = _rt_resultant(a, d)
        dd = d.diff()
        for z in rational_roots(res):
            if not z:
                continue
            fac = poly_gcd(d, a - dd * z)
            if fac.degree > 0:
                terms.append((fac, z))
    terms.sort(key=lambda ft: (ft[1], ft[0].coeffs))
    remainder = f - RatFunc(p)
    for fac, z in terms:
        remainder = remainder - RatFunc(fac.diff(), fac) * z
    return LogDerivParts(p, tuple(terms), remainder)
