"""Dense univariate polynomials and rational functions over Q.

Coefficients are stored lowest degree first; the zero polynomial is the
empty coefficient tuple.  Rational-root extraction is delegated to
sympy's factorization (linear factors of the squarefree part), which
avoids factoring large integer constant terms.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

from .rationals import QQ, Q0, Q1

_SYMPY_X = None


def _sympy_x():
    global _SYMPY_X
    if _SYMPY_X is None:
        import sympy

        _SYMPY_X = sympy.Symbol("x")
    return _SYMPY_X


class Poly:
    """Univariate polynomial over Q, dense, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if not isinstance(c, int) else QQ(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------

    @staticmethod
    def const(c) -> "Poly":
        return Poly([QQ(c) if isinstance(c, int) else c])

    @staticmethod
    def x(power: int = 1) -> "Poly":
        return Poly([Q0] * power + [Q1])

    # -- basic queries -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self):
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else Q0

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Q0

    def valuation(self) -> int:
        """Order of vanishing at 0; -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        raise AssertionError("unnormalized polynomial")

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    def __radd__(self, other) -> "Poly":
        return self.__add__(other)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return Poly()
            out = [Q0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai == 0:
                    continue
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
            return Poly(out)
        return Poly([c * other for c in self.coeffs])

    def __rmul__(self, other) -> "Poly":
        return self.__mul__(other)

    def scale(self, c) -> "Poly":
        return Poly([a * c for a in self.coeffs])

    def shift_up(self, k: int) -> "Poly":
        """Multiply by x**k."""
        if not self.coeffs:
            return self
        return Poly([Q0] * k + list(self.coeffs))

    def divmod(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        """Exact Euclidean division over Q."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.coeffs
        dd = len(d) - 1
        inv_lc = 1 / d[-1]
        q = [Q0] * max(0, len(r) - dd)
        for i in range(len(r) - 1, dd - 1, -1):
            c = r[i]
            if c == 0:
                continue
            c = c * inv_lc
            q[i - dd] = c
            for j in range(dd + 1):
                r[i - dd + j] -= c * d[j]
        return Poly(q), Poly(r[:dd] if dd > 0 else [])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def derivative(self) -> "Poly":
        return Poly([self.coeffs[i] * i for i in range(1, len(self.coeffs))])

    def __call__(self, point):
        """Horner evaluation; accepts any ring element (Poly included)."""
        if not self.coeffs:
            return Q0 if not isinstance(point, Poly) else Poly()
        acc = self.coeffs[-1]
        if isinstance(point, Poly):
            acc = Poly.const(acc)
        for c in reversed(self.coeffs[:-1]):
            acc = acc * point + c
        return acc

    def compose_shift(self, a) -> "Poly":
        """Taylor shift: p(x + a)."""
        return self(Poly([a, Q1]))

    def reversed(self, at_degree: int | None = None) -> "Poly":
        """Coefficient reversal x**d * p(1/x), with d defaulting to deg(p)."""
        d = self.degree if at_degree is None else at_degree
        if d < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        out = [Q0] * (d + 1)
        for i, c in enumerate(self.coeffs):
            out[d - i] = c
        return Poly(out)

    # -- normal forms ----------------------------------------------------

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.lc)

    def int_clear(self) -> Tuple["Poly", object]:
        """Scale to integer coefficients; returns (integer poly, multiplier)."""
        if self.is_zero():
            return self, Q1
        den = 1
        for c in self.coeffs:
            d = c.denominator
            den = den * d // _gcd_int(den, d)
        return self.scale(QQ(den)), QQ(den)

    def primitive(self) -> "Poly":
        """Integer-primitive form with positive leading coefficient."""
        if self.is_zero():
            return self
        p, _ = self.int_clear()
        g = 0
        for c in p.coeffs:
            g = _gcd_int(g, int(c.numerator))
        if p.lc < 0:
            g = -g
        return p.scale(QQ(1, g))

    # -- gcd, squarefree, roots -----------------------------------------

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd via the Euclidean algorithm with content control."""
        a, b = self, other
        if a.is_zero():
            return b.monic()
        if b.is_zero():
            return a.monic()
        a = a.primitive()
        b = b.primitive()
        while not b.is_zero():
            _, r = a.divmod(b)
            a, b = b, (r.primitive() if not r.is_zero() else r)
        return a.monic()

    def squarefree_part(self) -> "Poly":
        if self.degree <= 0:
            return self.monic()
        g = self.gcd(self.derivative())
        return self.exact_div(g).monic()

    def rational_roots(self) -> List[Tuple[object, int]]:
        """All rational roots with multiplicities, sorted.

        Uses sympy factorization of the integer-primitive form (linear
        factors only), so no integer constant-term factoring happens.
        """
        if self.is_zero():
            raise ValueError("zero polynomial has every root")
        if self.degree == 0:
            return []
        import sympy

        x = _sympy_x()
        p, _ = self.int_clear()
        expr = sympy.Poly([int(c.numerator) for c in reversed(p.coeffs)], x)
        roots = []
        for fac, mult in expr.factor_list()[1]:
            if fac.degree() == 1:
                c1, c0 = fac.all_coeffs()
                roots.append((QQ(-int(c0), int(c1)), mult))
        roots.sort(key=lambda t: t[0])
        return roots

    def resultant(self, other: "Poly") -> object:
        """Resultant over Q (sympy-backed)."""
        import sympy

        x = _sympy_x()

        def to_sympy(p: "Poly"):
            return sympy.Poly(
                [sympy.Rational(int(c.numerator), int(c.denominator))
                 for c in reversed(p.coeffs)] or [0],
                x,
            )

        r = sympy.resultant(to_sympy(self), to_sympy(other), x)
        r = sympy.Rational(r)
        return QQ(int(r.p), int(r.q))

    # -- display ---------------------------------------------------------

    def __repr__(self) -> str:
        return "Poly(%s)" % (format_poly(self, "z"),)


def _gcd_int(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def poly_gcd_many(polys: Sequence[Poly]) -> Poly:
    g = Poly()
    for p in polys:
        g = g.gcd(p)
        if g.degree == 0:
            break
    return g


def format_rat(c) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return "%d/%d" % (c.numerator, c.denominator)


def format_poly(p: Poly, var: str = "z") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p[i]
        if c == 0:
            continue
        if i == 0:
            term = format_rat(c)
        else:
            xi = var if i == 1 else "%s^%d" % (var, i)
            if c == 1:
                term = xi
            elif c == -1:
                term = "-" + xi
            else:
                term = "%s*%s" % (format_rat(c), xi)
        parts.append(term)
    out = parts[0]
    for t in parts[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


class RatFunc:
    """Rational function num/den with monic reduced denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = None, reduce: bool = True):
        if den is None:
            den = Poly([Q1])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce and not num.is_zero() and den.degree > 0:
            g = num.gcd(den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        if num.is_zero():
            den = Poly([Q1])
        c = den.lc
        if c != 1:
            num = num.scale(1 / c)
            den = den.scale(1 / c)
        self.num = num
        self.den = den

    @staticmethod
    def const(c) -> "RatFunc":
        return RatFunc(Poly.const(c), Poly([Q1]), reduce=False)

    @staticmethod
    def from_poly(p: Poly) -> "RatFunc":
        return RatFunc(p, Poly([Q1]), reduce=False)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Poly, int)):
            return self == RatFunc.from_poly(other if isinstance(other, Poly) else Poly.const(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other) -> "RatFunc":
        other = _coerce(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other) -> "RatFunc":
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return (-self) + _coerce(other)

    def __mul__(self, other) -> "RatFunc":
        other = _coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def derivative(self) -> "RatFunc":
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __repr__(self) -> str:
        if self.is_poly():
            return "RatFunc(%s)" % format_poly(self.num)
        return "RatFunc((%s)/(%s))" % (format_poly(self.num), format_poly(self.den))


def _coerce(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc.from_poly(x)
    return RatFunc.const(x)
