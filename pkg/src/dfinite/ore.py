"""Linear differential and recurrence operators with polynomial coefficients.

Differential operators live in Q[z]<d/dz> with the commutation rule
d*a = a*d + a'.  The stored normal form clears denominators and divides
out the content (gcd of the coefficient polynomials together with the
integer content), so equality of normal forms is equality up to a
nonzero rational scalar.

Recurrence operators act on coefficient sequences; the two sides are
linked by ``ode_to_rec`` and ``rec_to_ode`` with the convention that a
term c * z^j * d^i contributes c * (n+m)(n+m-1)...(n+m-i+1) to the
shift m = i - j.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .errors import InputError
from .polys import Poly, RatFunc, poly_gcd_many, format_poly
from .rationals import QQ, Q0, Q1


def falling_factorial_poly(shift, length: int) -> Poly:
    """(n+shift)(n+shift-1)...(n+shift-length+1) as a polynomial in n."""
    acc = Poly([Q1])
    n = Poly.x()
    for t in range(length):
        acc = acc * (n + Poly.const(QQ(shift) - t))
    return acc


def _lcm_int(a: int, b: int) -> int:
    from math import gcd

    return a // gcd(a, b) * b


class DiffOp:
    """Differential operator sum(coeffs[i] * d^i), content-normalized."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence, normalize: bool = True):
        cs = [c if isinstance(c, Poly) else Poly(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        if normalize and cs:
            cs = _normalize_content(cs)
        self.coeffs = tuple(cs)

    @staticmethod
    def from_ratfuncs(coeffs: Sequence[RatFunc]) -> "DiffOp":
        den = Poly([Q1])
        for c in coeffs:
            g = den.gcd(c.den)
            den = den * c.den.exact_div(g)
        return DiffOp([(c * den).num for c in coeffs])

    @property
    def order(self) -> int:
        """Order; -1 for the zero operator."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Poly:
        if not self.coeffs:
            return Poly()
        return self.coeffs[-1]

    def degree(self) -> int:
        """Max coefficient degree."""
        return max((c.degree for c in self.coeffs), default=-1)

    def __getitem__(self, i: int) -> Poly:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Poly()

    def __eq__(self, other) -> bool:
        if isinstance(other, DiffOp):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "DiffOp") -> "DiffOp":
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOp([self[i] + other[i] for i in range(n)])

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOp([self[i] - other[i] for i in range(n)])

    def __repr__(self) -> str:
        if self.is_zero():
            return "DiffOp(0)"
        parts = []
        for i in range(self.order, -1, -1):
            c = self[i]
            if c.is_zero():
                continue
            d = "" if i == 0 else ("*Dz" if i == 1 else "*Dz^%d" % i)
            parts.append("(%s)%s" % (format_poly(c), d))
        return "DiffOp(%s)" % " + ".join(parts)

    def max_shift(self) -> int:
        """Largest i - j over monomials z^j d^i; controls apply_op truncation."""
        m = None
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            v = i - c.valuation()
            m = v if m is None else max(m, v)
        if m is None:
            raise InputError("zero operator has no shift profile")
        return m


def _normalize_content(cs: List[Poly]) -> List[Poly]:
    den = 1
    for p in cs:
        for c in p.coeffs:
            den = _lcm_int(den, int(c.denominator))
    cs = [p.scale(QQ(den)) for p in cs]
    g = poly_gcd_many([p for p in cs if not p.is_zero()]).primitive()
    if g.degree > 0:
        cs = [p.exact_div(g) if not p.is_zero() else p for p in cs]
    num = 0
    for p in cs:
        for c in p.coeffs:
            num = _gcd_int(num, int(c.numerator))
    if num:
        lead = cs[-1]
        if lead.coeffs[-1] < 0:
            num = -num
        cs = [p.scale(QQ(1, num)) for p in cs]
    return cs


def _gcd_int(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _normalize_int_content(cs: List[Poly]) -> List[Poly]:
    den = 1
    for p in cs:
        for c in p.coeffs:
            den = _lcm_int(den, int(c.denominator))
    cs = [p.scale(QQ(den)) for p in cs]
    num = 0
    for p in cs:
        for c in p.coeffs:
            num = _gcd_int(num, int(c.numerator))
    if num:
        if cs[-1].coeffs[-1] < 0:
            num = -num
        cs = [p.scale(QQ(1, num)) for p in cs]
    return cs


def op_mul_raw(a_coeffs: Sequence[Poly], b_coeffs: Sequence[Poly]) -> List[Poly]:
    """Unnormalized coefficient list of the product (apply b first)."""
    if not a_coeffs or not b_coeffs:
        return []
    na, nb = len(a_coeffs) - 1, len(b_coeffs) - 1
    derivs: List[List[Poly]] = []
    for bj in b_coeffs:
        row = [bj]
        for _ in range(na):
            row.append(row[-1].derivative())
        derivs.append(row)
    out = [Poly() for _ in range(na + nb + 1)]
    binom = [[1]]
    for i in range(1, na + 1):
        prev = binom[-1]
        binom.append([1] + [prev[k - 1] + prev[k] for k in range(1, i)] + [1])
    for i, ai in enumerate(a_coeffs):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b_coeffs):
            if bj.is_zero():
                continue
            for k in range(i + 1):
                out[i + j - k] = out[i + j - k] + ai * derivs[j][k].scale(QQ(binom[i][k]))
    return out


def op_mul(a: DiffOp, b: DiffOp) -> DiffOp:
    """Noncommutative product a o b (apply b first), content-normalized."""
    if a.is_zero() or b.is_zero():
        return DiffOp([])
    return DiffOp(op_mul_raw(a.coeffs, b.coeffs))


# ---------------------------------------------------------------------------
# Arithmetic over Q(z): right division and LCLM.
# ---------------------------------------------------------------------------


def _to_ratfuncs(a: DiffOp) -> List[RatFunc]:
    return [RatFunc.from_poly(c) for c in a.coeffs]


def _d_compose(t: List[RatFunc]) -> List[RatFunc]:
    """Coefficients of d o T for T given by rational-function coefficients."""
    out = [RatFunc.const(0)] * (len(t) + 1)
    for i, c in enumerate(t):
        out[i] = out[i] + c.derivative()
        out[i + 1] = out[i + 1] + c
    return out


def op_right_divrem(a: DiffOp, b: DiffOp) -> Tuple[List[RatFunc], List[RatFunc]]:
    """Right division a = q o b + r over Q(z); returns coefficient lists.

    The remainder has order < order(b).
    """
    if b.is_zero():
        raise InputError("right division by the zero operator")
    r = _to_ratfuncs(a)
    nb = b.order
    if a.is_zero() or a.order < nb:
        return [], r
    towers = [_to_ratfuncs(b)]
    for _ in range(a.order - nb):
        towers.append(_d_compose(towers[-1]))
    q = [RatFunc.const(0)] * (a.order - nb + 1)
    for k in range(a.order - nb, -1, -1):
        if len(r) < nb + k + 1:
            continue
        c = r[nb + k] / towers[k][nb + k]
        if c.is_zero():
            continue
        q[k] = c
        t = towers[k]
        for i in range(len(t)):
            r[i] = r[i] - c * t[i]
    while r and r[-1].is_zero():
        r.pop()
    return q, r


def right_divides(b: DiffOp, a: DiffOp) -> bool:
    """True iff b divides a on the right over Q(z)."""
    _, r = op_right_divrem(a, b)
    return not r


def ratfuncs_to_op(coeffs: Sequence[RatFunc]) -> DiffOp:
    return DiffOp.from_ratfuncs(list(coeffs))


def _rem_reduce(vec: List[RatFunc], b: List[RatFunc]) -> List[RatFunc]:
    """Reduce an operator given by coefficients modulo b on the right."""
    r = list(vec)
    while r and r[-1].is_zero():
        r.pop()
    nb = len(b) - 1
    while len(r) - 1 >= nb:
        k = len(r) - 1 - nb
        c = r[-1] / b[-1]
        t = b
        for _ in range(k):
            t = _d_compose(t)
        for i in range(len(t)):
            r[i] = r[i] - c * t[i]
        while r and r[-1].is_zero():
            r.pop()
    return r


def lclm(a: DiffOp, b: DiffOp) -> DiffOp:
    """Least common left multiple via kernel of the stacked remainder map.

    Builds remainders of d^k modulo a and modulo b for k = 0, 1, ... and
    stops at the first Q(z)-linear dependence; the dependence coefficients
    are the LCLM's coefficients.
    """
    if a.is_zero() or b.is_zero():
        raise InputError("lclm of the zero operator")
    na, nb = a.order, b.order
    dim = na + nb
    ra = _to_ratfuncs(a)
    rb = _to_ratfuncs(b)

    def stacked(rem_a: List[RatFunc], rem_b: List[RatFunc]) -> List[RatFunc]:
        va = [rem_a[i] if i < len(rem_a) else RatFunc.const(0) for i in range(na)]
        vb = [rem_b[i] if i < len(rem_b) else RatFunc.const(0) for i in range(nb)]
        return va + vb

    # Row-reduced basis rows with their expression in terms of d^k.
    basis: List[Tuple[int, List[RatFunc], List[RatFunc]]] = []  # (pivot, row, expr)
    rem_a: List[RatFunc] = [RatFunc.const(1)]
    rem_b: List[RatFunc] = [RatFunc.const(1)]
    for k in range(dim + 1):
        if k > 0:
            rem_a = _rem_reduce(_d_compose(rem_a), ra)
            rem_b = _rem_reduce(_d_compose(rem_b), rb)
        row = stacked(rem_a, rem_b)
        expr = [RatFunc.const(0)] * (dim + 1)
        expr[k] = RatFunc.const(1)
        for pivot, brow, bexpr in basis:
            c = row[pivot]
            if c.is_zero():
                continue
            for i in range(dim):
                row[i] = row[i] - c * brow[i]
            for i in range(dim + 1):
                expr[i] = expr[i] - c * bexpr[i]
        pivot = next((i for i in range(dim) if not row[i].is_zero()), None)
        if pivot is None:
            return DiffOp.from_ratfuncs(expr[: k + 1])
        inv = row[pivot]
        row = [x / inv for x in row]
        expr = [x / inv for x in expr]
        basis.append((pivot, row, expr))
    raise AssertionError("lclm must exist at order <= order(a) + order(b)")


# ---------------------------------------------------------------------------
# ODE <-> recurrence correspondence.
# ---------------------------------------------------------------------------


class RecOp:
    """Recurrence operator: rows sum(coeffs[j](n) * a_{n + j - backshift}).

    ``coeffs[j]`` is a polynomial in the index n; ``backshift`` is the
    absolute value of the most negative shift.  Normal form divides out
    the integer content only: dividing by a polynomial factor would
    silently strengthen rows at its nonnegative integer roots.
    """

    __slots__ = ("coeffs", "backshift")

    def __init__(self, coeffs: Sequence, backshift: int = 0, normalize: bool = True):
        cs = [c if isinstance(c, Poly) else Poly(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        while cs and cs[0].is_zero():
            cs.pop(0)
            backshift -= 1
        if normalize and cs:
            cs = _normalize_int_content(cs)
        self.coeffs = tuple(cs)
        self.backshift = backshift if cs else 0

    @property
    def order(self) -> int:
        """Span of shifts (max shift - min shift); -1 for zero."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def max_shift(self) -> int:
        return len(self.coeffs) - 1 - self.backshift

    @property
    def leading(self) -> Poly:
        return self.coeffs[-1] if self.coeffs else Poly()

    def shifts(self) -> range:
        return range(-self.backshift, len(self.coeffs) - self.backshift)

    def coeff_of_shift(self, m: int) -> Poly:
        j = m + self.backshift
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else Poly()

    def __eq__(self, other) -> bool:
        if isinstance(other, RecOp):
            return self.coeffs == other.coeffs and self.backshift == other.backshift
        return NotImplemented

    def __repr__(self) -> str:
        parts = []
        for m in self.shifts():
            p = self.coeff_of_shift(m)
            if p.is_zero():
                continue
            idx = "n" if m == 0 else ("n%+d" % m)
            parts.append("(%s)*a(%s)" % (format_poly(p, "n"), idx))
        return "RecOp(%s)" % " + ".join(parts) if parts else "RecOp(0)"

    def row(self, n: int) -> List[Tuple[int, object]]:
        """Evaluated row at index n: [(target index, coefficient value)]."""
        out = []
        for m in self.shifts():
            p = self.coeff_of_shift(m)
            if p.is_zero():
                continue
            v = p(QQ(n))
            if v != 0:
                out.append((n + m, v))
        return out


def ode_to_rec(op: DiffOp) -> RecOp:
    """Recurrence satisfied by coefficient sequences of solutions of op."""
    if op.is_zero():
        raise InputError("zero operator")
    table = {}
    for i, ci in enumerate(op.coeffs):
        for j, c in enumerate(ci.coeffs):
            if c == 0:
                continue
            m = i - j
            term = falling_factorial_poly(m, i).scale(c)
            table[m] = table.get(m, Poly()) + term
    m_min = min(table)
    m_max = max(table)
    coeffs = [table.get(m, Poly()) for m in range(m_min, m_max + 1)]
    return RecOp(coeffs, backshift=-m_min)


_STIRLING2 = [[1]]


def _stirling2(n: int, k: int) -> int:
    """Stirling numbers of the second kind (cached table)."""
    while len(_STIRLING2) <= n:
        t = len(_STIRLING2)
        prev = _STIRLING2[-1]
        row = [0] * (t + 1)
        for i in range(1, t + 1):
            row[i] = (prev[i] * i if i < t else 0) + prev[i - 1]
        _STIRLING2.append(row)
    return _STIRLING2[n][k] if 0 <= k <= n else 0


def rec_to_ode(rec: RecOp) -> DiffOp:
    """Differential operator whose power-series solutions are exactly the
    generating functions of sequences satisfying rec at every n >= 0.

    Boundary rows n = -1, ..., -max_shift would impose extra conditions
    on a_0, a_1, ...; any non-vacuous one is damped by an (n + t) factor
    before converting, which leaves the n >= 0 rows untouched.
    """
    if rec.is_zero():
        raise InputError("zero recurrence")
    m_max = rec.max_shift
    damp = Poly([Q1])
    for t in range(1, m_max + 1):
        if any(
            m >= t and not rec.coeff_of_shift(m).is_zero()
            and rec.coeff_of_shift(m)(QQ(-t)) != 0
            for m in rec.shifts()
        ):
            damp = damp * Poly([QQ(t), Q1])  # (n + t)
    table = {}
    for m in rec.shifts():
        p = rec.coeff_of_shift(m) * damp
        if p.is_zero():
            continue
        q = p.compose_shift(QQ(-m))  # p(theta - m)
        for t, c in enumerate(q.coeffs):
            if c == 0:
                continue
            for i in range(t + 1):
                s = _stirling2(t, i)
                if s == 0:
                    continue
                j = m_max - m + i
                key = (i, j)
                table[key] = table.get(key, Q0) + c * s
    order = max(i for i, _ in table)
    coeffs = [Poly() for _ in range(order + 1)]
    for (i, j), c in table.items():
        if c != 0:
            coeffs[i] = coeffs[i] + Poly.x(j).scale(c)
    return DiffOp(coeffs)
