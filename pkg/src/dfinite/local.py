"""Local analysis at singular points: indicial polynomials, rational
exponents, and Frobenius bases with logarithm detection.

A finite point is handled by shifting it to the origin; infinity by the
substitution z = 1/w.  Points that are algebraic of degree > 1 over Q
are handled as one cluster through arithmetic in Q[a]/(m(a)); any zero
divisor encountered on the way splits the modulus and the analysis is
rerun per branch (see :mod:`dfinite.quotient`).

The series construction follows the classical method of Frobenius.  For
the exponents in one congruence class mod 1, processed downwards, the
solution attached to an exponent mu is extracted from the deformation
series sum_m c_m(mu + eps) t^(mu + eps + m) computed over the truncated
ring K[eps]/(eps^P); expanding t^eps into powers of eps * log(t) turns
the eps-coefficients into genuine (possibly logarithmic) solutions.  A
resonance where division by the indicial value fails with a nonzero
right-hand side is exactly where a logarithm enters.
"""

from __future__ import annotations

from math import factorial
from typing import Dict, List, Optional, Tuple

from .errors import InputError, IrregularPoint, ZeroDivisorSplit
from .ore import DiffOp, op_mul_raw
from .polys import Poly, format_poly
from .quotient import DomainQQ, ModRing, QQ_DOMAIN, gcd_with_modulus, split_cases
from .rationals import QQ, Q0, Q1, is_integer


# ---------------------------------------------------------------------------
# Singular points
# ---------------------------------------------------------------------------


class SingularPoint:
    """Rational point, algebraic cluster (by modulus), or infinity."""

    __slots__ = ("kind", "value", "modulus")

    RATIONAL = "rational"
    ALGEBRAIC = "algebraic"
    INFINITY = "infinity"

    def __init__(self, kind: str, value=None, modulus: Optional[Poly] = None):
        self.kind = kind
        self.value = value
        self.modulus = modulus

    @staticmethod
    def rational(v) -> "SingularPoint":
        return SingularPoint(SingularPoint.RATIONAL, value=QQ(v) if isinstance(v, int) else v)

    @staticmethod
    def algebraic(modulus: Poly) -> "SingularPoint":
        return SingularPoint(SingularPoint.ALGEBRAIC, modulus=modulus.monic())

    @staticmethod
    def infinity() -> "SingularPoint":
        return SingularPoint(SingularPoint.INFINITY)

    def sort_key(self):
        if self.kind == self.RATIONAL:
            return (0, abs(self.value), self.value)
        if self.kind == self.ALGEBRAIC:
            return (1, self.modulus.degree, tuple(self.modulus.coeffs))
        return (2,)

    def __eq__(self, other):
        if not isinstance(other, SingularPoint):
            return NotImplemented
        return (self.kind, self.value, self.modulus) == (other.kind, other.value, other.modulus)

    def __hash__(self):
        return hash((self.kind, self.value, self.modulus))

    def __repr__(self):
        if self.kind == self.RATIONAL:
            return "SingularPoint(z=%s)" % (self.value,)
        if self.kind == self.ALGEBRAIC:
            return "SingularPoint(%s = 0)" % format_poly(self.modulus)
        return "SingularPoint(oo)"

    def label(self) -> str:
        if self.kind == self.RATIONAL:
            return str(self.value)
        if self.kind == self.ALGEBRAIC:
            return "root of %s" % format_poly(self.modulus)
        return "infinity"


def singularities(op: DiffOp) -> List[SingularPoint]:
    """Singular points of the operator: rational roots of the leading
    coefficient, the remaining squarefree cofactor as one cluster, and
    infinity (always included; it is cheap to analyze)."""
    if op.is_zero():
        raise InputError("zero operator")
    lead = op.leading
    points: List[SingularPoint] = []
    if lead.degree > 0:
        sf = lead.squarefree_part()
        for root, _ in sf.rational_roots():
            points.append(SingularPoint.rational(root))
            sf = sf.exact_div(Poly([-root, Q1]))
        if sf.degree > 0:
            points.append(SingularPoint.algebraic(sf))
    points.append(SingularPoint.infinity())
    points.sort(key=SingularPoint.sort_key)
    return points


def transform_infinity(op: DiffOp) -> DiffOp:
    """Operator in w for the substitution z = 1/w, d/dz = -w^2 d/dw."""
    if op.is_zero():
        raise InputError("zero operator")
    big_d = max(c.degree for c in op.coeffs if not c.is_zero())
    e_i = [Poly([Q1])]  # coefficients of (-w^2 d/dw)^i, built iteratively
    neg_w2_d = [Poly(), Poly([Q0, Q0, QQ(-1)])]
    total: List[Poly] = []
    for i, a in enumerate(op.coeffs):
        if i > 0:
            e_i = op_mul_raw(neg_w2_d, e_i)
        if a.is_zero():
            continue
        weight = a.reversed().shift_up(big_d - a.degree)
        term = op_mul_raw([weight], e_i)
        for j, p in enumerate(term):
            while len(total) <= j:
                total.append(Poly())
            total[j] = total[j] + p
    return DiffOp(total)


# ---------------------------------------------------------------------------
# Lambda-polynomials over a coefficient domain (plain coefficient lists)
# ---------------------------------------------------------------------------


def _lam_trim(p: List, dom) -> List:
    while p and dom.is_zero(p[-1]):
        p.pop()
    return p


def _lam_add(a: List, b: List, dom) -> List:
    out = list(a) + [dom.zero()] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return _lam_trim(out, dom)


def _lam_scale(a: List, c) -> List:
    return [x * c for x in a]


def _lam_mul(a: List, b: List, dom) -> List:
    if not a or not b:
        return []
    out = [dom.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _lam_trim(out, dom)


def _lam_eval(a: List, x, dom):
    """Horner evaluation at a domain element or jet."""
    if isinstance(x, Jet):
        acc = Jet(dom, [dom.zero()] * x.prec)
        for c in reversed(a):
            acc = acc * x + Jet.const(dom, c, x.prec)
        return acc
    if not a:
        return dom.zero()
    acc = None
    for c in reversed(a):
        acc = c if acc is None else acc * x + c
    return acc


def _falling_lam(shift, length: int, dom) -> List:
    """(lam + shift)(lam + shift - 1)...(lam + shift - length + 1)."""
    acc = [dom.one()]
    for t in range(length):
        acc = _lam_mul(acc, [dom.from_rat(QQ(shift) - t), dom.one()], dom)
    return acc


# ---------------------------------------------------------------------------
# Theta form and indicial data
# ---------------------------------------------------------------------------


def _local_coeffs(op: DiffOp, point: SingularPoint, dom):
    """Operator coefficients recentred at the point, over the domain."""
    if point.kind == SingularPoint.INFINITY:
        shifted = transform_infinity(op).coeffs
        return [[dom.from_rat(c) for c in p.coeffs] for p in shifted]
    if point.kind == SingularPoint.RATIONAL:
        s = point.value
        return [[dom.from_rat(c) for c in p.compose_shift(s).coeffs] for p in op.coeffs]
    # algebraic: shift by the residue class of z modulo the modulus
    alpha = dom.gen()
    out = []
    for p in op.coeffs:
        # Horner for p(t + alpha) as a polynomial in t over the quotient ring
        acc: List = []
        for c in reversed(p.coeffs):
            acc = _shifted_mul_t_plus(acc, alpha, dom)
            if not acc:
                acc = [dom.from_rat(c)]
            else:
                acc[0] = acc[0] + dom.from_rat(c)
        out.append(acc)
    return out


def _shifted_mul_t_plus(p: List, alpha, dom) -> List:
    """p(t) * (t + alpha) over the domain."""
    if not p:
        return []
    out = [dom.zero()] * (len(p) + 1)
    for i, c in enumerate(p):
        out[i + 1] = out[i + 1] + c
        out[i] = out[i] + c * alpha
    return out


def _series_valuation(p: List, dom) -> int:
    """Index of the first nonzero coefficient; -1 for zero (vanishing
    of a quotient-ring element is coordinatewise, no split needed)."""
    for i, c in enumerate(p):
        if not dom.is_zero(c):
            return i
    return -1


def theta_form(coeffs: List[List], dom) -> Tuple[int, List[List]]:
    """(v, [q_0, q_1, ...]) with L(t^u) = t^(u+v) * sum_k q_k(u) t^k."""
    v = None
    for i, a in enumerate(coeffs):
        val = _series_valuation(a, dom)
        if val < 0:
            continue
        s = val - i
        v = s if v is None else min(v, s)
    if v is None:
        raise InputError("zero operator")
    qs: Dict[int, List] = {}
    for i, a in enumerate(coeffs):
        for u, c in enumerate(a):
            if dom.is_zero(c):
                continue
            k = u - i - v
            term = _lam_scale(_falling_lam(0, i, dom), c)
            qs[k] = _lam_add(qs.get(k, []), term, dom)
    kmax = max(qs) if qs else 0
    return v, [qs.get(k, []) for k in range(kmax + 1)]


class IndicialData:
    """Indicial polynomial at a point plus its rational-root profile."""

    __slots__ = (
        "point", "branch", "poly", "degree", "rational_roots",
        "splits_distinct_rational", "dom",
    )

    def __init__(self, point, branch, poly, degree, rational_roots, dom):
        self.point = point
        self.branch = branch  # modulus of the branch for algebraic clusters
        self.poly = poly      # lambda-coefficients over dom
        self.degree = degree
        self.rational_roots = rational_roots  # [(root, multiplicity)]
        distinct = len(rational_roots)
        total = sum(m for _, m in rational_roots)
        self.splits_distinct_rational = (
            distinct == degree and total == degree and all(m == 1 for _, m in rational_roots)
        )
        self.dom = dom

    def as_q_poly(self) -> Poly:
        """The indicial polynomial over Q (rational/infinity points only)."""
        if isinstance(self.dom, DomainQQ):
            return Poly(self.poly)
        raise InputError("indicial polynomial lives in a quotient ring")

    def monic_q_poly(self) -> Poly:
        return self.as_q_poly().monic()

    def root_multiplicity(self, r) -> int:
        for root, m in self.rational_roots:
            if root == r:
                return m
        return 0

    def __repr__(self):
        return "IndicialData(point=%s, degree=%d, roots=%s)" % (
            self.point.label(), self.degree, self.rational_roots)


def _indicial_over(op: DiffOp, point: SingularPoint, dom) -> Tuple[List, int]:
    coeffs = _local_coeffs(op, point, dom)
    _, qs = theta_form(coeffs, dom)
    ind = qs[0]
    # a zero-divisor leading coefficient means the degree differs between
    # branches; force a split before reporting a degree
    if getattr(dom, "is_quotient", False):
        for c in reversed(ind):
            if dom.is_zero(c):
                continue
            g = gcd_with_modulus(c, dom.modulus)
            if 0 < g.degree < dom.modulus.degree:
                raise ZeroDivisorSplit(g, dom.modulus.exact_div(g))
            break
    return ind, len(ind) - 1


def _rational_roots_lam_q(ind: List) -> List[Tuple[object, int]]:
    return Poly(ind).rational_roots()


def rational_roots_nf(ind: List, dom) -> List[Tuple[object, int]]:
    """Rational roots (with multiplicity) of a lambda-polynomial over the
    domain.  Over a quotient ring, roots that hold on only part of the
    modulus raise ZeroDivisorSplit so the caller can branch."""
    if isinstance(dom, DomainQQ):
        return _rational_roots_lam_q(ind)
    ring: ModRing = dom
    # candidates: rational roots of Res_alpha(m, P); a root valid on any
    # branch must divide the resultant
    import sympy

    x, lam = sympy.symbols("x lam")
    m_expr = sum(
        sympy.Rational(int(c.numerator), int(c.denominator)) * x ** i
        for i, c in enumerate(ring.modulus.coeffs)
    )
    p_expr = 0
    all_zero = True
    content = None
    for j, e in enumerate(ind):
        e_poly = Poly(e.coeffs)
        if not e_poly.is_zero():
            all_zero = False
            content = e_poly.monic() if content is None else content.gcd(e_poly)
        for d, c in enumerate(e.coeffs):
            if c != 0:
                p_expr += sympy.Rational(int(c.numerator), int(c.denominator)) * x ** d * lam ** j
    if all_zero:
        raise InputError("zero polynomial")
    g = content.gcd(ring.modulus)
    if g.degree > 0:
        # the whole polynomial vanishes on a sub-branch
        raise ZeroDivisorSplit(g, ring.modulus.exact_div(g))
    res = sympy.resultant(sympy.Poly(p_expr, x), sympy.Poly(m_expr, x), x)
    res_poly = sympy.Poly(sympy.expand(res), lam)
    cand = Poly([QQ(int(sympy.Rational(c).p), int(sympy.Rational(c).q))
                 for c in reversed(res_poly.all_coeffs())])
    if cand.is_zero():
        raise AssertionError("resultant vanished despite trivial content")
    out = []
    for r, _ in cand.rational_roots():
        mult = 0
        rem = list(ind)
        while rem:
            value = _lam_eval(rem, dom.from_rat(r), dom)
            if dom.is_zero(value):
                pass
            else:
                gg = gcd_with_modulus(value, ring.modulus)
                if gg.degree == 0:
                    break
                raise ZeroDivisorSplit(gg, ring.modulus.exact_div(gg))
            mult += 1
            # synthetic division by (lam - r)
            new = []
            carry = dom.zero()
            for c in reversed(rem):
                carry = c + carry * dom.from_rat(r)
                new.append(carry)
            new.reverse()
            rem = _lam_trim(new[1:], dom)
        if mult:
            out.append((r, mult))
    out.sort(key=lambda t: t[0])
    return out


def indicial_branches(op: DiffOp, point: SingularPoint) -> List[IndicialData]:
    """Indicial data at a point; algebraic clusters may yield several
    branches after zero-divisor splits."""
    if op.is_zero():
        raise InputError("zero operator")
    if point.kind != SingularPoint.ALGEBRAIC:
        ind, deg = _indicial_over(op, point, QQ_DOMAIN)
        roots = _rational_roots_lam_q(ind)
        return [IndicialData(point, None, ind, deg, roots, QQ_DOMAIN)]

    def branch_fn(m: Poly):
        ring = ModRing(m)
        ind, deg = _indicial_over(op, SingularPoint.algebraic(m), ring)
        roots = rational_roots_nf(ind, ring)
        return ind, deg, roots, ring

    out = []
    for m, (ind, deg, roots, ring) in split_cases(point.modulus, branch_fn):
        sub = SingularPoint.algebraic(m)
        out.append(IndicialData(sub, m, ind, deg, roots, ring))
    return out


def indicial(op: DiffOp, point: SingularPoint) -> IndicialData:
    """Single-branch convenience wrapper around :func:`indicial_branches`."""
    branches = indicial_branches(op, point)
    if len(branches) != 1:
        raise InputError("modulus split; use indicial_branches")
    return branches[0]


# ---------------------------------------------------------------------------
# Jets: K[eps]/(eps^P)
# ---------------------------------------------------------------------------


class Jet:
    """Truncated power series in a deformation parameter over a domain."""

    __slots__ = ("dom", "coeffs")

    def __init__(self, dom, coeffs: List):
        self.dom = dom
        self.coeffs = list(coeffs)

    @staticmethod
    def const(dom, value, prec: int) -> "Jet":
        return Jet(dom, [value] + [dom.zero()] * (prec - 1))

    @staticmethod
    def eps_power(dom, k: int, prec: int) -> "Jet":
        cs = [dom.zero()] * prec
        if k < prec:
            cs[k] = dom.one()
        return Jet(dom, cs)

    @property
    def prec(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "Jet") -> "Jet":
        return Jet(self.dom, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "Jet") -> "Jet":
        return Jet(self.dom, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "Jet":
        return Jet(self.dom, [-a for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.dom, [a * other for a in self.coeffs])
        p = self.prec
        out = [self.dom.zero()] * p
        for i, a in enumerate(self.coeffs):
            if self.dom.is_zero(a):
                continue
            for j in range(p - i):
                b = other.coeffs[j]
                if not self.dom.is_zero(b):
                    out[i + j] = out[i + j] + a * b
        return Jet(self.dom, out)

    __rmul__ = __mul__

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if not self.dom.is_zero(c):
                return i
        return self.prec

    def is_zero(self) -> bool:
        return self.valuation() >= self.prec

    def divide(self, other: "Jet") -> "Jet":
        """Laurent-aware division; requires val(self) >= val(other)."""
        v = other.valuation()
        if v >= other.prec:
            raise ZeroDivisionError("division by zero jet")
        if v and self.valuation() < v:
            raise AssertionError("jet division would need negative powers")
        p = self.prec
        num = self.coeffs[v:] + [self.dom.zero()] * v
        den = other.coeffs[v:] + [self.dom.zero()] * v
        inv0 = self.dom.inv(den[0])
        out = []
        for n in range(p):
            acc = num[n]
            for k in range(1, n + 1):
                if k < len(den) and not self.dom.is_zero(den[k]) and not self.dom.is_zero(out[n - k]):
                    acc = acc - den[k] * out[n - k]
            out.append(acc * inv0)
        return Jet(self.dom, out)


# ---------------------------------------------------------------------------
# Logarithmic generalized series
# ---------------------------------------------------------------------------


class LogSeries:
    """sum_j log(t)^j * t^exponent * (series in t) over a domain.

    ``layers[j][i]`` is the coefficient of log(t)^j * t^(exponent + i);
    all layers share the truncation length.
    """

    __slots__ = ("dom", "exponent", "layers")

    def __init__(self, dom, exponent, layers: List[List]):
        self.dom = dom
        self.exponent = exponent
        self.layers = layers

    @property
    def trunc(self) -> int:
        return len(self.layers[0]) if self.layers else 0

    def has_logs(self) -> bool:
        return any(
            any(not self.dom.is_zero(c) for c in layer)
            for layer in self.layers[1:]
        )

    def is_zero(self) -> bool:
        return all(all(self.dom.is_zero(c) for c in layer) for layer in self.layers)

    def leading(self) -> Tuple[object, int]:
        """(exponent, log power) of the lowest nonzero term."""
        best = None
        for j, layer in enumerate(self.layers):
            for i, c in enumerate(layer):
                if not self.dom.is_zero(c):
                    if best is None or (i, j) < best:
                        best = (i, j)
                    break
        if best is None:
            raise InputError("zero series has no leading term")
        return self.exponent + best[0], best[1]

    def derivative(self) -> "LogSeries":
        dom = self.dom
        nlay = len(self.layers)
        n = self.trunc
        out = [[dom.zero()] * n for _ in range(nlay)]
        for j, layer in enumerate(self.layers):
            for i, c in enumerate(layer):
                if dom.is_zero(c):
                    continue
                e = self.exponent + i
                out[j][i] = out[j][i] + c * dom.from_rat(e)
                if j > 0:
                    out[j - 1][i] = out[j - 1][i] + c * dom.from_rat(QQ(j))
        while len(out) > 1 and all(dom.is_zero(c) for c in out[-1]):
            out.pop()
        return LogSeries(dom, self.exponent - 1, out)

    def mul_monomial(self, coeff, power: int) -> "LogSeries":
        """Multiply by coeff * t^power (truncation length is preserved)."""
        dom = self.dom
        n = self.trunc
        out = [[dom.zero()] * n for _ in self.layers]
        for j, layer in enumerate(self.layers):
            for i, c in enumerate(layer):
                if not dom.is_zero(c):
                    out[j][i] = c * coeff
        return LogSeries(dom, self.exponent + power, out)

    @staticmethod
    def add_all(terms: List["LogSeries"]) -> "LogSeries":
        terms = [t for t in terms if t.layers]
        if not terms:
            raise InputError("empty sum")
        dom = terms[0].dom
        base = min(t.exponent for t in terms)
        for t in terms:
            if not is_integer(t.exponent - base):
                raise InputError("cannot align exponents differing by non-integers")
        # valid length: every term must cover the coefficient slot
        length = min(int(t.exponent - base) + t.trunc for t in terms)
        nlay = max(len(t.layers) for t in terms)
        out = [[dom.zero()] * length for _ in range(nlay)]
        for t in terms:
            off = int(t.exponent - base)
            for j, layer in enumerate(t.layers):
                for i, c in enumerate(layer):
                    if i + off < length and not dom.is_zero(c):
                        out[j][i + off] = out[j][i + off] + c
        while len(out) > 1 and all(dom.is_zero(c) for c in out[-1]):
            out.pop()
        return LogSeries(dom, base, out)


def apply_local(coeffs: List[List], dom, series: LogSeries) -> LogSeries:
    """Apply an operator (local coefficient lists over dom) to a LogSeries."""
    terms = []
    current = series
    for i, a in enumerate(coeffs):
        if i > 0:
            current = current.derivative()
        for u, c in enumerate(a):
            if dom.is_zero(c):
                continue
            terms.append(current.mul_monomial(c, u))
    return LogSeries.add_all(terms)


# ---------------------------------------------------------------------------
# Frobenius solutions
# ---------------------------------------------------------------------------


class FormalSolutionBasis:
    """Local solutions at a point together with the logarithm flag."""

    __slots__ = ("point", "branch", "solutions", "has_logarithms", "obstructions", "dom")

    def __init__(self, point, branch, solutions, has_logarithms, obstructions, dom):
        self.point = point
        self.branch = branch
        self.solutions = solutions
        self.has_logarithms = has_logarithms
        # [(exponent, resonance index)] where a log was forced
        self.obstructions = obstructions
        self.dom = dom

    def __repr__(self):
        return "FormalSolutionBasis(point=%s, %d solutions, logs=%s)" % (
            self.point.label(), len(self.solutions), self.has_logarithms)


def _exponent_classes(roots: List[Tuple[object, int]]) -> List[List[Tuple[object, int]]]:
    classes: Dict[object, List[Tuple[object, int]]] = {}
    for r, m in roots:
        key = r - QQ(r.numerator // r.denominator)  # fractional part
        classes.setdefault(key, []).append((r, m))
    out = []
    for key in sorted(classes):
        cls = sorted(classes[key])
        out.append(cls)
    return out


def _class_flag_mode(qs: List[List], dom, cls: List[Tuple[object, int]], order: int):
    """Pure-series attempts: resonance with nonzero right-hand side flags a
    logarithm; a vanishing right-hand side sets that coefficient to zero."""
    sols = []
    obstructions = []
    has_logs = any(m > 1 for _, m in cls)
    if has_logs:
        for r, m in cls:
            if m > 1:
                obstructions.append((r, 0))
    roots = {r for r, _ in cls}
    kmax = len(qs) - 1
    for pos in range(len(cls) - 1, -1, -1):
        mu, mult = cls[pos]
        top = cls[-1][0]
        needed = int(top - mu) if pos < len(cls) - 1 else 0
        n_steps = max(order, needed) + 1
        coeffs = [dom.one()]
        ok = True
        for m in range(1, n_steps + 1):
            rhs = dom.zero()
            for k in range(1, min(m, kmax) + 1):
                if not qs[k]:
                    continue
                c = coeffs[m - k]
                if dom.is_zero(c):
                    continue
                rhs = rhs + _lam_eval(qs[k], dom.from_rat(mu + m - k), dom) * c
            rhs = -rhs
            if (mu + m) in roots:
                if dom.is_zero(rhs):
                    coeffs.append(dom.zero())
                else:
                    has_logs = True
                    obstructions.append((mu, m))
                    ok = False
                    break
            else:
                den = _lam_eval(qs[0], dom.from_rat(mu + m), dom)
                coeffs.append(_dom_div(rhs, den, dom))
        if ok:
            sols.append(LogSeries(dom, mu, [coeffs]))
    sols.reverse()
    return sols, has_logs, obstructions


def _dom_div(a, b, dom):
    if dom.is_zero(b):
        raise ZeroDivisionError("unexpected zero indicial value")
    return a * dom.inv(b)


def _class_full_mode(qs: List[List], dom, cls: List[Tuple[object, int]], order: int):
    """Deformation construction; emits a full basis including log tails."""
    sols = []
    obstructions = []
    has_logs = False
    kmax = len(qs) - 1
    for pos in range(len(cls) - 1, -1, -1):
        mu, mult = cls[pos]
        above = sum(m for r, m in cls if r > mu)
        big_t = mult + above
        prec = 2 * big_t
        top = cls[-1][0]
        n_steps = max(order, int(top - mu) if pos < len(cls) - 1 else 0) + 1
        c: List[Jet] = [Jet.eps_power(dom, above, prec)]
        for m in range(1, n_steps + 1):
            num = Jet(dom, [dom.zero()] * prec)
            for k in range(1, min(m, kmax) + 1):
                if not qs[k]:
                    continue
                if c[m - k].is_zero():
                    continue
                lam = Jet(dom, [dom.from_rat(mu + m - k), dom.one()] + [dom.zero()] * (prec - 2))
                num = num + _lam_eval(qs[k], lam, dom) * c[m - k]
            num = -num
            lam = Jet(dom, [dom.from_rat(mu + m), dom.one()] + [dom.zero()] * (prec - 2))
            den = _lam_eval(qs[0], lam, dom)
            c.append(num.divide(den))
        for l in range(above, big_t):
            layers: List[List] = []
            for b in range(l + 1):
                inv_fact = QQ(1, factorial(b))
                layer = [cm.coeffs[l - b] * dom.from_rat(inv_fact) for cm in c]
                layers.append(layer)
            while len(layers) > 1 and all(dom.is_zero(x) for x in layers[-1]):
                layers.pop()
            sol = LogSeries(dom, mu, layers)
            if sol.has_logs():
                has_logs = True
                obstructions.append((mu, -1))
            sols.append(sol)
    sols.sort(key=lambda s: s.exponent)
    return sols, has_logs, obstructions


def formal_solutions(
    op: DiffOp,
    point: SingularPoint,
    order: int,
    mode: str = "full",
    branch: Optional[Poly] = None,
    allow_irregular: bool = False,
) -> FormalSolutionBasis:
    """Frobenius basis at the point to the requested series order.

    ``mode="flag"`` runs the cheap pure-series attempts that only decide
    whether logarithms occur (the transcendence test needs nothing more);
    ``mode="full"`` builds every solution including logarithmic tails.
    All indicial roots must be rational; with ``allow_irregular`` the
    degree may drop below the order (the extra "solutions" of an
    irregular point are simply not constructed).
    """
    if point.kind == SingularPoint.ALGEBRAIC and branch is None:
        branches = indicial_branches(op, point)
        if len(branches) != 1:
            raise InputError("modulus split; call per branch")
        data = branches[0]
        dom = data.dom
        point = data.point
    else:
        if point.kind == SingularPoint.ALGEBRAIC:
            dom = ModRing(branch)
            point = SingularPoint.algebraic(branch)
            ind, deg = _indicial_over(op, point, dom)
            data = IndicialData(point, branch, ind, deg, rational_roots_nf(ind, dom), dom)
        else:
            dom = QQ_DOMAIN
            data = indicial(op, point)
    if data.degree < op.order and not allow_irregular:
        raise IrregularPoint(
            "indicial degree %d below order %d at %s"
            % (data.degree, op.order, point.label())
        )
    total_mult = sum(m for _, m in data.rational_roots)
    if total_mult < data.degree:
        raise InputError(
            "indicial polynomial at %s has irrational or complex roots; "
            "only rational exponents are supported" % point.label()
        )
    coeffs = _local_coeffs(op, point, dom)
    _, qs = theta_form(coeffs, dom)
    solutions: List[LogSeries] = []
    has_logs = False
    obstructions: List[Tuple[object, int]] = []
    for cls in _exponent_classes(data.rational_roots):
        if mode == "flag":
            sols, logs, obs = _class_flag_mode(qs, dom, cls, order)
        else:
            sols, logs, obs = _class_full_mode(qs, dom, cls, order)
        solutions.extend(sols)
        has_logs = has_logs or logs
        obstructions.extend(obs)
        if mode == "flag" and has_logs:
            break
    return FormalSolutionBasis(point, branch, solutions, has_logs, obstructions, dom)
