"""Coefficient generators: binomial-sum series, quarter-plane walks,
and diagonals of multivariate rational functions.

All generators return exact :class:`~dfinite.series.TruncSeries` data and
are independent of the operator machinery, so they double as oracles in
the test suite.
"""

from __future__ import annotations

from math import comb
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import InputError
from .rationals import QQ, Q0
from .series import TruncSeries

# ---------------------------------------------------------------------------
# Binomial sums  sum_k C(n,k)^p0 * C(n+k,k)^p1 * ... * C(n+mk,k)^pm
# ---------------------------------------------------------------------------


def gen_binomial_sum(powers: Sequence[int], n_terms: int) -> TruncSeries:
    """First n_terms coefficients of the binomial-sum series for ``powers``.

    ``powers[j]`` is the exponent of C(n + j*k, k) in the summand, with the
    j = 0 factor being C(n, k); powers[0] must be >= 1.
    """
    p = list(powers)
    if not p or p[0] < 1:
        raise InputError("powers[0] must be at least 1")
    if any(e < 0 for e in p):
        raise InputError("negative exponents not supported")
    if n_terms < 1:
        raise InputError("need at least one term")
    out = []
    for n in range(n_terms):
        total = 0
        for k in range(n + 1):
            term = comb(n, k) ** p[0]
            for j in range(1, len(p)):
                if p[j]:
                    term *= comb(n + j * k, k) ** p[j]
            total += term
        out.append(QQ(total))
    return TruncSeries(out)


# ---------------------------------------------------------------------------
# Quarter-plane walks
# ---------------------------------------------------------------------------


class StepSet:
    """Finite nonempty set of integer steps in the plane."""

    __slots__ = ("steps",)

    def __init__(self, steps: Iterable[Tuple[int, int]]):
        ss = frozenset((int(a), int(b)) for a, b in steps)
        if not ss:
            raise InputError("empty step set")
        self.steps = ss

    def __repr__(self) -> str:
        return "StepSet(%s)" % sorted(self.steps)


TRIDENT_STEPS = StepSet([(1, 1), (0, 1), (-1, 1), (0, -1)])


def gen_walk(steps: StepSet, n_terms: int) -> TruncSeries:
    """Counts of quarter-plane walks from the origin, by length.

    Dynamic programming over positions; coordinates are capped by the
    number of remaining steps, which keeps the state space quadratic.
    """
    if n_terms < 1:
        raise InputError("need at least one term")
    cap = n_terms - 1
    state: Dict[Tuple[int, int], int] = {(0, 0): 1}
    counts = [1]
    for length in range(1, n_terms):
        nxt: Dict[Tuple[int, int], int] = {}
        remaining = cap - length
        for (x, y), ways in state.items():
            for dx, dy in steps.steps:
                nx, ny = x + dx, y + dy
                if nx < 0 or ny < 0:
                    continue
                if nx > remaining + cap or ny > remaining + cap:
                    continue
                key = (nx, ny)
                nxt[key] = nxt.get(key, 0) + ways
        state = nxt
        counts.append(sum(state.values()))
    return TruncSeries([QQ(c) for c in counts])


# ---------------------------------------------------------------------------
# Diagonals of rational functions
# ---------------------------------------------------------------------------


class MPoly:
    """Sparse multivariate polynomial: {exponent tuple: rational coefficient}."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Tuple[int, ...], object]):
        self.nvars = nvars
        clean = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars or any(x < 0 for x in e):
                raise InputError("bad exponent tuple %r" % (e,))
            c = QQ(c) if isinstance(c, int) else c
            if c != 0:
                clean[e] = clean.get(e, Q0) + c
        self.terms = {e: c for e, c in clean.items() if c != 0}

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Q0)

    def is_integer(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def max_degree(self, var: int) -> int:
        return max((e[var] for e in self.terms), default=0)

    def __repr__(self) -> str:
        return "MPoly(%d vars, %d terms)" % (self.nvars, len(self.terms))


class DiagonalSpec:
    """Diagonal extraction problem num/den along all variables."""

    __slots__ = ("num", "den", "vars")

    def __init__(self, num: MPoly, den: MPoly, vars: Sequence[str]):
        if len(vars) != num.nvars or len(vars) != den.nvars:
            raise InputError("variable list does not match polynomial arity")
        if den.constant_term() == 0:
            raise InputError("denominator must be a unit at the origin")
        self.num = num
        self.den = den
        self.vars = tuple(vars)


def gen_diagonal(spec: DiagonalSpec, n_terms: int) -> TruncSeries:
    """Diagonal coefficients [x1^n ... xk^n] (num/den) for n < n_terms.

    Expands 1/den by the convolution recurrence inside the box
    [0, n_terms-1]^k.  The first variable is processed layer by layer and
    only a sliding window of layers stays in memory; the remaining axes
    are flattened with padding wide enough that out-of-range reads land
    on cells that are provably zero.
    """
    if n_terms < 1:
        raise InputError("need at least one term")
    k = spec.den.nvars
    if k == 1:
        return _diagonal_univariate(spec, n_terms)
    n = n_terms - 1
    c0 = spec.den.constant_term()
    den_rest = [(e[0], e[1:], c) for e, c in spec.den.terms.items() if any(e)]
    num_terms = [(e[0], e[1:], c) for e, c in spec.num.terms.items()]
    window = max(
        max((a for a, _, _ in den_rest), default=0),
        max((a for a, _, _ in num_terms), default=0),
    ) + 1

    integral = (c0 == 1 or c0 == -1) and spec.den.is_integer() and spec.num.is_integer()
    inv_c0 = None if integral else 1 / c0

    def coef(c):
        return int(c.numerator) if integral else c

    # per-axis padding >= max exponent of that axis over all terms
    pad = [0] * (k - 1)
    for _, rest, _ in den_rest + num_terms:
        for i, t in enumerate(rest):
            pad[i] = max(pad[i], t)
    sizes = [n + 1 + p for p in pad]
    strides = [1] * (k - 1)
    for i in range(k - 3, -1, -1):
        strides[i] = strides[i + 1] * sizes[i + 1]
    margin = sum(p * s for p, s in zip(pad, strides)) + 1
    flat_size = margin + sizes[0] * strides[0]

    def offset(rest: Tuple[int, ...]) -> int:
        return sum(t * s for t, s in zip(rest, strides))

    den_ops = [(a, offset(rest), coef(c)) for a, rest, c in den_rest]
    num_ops = [(a, offset(rest), coef(c)) for a, rest, c in num_terms]

    # positions of the true box cells in graded order (same-layer reads
    # only ever look at strictly smaller grades)
    by_grade: List[List[int]] = [[] for _ in range(n * (k - 1) + 1)]

    def gen_boxes(pos, total, depth):
        if depth == k - 1:
            by_grade[total].append(margin + pos)
            return
        for v in range(n + 1):
            gen_boxes(pos + v * strides[depth], total + v, depth + 1)

    gen_boxes(0, 0, 0)
    graded = [p for grade in by_grade for p in grade]

    zero = 0 if integral else Q0
    negate = integral and c0 == -1
    layers: List[List] = []
    diag = []
    diag_stride = sum(strides)
    for a in range(n + 1):
        cur = [zero] * flat_size
        layers.append(cur)
        if len(layers) > window:
            layers.pop(0)
        top = len(layers) - 1
        active = [(layers[top - at], off, c) for at, off, c in den_ops if at <= a and at <= top]
        for pos in graded:
            total = zero
            for lay, off, c in active:
                v = lay[pos - off]
                if v:
                    total += c * v
            if a == 0 and pos == margin:
                total = 1 - total  # delta at the origin
            else:
                total = -total
            if negate:
                total = -total
            elif not integral:
                total = total * inv_c0
            cur[pos] = total
        pos_want = margin + a * diag_stride
        acc = zero
        for at, off, c in num_ops:
            if at > a or at > top:
                continue
            v = layers[top - at][pos_want - off]
            if v:
                acc += c * v
        diag.append(acc)
    return TruncSeries([QQ(c) if isinstance(c, int) else c for c in diag])


def _diagonal_univariate(spec: DiagonalSpec, n_terms: int) -> TruncSeries:
    """Degenerate one-variable case: plain Taylor expansion of num/den."""
    c0 = spec.den.constant_term()
    den = {e[0]: c for e, c in spec.den.terms.items()}
    num = {e[0]: c for e, c in spec.num.terms.items()}
    out: List = []
    for m in range(n_terms):
        acc = num.get(m, Q0)
        for t, c in den.items():
            if t and t <= m:
                acc -= c * out[m - t]
        out.append(acc / c0)
    return TruncSeries(out)


def apery_diagonal_spec(p: int, q: int) -> DiagonalSpec:
    """The (p+q)-variable diagonal representation of the binomial power
    series with exponents (p, q): denominator
    (prod_j (1-y_j) - x_1) * prod_{k>=2} (1-x_k) - prod_k x_k * prod_j y_j.
    """
    if p < 1 or q < 1:
        raise InputError("p and q must be positive")
    k = p + q

    def mono(expos: Dict[int, int], c) -> Tuple[Tuple[int, ...], object]:
        e = [0] * k
        for v, d in expos.items():
            e[v] = d
        return tuple(e), QQ(c)

    # variables 0..p-1 are x_1..x_p, variables p..p+q-1 are y_1..y_q
    def poly_mul(a: Dict, b: Dict) -> Dict:
        out: Dict[Tuple[int, ...], object] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, Q0) + ca * cb
        return {e: c for e, c in out.items() if c != 0}

    one = {tuple([0] * k): QQ(1)}

    def var(i) -> Dict:
        e = [0] * k
        e[i] = 1
        return {tuple(e): QQ(1)}

    def sub(a, b) -> Dict:
        out = dict(a)
        for e, c in b.items():
            out[e] = out.get(e, Q0) - c
        return {e: c for e, c in out.items() if c != 0}

    prod_y = one
    for j in range(q):
        prod_y = poly_mul(prod_y, sub(one, var(p + j)))
    first = sub(prod_y, var(0))
    for i in range(1, p):
        first = poly_mul(first, sub(one, var(i)))
    all_vars = one
    for i in range(k):
        all_vars = poly_mul(all_vars, var(i))
    den = sub(first, all_vars)
    names = ["x%d" % (i + 1) for i in range(p)] + ["y%d" % (j + 1) for j in range(q)]
    return DiagonalSpec(MPoly(k, one), MPoly(k, den), names)


def binomial_double_product_spec(j: int) -> DiagonalSpec:
    """Bivariate diagonal 1 / (1 - z*(1+y)*(y + (1+y)^j)).

    Its diagonal is sum_k C(n,k) * C(n+j*k, k).
    """
    if j < 0:
        raise InputError("j must be nonnegative")
    # expand (1+y)*(y + (1+y)^j) as a polynomial in y
    coeffs = [0] * (j + 2)
    coeffs[1] += 1  # y
    for t in range(j + 1):
        coeffs[t] += comb(j, t)
    poly_y = [0] * (j + 3)
    for t in range(j + 2):
        poly_y[t] += coeffs[t]
        poly_y[t + 1] += coeffs[t]
    terms = {(0, 0): QQ(1)}
    for t, c in enumerate(poly_y):
        if c:
            terms[(1, t)] = QQ(-c)
    return DiagonalSpec(MPoly(2, {(0, 0): QQ(1)}), MPoly(2, terms), ["z", "y"])
