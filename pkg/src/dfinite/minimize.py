"""Annihilator minimization: guessing plus a sound annihilation certificate.

``guess_operator`` finds a candidate operator annihilating a truncated
series by exact kernel computation on the Hermite-Pade style system.
``certify_annihilates`` upgrades a candidate to a proof: it builds a
cofactor A with A o M = C o L by reducing d^j o M modulo L and taking a
Q(z)-linear dependence, so g = M(f) is a solution of A and the valuation
bound of ``zero_test`` decides g = 0 exactly.

Minimality of the returned operator is heuristic (the search simply finds
no smaller certified annihilator); the annihilation itself is certified.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .errors import InputError, PrecisionTooLow
from .linalg import kernel_rank_mod_p, kernel_vector_exact
from .ore import DiffOp, _d_compose, _rem_reduce, _to_ratfuncs
from .polys import Poly, RatFunc
from .rationals import Q0
from .linalg import ratfunc_dependence
from .series import TruncSeries, apply_op, is_zero_series, unroll, validate_init, zero_test

GUARD_TERMS = 10

CERTIFIED_ANNIHILATOR = "certified-annihilator"
INPUT_RETURNED = "input-returned"
HEURISTIC_MINIMAL = "heuristic-minimal"
NOT_SEARCHED = "not-searched"


@dataclass
class MinimizeOptions:
    max_degree: Optional[int] = None
    max_precision: int = 700
    guard: int = GUARD_TERMS


@dataclass
class MinimizationResult:
    operator: DiffOp
    status: str
    search_log: List[Tuple[int, int, str]] = field(default_factory=list)
    minimality: str = HEURISTIC_MINIMAL


def _guess_columns(order: int, degree: int) -> List[Tuple[int, int]]:
    """(i, j) pairs in degree-major order so degree-d cells are prefixes."""
    return [(i, j) for j in range(degree + 1) for i in range(order + 1)]


def _build_rows(f: TruncSeries, order: int, degree: int) -> List[List]:
    """System rows: row n states that the z^n coefficient of M(f) vanishes."""
    n_av = f.trunc_order
    derivs = [list(f.coeffs)]
    for _ in range(order):
        prev = derivs[-1]
        derivs.append([prev[k] * k for k in range(1, len(prev))])
    n_rows = n_av - order
    cols = _guess_columns(order, degree)
    rows = []
    for n in range(n_rows):
        row = []
        for i, j in cols:
            if n - j >= 0 and n - j < len(derivs[i]):
                row.append(derivs[i][n - j])
            else:
                row.append(Q0)
        rows.append(row)
    return rows


def _vector_to_op(vec: Sequence, order: int, degree: int) -> DiffOp:
    cols = _guess_columns(order, degree)
    coeffs = [[Q0] * (degree + 1) for _ in range(order + 1)]
    for (i, j), c in zip(cols, vec):
        coeffs[i][j] = c
    return DiffOp([Poly(cs) for cs in coeffs])


def guess_operator(f: TruncSeries, max_order: int, max_degree: int) -> Optional[DiffOp]:
    """Nonzero operator of order/degree within the bounds annihilating f
    to its full truncation order, or None if the kernel is trivial.

    The returned operator is verified exactly; None answers are rigorous
    because the rank modulo a prime lower-bounds the rank over Q.
    """
    needed = (max_order + 1) * (max_degree + 1) + max_order + GUARD_TERMS
    if f.trunc_order < needed:
        raise PrecisionTooLow(
            "guessing at order %d degree %d needs %d terms, have %d"
            % (max_order, max_degree, needed, f.trunc_order),
            needed=needed,
        )
    rows = _build_rows(f, max_order, max_degree)
    vec = kernel_vector_exact(rows)
    if vec is None:
        return None
    op = _vector_to_op(vec, max_order, max_degree)
    if op.is_zero():
        return None
    residue = apply_op(op, f)
    if not is_zero_series(residue):
        raise AssertionError("kernel vector fails exact verification")
    return op


def _probe_degree(rows: List[List], order: int, lo: int, d_cap: int, guard: int) -> Optional[int]:
    """Smallest degree in [lo, d_cap] whose cell has a nontrivial kernel
    mod p, or None.  Uses column-prefix slices of the full system; a
    trivial kernel mod p rules a cell out rigorously."""

    def cell_has_kernel(d: int) -> bool:
        ncols = (order + 1) * (d + 1)
        take = min(len(rows), ncols + guard)
        sub = [row[:ncols] for row in rows[:take]]
        rank, _ = kernel_rank_mod_p(sub)
        return rank < ncols

    if not cell_has_kernel(d_cap):
        return None
    hi = d_cap
    while lo < hi:
        mid = (lo + hi) // 2
        if cell_has_kernel(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def _search_order(f: TruncSeries, order: int, d_cap: int, guard: int) -> Optional[Tuple[DiffOp, int]]:
    """Minimal-degree verified operator of the given order, or None."""
    rows = _build_rows(f, order, d_cap)
    lo = 0
    while lo <= d_cap:
        d_min = _probe_degree(rows, order, lo, d_cap, guard)
        if d_min is None:
            return None
        ncols = (order + 1) * (d_min + 1)
        sub = [row[:ncols] for row in rows]
        vec = kernel_vector_exact(sub)
        if vec is not None:
            op = _vector_to_op(vec, order, d_min)
            if not op.is_zero() and op.order > 0 and is_zero_series(apply_op(op, f)):
                return op, d_min
        lo = d_min + 1  # spurious mod-p kernel; rule this degree out and retry
    return None


def guess_annihilator(
    f: TruncSeries,
    max_order: int,
    max_degree: Optional[int] = None,
    guard: int = GUARD_TERMS,
) -> Optional[DiffOp]:
    """First verified annihilator by increasing order, then minimal degree.

    The degree cap per order is limited by the available precision, so
    the answer is "no operator with (order, degree) inside the searched
    boxes", never a statement about larger shapes.
    """
    for order in range(1, max_order + 1):
        d_cap = (f.trunc_order - order - guard) // (order + 1) - 1
        if max_degree is not None:
            d_cap = min(d_cap, max_degree)
        if d_cap < 0:
            continue
        got = _search_order(f, order, d_cap, guard)
        if got is not None:
            return got[0]
    return None


def certify_annihilates(big: DiffOp, cand: DiffOp, f: TruncSeries) -> bool:
    """Proof that cand annihilates the solution f of big (True = proof).

    Reduces d^j o cand modulo big for j = 0..order(big); the forced
    Q(z)-linear dependence yields a cofactor A with A o cand = C o big,
    so g = cand(f) solves A and the valuation-bound zero test applies.
    Raises PrecisionTooLow when f is too short for that test.
    """
    if big.is_zero() or cand.is_zero():
        raise InputError("zero operator")
    if cand.order >= big.order + 1:
        raise InputError("candidate order exceeds input order")
    r = big.order
    base = _to_ratfuncs(big)
    rem = _rem_reduce(_to_ratfuncs(cand), base)
    vectors: List[List[RatFunc]] = []
    dep = None
    for j in range(r + 1):
        if j > 0:
            rem = _rem_reduce(_d_compose(rem), base)
        vec = [rem[i] if i < len(rem) else RatFunc.const(0) for i in range(r)]
        vectors.append(vec)
        dep = ratfunc_dependence(vectors)
        if dep is not None:
            break
    if dep is None:
        raise AssertionError("dependence must appear at order <= order(big)")
    cofactor = DiffOp.from_ratfuncs(dep)
    g = apply_op(cand, f)
    return zero_test(cofactor, g)


def minimal_annihilator(
    big: DiffOp,
    init: TruncSeries,
    opts: Optional[MinimizeOptions] = None,
) -> MinimizationResult:
    """Certified annihilator of minimal discovered order for the solution
    pinned down by (big, init); falls back to big itself.

    Searches orders below order(big) with degrees staged by doubling up
    to the ceiling (default 4 * deg(big) * order(big)^2, capped by the
    precision budget).  Any candidate must pass ``certify_annihilates``.
    """
    opts = opts or MinimizeOptions()
    ok, reason = validate_init(big, init)
    if not ok:
        raise InputError("invalid initial terms: %s" % reason)
    r = big.order
    degree_ceiling = opts.max_degree
    if degree_ceiling is None:
        degree_ceiling = 4 * max(big.degree(), 1) * r * r
    log: List[Tuple[int, int, str]] = []
    cache = {"f": init}

    def terms(n: int) -> TruncSeries:
        if cache["f"].trunc_order < n:
            cache["f"] = unroll(big, cache["f"], n)
        return cache["f"]

    for order in range(1, r):
        cap_by_precision = (opts.max_precision - order - opts.guard) // (order + 1) - 1
        d_cap = min(degree_ceiling, cap_by_precision)
        if d_cap < 0:
            log.append((order, -1, "precision budget exhausted"))
            continue
        f = terms((order + 1) * (d_cap + 1) + order + opts.guard)
        found = _search_order(f, order, d_cap, opts.guard)
        if found is None:
            log.append((order, d_cap, "empty kernel"))
            continue
        cand, d_min = found
        certified = None
        for _ in range(3):
            try:
                certified = certify_annihilates(big, cand, cache["f"])
                break
            except PrecisionTooLow as e:
                need = (e.needed or cache["f"].trunc_order) + cand.order + opts.guard
                terms(max(need, cache["f"].trunc_order * 2))
        if certified is None:
            log.append((order, d_min, "certification ran out of precision"))
            continue
        if certified:
            log.append((order, d_min, "certified"))
            return MinimizationResult(cand, CERTIFIED_ANNIHILATOR, log)
        log.append((order, d_min, "candidate does not annihilate"))
    return MinimizationResult(big, INPUT_RETURNED, log)
