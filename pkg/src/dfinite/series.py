"""Truncated power series with exact rational coefficients.

A ``TruncSeries`` is a prefix of a power series: ``coeffs[n]`` is the
coefficient of z^n and the series is known modulo z^trunc_order with
``trunc_order == len(coeffs)``.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .errors import (
    InconsistentInitialConditions,
    InputError,
    InsufficientInitialConditions,
    PrecisionTooLow,
)
from .ore import DiffOp, RecOp, ode_to_rec
from .rationals import QQ, Q0, is_integer


class TruncSeries:
    """Exact truncated power series; immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        self.coeffs = tuple(QQ(c) if isinstance(c, int) else c for c in coeffs)

    @property
    def trunc_order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        if len(self.coeffs) > 8:
            shown += ", ..."
        return "TruncSeries([%s] + O(z^%d))" % (shown, self.trunc_order)

    def prefix(self, n: int) -> "TruncSeries":
        if n > len(self.coeffs):
            raise PrecisionTooLow("prefix longer than series", needed=n)
        return TruncSeries(self.coeffs[:n])

    def derivative(self) -> "TruncSeries":
        return TruncSeries([self.coeffs[n] * n for n in range(1, len(self.coeffs))])


def is_zero_series(f: TruncSeries) -> bool:
    """True iff every listed coefficient vanishes (a statement mod z^N only)."""
    if f.trunc_order == 0:
        raise InputError("empty truncation carries no information")
    return all(c == 0 for c in f.coeffs)


def valuation(f: TruncSeries) -> Tuple[int, bool]:
    """(v, exact): first nonzero index, or (trunc_order, False) as a lower bound."""
    if f.trunc_order == 0:
        raise InputError("empty truncation carries no information")
    for n, c in enumerate(f.coeffs):
        if c != 0:
            return n, True
    return f.trunc_order, False


def apply_op(op: DiffOp, f: TruncSeries) -> TruncSeries:
    """Apply a differential operator to a truncated series.

    The result is exact to order trunc_order(f) - s where s is the largest
    shift i - j over the operator's monomials z^j d^i (s <= order).
    """
    if op.is_zero():
        return TruncSeries([Q0] * f.trunc_order)
    if f.trunc_order < op.order:
        raise PrecisionTooLow(
            "series shorter than operator order", needed=op.order
        )
    shift = max(op.max_shift(), 0)
    n_out = max(f.trunc_order - shift, 0)
    out = [Q0] * n_out
    deriv = list(f.coeffs)
    for i, ci in enumerate(op.coeffs):
        if i > 0:
            deriv = [deriv[k] * k for k in range(1, len(deriv))]
        if ci.is_zero():
            continue
        for j, c in enumerate(ci.coeffs):
            if c == 0:
                continue
            # c * z^j * f^(i): contributes c * deriv[n-j] to out[n]
            for n in range(j, min(n_out, j + len(deriv))):
                a = deriv[n - j]
                if a != 0:
                    out[n] += c * a
    return TruncSeries(out)


def rec_leading_roots(rec: RecOp) -> List[int]:
    """Nonnegative integer indices where the unrolling step degenerates.

    These are the indices idx such that the coefficient determining a_idx
    vanishes; equivalently integer roots >= 0 of the leading recurrence
    polynomial shifted to the index variable.
    """
    lead = rec.leading
    m = rec.max_shift
    shifted = lead.compose_shift(QQ(-m))  # polynomial in idx = n + m
    out = []
    for r, _ in shifted.rational_roots():
        if is_integer(r) and r >= 0:
            out.append(int(r.numerator))
    return sorted(out)


def indicial_bound(op: DiffOp) -> int:
    """Largest nonnegative integer root of the indicial polynomial at 0 (-1 if none)."""
    roots = rec_leading_roots(ode_to_rec(op))
    return roots[-1] if roots else -1


def _check_rows(rec: RecOp, coeffs: List, upto: int) -> Optional[int]:
    """First index n in [0, upto) where a fully determined row fails, else None."""
    for n in range(upto):
        total = Q0
        ok = True
        for idx, v in rec.row(n):
            if idx < 0:
                continue  # a_k = 0 for k < 0
            if idx >= len(coeffs):
                ok = False
                break
            total += v * coeffs[idx]
        if ok and total != 0:
            return n
    return None


def validate_init(op: DiffOp, init: TruncSeries) -> Tuple[bool, str]:
    """Check that init pins down a unique solution of op.

    Requires length >= order, coverage of every degenerate recurrence
    index, and consistency with the recurrence at all determined rows.
    Returns (verdict, reason).
    """
    if op.is_zero():
        return False, "zero operator"
    if init.trunc_order < op.order:
        return False, "fewer initial terms than the operator order"
    rec = ode_to_rec(op)
    sing = rec_leading_roots(rec)
    if sing and sing[-1] >= init.trunc_order:
        return False, "degenerate recurrence index %d not covered" % sing[-1]
    bad = _check_rows(rec, list(init.coeffs), init.trunc_order + rec.backshift)
    if bad is not None:
        return False, "initial terms violate the recurrence at row %d" % bad
    return True, "ok"


def unroll(op: DiffOp, init: TruncSeries, n_terms: int) -> TruncSeries:
    """Extend init to n_terms coefficients of the unique solution of op.

    Unrolls the associated recurrence; degenerate indices must be covered
    by init and determined rows inside init are verified.
    """
    ok, reason = validate_init(op, init)
    if not ok:
        if "degenerate" in reason or "fewer" in reason:
            raise InsufficientInitialConditions(reason)
        raise InconsistentInitialConditions(reason)
    if n_terms < init.trunc_order:
        raise InputError("cannot unroll to fewer terms than supplied")
    rec = ode_to_rec(op)
    m = rec.max_shift
    lead = rec.leading
    lead_at = lead.compose_shift(QQ(-m))  # evaluated at the target index
    coeffs = list(init.coeffs)
    sing = set(rec_leading_roots(rec))
    for idx in range(len(coeffs), n_terms):
        if idx in sing:
            raise InsufficientInitialConditions(
                "degenerate recurrence index %d not covered by initial terms" % idx
            )
        n = idx - m
        total = Q0
        for jdx, v in rec.row(n):
            if jdx < 0:
                continue
            if jdx < idx:
                total += v * coeffs[jdx]
        denom = lead_at(QQ(idx))
        coeffs.append(-total / denom)
    return TruncSeries(coeffs)


def zero_test(op: DiffOp, g: TruncSeries) -> bool:
    """Decide whether a solution of op that starts with g is identically zero.

    Sound because a nonzero power-series solution has valuation equal to
    a nonnegative integer root of the indicial polynomial at 0; vanishing
    past the largest such root forces the zero series.  The caller must
    guarantee that g is (the truncation of) a solution of op.
    """
    if op.is_zero():
        raise InputError("zero operator annihilates everything")
    if g.trunc_order and any(c != 0 for c in g.coeffs):
        return False
    b0 = indicial_bound(op)
    if g.trunc_order <= b0:
        raise PrecisionTooLow(
            "need more than %d coefficients for the valuation bound" % b0,
            needed=b0 + 1,
        )
    return True
