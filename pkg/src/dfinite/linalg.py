"""Exact kernel computation for large structured systems over Q.

Strategy: row-reduce the system modulo word-size primes with numpy
(int64 arithmetic, entries < 2^31 so products fit).  A trivial kernel
modulo any prime proves a trivial kernel over Q, which makes "no
operator of this shape exists" conclusions rigorous.  When a kernel
exists, a canonical kernel vector is assembled by CRT over several
primes with rational reconstruction and then verified exactly against
the full system; only verified vectors are ever returned, so candidate
generation never affects soundness.

Small dense eliminations over Q or Q(z) are done directly.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

import numpy as np

from .polys import RatFunc
from .rationals import QQ, Q0, Q1

_PRIMES_31 = [
    2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
    2147483543, 2147483497, 2147483489, 2147483477, 2147483423,
    2147483399, 2147483353, 2147483323, 2147483269, 2147483249,
    2147483237, 2147483179, 2147483171, 2147483137, 2147483123,
    2147483077, 2147483069, 2147483059, 2147483053, 2147483033,
    2147483029, 2147482951, 2147482949, 2147482943, 2147482937,
    2147482921, 2147482877, 2147482873, 2147482867, 2147482859,
    2147482819, 2147482817, 2147482811, 2147482801, 2147482763,
    2147482739, 2147482697, 2147482693, 2147482681, 2147482663,
    2147482661, 2147482621, 2147482591, 2147482583, 2147482577,
]


def _reduce_matrix_mod(rows: Sequence[Sequence], p: int) -> np.ndarray:
    """Reduce a matrix of rationals mod p; raises ValueError on bad prime."""
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, c in enumerate(row):
            num = int(c.numerator) % p
            den = int(c.denominator) % p
            if den == 0:
                raise ValueError("prime divides a denominator")
            out[i, j] = num * pow(den, p - 2, p) % p
    return out


def _rref_mod(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int], List[int]]:
    """Row echelon form mod p. Returns (matrix, pivot columns, pivot rows)."""
    m, n = a.shape
    a = a % p
    piv_cols: List[int] = []
    piv_rows: List[int] = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        rows = np.nonzero(a[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            a[rows] = (a[rows] - np.outer(a[rows, c], a[r])) % p
        piv_cols.append(c)
        piv_rows.append(r)
        r += 1
    return a, piv_cols, piv_rows


def kernel_rank_mod_p(rows: Sequence[Sequence], p: Optional[int] = None) -> Tuple[int, List[int]]:
    """(rank mod p, pivot columns).  rank mod p <= rank over Q, so a full
    column rank mod p proves the exact kernel is trivial."""
    if p is None:
        p = _PRIMES_31[0]
    a = _reduce_matrix_mod(rows, p)
    _, piv_cols, _ = _rref_mod(a, p)
    return len(piv_cols), piv_cols


def _kernel_vector_mod(a: np.ndarray, p: int, free_choice: int = 0):
    """Canonical kernel vector mod p: first admissible free column set to 1.

    Returns (pivot_cols, free_col, dense vector) or None if injective.
    """
    red, piv_cols, _ = _rref_mod(a, p)
    n = a.shape[1]
    piv_set = set(piv_cols)
    free = [c for c in range(n) if c not in piv_set]
    if not free:
        return None
    f = free[min(free_choice, len(free) - 1)]
    vec = [0] * n
    vec[f] = 1
    for r, c in enumerate(piv_cols):
        if c < f:
            vec[c] = (-int(red[r, f])) % p
    return piv_cols, f, vec


def _rational_reconstruct(a: int, m: int):
    """Wang reconstruction of a mod m into p/q with |p|, q <= sqrt(m/2)."""
    bound = int((m // 2) ** 0.5)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return QQ(r1, s1) if s1 > 0 else QQ(-r1, -s1)


def _verify_kernel(rows: Sequence[Sequence], vec: Sequence) -> bool:
    for row in rows:
        acc = Q0
        for c, v in zip(row, vec):
            if v != 0 and c != 0:
                acc += c * v
        if acc != 0:
            return False
    return True


def kernel_vector_exact(rows: Sequence[Sequence]) -> Optional[List]:
    """One exact kernel vector of the rational matrix, or None.

    ``None`` is rigorous (a prime with full column rank certifies it,
    since the rank can only drop under reduction).  A returned vector is
    verified exactly against every row before being handed back.
    """
    if not rows or not rows[0]:
        return None
    piv_ref: Optional[List[int]] = None
    free_ref = -1
    combined: List[int] = []
    modulus = 1
    for p in _PRIMES_31:
        try:
            a = _reduce_matrix_mod(rows, p)
        except ValueError:
            continue  # p divides some denominator
        got = _kernel_vector_mod(a, p)
        if got is None:
            return None
        piv, free, vec = got
        if piv_ref is None or len(piv) > len(piv_ref):
            # unlucky earlier primes drop rank; restart on the best structure
            piv_ref, free_ref, combined, modulus = piv, free, list(vec), p
        elif len(piv) < len(piv_ref) or piv != piv_ref or free != free_ref:
            continue  # this prime is the unlucky one
        elif modulus != p:
            inv = pow(modulus % p, p - 2, p)
            combined = [
                x + modulus * ((y - x) % p * inv % p)
                for x, y in zip(combined, vec)
            ]
            modulus *= p
        if modulus > 1:
            cand = _try_reconstruct(combined, modulus)
            if cand is not None and _verify_kernel(rows, cand):
                return _clear_denominators(cand)
    return _kernel_vector_exact_slow(rows)


def _try_reconstruct(combined: List[int], modulus: int) -> Optional[List]:
    out = []
    for x in combined:
        r = _rational_reconstruct(x, modulus)
        if r is None:
            return None
        out.append(r)
    return out


def _clear_denominators(vec: List) -> List:
    den = 1
    for x in vec:
        d = int(x.denominator)
        den = den // _gcd(den, d) * d
    ints = [x * den for x in vec]
    g = 0
    for x in ints:
        g = _gcd(g, int(x.numerator))
    if g == 0:
        return [Q0] * len(vec)
    lead = next(x for x in reversed(ints) if x != 0)
    if lead < 0:
        g = -g
    return [x / g for x in ints]


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _kernel_vector_exact_slow(rows: Sequence[Sequence]) -> Optional[List]:
    """Dense fraction elimination fallback; always correct, may be slow."""
    m = [list(r) for r in rows]
    ncols = len(m[0])
    piv_of_col = {}
    reduced = []
    for row in m:
        row = list(row)
        for c, prow in piv_of_col.items():
            if row[c] != 0:
                f = row[c]
                for j in range(ncols):
                    row[j] -= f * prow[j]
        lead = next((j for j in range(ncols) if row[j] != 0), None)
        if lead is None:
            continue
        inv = row[lead]
        row = [x / inv for x in row]
        for c, prow in list(piv_of_col.items()):
            if prow[lead] != 0:
                f = prow[lead]
                for j in range(ncols):
                    prow[j] -= f * row[j]
        piv_of_col[lead] = row
    free = [c for c in range(ncols) if c not in piv_of_col]
    if not free:
        return None
    f = free[0]
    vec = [Q0] * ncols
    vec[f] = Q1
    for c, prow in piv_of_col.items():
        vec[c] = -prow[f]
    return _clear_denominators(vec)


# ---------------------------------------------------------------------------
# Small eliminations over Q(z)
# ---------------------------------------------------------------------------


def ratfunc_dependence(vectors: List[List[RatFunc]]) -> Optional[List[RatFunc]]:
    """First linear dependence among successive vectors over Q(z).

    Returns coefficients c with sum(c[i] * vectors[i]) = 0, c[last] = 1,
    using the shortest dependent prefix; None if independent.
    """
    if not vectors:
        return None
    dim = len(vectors[0])
    basis: List[Tuple[int, List[RatFunc], List[RatFunc]]] = []
    for k, vec in enumerate(vectors):
        row = list(vec)
        expr = [RatFunc.const(0)] * len(vectors)
        expr[k] = RatFunc.const(1)
        for pivot, brow, bexpr in basis:
            c = row[pivot]
            if c.is_zero():
                continue
            for i in range(dim):
                row[i] = row[i] - c * brow[i]
            for i in range(len(vectors)):
                expr[i] = expr[i] - c * bexpr[i]
        pivot = next((i for i in range(dim) if not row[i].is_zero()), None)
        if pivot is None:
            return expr[: k + 1]
        inv = row[pivot]
        basis.append((pivot, [x / inv for x in row], [x / inv for x in expr]))
    return None
