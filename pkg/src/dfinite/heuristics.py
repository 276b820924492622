"""Advisory criteria: denominator scans, p-curvature modulo p, and
coefficient-asymptotics checks.

Everything here is labeled heuristic except the structural parts that
are exact by construction (denominator bookkeeping, the p-curvature
matrix itself, the negative-integer-exponent branch of the asymptotic
criterion).  Nothing in this module upgrades a verdict's confidence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InputError, PrecisionTooLow
from .ore import DiffOp
from .polys import Poly
from .rationals import QQ, is_integer
from .series import TruncSeries

_SMALL_PRIME_BOUND = 100000


def _factor_small(n: int) -> Dict[int, int]:
    """Prime factorization by trial division up to the small-prime bound;
    a leftover cofactor > 1 is recorded under its own value (it is prime
    or a product of primes above the bound)."""
    n = abs(int(n))
    out: Dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 7
    inc = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while f * f <= n and f <= _SMALL_PRIME_BOUND:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += inc[i]
        i = (i + 1) % 8
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass
class EisensteinReport:
    primes: List[int]
    largest_prime: Optional[int]
    candidate_c: Optional[int]
    candidate_c_bound: int
    transcendence_evidence: bool
    first_occurrence: Dict[int, int] = field(default_factory=dict)


def eisenstein_scan(f: TruncSeries, c_bound: int = 10 ** 6) -> EisensteinReport:
    """Denominator prime scan of a truncated series.

    Reports the primes dividing any coefficient denominator, the minimal
    C with a_n * C^n integral over the scanned range (or none below the
    bound), and an advisory flag raised when new denominator primes keep
    appearing deep into the range.  Never a proof of anything.
    """
    if f.trunc_order < 10:
        raise PrecisionTooLow("need at least 10 coefficients to scan", needed=10)
    valuations: Dict[int, int] = {}
    first_seen: Dict[int, int] = {}
    for n in range(1, f.trunc_order):
        den = int(f.coeffs[n].denominator)
        if den == 1:
            continue
        for p, v in _factor_small(den).items():
            need = -(-v // n)  # ceil(v / n)
            valuations[p] = max(valuations.get(p, 0), need)
            first_seen.setdefault(p, n)
    primes = sorted(first_seen)
    candidate = 1
    for p in sorted(valuations):
        for _ in range(valuations[p]):
            candidate *= p
            if candidate > c_bound:
                break
        if candidate > c_bound:
            break
    cand_out: Optional[int] = candidate if candidate <= c_bound else None
    evidence = any(first_seen[p] > f.trunc_order // 2 for p in primes)
    return EisensteinReport(
        primes=primes,
        largest_prime=primes[-1] if primes else None,
        candidate_c=cand_out if primes else 1,
        candidate_c_bound=c_bound,
        transcendence_evidence=evidence,
        first_occurrence=first_seen,
    )


# ---------------------------------------------------------------------------
# p-curvature
# ---------------------------------------------------------------------------


@dataclass
class PCurvatureReport:
    prime: int
    is_zero: bool
    matrix_rank: int
    bad_prime: bool
    reason: str = ""


class _FpPoly:
    """Thin helpers for dense polynomials over F_p (int lists)."""

    @staticmethod
    def trim(a: List[int]) -> List[int]:
        while a and a[-1] == 0:
            a.pop()
        return a

    @staticmethod
    def add(a: List[int], b: List[int], p: int) -> List[int]:
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % p
        return _FpPoly.trim(out)

    @staticmethod
    def mul(a: List[int], b: List[int], p: int) -> List[int]:
        if not a or not b:
            return []
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = (out[i + j] + x * y) % p
        return _FpPoly.trim(out)

    @staticmethod
    def scale(a: List[int], c: int, p: int) -> List[int]:
        return _FpPoly.trim([x * c % p for x in a])

    @staticmethod
    def deriv(a: List[int], p: int) -> List[int]:
        return _FpPoly.trim([a[i] * i % p for i in range(1, len(a))])

    @staticmethod
    def divmod(a: List[int], b: List[int], p: int) -> Tuple[List[int], List[int]]:
        if not b:
            raise ZeroDivisionError
        r = list(a)
        inv = pow(b[-1], p - 2, p)
        q = [0] * max(0, len(r) - len(b) + 1)
        for i in range(len(r) - 1, len(b) - 2, -1):
            c = r[i] * inv % p
            if c:
                q[i - len(b) + 1] = c
                for j, y in enumerate(b):
                    r[i - len(b) + 1 + j] = (r[i - len(b) + 1 + j] - c * y) % p
        return _FpPoly.trim(q), _FpPoly.trim(r[: len(b) - 1])

    @staticmethod
    def gcd(a: List[int], b: List[int], p: int) -> List[int]:
        a, b = list(a), list(b)
        while b:
            a, b = b, _FpPoly.divmod(a, b, p)[1]
        if a:
            inv = pow(a[-1], p - 2, p)
            a = [x * inv % p for x in a]
        return a


def _op_mod_p(op: DiffOp, p: int) -> Optional[List[List[int]]]:
    out = []
    for c in op.coeffs:
        row = []
        for q in c.coeffs:
            if int(q.denominator) % p == 0:
                return None
            row.append(int(q.numerator) * pow(int(q.denominator) % p, p - 2, p) % p)
        out.append(_FpPoly.trim(row))
    return out


def p_curvature(op: DiffOp, p: int) -> PCurvatureReport:
    """p-curvature nullity of the operator modulo p.

    Forms the companion matrix A of the monic reduction over F_p(z) and
    iterates A_{k+1} = A_k' + A_k A up to k = p; the common denominator
    lead^k is tracked symbolically so all arithmetic stays polynomial.
    Primes at most the order, or dividing a denominator or the leading
    content, are flagged bad and skipped.
    """
    if op.is_zero():
        raise InputError("zero operator")
    r = op.order
    if p <= r:
        return PCurvatureReport(p, False, -1, True, "prime <= order degenerates the iteration")
    coeffs = _op_mod_p(op, p)
    if coeffs is None:
        return PCurvatureReport(p, False, -1, True, "prime divides a coefficient denominator")
    lead = coeffs[r]
    if not lead:
        return PCurvatureReport(p, False, -1, True, "leading coefficient vanishes mod p")
    # companion matrix over F_p(z) with denominator `lead`:
    # A = N / lead, N[i][j] polynomial
    n_mat = [[[] for _ in range(r)] for _ in range(r)]
    for i in range(r - 1):
        n_mat[i][i + 1] = list(lead)
    for j in range(r):
        n_mat[r - 1][j] = _FpPoly.scale(coeffs[j], p - 1, p)
    # B_1 = N; B_{k+1} = B_k' * lead - k * lead' * B_k + B_k * N, A_k = B_k / lead^k
    lead_d = _FpPoly.deriv(lead, p)
    b = [row[:] for row in n_mat]
    for k in range(1, p):
        nxt = [[[] for _ in range(r)] for _ in range(r)]
        for i in range(r):
            for j in range(r):
                term = _FpPoly.mul(_FpPoly.deriv(b[i][j], p), lead, p)
                term = _FpPoly.add(
                    term, _FpPoly.scale(_FpPoly.mul(lead_d, b[i][j], p), (-k) % p, p), p
                )
                acc = term
                for t in range(r):
                    if b[i][t] and n_mat[t][j]:
                        acc = _FpPoly.add(acc, _FpPoly.mul(b[i][t], n_mat[t][j], p), p)
                nxt[i][j] = acc
        b = nxt
    zero = all(not b[i][j] for i in range(r) for j in range(r))
    rank = 0 if zero else _poly_matrix_rank(b, p)
    return PCurvatureReport(p, zero, rank, False)


def _poly_matrix_rank(mat: List[List[List[int]]], p: int) -> int:
    """Rank over F_p(z) via evaluation at several points (exact for at
    least one point as long as p exceeds the degrees involved; we take
    the max over a spread of sample points)."""
    import numpy as np

    r = len(mat)
    best = 0
    nonzero = any(mat[i][j] for i in range(r) for j in range(r))
    samples = range(1, min(p, 2 * _max_deg(mat) + 4))
    for t in samples:
        m = np.array(
            [[_eval_fp(mat[i][j], t, p) for j in range(r)] for i in range(r)],
            dtype=np.int64,
        )
        rank = _rank_mod(m, p)
        best = max(best, rank)
        if best == r:
            break
    if nonzero and best == 0:
        best = 1  # all samples hit roots; the matrix is still nonzero
    return best


def _max_deg(mat) -> int:
    return max((len(c) - 1 for row in mat for c in row if c), default=0)


def _eval_fp(a: List[int], t: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * t + c) % p
    return acc


def _rank_mod(m, p: int) -> int:
    from .linalg import _rref_mod

    _, piv, _ = _rref_mod(m, p)
    return len(piv)


def p_curvature_is_zero_oracle(op: DiffOp, p: int) -> Optional[List[List[Tuple[List[int], List[int]]]]]:
    """Independent brute-force iteration with explicit fraction entries
    (numerator, denominator polynomial pairs over F_p); used to cross-check
    the production recursion entry by entry.  Returns the final matrix."""
    if p <= op.order:
        return None
    coeffs = _op_mod_p(op, p)
    if coeffs is None or not coeffs[op.order]:
        return None
    r = op.order
    lead = coeffs[r]

    def f_reduce(a):
        num, den = a
        if not num:
            return ([], [1])
        g = _FpPoly.gcd(num, den, p)
        if len(g) > 1:
            num = _FpPoly.divmod(num, g, p)[0]
            den = _FpPoly.divmod(den, g, p)[0]
        return (num, den)

    def f_add(a, b):
        na, da = a
        nb, db = b
        return f_reduce((
            _FpPoly.add(_FpPoly.mul(na, db, p), _FpPoly.mul(nb, da, p), p),
            _FpPoly.mul(da, db, p)))

    def f_mul(a, b):
        return f_reduce((_FpPoly.mul(a[0], b[0], p), _FpPoly.mul(a[1], b[1], p)))

    def f_deriv(a):
        num, den = a
        dn = _FpPoly.add(
            _FpPoly.mul(_FpPoly.deriv(num, p), den, p),
            _FpPoly.scale(_FpPoly.mul(num, _FpPoly.deriv(den, p), p), p - 1, p),
            p,
        )
        return f_reduce((dn, _FpPoly.mul(den, den, p)))

    a_mat = [[([], [1]) for _ in range(r)] for _ in range(r)]
    for i in range(r - 1):
        a_mat[i][i + 1] = ([1], [1])
    for j in range(r):
        a_mat[r - 1][j] = (_FpPoly.scale(coeffs[j], p - 1, p), list(lead))
    cur = [row[:] for row in a_mat]
    for _ in range(1, p):
        nxt = [[None] * r for _ in range(r)]
        for i in range(r):
            for j in range(r):
                acc = f_deriv(cur[i][j])
                for t in range(r):
                    acc = f_add(acc, f_mul(cur[i][t], a_mat[t][j]))
                nxt[i][j] = acc
        cur = nxt
    return cur


# ---------------------------------------------------------------------------
# Asymptotic criteria
# ---------------------------------------------------------------------------


@dataclass
class AsymptoticForm:
    """Caller-supplied asymptotic data a_n ~ gamma * beta^n * n^r."""

    r: Optional[object]  # rational exponent, or None for irrational
    beta_algebraic: bool = True
    gamma_gamma_algebraic: bool = True  # gamma * Gamma(r+1) algebraic?


def flajolet_check(a: AsymptoticForm) -> str:
    """"transcendental" or "inconclusive" from the asymptotic shape.

    Transcendence follows when the polynomial exponent is a negative
    integer or irrational, or when one of the two constants is asserted
    non-algebraic; everything else is inconclusive.
    """
    if a.r is None:
        return "transcendental"
    r = QQ(a.r) if isinstance(a.r, int) else a.r
    if is_integer(r) and r < 0:
        return "transcendental"
    if not a.beta_algebraic or not a.gamma_gamma_algebraic:
        return "transcendental"
    return "inconclusive"


def estimate_growth(f: TruncSeries, levels: int = 4) -> Tuple[float, float]:
    """(beta, r) estimates from coefficient ratios; advisory only.

    Richardson extrapolation of a_{n+1}/a_n gives beta; the corrected
    ratios n * (a_{n+1}/(beta * a_n) - 1) extrapolate to r.
    """
    if f.trunc_order < 40:
        raise PrecisionTooLow("need at least 40 terms to estimate growth", needed=40)
    start = max(2, f.trunc_order // 4)
    ratios = []
    for n in range(start, f.trunc_order - 1):
        if f.coeffs[n] == 0:
            raise InputError("zero coefficient in the ratio window")
        ratios.append(float(QQ(f.coeffs[n + 1]) / QQ(f.coeffs[n])))
    beta = _richardson(ratios, start, levels)
    corr = []
    for i, n in enumerate(range(start, f.trunc_order - 1)):
        corr.append(n * (ratios[i] / beta - 1.0))
    r_est = _richardson(corr, start, levels)
    return beta, r_est


def _richardson(seq: List[float], n0: int, levels: int) -> float:
    rows = [list(seq)]
    for k in range(1, levels + 1):
        prev = rows[-1]
        nxt = []
        for i in range(1, len(prev)):
            n = n0 + i
            nxt.append((n * prev[i] - (n - k) * prev[i - 1]) / k)
        rows.append(nxt)
        if len(nxt) < 2:
            break
    return rows[-1][-1]


def apery_asymptotic_decision(powers: Sequence[int]) -> str:
    """Nature of the binomial-sum family by total exponent weight:
    "rational" for weight 1, "algebraic" for weight 2, "transcendental"
    beyond."""
    p = list(powers)
    if not p or p[0] < 1:
        raise InputError("powers[0] must be at least 1")
    total = sum(p)
    if total == 1:
        return "rational"
    if total == 2:
        return "algebraic"
    return "transcendental"
