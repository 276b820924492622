"""Algebraicity of generalized hypergeometric series by interlacing.

The decision uses the fractional-part convention <x> = x - floor(x) for
non-integers and <x> = 1 for integers, and tests, for every unit ell
modulo the common denominator D, whether the scaled parameter multisets
strictly alternate.  Parameters that are not disjoint modulo Z are out
of the criterion's reach and reported as inapplicable, never coerced.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import List, Sequence, Tuple

from .errors import InputError
from .ore import DiffOp, op_mul_raw
from .polys import Poly
from .rationals import QQ, Q1, is_integer

ALGEBRAIC = "algebraic"
TRANSCENDENTAL = "transcendental"
INAPPLICABLE = "inapplicable"


@dataclass
class HypParams:
    """Upper parameters a (k of them) and lower parameters b (k-1; the
    trailing 1 is implicit and appended internally)."""

    a: Tuple
    b: Tuple

    def __init__(self, a: Sequence, b: Sequence):
        a = tuple(QQ(x) if isinstance(x, int) else x for x in a)
        b = tuple(QQ(x) if isinstance(x, int) else x for x in b)
        if not a:
            raise InputError("need at least one upper parameter")
        if len(b) != len(a) - 1:
            raise InputError("expected %d lower parameters" % (len(a) - 1))
        for x in b:
            if is_integer(x) and x <= 0:
                raise InputError("lower parameter in -N: series undefined")
        self.a = a
        self.b = b

    def full_b(self) -> Tuple:
        return self.b + (Q1,)


def frac_conv(x) -> object:
    """<x>: fractional part for non-integers, 1 for integers."""
    x = QQ(x) if isinstance(x, int) else x
    if is_integer(x):
        return Q1
    return x - (x.numerator // x.denominator)


def interlaces(u: Sequence, v: Sequence) -> bool:
    """Strict alternation of the <.>-images on (0, 1], either side first."""
    if len(u) != len(v):
        raise InputError("multisets must be equinumerous")
    fu = sorted(frac_conv(x) for x in u)
    fv = sorted(frac_conv(x) for x in v)
    merged = sorted([(x, 0) for x in fu] + [(x, 1) for x in fv])
    for (x1, s1), (x2, s2) in zip(merged, merged[1:]):
        if x1 == x2 or s1 == s2:
            return False
    return True


def interlacing_criterion(params: HypParams) -> Tuple[str, str]:
    """(verdict, reason); verdict in {algebraic, transcendental, inapplicable}.

    Inapplicable when upper and lower parameters are not disjoint mod Z
    (the irreducibility hypothesis of the criterion fails).
    """
    a = params.a
    b = params.full_b()
    for x in a:
        for y in b:
            if is_integer(x - y):
                return INAPPLICABLE, (
                    "parameters %s and %s differ by an integer" % (x, y)
                )
    den = 1
    for x in list(a) + list(b):
        d = int(x.denominator)
        den = den // gcd(den, d) * d
    for ell in range(1, den + 1):
        if gcd(ell, den) != 1:
            continue
        if not interlaces([ell * x for x in a], [ell * x for x in b]):
            return TRANSCENDENTAL, "interlacing fails at unit %d mod %d" % (ell, den)
    return ALGEBRAIC, "all %d unit multiples interlace" % sum(
        1 for ell in range(1, den + 1) if gcd(ell, den) == 1
    )


def hypergeometric_operator(params: HypParams) -> DiffOp:
    """Annihilator of the hypergeometric series with these parameters:
    prod_j (theta + b_j - 1) o theta ... minus z * prod_i (theta + a_i),
    written with polynomial coefficients."""
    theta = [Poly(), Poly([0, 1])]  # z * d/dz

    def theta_plus(c) -> List[Poly]:
        return [Poly([c]), Poly([0, 1])]

    left = [Poly([1])]
    for bj in params.b:
        left = op_mul_raw(theta_plus(bj - 1), left)
    left = op_mul_raw(theta, left)
    right = [Poly([1])]
    for ai in params.a:
        right = op_mul_raw(theta_plus(ai), right)
    right = [p.shift_up(1) for p in right]  # left-multiply by z
    n = max(len(left), len(right))
    coeffs = []
    for i in range(n):
        li = left[i] if i < len(left) else Poly()
        ri = right[i] if i < len(right) else Poly()
        coeffs.append(li - ri)
    return DiffOp(coeffs)
