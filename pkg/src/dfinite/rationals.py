"""Exact rational scalars.

All coefficient arithmetic in the package runs over Q.  ``gmpy2.mpq``
is used when available (same API surface as ``fractions.Fraction`` for
what we need, considerably faster on large operands); the stdlib
``Fraction`` is the fallback.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as _mpq, mpz as _mpz

    def QQ(num=0, den=1):
        return _mpq(num, den)

    def is_rat(x) -> bool:
        return isinstance(x, (type(_mpq(0)), Fraction, int))

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover
    _mpz = int

    def QQ(num=0, den=1):
        return Fraction(num, den)

    def is_rat(x) -> bool:
        return isinstance(x, (Fraction, int))

    HAVE_GMPY2 = False

Q0 = QQ(0)
Q1 = QQ(1)


def rat_from_str(s: str):
    """Parse "p/q" or "p" into an exact rational."""
    s = s.strip()
    if "/" in s:
        p, q = s.split("/")
        return QQ(int(p), int(q))
    return QQ(int(s))


def rat_to_str(x) -> str:
    """Inverse of :func:`rat_from_str`; integers print without "/1"."""
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def is_integer(x) -> bool:
    return x.denominator == 1


def floor_rat(x) -> int:
    return x.numerator // x.denominator
