#!/usr/bin/env python3
"""From raw coefficients to certified statements.

Given nothing but a coefficient stream, we can (a) guess an annihilating
differential operator and certify it against a known one, and (b) guess
a polynomial equation P(z, f) = 0 and certify it exactly.  Exhaustion of
a guessing search never proves transcendence; certification failures and
successes are both exact statements.
"""

from dfinite import (
    DiffOp,
    Poly,
    TruncSeries,
    certify_annihilates,
    gen_binomial_sum,
    guess_annihilator,
    lclm,
    minimal_annihilator,
    prove_algebraic,
    unroll,
)
from dfinite.minimize import MinimizeOptions

# ---------------------------------------------------------------------------
# 1. Guess the operator behind the central Delannoy numbers
# ---------------------------------------------------------------------------

f = gen_binomial_sum([1, 1], 60)  # 1, 3, 13, 63, 321, ...
op = guess_annihilator(f, max_order=4)
print("Delannoy annihilator:", op)

# and certify a minimal polynomial: the series is 1/sqrt(1-6z+z^2)
got = prove_algebraic(op, f.prefix(2), max_dy=4, max_dz=4)
poly, root_ann = got
print("certified minimal polynomial:", poly)

# ---------------------------------------------------------------------------
# 2. Minimization with a certificate
# ---------------------------------------------------------------------------

# Build a redundant order-4 annihilator for the binomial square sums by
# taking a least common left multiple with d/dz, then recover order 3.
apery = DiffOp([
    Poly([-5, 1]), Poly([1, -112, 7]), Poly([0, 3, -153, 6]), Poly([0, 0, 1, -34, 1])])
redundant = lclm(apery, DiffOp([Poly(), Poly([1])]))
print("\nredundant operator has order", redundant.order)

init = unroll(apery, TruncSeries([1, 5, 73]), redundant.order + 4)
result = minimal_annihilator(redundant, init, MinimizeOptions(max_degree=10))
print("minimized to order", result.operator.order, "--", result.status)
print("search log:", result.search_log)

# The annihilation of the candidate is *proved*: a cofactor argument turns
# the claim into a zero test with a sound valuation bound.
longer = unroll(apery, TruncSeries([1, 5, 73]), 80)
print("re-certify on 80 terms:", certify_annihilates(redundant, result.operator, longer))

# ---------------------------------------------------------------------------
# 3. Guessing cannot prove transcendence
# ---------------------------------------------------------------------------

stream = unroll(apery, TruncSeries([1, 5, 73]), 70)
print("\npolynomial search on the transcendental stream:",
      prove_algebraic(apery, TruncSeries([1, 5, 73]), max_dy=6, max_dz=6))
