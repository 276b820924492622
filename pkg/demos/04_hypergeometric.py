#!/usr/bin/env python3
"""The interlacing criterion for generalized hypergeometric series.

For rational parameter multisets that are disjoint modulo the integers,
algebraicity is equivalent to the scaled parameters strictly alternating
on the unit circle for every unit multiplier.  The criterion is exact
and fast; parameter lists it cannot see are reported as inapplicable,
never silently classified.
"""

from dfinite import HypParams, frac_conv, interlacing_criterion
from dfinite.rationals import QQ

# powers of the central binomial series: algebraic only in the base case
for k in range(1, 6):
    params = HypParams([QQ(1, 2)] * k, [QQ(1)] * (k - 1))
    verdict, reason = interlacing_criterion(params)
    print("k = %d: %-15s (%s)" % (k, verdict, reason))

# a dihedral example with nontrivial units
params = HypParams([QQ(1, 6), QQ(5, 6)], [QQ(1, 2)])
print("\n(1/6, 5/6; 1/2):", interlacing_criterion(params))

# parameters colliding modulo Z escape the criterion
print("(1, 1; 2):      ", interlacing_criterion(HypParams([1, 1], [2])))

# the bracket convention behind the test
print("\nfractional-part convention:",
      [(str(x), str(frac_conv(x))) for x in (QQ(3, 2), QQ(2), QQ(-1, 3))])
