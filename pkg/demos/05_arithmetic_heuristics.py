#!/usr/bin/env python3
"""Arithmetic and asymptotic evidence (advisory, never a proof).

Three quick scans complement the exact test: denominator growth
(algebraic series have almost-integer coefficients), p-curvature
nullity modulo small primes (zero for algebraic series), and numeric
growth estimates feeding the asymptotic criterion.
"""

from dfinite import (
    AsymptoticForm,
    DiffOp,
    Poly,
    TruncSeries,
    eisenstein_scan,
    estimate_growth,
    flajolet_check,
    gen_binomial_sum,
    p_curvature,
)
from dfinite.rationals import QQ

# ---------------------------------------------------------------------------
# 1. Denominator scans
# ---------------------------------------------------------------------------

harmonic = TruncSeries([QQ(0)] + [QQ(1, n) for n in range(1, 50)])
rep = eisenstein_scan(harmonic)
print("harmonic-like series: primes", rep.primes[:6], "... evidence:",
      rep.transcendence_evidence)

hyp = gen_binomial_sum([2, 2], 40)
print("integer series:", eisenstein_scan(hyp).transcendence_evidence)

# ---------------------------------------------------------------------------
# 2. p-curvature modulo small primes
# ---------------------------------------------------------------------------

sqrt_op = DiffOp([Poly([4]), Poly([0, -4]), Poly([1, -2]) * Poly([1, -4])])
apery = DiffOp([
    Poly([-5, 1]), Poly([1, -112, 7]), Poly([0, 3, -153, 6]), Poly([0, 0, 1, -34, 1])])

for name, op in [("algebraic", sqrt_op), ("transcendental", apery)]:
    line = []
    for p in (5, 7, 11, 13):
        r = p_curvature(op, p)
        line.append("p=%d:%s" % (p, "0" if r.is_zero else "nonzero"))
    print(name, "fixture:", "  ".join(line))

# ---------------------------------------------------------------------------
# 3. Growth estimates and the asymptotic criterion
# ---------------------------------------------------------------------------

f = gen_binomial_sum([2, 2], 100)
beta, r = estimate_growth(f)
print("\nestimated growth: beta = %.3f, polynomial exponent = %.3f" % (beta, r))

# with externally established facts about the constants, the criterion
# concludes; the structural negative-integer branch needs no facts at all
print("asymptotic criterion:",
      flajolet_check(AsymptoticForm(r=QQ(-3, 2), beta_algebraic=True,
                                    gamma_gamma_algebraic=False)))
print("negative integer exponent:", flajolet_check(AsymptoticForm(r=QQ(-2))))
