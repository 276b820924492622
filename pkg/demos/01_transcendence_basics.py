#!/usr/bin/env python3
"""Deciding the nature of a power series from its differential equation.

A power series in Q[[z]] can be handed to us as a linear ODE with
polynomial coefficients plus a few initial terms.  This walkthrough runs
the transcendence test on three classics:

  * the binomial-square-sum series 1 + 5z + 73z^2 + ... (transcendental,
    certified by a triple indicial root at the origin),
  * log(1-z) given only by (z-1) f'' + f' = 0 and two initial terms,
  * the algebraic control sqrt(1-4z) + z, where the test must fail.
"""

from dfinite import DiffOp, Poly, TruncSeries, transcendence_test, globally_bounded_test

# ---------------------------------------------------------------------------
# 1. The order-3 operator for sum_n (sum_k C(n,k)^2 C(n+k,k)^2) z^n
# ---------------------------------------------------------------------------

apery = DiffOp([
    Poly([-5, 1]),            # z - 5
    Poly([1, -112, 7]),       # 7z^2 - 112z + 1
    Poly([0, 3, -153, 6]),    # 6z^3 - 153z^2 + 3z
    Poly([0, 0, 1, -34, 1]),  # z^4 - 34z^3 + z^2
])

report = transcendence_test(apery, TruncSeries([1, 5, 73]))
print("binomial square sums:", report.verdict, "--", report.confidence)
for step in report.certificate:
    print("   ", step.display())

# The minimal operator is the input itself; the indicial polynomial at the
# origin is a perfect cube, so the local solution space needs logarithms
# and no algebraic function can span it.

# ---------------------------------------------------------------------------
# 2. log(1-z) from (z-1) f'' + f' = 0, f(0) = 0, f'(0) = -1
# ---------------------------------------------------------------------------

log_op = DiffOp([Poly(), Poly([1]), Poly([-1, 1])])
report = transcendence_test(log_op, TruncSeries([0, -1]))
print("\nlog(1-z):", report.verdict)
for step in report.certificate:
    print("   ", step.display())

# ---------------------------------------------------------------------------
# 3. Control: sqrt(1-4z) + z = 1 - z - 2z^2 - 4z^3 - 10z^4 - ...
# ---------------------------------------------------------------------------

sqrt_op = DiffOp([Poly([4]), Poly([0, -4]), Poly([1, -2]) * Poly([1, -4])])
report = transcendence_test(sqrt_op, TruncSeries([1, -1]))
print("\nsqrt(1-4z) + z:", report.verdict, "(the test proves nothing here)")

# For a series known to be globally bounded (here it is: the coefficients
# are integers), the variant test upgrades the failure to a conditional
# algebraicity verdict.
report = globally_bounded_test(sqrt_op, TruncSeries([1, -1]))
print("globally bounded variant:", report.verdict, "--", report.confidence)
