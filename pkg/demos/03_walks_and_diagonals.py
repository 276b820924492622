#!/usr/bin/env python3
"""Lattice walks and diagonals of rational functions.

Counting sequences from combinatorics arrive without any operator; the
package generates their coefficients exactly, guesses an annihilator,
and runs the transcendence machinery on it.
"""

from dfinite import (
    DiagonalSpec,
    MPoly,
    TRIDENT_STEPS,
    apery_diagonal_spec,
    gen_binomial_sum,
    gen_diagonal,
    gen_walk,
    guess_annihilator,
    transcendence_test,
)
from dfinite.minimize import MinimizeOptions
from dfinite.transcend import TranscendOptions

# ---------------------------------------------------------------------------
# 1. Quarter-plane walks with steps NE, N, NW, S
# ---------------------------------------------------------------------------

w = gen_walk(TRIDENT_STEPS, 170)
print("walk counts:", [int(c) for c in w.coeffs[:7]], "...")

op = guess_annihilator(w, max_order=6)
print("guessed annihilator: order", op.order, "degree", op.degree())

opts = TranscendOptions(minimize=MinimizeOptions(max_degree=op.degree() + 10,
                                                 max_precision=260))
report = transcendence_test(op, w.prefix(op.order + 8), opts)
print("verdict:", report.verdict)
for step in report.certificate:
    print("   ", step.display())

# ---------------------------------------------------------------------------
# 2. Diagonals: central binomial coefficients from 1/(1-x-y)
# ---------------------------------------------------------------------------

spec = DiagonalSpec(
    MPoly(2, {(0, 0): 1}),
    MPoly(2, {(0, 0): 1, (1, 0): -1, (0, 1): -1}),
    ["x", "y"],
)
print("\ndiag 1/(1-x-y):", [int(c) for c in gen_diagonal(spec, 8).coeffs])

# ---------------------------------------------------------------------------
# 3. A four-variable identity: the binomial square sums as a diagonal
# ---------------------------------------------------------------------------

d = gen_diagonal(apery_diagonal_spec(2, 2), 7)
s = gen_binomial_sum([2, 2], 7)
print("4-variable diagonal:", [int(c) for c in d.coeffs])
print("binomial sums:      ", [int(c) for c in s.coeffs])
print("identical:", d == s)
