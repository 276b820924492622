#!/usr/bin/env python3
"""Looking at an operator through its singular points.

The exact local data at each singularity (indicial polynomial, exponent
profile, logarithms in the solution basis) is what powers the
transcendence verdicts.  Points that are algebraic over Q are handled as
one cluster in a quotient ring, splitting lazily if a computation tells
the conjugates apart.
"""

from dfinite import (
    DiffOp,
    Poly,
    SingularPoint,
    formal_solutions,
    indicial_branches,
    singularities,
)
from dfinite.rationals import QQ

apery = DiffOp([
    Poly([-5, 1]), Poly([1, -112, 7]), Poly([0, 3, -153, 6]), Poly([0, 0, 1, -34, 1])])

print("singular points:", singularities(apery))
for point in singularities(apery):
    for data in indicial_branches(apery, point):
        print("  at %-28s degree %d, exponents %s" % (
            data.point.label(), data.degree,
            [(str(r), m) for r, m in data.rational_roots]))

# the quadratic cluster has exponents {0, 1/2, 1}: individually harmless;
# the triple zero exponent at the origin is what forces transcendence

# ---------------------------------------------------------------------------
# Frobenius bases, with and without logarithms
# ---------------------------------------------------------------------------

# exponents {0, 1} with an unobstructed resonance: clean basis {1, z}
d2 = DiffOp([Poly(), Poly(), Poly([1])])
basis = formal_solutions(d2, SingularPoint.rational(QQ(0)), 3)
print("\nd^2 basis at 0:", [(str(e), j) for e, j in map(lambda s: s.leading(), basis.solutions)],
      "logs:", basis.has_logarithms)

# an obstructed resonance: solutions z^2 and z^2 log z + z
wronsk = DiffOp([Poly([-2, 4]), Poly([0, 2, -3]), Poly([0, 0, -1, 1])])
basis = formal_solutions(wronsk, SingularPoint.rational(QQ(0)), 4)
print("obstructed case:", [(str(e), j) for e, j in map(lambda s: s.leading(), basis.solutions)],
      "logs:", basis.has_logarithms)
for sol in basis.solutions:
    layers = ["log^%d: %s" % (j, [str(c) for c in layer[:4]])
              for j, layer in enumerate(sol.layers)]
    print("   exponent", str(sol.exponent), "|", " | ".join(layers))

# a logarithm sitting at a quadratic point cluster
cluster = DiffOp([
    Poly([0, 0, 0, -40, 0, 16]),
    Poly([12, 0, -48, 0, 35, 0, -7]),
    Poly([0, -12, 0, 16, 0, -7, 0, 1]),
])
pt = SingularPoint.algebraic(Poly([-2, 0, 1]))
basis = formal_solutions(cluster, pt, 3)
print("\ncluster at z^2 = 2: logs =", basis.has_logarithms,
      "| exponents", [(str(e), j) for e, j in map(lambda s: s.leading(), basis.solutions)])
