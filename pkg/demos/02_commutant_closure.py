"""Commutants, double commutants, and the closure test.

The commutant of a generator set contains every arrow that satisfies both
interchange equations against every generator.  Taking it twice gives the
smallest well-behaved category containing the generators; a span already
equal to its double commutant is closed in the operator-algebra sense.
"""

import numpy as np

from vncat import (
    Arrow,
    Context,
    Obj,
    ObjectUniverse,
    classical_commutant,
    commutant,
    dagger,
    double_commutant,
    endo_algebra,
    generated_star_algebra,
    is_von_neumann,
    span_category,
    standard_universe,
    subspace_equal,
)

ctx = Context(2)
uni = standard_universe(ctx)  # objects of dims 1, 2, 3 plus the unit

# a single self-adjoint generator on the unit object: acts on H alone
I = uni.unit
flip = Arrow(I, I, ctx, np.array([[0.0, 1.0], [1.0, 0.0]]))

prime = commutant([flip], uni)
second = double_commutant([flip], uni)
print("hom dims of the commutant / double commutant:")
for d, c in uni.pairs():
    print(f"  {d.name} -> {c.name}: {prime.homs[(d, c)].dim} / {second.homs[(d, c)].dim}")

# on the unit endomorphisms this is the classical picture exactly
print("\nunit endo dims, engine vs classical:",
      len(endo_algebra(second)), "vs",
      len(classical_commutant(classical_commutant([flip.mat]))))
print("star algebra generated by the raw matrix:",
      len(generated_star_algebra([flip.mat])))

# the triple commutant never adds anything beyond the first
third = commutant(second.all_arrows(), uni)
print("\nA' equals A''' at every pair:",
      all(subspace_equal(prime.homs[p], third.homs[p]) for p in uni.pairs()))

# a nilpotent span is NOT closed: its double commutant is strictly larger
unit_only = ObjectUniverse((Obj("I", 1),), ctx)
n = Arrow(unit_only.unit, unit_only.unit, ctx, np.array([[0.0, 1.0], [0.0, 0.0]]))
cat = span_category([n, dagger(n)], unit_only)
verdict = is_von_neumann(cat)
print("\nnilpotent span closed?", verdict.passed)
for d, c, have, want in verdict.failures:
    print(f"  {d.name} -> {c.name}: spans {have} dims, closure needs {want}")
