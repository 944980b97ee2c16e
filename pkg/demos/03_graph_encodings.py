"""The three graph-to-algebra encoders and their legends.

Run: python demos/03_graph_encodings.py
"""

from homfactor import (
    check_properties,
    cycle_graph,
    encode_magma,
    encode_semigroup,
    encode_unary,
    lift_nary,
    make_gadgets,
    make_semilattice_X,
    validate_algebra,
)

C4 = cycle_graph(4)

# Unary encoding: digraph -> two unary maps over vertex copies and arc pairs.
dagger, dagger_legend = encode_unary(C4.as_directed())
print(f"unary encoding of C4 (both orientations): {dagger.size} elements")
print("  first roles:", dagger_legend.entries[:4], "...")

# Magma encoding: one non-associative binary operation.
star, star_legend = encode_magma(C4)
print(f"magma encoding of C4: {star.size} elements; associative:",
      check_properties(star, "mul").associative)

# Semigroup encoding: vertices, one element per non-adjacent pair
# (including self pairs), plus b, b2, c, 0.
xg, xg_legend = encode_semigroup(C4)
print(f"semigroup encoding of C4: {xg.size} elements")
print("  labels:", xg.labels)
rep = check_properties(xg, "mul")
print("  associative:", rep.associative, "| commutative:", rep.commutative)
print("  validation:", validate_algebra(xg))

# Fixed gadgets: the 5- and 6-element semigroups used as factorization
# target/source, the flat semilattice, and the two-point unary algebra.
g = make_gadgets()
print("gadgets:", g.target_semigroup.labels, g.source_semigroup.labels,
      g.flat_semilattice.labels, g.two_point_unary.labels)

# Any single binary operation lifts to an n-ary one ignoring all but the
# first two arguments; homomorphisms are unchanged.
t = lift_nary(g.target_semigroup, 3)
print("ternary lift of the target:", t.signature.ops, "table entries:",
      t.table("t").size)

# The chain semilattices: arbitrarily large algebras admitting no proper
# retraction compatible with their map onto the flat semilattice.
for n in (1, 2, 3):
    alg, _, f = make_semilattice_X(n)
    print(f"chain semilattice n={n}: {alg.size} elements,",
          "meet-semilattice:", check_properties(alg, "meet").meet_semilattice)
