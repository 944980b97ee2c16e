"""Finite algebras as operation tables: construction, validation, maps.

Run: python demos/01_operation_tables.py
"""

from homfactor import (
    FiniteAlgebra,
    Mapping,
    Signature,
    check_properties,
    compose,
    is_homomorphism,
    is_retraction_respecting,
    make_gadgets,
    validate_algebra,
)

# The fixed five-element factorization target: carrier {0, a, b, b2, c},
# a*a = a*b = b*a = c, b*b = b2, everything else 0.
gadgets = make_gadgets()
z = gadgets.target_semigroup
print("the five-element target semigroup:", z)
print("labels:", z.labels)
print("full multiplication table (row-major):")
for x in range(z.size):
    print("  ", [z.labels[z.apply("mul", x, y)] for y in range(z.size)])

report = check_properties(z, "mul")
print("associative:", report.associative, "| commutative:", report.commutative)
print("validation report (empty = well-formed):", validate_algebra(z))

# A deliberately broken table is representable; validation reports it.
broken = FiniteAlgebra(Signature((("mul", 2),)), 2, {"mul": [0, 1, 2, 1]})
print("broken algebra report:", validate_algebra(broken))

# Maps are plain value vectors. The identity is always a homomorphism,
# the constant map onto the absorbing element too; swapping a and b is not.
print("identity is a homomorphism:", is_homomorphism(Mapping.identity(5), z, z))
print("constant-to-0 is a homomorphism:", is_homomorphism(Mapping.constant(5, 5, 0), z, z))
swap = Mapping(5, 5, (0, 2, 1, 3, 4))
print("swapping a and b is a homomorphism:", is_homomorphism(swap, z, z))

# Retractions are idempotent endomorphisms; "respecting f" means f∘r = f.
r = Mapping.identity(5)
f = Mapping.constant(5, 2, 0)
print("identity respects any f:", is_retraction_respecting(r, z, f))
print("compose(identity, swap) == swap:", compose(Mapping.identity(5), swap) == swap)
