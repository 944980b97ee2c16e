"""f-cores: brute decremental minimization and the variety shortcuts.

Run: python demos/05_f_cores.py
"""

from homfactor import (
    InapplicableReport,
    Mapping,
    abelian_fcore,
    boolean_fcore,
    brute_fcore,
    complete_graph,
    cycle_graph,
    find_right_factor,
    fixed_z_right_factor,
    gset_fcore,
    is_fcore,
    make_fcore_instance,
    make_rf_instance,
    make_semilattice_X,
    vspace_fcore,
)
from homfactor.varieties import (
    boolean_atoms,
    boolean_hom,
    make_abelian,
    make_boolean,
    make_gset,
    vspace_hom,
)

# Brute force: repeatedly find any non-identity retraction respecting f,
# restrict to its fixed points, repeat. The result is certified minimal.
x, z, f = make_fcore_instance(cycle_graph(4))
res = brute_fcore(x, f, z)
print(f"semigroup encoding of C4: {x.size} elements, f-core has "
      f"{len(res.image)} (certified: {res.certified_minimal})")

# Complete graphs are graph cores, so their encodings are their own f-cores.
x, z, f = make_fcore_instance(complete_graph(4))
print("encoding of K4 is its own f-core:", is_fcore(x, f, z))

# So are the chain semilattices, at every size.
for n in (1, 2):
    alg, _, fmap = make_semilattice_X(n)
    print(f"chain semilattice n={n} ({alg.size} elements) is an f-core:",
          is_fcore(alg, fmap))

# Vector spaces: project along the kernel; the core is a copy of the image.
fv, xv, zv = vspace_hom(2, 3, 1, [[1, 1, 0]])
print("F2^3 -> F2 core size:", len(vspace_fcore(xv, fv, zv).image))

# Boolean algebras: redirect non-representative atoms.
xb, zb = make_boolean(3), make_boolean(2)
fb = boolean_hom(xb, zb, boolean_atoms(xb)[:2])
print("2^3 -> 2^2 core size:", len(boolean_fcore(xb, fb, zb).image))

# Group actions: merge orbits along equivariant maps compatible with f.
xa = make_gset([[0, 1, 2, 3], [1, 0, 3, 2]])   # two free 2-orbits
za = make_gset([[0, 1], [1, 0]])
fa = Mapping(4, 2, (0, 1, 0, 1))
print("two identical free orbits merge to:", len(gset_fcore(xa, fa, za).image))

# Abelian groups: the kernel must split off. Z4 -> Z2 is the classic
# non-example: the construction reports inapplicable and falls back.
res = abelian_fcore(make_abelian([4]), Mapping(4, 2, (0, 1, 0, 1)), make_abelian([2]))
if isinstance(res, InapplicableReport):
    print("Z4 -> Z2:", res.reason, "| brute core size:",
          len(res.fallback.image))

# The fixed-target pipeline: shrink X to its f-core, solve there, and
# reassemble the witness through the retraction.
inst = make_rf_instance(cycle_graph(4), complete_graph(2))
direct = find_right_factor(inst)
piped = fixed_z_right_factor(inst, "brute")
print("pipeline and direct search agree:",
      (direct is None) == (piped is None))
