"""The five factorization decisions, driven through the graph reductions.

Run: python demos/04_factorization_decisions.py
"""

from homfactor import (
    FactorizationInstance,
    Mapping,
    complete_graph,
    cycle_graph,
    decode_hom,
    decide_isomorphism,
    decide_retraction,
    encode_semigroup,
    find_factorization,
    find_homomorphism,
    find_left_factor,
    find_right_factor,
    graph_hom,
    make_gadgets,
    make_lf_instance,
    make_rf_instance,
    make_unary_lf_instance,
)

K2, K3, C4 = complete_graph(2), complete_graph(3), cycle_graph(4)

# Plain homomorphism existence: between semigroup encodings there is
# always the constant map onto the absorbing element.
xg, lg = encode_semigroup(K3)
yh, lh = encode_semigroup(K2)
print("hom between semigroup encodings always exists:",
      find_homomorphism(xg, yh) is not None)

# Right factor: given f: X -> Z and h: Y -> Z, find g with h∘g = f.
# Solvability of the built instances tracks graph homomorphism existence.
for g, h in ((C4, K2), (K3, K2)):
    inst = make_rf_instance(g, h)
    witness = find_right_factor(inst)
    oracle = graph_hom(g, h)
    print(f"right factor for ({g.n}-vertex, {h.n}-vertex): "
          f"{'solvable' if witness else 'unsolvable'}; graph hom: {oracle}")
    if witness is not None:
        _, legend_g = encode_semigroup(g)
        _, legend_h = encode_semigroup(h)
        print("  decoded vertex map:", decode_hom(witness, legend_g, legend_h))

# Left factor: given f and g from a common source, find h with h∘g = f.
print("left factor (needs hom K3 -> K2):",
      find_left_factor(make_lf_instance(K2, K3)) is not None)
print("left factor (needs hom K2 -> K3):",
      find_left_factor(make_lf_instance(K3, K2)) is not None)
print("unary left factor (needs hom K2 -> K3):",
      find_left_factor(make_unary_lf_instance(K2.as_directed(), K3.as_directed())) is not None)

# Full factorization: both maps unknown.
z = make_gadgets().target_semigroup
inst = FactorizationInstance("full-factor", z, z, z, f=Mapping.constant(5, 5, 0))
g_w, h_w = find_factorization(inst)
print("full factorization witness values:", g_w.values, h_w.values)

# Retraction and isomorphism.
xk2, _ = encode_semigroup(K2)
xc4, _ = encode_semigroup(C4)
print("encoding of K2 is a retract of the encoding of C4:",
      decide_retraction(xk2, xc4) is not None)
print("isomorphism target vs itself:", decide_isomorphism(z, z) is not None)
