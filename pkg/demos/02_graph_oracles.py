"""Exhaustive graph-level oracles: homomorphisms, embeddings, retracts, cores.

These back-check every reduction in the package. Run:
python demos/02_graph_oracles.py
"""

from homfactor import (
    complete_graph,
    cycle_graph,
    enumerate_graphs,
    graph_core,
    graph_hom,
    graph_retract,
    path_graph,
    strong_graph_hom,
    subgraph_embedding,
)

K2, K3, K4 = complete_graph(2), complete_graph(3), complete_graph(4)
C4, P3 = cycle_graph(4), path_graph(3)

print("hom C4 -> K2 (2-coloring):", graph_hom(C4, K2))
print("hom K3 -> K2 (impossible):", graph_hom(K3, K2))

# Strong homomorphisms also reflect non-edges; the bipartition collapse
# of C4 onto K2 is strong because non-adjacent twins may merge.
print("strong hom C4 -> K2:", strong_graph_hom(C4, K2))

print("P3 embeds loosely in K3:", subgraph_embedding(P3, K3))
print("P3 embeds induced in K3:", subgraph_embedding(P3, K3, induced=True))
print("P3 embeds induced in C4:", subgraph_embedding(P3, C4, induced=True))

# A retract needs maps both ways composing to the identity.
print("K2 retract of C4:", graph_retract(K2, C4))
print("K3 retract of C4:", graph_retract(K3, C4))

# Cores: complete graphs are cores; even cycles retract onto an edge.
print("core of K4 has", graph_core(K4).n, "vertices")
print("core of C4 has", graph_core(C4).n, "vertices")

# Catalogs are deduplicated up to isomorphism in a canonical order.
for n in range(1, 5):
    print(f"graphs on {n} unlabeled vertices:", len(enumerate_graphs(n)))
print("connected digraphs on 3 vertices:",
      len(enumerate_graphs(3, directed=True, connected=True)))
