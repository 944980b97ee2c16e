"""Which graph relation do encoding-level retractions track?

For encoded pairs, decide whether the source encoding is a retract of the
target encoding, and compare against three graph-level candidate readings:
loose embedding, induced embedding, and honest retract. On the small
catalogs only the retract reading agrees everywhere.

Run: python demos/07_retraction_readings.py
"""

from homfactor import (
    decide_retraction,
    encode_semigroup,
    encode_unary,
    graph_catalog,
    graph_retract,
    subgraph_embedding,
)

readings = {
    "loose embedding": lambda g, h: subgraph_embedding(g, h, induced=False),
    "induced embedding": lambda g, h: subgraph_embedding(g, h, induced=True),
    "graph retract": lambda g, h: graph_retract(g, h),
}


def tally(pairs, encoder):
    mismatches = {name: 0 for name in readings}
    encs = {}
    for g, h in pairs:
        for graph in (g, h):
            if graph not in encs:
                encs[graph] = encoder(graph)[0]
        algebra_answer = decide_retraction(encs[g], encs[h]) is not None
        for name, oracle in readings.items():
            if algebra_answer != (oracle(g, h) is not None):
                mismatches[name] += 1
    return mismatches


undirected = graph_catalog(2, 3)
pairs = [(g, h) for g in undirected for h in undirected]
print(f"semigroup encodings over {len(pairs)} undirected pairs (2-3 vertices):")
for name, bad in tally(pairs, encode_semigroup).items():
    print(f"  {name:18s} {bad} mismatches")

digraphs = graph_catalog(2, 3, directed=True, connected=True)
pairs = [(g, h) for g in digraphs for h in digraphs]
print(f"unary encodings over {len(pairs)} connected digraph pairs (2-3 vertices):")
for name, bad in tally(pairs, encode_unary).items():
    print(f"  {name:18s} {bad} mismatches")

print("only the retract reading survives; the acceptance suite repeats this "
      "determination over the full 2-4 vertex catalogs.")
