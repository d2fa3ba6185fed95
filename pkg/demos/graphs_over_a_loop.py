"""Infinite paths in small graphs and the endomaps they give.

A graph is a part over the one-loop graph. Reflecting it collapses every node
onto where its paths eventually go; coreflecting it lists its infinite paths
as lassos, with "drop the first edge" acting on them.
"""
from bipolar import UncountableChains, chains, loop_reflect
from bipolar.fincat import chain_graph, loop_graph, star_graph

c3 = chain_graph(3)
print("C3 has", len(chains(c3).lassos), "infinite paths; its reflection is", loop_reflect(c3))

s2 = star_graph(2)
cs = chains(s2)
print("\nS2 infinite paths:")
for lasso in cs.lassos:
    print(f"  {lasso.name:16} -> {cs.translation[lasso.name]}")
print("S2 reflection:", loop_reflect(s2))

try:
    chains(loop_graph(2))
except UncountableChains as e:
    print("\ntwo loops at one node:", e)
print("its reflection is the terminal graph:", loop_reflect(loop_graph(2)))
