"""Merging states without changing what an observer sees."""
from podwa.core import BINARY, Podwa
from podwa.engine import equivalent
from podwa.formats import serialize
from podwa.generators import coloring_automaton, lambda_n, lambda_n_minimal, named_graphs, recolor_weights
from podwa.omin import MergeSearchConfig, omin_by_merging, omin_decision

for name, g in named_graphs().items():
    p = coloring_automaton(g)
    sizes = [k for k in range(1, len(p.automaton.states) + 1) if omin_decision(p, k)]
    print(f"{name:5s}: {len(p.automaton.states)} states, smallest merge has {sizes[0]}")

g = named_graphs()["C4"]
merged = Podwa(recolor_weights(g, {"a": 1, "b": 2, "c": 1, "d": 2}), BINARY)
print("\nC4 merged by a 2-colouring:", equivalent(merged, coloring_automaton(g)).verdict.value)
print(serialize(merged))

p = lambda_n(2)
small = omin_by_merging(p, MergeSearchConfig(k=4, weight_bound=1))
print("lambda_2 merged to 4 states with weights in {-1,0,1}:", small)
m = lambda_n_minimal(2)
print("the 4-state form uses weight", m.automaton.max_abs_weight, "and is",
      equivalent(m, p).verdict.value)
