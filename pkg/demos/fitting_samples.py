"""Fitting automata to labelled samples."""
from podwa.fitting import check_sample, fit_prefix_tree, fit_single_state
from podwa.formats import serialize, serialize_sample
from podwa.generators import Cnf, sat_sample

for cnf in (Cnf(2, ((1, 2, 2), (-1, -1, 2))), Cnf(1, ((1, 1, 1), (-1, -1, -1)))):
    s = sat_sample(cnf)
    print(serialize_sample(s))
    one = fit_single_state(s, 1)
    print("one-state fit:", "none" if one is None else
          {x: one.automaton.weight["q", x] for x in one.alphabet})
    tree = fit_prefix_tree(s)
    print(f"prefix tree: {len(tree.automaton.states)} states, "
          f"{len(check_sample(tree, s))} violations\n")

print(serialize(fit_prefix_tree(sat_sample(Cnf(1, ((1, 1, 1),))))))
