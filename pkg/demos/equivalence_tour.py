"""Deciding whether two automata can be told apart by their observations."""
from podwa.engine import build_product, equivalent, threshold_queries, witness_search
from podwa.generators import fig2_pair, lambda_n, lambda_n_minimal, subset_sum_pair


def show(title, p1, p2):
    v = equivalent(p1, p2)
    print(f"{title}: {v.verdict.value}")
    if v.witness is not None:
        print("   ", v.witness.line(p1.alphabet))


show("two structurally different two-state automata", *fig2_pair())
for n in (2, 3, 4):
    show(f"lambda_{n} vs its {n + 2}-state form", lambda_n(n), lambda_n_minimal(n))
show("subset sum, {2,4} hitting 6", *subset_sum_pair([2, 4], 6))
show("subset sum, {2,4} hitting 12", *subset_sum_pair([2, 4], 12))

print("\nper-query view of the first pair:")
p1, p2 = fig2_pair()
g = build_product(p1, p2)
for q in threshold_queries(p1.scheme, p2.scheme):
    out = witness_search(g, q)
    print(f"  {q}: {out.status} via {out.stage}")
