"""Constructors for the automaton families and reduction instances.

Every function returns validated objects.  Reductions:

* :func:`subset_sum_pair` - two binary PODWA that differ iff a subset sums to T.
* :func:`coloring_automaton` - a binary PODWA that merges down to k+2 states
  iff the graph is k-colourable; :func:`recolor_weights` builds the merged
  automaton from a proper colouring.
* :func:`sat_sample` - a sample fitted by a one-state PODWA iff the formula
  is satisfiable.
"""
from __future__ import annotations

import random
import string
from dataclasses import dataclass

from .core import BINARY, ObservationScheme, Podwa, make_dwa
from .errors import BadParameter, ImproperColoring, SelfLoopEdge
from .formats import Sample

THREE_WAY = ObservationScheme((0, 1))


@dataclass(frozen=True)
class Graph:
    """Graph with ordered edges ``e1 .. em``; edge direction only names the endpoints."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "edges", tuple((str(v), str(u)) for v, u in self.edges))
        for v, u in self.edges:
            if v == u:
                raise SelfLoopEdge(f"edge ({v}, {u}) is a self-loop")
            if v not in self.vertices or u not in self.vertices:
                raise BadParameter(f"edge ({v}, {u}) uses an unknown vertex")

    @classmethod
    def from_edges(cls, edges, vertices=()):
        vs = list(vertices)
        for e in edges:
            for v in e:
                if v not in vs:
                    vs.append(v)
        return cls(tuple(vs), tuple(edges))


@dataclass(frozen=True)
class Cnf:
    """3-CNF over variables ``1..nvars``; literals are DIMACS-style signed ints."""

    nvars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for c in self.clauses:
            if len(c) != 3:
                raise BadParameter(f"clause {c} does not have exactly three literals")
            if any(l == 0 or abs(l) > self.nvars for l in c):
                raise BadParameter(f"clause {c} mentions an unknown variable")

    def satisfied_by(self, assignment) -> bool:
        """``assignment[i]`` is the truth value of variable ``i + 1``."""
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)


def _const(states, alphabet, target, w=0):
    return {(q, x): (target, w) for q in states for x in alphabet}


def example_ccount() -> Podwa:
    """One state; a, b, c weigh -1, 0, 1.  Accepts words with more c's than a's."""
    trans = {("q0", "a"): ("q0", -1), ("q0", "b"): ("q0", 0), ("q0", "c"): ("q0", 1)}
    return Podwa(make_dwa("abc", ["q0"], "q0", trans), BINARY)


def l_union_components() -> tuple[Podwa, Podwa]:
    """The two one-state languages "more c than a" and "more c than b"."""
    trans = {("q0", "a"): ("q0", 0), ("q0", "b"): ("q0", -1), ("q0", "c"): ("q0", 1)}
    return example_ccount(), Podwa(make_dwa("abc", ["q0"], "q0", trans), BINARY)


def lambda_n(n: int) -> Podwa:
    """Automaton with weights in {-1, 0, 1} whose minimal equivalents need weight 2**n.

    ``i^k a`` (k < n) has value 1 unless followed by exactly ``b^(n-k)``,
    which brings it back to 0; symmetrically for ``i^k b``.
    """
    if n < 2:
        raise BadParameter("lambda_n needs n >= 2")
    alphabet = ("a", "b", "i")
    spine = [f"q{j}" for j in range(n + 1)]
    up = [f"q{j}a" for j in range(1, n + 1)]
    down = [f"q{j}b" for j in range(1, n + 1)]
    states = spine + up + down + ["s"]
    trans = _const(states, alphabet, "s")
    for j in range(n):
        trans[f"q{j}", "i"] = (f"q{j + 1}", 0)
        trans[f"q{j}", "a"] = (f"q{j + 1}a", 1)
        trans[f"q{j}", "b"] = (f"q{j + 1}b", -1)
    trans[f"q{n}", "a"] = ("s", 1)
    trans[f"q{n}", "b"] = ("s", -1)
    for j in range(1, n):
        trans[f"q{j}a", "b"] = (f"q{j + 1}a", 0)
        trans[f"q{j}b", "a"] = (f"q{j + 1}b", 0)
    # b^(n-k) after a must cancel the leading +1, so the last b-edge weighs -1
    trans[f"q{n}a", "b"] = ("s", -1)
    trans[f"q{n}b", "a"] = ("s", 1)
    return Podwa(make_dwa(alphabet, states, "q0", trans), THREE_WAY)


def lambda_n_minimal(n: int) -> Podwa:
    """The (n+2)-state equivalent of :func:`lambda_n`; the first a-weight is ``2**n``."""
    if n < 2:
        raise BadParameter("lambda_n_minimal needs n >= 2")
    alphabet = ("a", "b", "i")
    states = [f"q{j}" for j in range(n + 1)] + ["s"]
    trans = _const(states, alphabet, "s")
    for j in range(n + 1):
        nxt = f"q{j + 1}" if j < n else "s"
        w = 2 ** (n - j) if j < n else 2
        trans[f"q{j}", "a"] = (nxt, w)
        trans[f"q{j}", "b"] = (nxt, -w)
        trans[f"q{j}", "i"] = (nxt, 0)
    return Podwa(make_dwa(alphabet, states, "q0", trans), THREE_WAY)


def fig2_pair() -> tuple[Podwa, Podwa]:
    """Two equivalent, minimal, non-isomorphic binary PODWA: only ``a`` is rejected."""
    first = {
        ("q0", "a"): ("q1", -1),
        ("q0", "b"): ("q1", 2),
        ("q1", "a"): ("q1", 2),
        ("q1", "b"): ("q1", 2),
    }
    second = dict(first)
    second["q0", "b"] = ("q0", 2)
    return (
        Podwa(make_dwa("ab", ["q0", "q1"], "q0", first), BINARY),
        Podwa(make_dwa("ab", ["q0", "q1"], "q0", second), BINARY),
    )


def subset_sum_pair(values, target: int) -> tuple[Podwa, Podwa]:
    """Binary PODWA over {0, 1} reading characteristic vectors of ``values``.

    The first automaton computes ``sum(picked) - target``, the second adds 1.
    They are equivalent iff no subset sums to ``target``.  Odd inputs are
    doubled first so every value of the first automaton is even.
    """
    values = list(values)
    if not values:
        raise BadParameter("subset_sum_pair needs at least one value")
    if any(v % 2 for v in values) or target % 2:
        values = [2 * v for v in values]
        target *= 2
    k = len(values)
    states = [f"q{i}" for i in range(k + 2)]

    def build(last):
        trans = {}
        for i in range(k):
            trans[f"q{i}", "0"] = (f"q{i + 1}", 0)
            trans[f"q{i}", "1"] = (f"q{i + 1}", values[i])
        trans[f"q{k}", "0"] = (f"q{k + 1}", last)
        trans[f"q{k}", "1"] = (f"q{k + 1}", last)
        trans[f"q{k + 1}", "0"] = (f"q{k + 1}", 0)
        trans[f"q{k + 1}", "1"] = (f"q{k + 1}", 0)
        return Podwa(make_dwa("01", states, "q0", trans), BINARY)

    return build(-target), build(-target + 1)


def _edge_letters(i):
    return f"e{i}+", f"e{i}-"


def coloring_automaton(g: Graph) -> Podwa:
    """Binary PODWA whose vertex states can share a state iff they are not adjacent."""
    if not isinstance(g, Graph):
        g = Graph.from_edges(g)
    alphabet = [x for i in range(1, len(g.edges) + 1) for x in _edge_letters(i)]
    vstate = {v: f"q_{v}" for v in g.vertices}
    states = ["q0", "qf"] + list(vstate.values())
    trans = _const(states, alphabet, "qf")
    for i, (v, u) in enumerate(g.edges, start=1):
        plus, minus = _edge_letters(i)
        trans["q0", minus] = (vstate[v], -3 * i - 1)
        trans["q0", plus] = (vstate[u], -3 * i - 1)
        for x in g.vertices:
            if x == v:
                trans[vstate[x], minus] = ("qf", 3 * i)
                trans[vstate[x], plus] = ("qf", 3 * i + 2)
            elif x == u:
                trans[vstate[x], minus] = ("qf", 3 * i + 2)
                trans[vstate[x], plus] = ("qf", 3 * i)
            else:
                trans[vstate[x], minus] = ("qf", 3 * i + 1)
                trans[vstate[x], plus] = ("qf", 3 * i + 1)
    return Podwa(make_dwa(alphabet, states, "q0", trans), BINARY)


def recolor_weights(g: Graph, coloring):
    """Merge each colour class of :func:`coloring_automaton` into one state.

    Within a class at most one vertex touches a given edge; the whole class
    copies that vertex's weights on the edge letters, and keeps ``3j + 1``
    when no member touches edge j.  Returns a :class:`Dwa` with
    ``#colours + 2`` states.
    """
    if not isinstance(g, Graph):
        g = Graph.from_edges(g)
    missing = [v for v in g.vertices if v not in coloring]
    if missing:
        raise ImproperColoring(f"vertices without a colour: {missing}")
    for v, u in g.edges:
        if coloring[v] == coloring[u]:
            raise ImproperColoring(f"edge ({v}, {u}) joins two vertices of colour {coloring[v]}")
    alphabet = [x for i in range(1, len(g.edges) + 1) for x in _edge_letters(i)]
    cstate = {c: f"c{c}" for c in sorted({coloring[v] for v in g.vertices}, key=str)}
    states = ["q0", "qf"] + list(cstate.values())
    trans = _const(states, alphabet, "qf")
    for i, (v, u) in enumerate(g.edges, start=1):
        plus, minus = _edge_letters(i)
        trans["q0", minus] = (cstate[coloring[v]], -3 * i - 1)
        trans["q0", plus] = (cstate[coloring[u]], -3 * i - 1)
        for c, q in cstate.items():
            if c == coloring[v]:
                trans[q, minus] = ("qf", 3 * i)
                trans[q, plus] = ("qf", 3 * i + 2)
            elif c == coloring[u]:
                trans[q, minus] = ("qf", 3 * i + 2)
                trans[q, plus] = ("qf", 3 * i)
            else:
                trans[q, minus] = ("qf", 3 * i + 1)
                trans[q, plus] = ("qf", 3 * i + 1)
    return make_dwa(alphabet, states, "q0", trans)


def _literal_letter(lit):
    return f"p{lit}" if lit > 0 else f"~p{-lit}"


def sat_sample(cnf: Cnf) -> Sample:
    """Sample that a one-state PODWA fits iff ``cnf`` is satisfiable.

    Intervals are ``(-inf, 0)``, ``[0, 1]`` and ``[2, +inf)``.
    """
    alphabet = ["q"]
    entries = [(("q",), 1), (("q", "q"), 2)]
    for i in range(1, cnf.nvars + 1):
        pos, neg = _literal_letter(i), _literal_letter(-i)
        alphabet += [pos, neg]
        entries += [((pos,), 1), ((neg,), 1), ((pos, neg), 1), ((pos, neg, "q"), 2)]
    for clause in cnf.clauses:
        entries.append((tuple(_literal_letter(l) for l in clause) + ("q",), 2))
    return Sample(tuple(alphabet), ObservationScheme((0, 2)), tuple(entries))


def random_podwa(seed, n_states: int, alphabet_size: int, max_weight: int, cuts=(1,)) -> Podwa:
    """Uniformly random total automaton; deterministic in ``seed``."""
    if n_states < 1 or not 1 <= alphabet_size <= 26 or max_weight < 0:
        raise BadParameter("need n_states >= 1, 1 <= alphabet_size <= 26, max_weight >= 0")
    scheme = ObservationScheme(tuple(cuts))
    if scheme.violations():
        raise BadParameter(f"invalid cuts {cuts}")
    rng = random.Random(seed)
    alphabet = string.ascii_lowercase[:alphabet_size]
    states = [f"q{i}" for i in range(n_states)]
    trans = {}
    for q in states:
        for x in alphabet:
            trans[q, x] = (rng.choice(states), rng.randint(-max_weight, max_weight))
    return Podwa(make_dwa(alphabet, states, "q0", trans), scheme)


def random_cuts(rng: random.Random, max_cuts: int = 3, span: int = 3) -> tuple[int, ...]:
    k = rng.randint(1, max_cuts)
    return tuple(sorted(rng.sample(range(-span, span + 1), k)))


def random_pair(seed, max_states=4, max_alphabet=3, max_weight=2, max_cuts=3, span=3):
    """Two random PODWA over a shared alphabet, each with its own random cuts."""
    rng = random.Random(seed)
    k = rng.randint(1, max_alphabet)
    out = []
    for _ in range(2):
        out.append(
            random_podwa(
                rng.getrandbits(32), rng.randint(1, max_states), k, max_weight,
                random_cuts(rng, max_cuts, span),
            )
        )
    return tuple(out)


def named_graphs() -> dict[str, Graph]:
    """Small graphs used by the colouring checks."""
    return {
        "edge": Graph.from_edges([("v", "u")]),
        "P3": Graph.from_edges([("u", "v"), ("v", "w")]),
        "C4": Graph.from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]),
        "C5": Graph.from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")]),
        "K3": Graph.from_edges([("a", "b"), ("b", "c"), ("c", "a")]),
    }


def suite_pairs():
    """Named pairs of PODWA built from every constructor, for regression runs."""
    pairs = [("fig2", *fig2_pair()), ("l_union", *l_union_components())]
    for n in (2, 3, 4):
        pairs.append((f"lambda_{n}", lambda_n(n), lambda_n_minimal(n)))
    pairs.append(("lambda_2_vs_3", lambda_n(2), lambda_n(3)))
    for vals, t in (([2, 4], 6), ([2, 4], 12), ([1, 3, 5], 4), ([2, 6, 8], 12), ([4, 6], 8)):
        pairs.append((f"subset_{vals}_{t}", *subset_sum_pair(vals, t)))
    cc = example_ccount()
    for name, g in named_graphs().items():
        if len(g.edges) <= 3:
            auto = coloring_automaton(g)
            pairs.append((f"coloring_{name}_self", auto, auto))
    p3 = named_graphs()["P3"]
    pairs.append(("coloring_P3_recolored", coloring_automaton(p3),
                  Podwa(recolor_weights(p3, {"u": 1, "v": 2, "w": 1}), BINARY)))
    pairs.append(("ccount_self", cc, cc))
    return pairs
