"""Independent reference implementations used to check the package.

Nothing here imports the algorithms under test; only the data classes.
"""
from __future__ import annotations

import itertools


def value(a, w):
    q, total = a.initial, 0
    for x in w:
        total += a.weight[q, x]
        q = a.delta[q, x]
    return total


def index(cuts, v):
    return sum(1 for c in cuts if c <= v)


def obs(p, w):
    return index(p.scheme.cuts, value(p.automaton, w))


def all_words(alphabet, max_len):
    for n in range(1, max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def first_difference(p1, p2, max_len):
    """Shortlex-first word observed differently, by plain enumeration."""
    for w in all_words(p1.automaton.alphabet, max_len):
        if obs(p1, w) != obs(p2, w):
            return w
    return None


def subset_sums_to(values, target):
    return any(
        sum(c) == target
        for r in range(1, len(values) + 1)
        for c in itertools.combinations(values, r)
    )


def chromatic_number(vertices, edges):
    vertices = list(vertices)
    for k in range(1, len(vertices) + 1):
        for colours in itertools.product(range(k), repeat=len(vertices)):
            c = dict(zip(vertices, colours))
            if all(c[u] != c[v] for u, v in edges):
                return k, c
    return 0, {}


def satisfiable(nvars, clauses):
    for bits in itertools.product((False, True), repeat=nvars):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
            return True
    return False


def two_gen_brute(base, offsets, c1, c2, t, limit=50):
    r0 = [t[i] - base[i] - sum(o[i] for o in offsets) for i in (0, 1)]
    ms = range(limit + 1) if c1 is not None else [0]
    ns = range(limit + 1) if c2 is not None else [0]
    c1 = c1 or (0, 0)
    c2 = c2 or (0, 0)
    for m in ms:
        for n in ns:
            if all(m * c1[i] + n * c2[i] >= r0[i] for i in (0, 1)):
                return (m, n)
    return None


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[head]] + part
        for i in range(len(part)):
            yield part[:i] + [[head] + part[i]] + part[i + 1:]


def reachable(a):
    seen, todo = {a.initial}, [a.initial]
    while todo:
        q = todo.pop()
        for x in a.alphabet:
            r = a.delta[q, x]
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return seen


def is_congruence(a, blocks):
    where = {q: i for i, b in enumerate(blocks) for q in b}
    return all(
        len({where[a.delta[q, x]] for q in b}) == 1 for b in blocks for x in a.alphabet
    )


def residual_signature(a, q, depth):
    """Values of every word up to ``depth`` read from state ``q``."""
    out = []
    for w in all_words(a.alphabet, depth):
        s, total = q, 0
        for x in w:
            total += a.weight[s, x]
            s = a.delta[s, x]
        out.append(total)
    return tuple(out)
