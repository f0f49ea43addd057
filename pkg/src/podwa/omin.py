"""Minimization by merging: a smaller quotient automaton with bounded weights
that makes exactly the same observations.

Candidate partitions are transition congruences of the reachable states.  For
each one the merged weights are unknowns; every word the search has seen so
far pins its value to one interval, which is a linear constraint on those
unknowns.  An integer program proposes weights, the equivalence engine
checks them, and any witness it returns joins the word cache.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from .core import Dwa, Podwa, observe, reachable_states, words
from .engine import DEFAULT_CONFIG, EngineConfig, Verdict, equivalent
from .errors import BadParameter, CapExceeded, InconclusiveEngine
from .transforms import MergeMap, quotient


@dataclass(frozen=True)
class MergeSearchConfig:
    k: int
    weight_bound: int | None = None  # None: the largest |weight| of the source
    max_partitions: int = 200_000
    max_assignments: int = 10_000
    cache_size: int = 5000
    seed_len: int = 3
    engine: EngineConfig = DEFAULT_CONFIG

    def __post_init__(self):
        if self.k < 1:
            raise BadParameter("k must be at least 1")
        if self.weight_bound is not None and self.weight_bound < 0:
            raise BadParameter("weight_bound must be non-negative")


class _UnionFind:
    def __init__(self, parent):
        self.parent = list(parent)

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i, j):
        i, j = self.find(i), self.find(j)
        if i == j:
            return False
        if j < i:
            i, j = j, i
        self.parent[j] = i
        return True


def _close(labels, succ, i, j):
    """Merge blocks of ``i`` and ``j`` and everything that forces; returns canonical labels."""
    uf = _UnionFind(range(len(labels)))
    first = {}
    for s, lab in enumerate(labels):
        if lab in first:
            uf.union(first[lab], s)
        else:
            first[lab] = s
    stack = [(i, j)]
    while stack:
        p, q = stack.pop()
        if uf.union(p, q):
            for x in range(len(succ[p])):
                stack.append((succ[p][x], succ[q][x]))
        # already-merged pairs were closed when they were merged
    return _canonical([uf.find(s) for s in range(len(labels))])


def _canonical(labels):
    seen = {}
    return tuple(seen.setdefault(lab, len(seen)) for lab in labels)


def enumerate_congruences(a: Dwa, max_blocks: int, max_partitions: int | None = None):
    """Yield every transition congruence of the reachable states with ``<= max_blocks`` blocks.

    Partitions come as lists of state tuples, fewest blocks first and then by
    their canonical labelling (states in breadth-first order).
    """
    reach = reachable_states(a)
    index = {q: i for i, q in enumerate(reach)}
    succ = [[index[a.delta[q, x]] for x in a.alphabet] for q in reach]
    start = tuple(range(len(reach)))
    seen = {start}
    stack = [start]
    while stack:
        labels = stack.pop()
        n = max(labels) + 1
        reps = [labels.index(b) for b in range(n)]
        for bi in range(n):
            for bj in range(bi + 1, n):
                nxt = _close(labels, succ, reps[bi], reps[bj])
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
                    if max_partitions is not None and len(seen) > max_partitions:
                        raise CapExceeded("max_partitions", max_partitions)
    for labels in sorted((lab for lab in seen if max(lab) < max_blocks),
                         key=lambda lab: (max(lab), lab)):
        blocks = [[] for _ in range(max(labels) + 1)]
        for s, lab in enumerate(labels):
            blocks[lab].append(reach[s])
        yield [tuple(b) for b in blocks]


class _WordCache:
    def __init__(self, p: Podwa, seed_len, size):
        self.p = p
        self.size = size
        self.entries = {}
        for w in words(p.alphabet, seed_len):
            if len(self.entries) >= size:
                break
            self.add(w)

    def add(self, w):
        w = tuple(w)
        if w not in self.entries:
            self.entries[w] = self.p.scheme.interval(observe(self.p, w))


def _solve(target: Dwa, cache: _WordCache, bound: int):
    """Integer weights for ``target`` in ``[-bound, bound]`` meeting every cached word, or ``None``.

    Minimises the sum of absolute weights so that small solutions come first.
    """
    keys = [(q, x) for q in target.states for x in target.alphabet]
    col = {k: i for i, k in enumerate(keys)}
    n = len(keys)
    rows = {}
    for w, (lo, hi) in cache.entries.items():
        counts = [0] * n
        q = target.initial
        for x in w:
            counts[col[q, x]] += 1
            q = target.delta[q, x]
        key = tuple(counts)
        old_lo, old_hi = rows.get(key, (None, None))
        lo = lo if old_lo is None else (old_lo if lo is None else max(lo, old_lo))
        hi = hi if old_hi is None else (old_hi if hi is None else min(hi, old_hi))
        if lo is not None and hi is not None and lo > hi:
            return None
        rows[key] = (lo, hi)
    # variables: weights x (n) then magnitudes t (n) with t >= |x|
    cost = np.concatenate([np.zeros(n), np.ones(n)])
    constraints = []
    if rows:
        mat = np.array([list(k) + [0] * n for k in rows], dtype=float)
        lo = np.array([-np.inf if v[0] is None else v[0] for v in rows.values()])
        hi = np.array([np.inf if v[1] is None else v[1] for v in rows.values()])
        constraints.append(LinearConstraint(mat, lo, hi))
    eye = np.eye(n)
    constraints.append(LinearConstraint(np.hstack([eye, -eye]), -np.inf, 0))
    constraints.append(LinearConstraint(np.hstack([-eye, -eye]), -np.inf, 0))
    res = milp(
        cost,
        constraints=constraints,
        integrality=np.ones(2 * n),
        bounds=Bounds(np.concatenate([-bound * np.ones(n), np.zeros(n)]), bound * np.ones(2 * n)),
    )
    if res.status != 0:
        return None
    return {k: int(round(res.x[i])) for k, i in col.items()}


def omin_search(p: Podwa, cfg: MergeSearchConfig) -> tuple[Dwa, MergeMap] | None:
    """Like :func:`omin_by_merging` but also returns the merge map."""
    a = p.automaton
    bound = a.max_abs_weight if cfg.weight_bound is None else cfg.weight_bound
    cache = _WordCache(p, cfg.seed_len, cfg.cache_size)
    checks = 0
    for partition in enumerate_congruences(a, cfg.k, cfg.max_partitions):
        shape, _ = quotient(a, partition)
        while True:
            weights = _solve(shape, cache, bound)
            if weights is None:
                break
            checks += 1
            if checks > cfg.max_assignments:
                raise CapExceeded("max_assignments", cfg.max_assignments)
            cand, merge = quotient(a, partition)
            cand = cand.with_weights(weights)
            verdict = equivalent(Podwa(cand, p.scheme), p, cfg.engine)
            if verdict.verdict is Verdict.EQUIVALENT:
                return cand, MergeMap(a, cand, merge.mapping)
            if verdict.verdict is Verdict.INCONCLUSIVE:
                raise InconclusiveEngine(verdict)
            cache.add(verdict.witness.word)
    return None


def omin_by_merging(p: Podwa, cfg: MergeSearchConfig) -> Dwa | None:
    """A merged automaton with at most ``cfg.k`` states observing exactly like ``p``, or ``None``."""
    found = omin_search(p, cfg)
    return None if found is None else found[0]


def omin_decision(p: Podwa, k: int, **options) -> bool:
    return omin_search(p, MergeSearchConfig(k=k, **options)) is not None
