"""Constructions on automata that preserve, flip or rescale their semantics."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import Dwa, ObservationScheme, Podwa, Violation, reachable_states
from .errors import (
    AlphabetMismatch,
    BadParameter,
    NonPositiveAlpha,
    NotACongruence,
    NotBinary,
)


def _fresh_name(states, base):
    name = base + "'"
    while name in states:
        name += "'"
    return name


def _affine(a: Dwa, alpha: int, beta: int) -> Dwa:
    # every weight times alpha; beta is added once through a fresh copy of the initial state
    init = _fresh_name(a.states, a.initial)
    delta = dict(a.delta)
    weight = {k: alpha * w for k, w in a.weight.items()}
    for x in a.alphabet:
        delta[init, x] = a.delta[a.initial, x]
        weight[init, x] = alpha * a.weight[a.initial, x] + beta
    return Dwa(a.alphabet, a.states + (init,), init, delta, weight)


def complement(p: Podwa) -> Podwa:
    """Binary PODWA accepting exactly the non-empty words ``p`` rejects."""
    if not p.is_binary:
        raise NotBinary(f"complement needs cuts (1,), got {p.scheme.cuts}")
    return Podwa(_affine(p.automaton, -1, 1), p.scheme)


def scale(p: Podwa, alpha: int, beta: int) -> Podwa:
    """Map every value ``v`` to ``alpha * v + beta`` and every cut likewise."""
    if alpha < 1:
        raise NonPositiveAlpha(alpha)
    cuts = tuple(alpha * c + beta for c in p.scheme.cuts)
    return Podwa(_affine(p.automaton, alpha, beta), ObservationScheme(cuts))


def exact_equivalent(a1: Dwa, a2: Dwa) -> bool:
    """Do ``a1`` and ``a2`` give every non-empty word the same value?

    Equal values on all words means equal weights on every letter read from
    every jointly reachable pair of states.
    """
    if a1.alphabet != a2.alphabet:
        raise AlphabetMismatch(f"{a1.alphabet} != {a2.alphabet}")
    start = (a1.initial, a2.initial)
    seen = {start}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        for x in a1.alphabet:
            if a1.weight[p, x] != a2.weight[q, x]:
                return False
            nxt = (a1.delta[p, x], a2.delta[q, x])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return True


@dataclass(frozen=True)
class MergeMap:
    """Surjection from the reachable states of ``source`` onto the states of ``target``."""

    source: Dwa
    target: Dwa
    mapping: dict

    def __call__(self, q):
        return self.mapping[q]

    def violations(self) -> list[Violation]:
        out = []
        if self.mapping.get(self.source.initial) != self.target.initial:
            out.append(Violation("InitialNotPreserved"))
        if set(self.mapping.values()) != set(self.target.states):
            out.append(Violation("NotSurjective"))
        for q in reachable_states(self.source):
            for x in self.source.alphabet:
                if self.mapping[self.source.delta[q, x]] != self.target.delta[self.mapping[q], x]:
                    out.append(Violation("NotCongruent", (q, x)))
        return out


def _block_name(block):
    return "+".join(sorted(block))


def quotient(a: Dwa, partition) -> tuple[Dwa, MergeMap]:
    """Merge each block of ``partition`` into one state.

    ``partition`` must cover exactly the reachable states.  A merged
    transition keeps its weight when all merged source transitions agree on
    it and is left as ``None`` otherwise.
    """
    blocks = [tuple(sorted(b)) for b in partition]
    reach = reachable_states(a)
    covered = [q for b in blocks for q in b]
    if sorted(covered) != sorted(reach) or any(not b for b in blocks):
        raise BadParameter("partition must cover each reachable state exactly once")
    mapping = {q: _block_name(b) for b in blocks for q in b}
    delta, weight = {}, {}
    for b in blocks:
        name = _block_name(b)
        for x in a.alphabet:
            targets = {mapping[a.delta[q, x]] for q in b}
            if len(targets) > 1:
                raise NotACongruence(x, b)
            delta[name, x] = targets.pop()
            ws = {a.weight[q, x] for q in b}
            weight[name, x] = ws.pop() if len(ws) == 1 else None
    target = Dwa(a.alphabet, tuple(mapping[b[0]] for b in blocks), mapping[a.initial], delta, weight)
    return target, MergeMap(a, target, mapping)


def minimize_exact(a: Dwa) -> tuple[Dwa, MergeMap]:
    """Smallest DWA with the same value on every word, by Moore refinement."""
    reach = reachable_states(a)
    block = {q: 0 for q in reach}
    n_blocks = 1
    while True:
        sigs = {}
        new = {}
        for q in reach:
            sig = (block[q],) + tuple((a.weight[q, x], block[a.delta[q, x]]) for x in a.alphabet)
            new[q] = sigs.setdefault(sig, len(sigs))
        block = new
        if len(sigs) == n_blocks:
            break
        n_blocks = len(sigs)
    groups = {}
    for q in reach:
        groups.setdefault(block[q], []).append(q)
    return quotient(a, groups.values())
