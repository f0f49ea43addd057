"""Checking and fitting PODWA against labelled samples."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product

from .core import Dwa, Podwa, observe
from .errors import AlphabetMismatch, DirectContradiction, SchemeMismatch, SearchSpaceCap
from .formats import Sample

__all__ = ["Sample", "SampleViolation", "check_sample", "fit_single_state", "fit_prefix_tree"]


@dataclass(frozen=True)
class SampleViolation:
    word: tuple
    expected: object  # an index, or the set of clashing indices for a contradiction
    actual: int | None
    rule: str = "Mismatch"

    def __iter__(self):
        return iter((self.word, self.expected, self.actual))


def _contradictions(sample: Sample):
    labels = {}
    for w, i in sample.entries:
        labels.setdefault(w, set()).add(i)
    return {w: s for w, s in labels.items() if len(s) > 1}


def check_sample(p: Podwa, sample: Sample) -> list[SampleViolation]:
    if tuple(p.alphabet) != tuple(sample.alphabet):
        raise AlphabetMismatch(f"{p.alphabet} != {sample.alphabet}")
    if p.scheme != sample.scheme:
        raise SchemeMismatch(f"{p.scheme.cuts} != {sample.scheme.cuts}")
    out = []
    clashes = _contradictions(sample)
    for w, idx in sample.entries:
        got = observe(p, w)
        if got != idx:
            out.append(SampleViolation(w, idx, got))
    for w, idxs in clashes.items():
        out.append(SampleViolation(w, tuple(sorted(idxs)), observe(p, w), "DirectContradiction"))
    return out


def fit_single_state(sample: Sample, weight_bound: int, max_assignments: int = 10**7) -> Podwa | None:
    """Lexicographically first one-state PODWA consistent with ``sample``.

    Weights are tried letter by letter in alphabet order, each from
    ``-weight_bound`` upwards.
    """
    letters = sample.alphabet
    space = (2 * weight_bound + 1) ** len(letters)
    if space > max_assignments:
        raise SearchSpaceCap("max_assignments", max_assignments)
    scheme = sample.scheme
    rows = []
    for w, idx in sample.entries:
        c = Counter(w)
        rows.append(([c[x] for x in letters], scheme.interval(idx)))
    for ws in product(range(-weight_bound, weight_bound + 1), repeat=len(letters)):
        for counts, (lo, hi) in rows:
            v = sum(n * x for n, x in zip(counts, ws))
            if (lo is not None and v < lo) or (hi is not None and v > hi):
                break
        else:
            trans = {("q", x): "q" for x in letters}
            weight = {("q", x): wx for x, wx in zip(letters, ws)}
            return Podwa(Dwa(letters, ("q",), "q", trans, weight), scheme)
    return None


def fit_prefix_tree(sample: Sample) -> Podwa:
    """Tree-shaped PODWA that realises every sample entry exactly.

    Each sample word gets its own path; the last edge of the path carries
    whatever weight puts the word on the least member of its interval.
    """
    clashes = _contradictions(sample)
    if clashes:
        raise DirectContradiction(min(clashes, key=lambda w: (len(w), w)))
    prefixes = sorted({()} | {w[:i] for w, _ in sample.entries for i in range(len(w) + 1)},
                      key=lambda w: (len(w), w))
    width = len(str(len(prefixes)))
    name = {w: f"t{i:0{width}d}" for i, w in enumerate(prefixes)}
    sink = "sink"
    delta, weight = {}, {}
    value = {(): 0}
    for w, idx in sorted(set(sample.entries), key=lambda e: (len(e[0]), e[0])):
        for i in range(1, len(w)):
            edge = (name[w[:i - 1]], w[i - 1])
            if edge not in weight:
                delta[edge] = name[w[:i]]
                weight[edge] = 0
                value[w[:i]] = value[w[:i - 1]]
        edge = (name[w[:-1]], w[-1])
        delta[edge] = name[w]
        weight[edge] = sample.scheme.representative(idx) - value[w[:-1]]
        value[w] = sample.scheme.representative(idx)
    states = tuple(name.values()) + (sink,)
    for q in states:
        for x in sample.alphabet:
            if (q, x) not in delta:
                delta[q, x] = sink
                weight[q, x] = 0
    return Podwa(Dwa(sample.alphabet, states, name[()], delta, weight), sample.scheme)
