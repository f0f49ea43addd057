"""Data model for deterministic weighted automata under partial observation.

A :class:`Dwa` assigns every non-empty word the sum of the transition weights
along its unique run.  A :class:`Podwa` pairs a :class:`Dwa` with an
:class:`ObservationScheme` and reveals only the index of the interval that
contains the value.

Words are sequences of letters.  A plain ``str`` works whenever every letter
is a single character; otherwise pass a list or tuple of letter names.
"""
from __future__ import annotations

from bisect import bisect_right
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import EmptyWord, InvalidAutomaton, UnknownLetter

Word = Sequence[str]


@dataclass(frozen=True)
class Violation:
    """One broken invariant.  ``rule`` is a stable machine-readable name."""

    rule: str
    detail: tuple = ()

    def __str__(self):
        if not self.detail:
            return self.rule
        return f"{self.rule}({', '.join(map(str, self.detail))})"


@dataclass(frozen=True, eq=False)
class Dwa:
    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    initial: str
    delta: Mapping[tuple[str, str], str]
    weight: Mapping[tuple[str, str], int | None]

    def __post_init__(self):
        # canonical order is lexicographic for both letters and states
        object.__setattr__(self, "alphabet", tuple(sorted(self.alphabet)))
        object.__setattr__(self, "states", tuple(sorted(self.states)))

    def __eq__(self, other):
        if not isinstance(other, Dwa):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.states == other.states
            and self.initial == other.initial
            and dict(self.delta) == dict(other.delta)
            and dict(self.weight) == dict(other.weight)
        )

    __hash__ = None

    @cached_property
    def table(self) -> "Table":
        return Table.compile(self)

    def successor(self, state: str, letter: str) -> str:
        try:
            return self.delta[state, letter]
        except KeyError:
            if letter not in self.alphabet:
                raise UnknownLetter(letter) from None
            raise

    def with_weights(self, weights: Mapping[tuple[str, str], int]) -> "Dwa":
        """Copy of this automaton with some or all weights replaced."""
        merged = dict(self.weight)
        merged.update(weights)
        return Dwa(self.alphabet, self.states, self.initial, dict(self.delta), merged)

    @property
    def max_abs_weight(self) -> int:
        return max((abs(w) for w in self.weight.values() if w is not None), default=0)

    def size(self) -> int:
        """Number of states plus the total binary length of all weights."""
        return len(self.states) + sum(
            max(abs(w), 1).bit_length() for w in self.weight.values() if w is not None
        )


@dataclass(frozen=True)
class Table:
    """Index-based view of a :class:`Dwa` used by the inner loops."""

    state_index: dict
    letter_index: dict
    succ: list  # succ[state][letter] -> state index
    wt: list  # wt[state][letter] -> int
    initial: int

    @classmethod
    def compile(cls, a: Dwa) -> "Table":
        si = {q: i for i, q in enumerate(a.states)}
        li = {x: j for j, x in enumerate(a.alphabet)}
        succ = [[si[a.delta[q, x]] for x in a.alphabet] for q in a.states]
        wt = [[a.weight[q, x] for x in a.alphabet] for q in a.states]
        return cls(si, li, succ, wt, si[a.initial])

    def letters(self, w: Word) -> list[int]:
        try:
            return [self.letter_index[x] for x in w]
        except KeyError as exc:
            raise UnknownLetter(exc.args[0]) from None


@dataclass(frozen=True)
class ObservationScheme:
    """Strictly increasing cut points ``l1 < ... < ls``.

    Interval 0 is ``(-inf, l1)``, interval ``i`` is ``[li, l(i+1))`` and
    interval ``s`` is ``[ls, +inf)``.
    """

    cuts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "cuts", tuple(self.cuts))

    @property
    def s(self) -> int:
        return len(self.cuts)

    def index(self, value: int) -> int:
        return bisect_right(self.cuts, value)

    def representative(self, idx: int) -> int:
        """Least member of interval ``idx`` (``l1 - 1`` for the lowest one)."""
        if idx == 0:
            return self.cuts[0] - 1
        return self.cuts[idx - 1]

    def interval(self, idx: int) -> tuple[int | None, int | None]:
        """Inclusive integer bounds of interval ``idx``; ``None`` is unbounded."""
        lo = None if idx == 0 else self.cuts[idx - 1]
        hi = None if idx == self.s else self.cuts[idx] - 1
        return lo, hi

    def violations(self) -> list[Violation]:
        out = []
        if not self.cuts:
            out.append(Violation("EmptyCuts"))
        if any(not isinstance(c, int) or isinstance(c, bool) for c in self.cuts):
            out.append(Violation("NonIntegerCut"))
        elif any(b <= a for a, b in zip(self.cuts, self.cuts[1:])):
            out.append(Violation("CutsNotStrictlyIncreasing"))
        return out


BINARY = ObservationScheme((1,))


@dataclass(frozen=True)
class Podwa:
    automaton: Dwa
    scheme: ObservationScheme

    @property
    def is_binary(self) -> bool:
        return self.scheme == BINARY

    @property
    def alphabet(self):
        return self.automaton.alphabet


def make_dwa(alphabet, states, initial, transitions) -> Dwa:
    """Build and validate a :class:`Dwa`.

    ``transitions`` maps ``(state, letter)`` to ``(target, weight)``.
    """
    delta = {k: t for k, (t, _) in transitions.items()}
    weight = {k: w for k, (_, w) in transitions.items()}
    a = Dwa(tuple(alphabet), tuple(states), initial, delta, weight)
    problems = validate(a)
    if problems:
        raise InvalidAutomaton(problems)
    return a


def run(a: Dwa, w: Word) -> list[str]:
    q = a.initial
    out = [q]
    for x in w:
        q = a.successor(q, x)
        out.append(q)
    return out


def evaluate_from(a: Dwa, state: str, w: Word) -> int:
    """Sum of weights along the run on ``w`` started in ``state``."""
    t = a.table
    q = t.state_index[state]
    total = 0
    for j in t.letters(w):
        total += t.wt[q][j]
        q = t.succ[q][j]
    return total


def evaluate(a: Dwa | Podwa, w: Word) -> int:
    if isinstance(a, Podwa):
        a = a.automaton
    if len(w) == 0:
        raise EmptyWord()
    return evaluate_from(a, a.initial, w)


def observe(p: Podwa, w: Word) -> int:
    return p.scheme.index(evaluate(p.automaton, w))


def validate(obj: Dwa | Podwa | ObservationScheme) -> list[Violation]:
    if isinstance(obj, ObservationScheme):
        return obj.violations()
    if isinstance(obj, Podwa):
        return validate(obj.automaton) + obj.scheme.violations()
    a = obj
    out = []
    if not a.alphabet:
        out.append(Violation("EmptyAlphabet"))
    if len(set(a.alphabet)) != len(a.alphabet):
        out.append(Violation("DuplicateLetter"))
    if len(set(a.states)) != len(a.states):
        out.append(Violation("DuplicateState"))
    if a.initial not in a.states:
        out.append(Violation("InitialNotAState", (a.initial,)))
    states = set(a.states)
    for q in a.states:
        for x in a.alphabet:
            if (q, x) not in a.delta:
                out.append(Violation("Totality", (q, x)))
            elif a.delta[q, x] not in states:
                out.append(Violation("UnknownTarget", (q, x, a.delta[q, x])))
            if (q, x) not in a.weight:
                if (q, x) in a.delta:
                    out.append(Violation("MissingWeight", (q, x)))
            elif a.weight[q, x] is None:
                out.append(Violation("UnassignedWeight", (q, x)))
            elif not isinstance(a.weight[q, x], int) or isinstance(a.weight[q, x], bool):
                out.append(Violation("NonIntegerWeight", (q, x)))
    letters = set(a.alphabet)
    for q, x in list(a.delta) + list(a.weight):
        if q not in states or x not in letters:
            out.append(Violation("StrayTransition", (q, x)))
    return out


def reachable_states(a: Dwa) -> list[str]:
    """States reachable from the initial state, in breadth-first letter order."""
    seen = {a.initial}
    order = [a.initial]
    queue = deque(order)
    while queue:
        q = queue.popleft()
        for x in a.alphabet:
            r = a.delta[q, x]
            if r not in seen:
                seen.add(r)
                order.append(r)
                queue.append(r)
    return order


def restrict(a: Dwa, keep: Iterable[str]) -> Dwa:
    keep = set(keep)
    states = tuple(q for q in a.states if q in keep)
    return Dwa(
        a.alphabet,
        states,
        a.initial,
        {k: v for k, v in a.delta.items() if k[0] in keep},
        {k: v for k, v in a.weight.items() if k[0] in keep},
    )


def canonical_form(a: Dwa) -> Dwa:
    """Reachable part relabelled ``c0, c1, ...`` in breadth-first discovery order.

    Two automata are isomorphic on their reachable parts iff their canonical
    forms are equal.
    """
    order = reachable_states(a)
    width = len(str(len(order) - 1))
    name = {q: f"c{i:0{width}d}" for i, q in enumerate(order)}
    delta = {}
    weight = {}
    for q in order:
        for x in a.alphabet:
            delta[name[q], x] = name[a.delta[q, x]]
            weight[name[q], x] = a.weight[q, x]
    return Dwa(a.alphabet, tuple(name[q] for q in order), name[a.initial], delta, weight)


def is_isomorphic(a: Dwa, b: Dwa) -> bool:
    return canonical_form(a) == canonical_form(b)


def words(alphabet: Sequence[str], max_len: int, min_len: int = 1):
    """All words with ``min_len <= len <= max_len`` in shortlex order."""
    from itertools import product

    for n in range(min_len, max_len + 1):
        yield from product(alphabet, repeat=n)
