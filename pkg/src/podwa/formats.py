"""Line-based text formats: automata, samples, graphs and DIMACS clauses.

Automaton files::

    podwa                      # or "dwa", which has no cuts line
    alphabet: a b c
    states: q0
    initial: q0
    trans: q0 a q0 -1
    ...
    cuts: 1

``#`` starts a comment.  Serialization lists letters and states in
lexicographic order and transitions sorted by ``(state, letter)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import Dwa, ObservationScheme, Podwa, Violation, validate
from .errors import InvalidAutomaton, PodwaSyntaxError


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _int(token, lineno):
    try:
        return int(token)
    except ValueError:
        raise PodwaSyntaxError(f"expected an integer, got {token!r}", lineno) from None


def _keyed(line, lineno):
    key, sep, rest = line.partition(":")
    if not sep:
        raise PodwaSyntaxError(f"expected 'key: value', got {line!r}", lineno)
    return key.strip(), rest.split()


def parse(text: str) -> Podwa | Dwa:
    """Parse a ``podwa`` or ``dwa`` document.

    Raises :class:`PodwaSyntaxError` on malformed input and
    :class:`InvalidAutomaton` if the result breaks a structural invariant.
    """
    lines = list(_lines(text))
    if not lines:
        raise PodwaSyntaxError("empty document", 1)
    lineno, header = lines[0]
    if header not in ("podwa", "dwa"):
        raise PodwaSyntaxError(f"unknown header {header!r}", lineno)
    fields = {}
    delta, weight = {}, {}
    for lineno, line in lines[1:]:
        key, vals = _keyed(line, lineno)
        if key == "trans":
            if len(vals) != 4:
                raise PodwaSyntaxError("trans needs <state> <letter> <state> <integer>", lineno)
            src, letter, dst, w = vals
            if (src, letter) in delta:
                raise PodwaSyntaxError(f"duplicate transition for ({src}, {letter})", lineno)
            delta[src, letter] = dst
            weight[src, letter] = _int(w, lineno)
        elif key in ("alphabet", "states", "initial", "cuts"):
            if key in fields:
                raise PodwaSyntaxError(f"duplicate {key!r} line", lineno)
            fields[key] = (vals, lineno)
        else:
            raise PodwaSyntaxError(f"unknown key {key!r}", lineno)
    for key in ("alphabet", "states", "initial"):
        if key not in fields:
            raise PodwaSyntaxError(f"missing {key!r} line", None)
    initial, lineno = fields["initial"]
    if len(initial) != 1:
        raise PodwaSyntaxError("initial takes exactly one state", lineno)
    a = Dwa(tuple(fields["alphabet"][0]), tuple(fields["states"][0]), initial[0], delta, weight)
    problems = validate(a)
    if header == "dwa":
        if "cuts" in fields:
            raise PodwaSyntaxError("a dwa document has no cuts", fields["cuts"][1])
        if problems:
            raise InvalidAutomaton(problems)
        return a
    if "cuts" not in fields:
        raise PodwaSyntaxError("missing 'cuts' line", None)
    vals, lineno = fields["cuts"]
    scheme = ObservationScheme(tuple(_int(v, lineno) for v in vals))
    problems += scheme.violations()
    if problems:
        raise InvalidAutomaton(problems)
    return Podwa(a, scheme)


def serialize(obj: Podwa | Dwa) -> str:
    a = obj.automaton if isinstance(obj, Podwa) else obj
    out = ["podwa" if isinstance(obj, Podwa) else "dwa"]
    out.append("alphabet: " + " ".join(a.alphabet))
    out.append("states: " + " ".join(a.states))
    out.append(f"initial: {a.initial}")
    for q in a.states:
        for x in a.alphabet:
            out.append(f"trans: {q} {x} {a.delta[q, x]} {a.weight[q, x]}")
    if isinstance(obj, Podwa):
        out.append("cuts: " + " ".join(str(c) for c in obj.scheme.cuts))
    return "\n".join(out) + "\n"


def to_dot(obj: Podwa | Dwa) -> str:
    a = obj.automaton if isinstance(obj, Podwa) else obj
    out = ["digraph dwa {", "  rankdir=LR;", '  "" [shape=none];', f'  "" -> "{a.initial}";']
    edges = {}
    for q in a.states:
        for x in a.alphabet:
            edges.setdefault((q, a.delta[q, x]), []).append(f"{x}:{a.weight[q, x]}")
    for (q, r), labels in edges.items():
        out.append(f'  "{q}" -> "{r}" [label="{", ".join(labels)}"];')
    out.append("}")
    return "\n".join(out) + "\n"


# -- words -----------------------------------------------------------------

def split_word(text: str, alphabet) -> tuple[str, ...]:
    """Read a word: ``.``-separated letters, or characters when all letters are one character."""
    if text in ("", "."):
        return ()
    if all(len(x) == 1 for x in alphabet) and "." not in text:
        return tuple(text)
    return tuple(text.split("."))


def format_word(w, alphabet) -> str:
    if all(len(x) == 1 for x in alphabet) and "." not in alphabet:
        return "".join(w)
    return ".".join(w)


# -- samples ---------------------------------------------------------------

@dataclass(frozen=True)
class Sample:
    """Finite list of ``(word, interval index)`` constraints."""

    alphabet: tuple[str, ...]
    scheme: ObservationScheme
    entries: tuple[tuple[tuple[str, ...], int], ...]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(sorted(self.alphabet)))
        object.__setattr__(
            self, "entries", tuple((tuple(w), int(i)) for w, i in self.entries)
        )

    def violations(self) -> list[Violation]:
        out = list(self.scheme.violations())
        letters = set(self.alphabet)
        labels = {}
        for w, idx in self.entries:
            if not w:
                out.append(Violation("EmptyWord"))
            if not 0 <= idx <= self.scheme.s:
                out.append(Violation("IndexOutOfRange", (w, idx)))
            bad = [x for x in w if x not in letters]
            if bad:
                out.append(Violation("UnknownLetter", (w, bad[0])))
            if labels.setdefault(w, idx) != idx:
                out.append(Violation("DirectContradiction", (w,)))
        return out


def parse_sample(text: str) -> Sample:
    lines = list(_lines(text))
    if not lines or lines[0][1] != "sample":
        raise PodwaSyntaxError("expected 'sample' header", lines[0][0] if lines else 1)
    alphabet = cuts = None
    raw_entries = []
    for lineno, line in lines[1:]:
        key, vals = _keyed(line, lineno)
        if key == "alphabet":
            alphabet = tuple(vals)
        elif key == "cuts":
            cuts = tuple(_int(v, lineno) for v in vals)
        elif key == "entry":
            if len(vals) != 2:
                raise PodwaSyntaxError("entry needs <word> <index>", lineno)
            raw_entries.append((vals[0], _int(vals[1], lineno), lineno))
        else:
            raise PodwaSyntaxError(f"unknown key {key!r}", lineno)
    if alphabet is None or cuts is None:
        raise PodwaSyntaxError("sample needs both 'alphabet' and 'cuts' lines", None)
    entries = [(split_word(w, alphabet), i) for w, i, _ in raw_entries]
    return Sample(alphabet, ObservationScheme(cuts), tuple(entries))


def serialize_sample(sample: Sample) -> str:
    out = ["sample", "alphabet: " + " ".join(sample.alphabet)]
    out.append("cuts: " + " ".join(str(c) for c in sample.scheme.cuts))
    for w, i in sample.entries:
        out.append(f"entry: {format_word(w, sample.alphabet)} {i}")
    return "\n".join(out) + "\n"


# -- graphs and CNF --------------------------------------------------------

def parse_graph(text: str):
    """Edge-list text: ``edge u v`` lines plus optional ``vertex x`` lines."""
    from .generators import Graph

    vertices, edges = [], []
    for lineno, line in _lines(text):
        parts = line.split()
        if parts[0] == "edge" and len(parts) == 3:
            edges.append((parts[1], parts[2]))
            for v in parts[1:]:
                if v not in vertices:
                    vertices.append(v)
        elif parts[0] == "vertex" and len(parts) == 2:
            if parts[1] not in vertices:
                vertices.append(parts[1])
        else:
            raise PodwaSyntaxError(f"expected 'edge u v' or 'vertex x', got {line!r}", lineno)
    return Graph(tuple(vertices), tuple(edges))


def parse_dimacs(text: str):
    """DIMACS CNF.  Clauses with fewer than three literals are padded by repetition."""
    from .generators import Cnf

    nvars = None
    clauses = []
    pending = []
    for lineno, line in _lines(text):
        if line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise PodwaSyntaxError("expected 'p cnf <vars> <clauses>'", lineno)
            nvars = _int(parts[2], lineno)
            continue
        for tok in line.split():
            lit = _int(tok, lineno)
            if lit == 0:
                if not pending:
                    raise PodwaSyntaxError("empty clause", lineno)
                if len(pending) > 3:
                    raise PodwaSyntaxError("clause has more than three literals", lineno)
                while len(pending) < 3:
                    pending.append(pending[-1])
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(lit)
    if pending:
        raise PodwaSyntaxError("last clause is not terminated by 0", None)
    if nvars is None:
        nvars = max((abs(l) for c in clauses for l in c), default=0)
    return Cnf(nvars, tuple(clauses))
