"""Exception hierarchy shared by every module."""


class PodwaError(Exception):
    """Base class for all errors raised by this package."""


class UnknownLetter(PodwaError, KeyError):
    def __init__(self, letter):
        super().__init__(letter)
        self.letter = letter

    def __str__(self):
        return f"letter {self.letter!r} is not in the alphabet"


class EmptyWord(PodwaError, ValueError):
    def __str__(self):
        return "the empty word has no value"


class AlphabetMismatch(PodwaError, ValueError):
    pass


class SchemeMismatch(PodwaError, ValueError):
    pass


class InvalidAutomaton(PodwaError, ValueError):
    """Raised when a structure fails validation; carries the violation list."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class PodwaSyntaxError(PodwaError, ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(where + message)


class NotBinary(PodwaError, ValueError):
    pass


class NonPositiveAlpha(PodwaError, ValueError):
    pass


class NotACongruence(PodwaError, ValueError):
    def __init__(self, letter, block):
        self.letter = letter
        self.block = block
        super().__init__(f"block {sorted(block)} is split by letter {letter!r}")


class CapExceeded(PodwaError, RuntimeError):
    def __init__(self, cap, limit=None):
        self.cap = cap
        self.limit = limit
        super().__init__(f"cap {cap!r} exceeded" + (f" (limit {limit})" if limit is not None else ""))


class SearchSpaceCap(CapExceeded):
    pass


class InconclusiveEngine(PodwaError, RuntimeError):
    """The equivalence engine could not decide a candidate during a search."""

    def __init__(self, verdict):
        self.verdict = verdict
        super().__init__(f"engine inconclusive: {verdict.diagnostics}")


class BadParameter(PodwaError, ValueError):
    pass


class SelfLoopEdge(BadParameter):
    pass


class ImproperColoring(PodwaError, ValueError):
    pass


class DirectContradiction(PodwaError, ValueError):
    def __init__(self, word):
        self.word = word
        super().__init__(f"word {word!r} is labelled with two different intervals")
