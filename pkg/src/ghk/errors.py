"""Exception hierarchy and warning categories shared across the package."""

from __future__ import annotations


class GhkError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(GhkError):
    """Malformed polynomial or problem text.

    Carries the source text and a 0-based offset so callers can point at
    the offending character.
    """

    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.text = text
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos}: ...{text[max(0, pos - 8):pos + 8]!r}...)"
        super().__init__(message)


class RingMismatchError(GhkError):
    """Operands live over different rings or incompatible ambient modules."""


class HomogeneityError(GhkError):
    """An input violates the graded (homogeneous) requirement."""


class GhkHypothesisError(GhkError):
    """An input violates a mathematical hypothesis of the requested operation."""


class BudgetExceededError(GhkError):
    """A Groebner computation exceeded its configured degree or pair budget."""

    def __init__(self, message: str, kind: str, limit: int, reached: int):
        self.kind = kind  # "degree" or "pairs"
        self.limit = limit
        self.reached = reached
        super().__init__(message)


class GhkHypothesisWarning(UserWarning):
    """A computed value violates a plausibility bound.

    The value is still returned exactly; the warning flags that the
    inputs likely do not describe what the caller thinks they describe
    (wrong sign convention, non-normal ring, bad twisted-structure data).
    """
