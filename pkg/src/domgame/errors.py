"""Exceptions and warnings shared across the package."""


class DomgameError(Exception):
    """Base class for every error raised by this package."""


class MalformedLine(DomgameError):
    """An input line could not be tokenized as expected."""


class DuplicateEdge(DomgameError):
    """The same edge was listed twice."""


class VertexOutOfRange(DomgameError):
    """A vertex id falls outside 0..n-1."""


class CycleDetected(DomgameError):
    """The edge set contains a cycle (or a self-loop)."""


class NotAForest(DomgameError):
    """An operation that assumes acyclicity got a cyclic graph."""


class InfeasibleShape(DomgameError):
    """Requested generator parameters admit no valid graph."""


class LimitExceeded(DomgameError):
    """A size cap (enumeration or scan limit) was exceeded."""


class IsolatedVertexPresent(DomgameError):
    """The game requires an isolate-free graph."""


class IllegalMove(DomgameError):
    """The chosen vertex would not dominate anything new."""


class InvalidSnapshot(DomgameError):
    """A state snapshot is inconsistent or malformed."""


class GameOver(DomgameError):
    """No move is possible: every vertex is already dominated."""


class NoLegalMove(GameOver):
    """Raised by phase advancement when the game is over."""


class PhaseNotApplicable(DomgameError):
    """The engine cannot meet the requested phase's guarantee here."""


class TooLarge(DomgameError):
    """Exact search is capped at 64 vertices."""


class IncompleteTrace(DomgameError):
    """A ledger was requested for a game that did not finish."""


class PreconditionNotMet(DomgameError):
    """A structural check was applied to a state outside its scope."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)


class GeneratorFailure(DomgameError):
    """A corpus source failed to produce the requested instances."""


class IsolatedVertexWarning(UserWarning):
    """Parsed input contains isolated vertices; game modes will reject it."""
