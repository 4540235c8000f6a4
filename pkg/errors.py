"""
Exceptions raised by sh-track.

Every error the command line turns into exit code 2 derives from
ShTrackError, so callers can catch one type.
"""


class ShTrackError(Exception):
    """Base class for all sh-track errors."""


class GraphError(ShTrackError, ValueError):
    """Invalid graph construction (endpoint out of range, self-loop, bad id)."""


class EdgeNotFoundError(GraphError):
    """An update named an edge that is not present in the graph."""

    def __init__(self, a: int, b: int):
        super().__init__(f"Edge ({a}, {b}) is not present in the graph")
        self.a = a
        self.b = b


class ComponentIndexError(ShTrackError):
    """A ComponentIndex no longer matches the graph it was built from."""


class SelectionError(ShTrackError, ValueError):
    """Bad selection request, e.g. k out of range or members spanning components."""


class OracleGuardError(ShTrackError):
    """Brute-force oracle called on an instance above its size guard."""


class GraphFormatError(ShTrackError):
    """A dataset file could not be read or parsed."""


class UpdateFormatError(ShTrackError):
    """A line of an update stream is malformed."""

    def __init__(self, path: str, line_number: int, reason: str):
        super().__init__(f"{path}, line {line_number}: {reason}")
        self.path = path
        self.line_number = line_number


class BenchConfigError(ShTrackError, ValueError):
    """A benchmark configuration violates its invariants."""
