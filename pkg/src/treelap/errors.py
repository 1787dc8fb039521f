"""Exception types shared across the package."""


class TreelapError(Exception):
    """Base class for all treelap errors."""


class BadLabel(TreelapError):
    """A vertex label is outside the valid range 0..n-1."""


class DuplicateEdge(TreelapError):
    """The same unordered edge appears more than once."""


class CycleDetected(TreelapError):
    """The edge set contains a cycle (or a self-loop)."""


class Disconnected(TreelapError):
    """The edge set does not connect all vertices."""


class EdgeAbsent(TreelapError):
    """A requested edge is not present in the tree."""


class PendantEdge(TreelapError):
    """A pendant edge was supplied where a non-pendant edge is required."""


class BadParam(TreelapError):
    """A parameter violates an operation's precondition."""
