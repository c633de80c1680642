"""Exception hierarchy shared by every module.

The CLI reports a failed run as ``error: <Name>: <message>`` where ``<Name>``
is the class name without the ``Error`` suffix, so keep these names stable.
"""

from __future__ import annotations


class UnipriorError(Exception):
    """Base class for all domain errors raised by this package."""

    @property
    def name(self) -> str:
        return type(self).__name__.removesuffix("Error")


class MalformedLineError(UnipriorError):
    """A graph-file line does not follow the IFG text format."""


class SelfLoopError(UnipriorError):
    """An arc (v, v): a receiver cannot demand its own prior message."""


class VertexOutOfRangeError(UnipriorError):
    """A vertex id outside 1..n."""


class DuplicateArcError(UnipriorError):
    """The same arc was declared twice."""


class EqualVerticesError(UnipriorError):
    """A pairwise query was made with u == v."""


class NotStronglyConnectedError(UnipriorError):
    """The operation is only defined for strongly connected graphs."""


class InvalidComponentError(UnipriorError):
    """A component passed to a Q-value query is not a qualifying component."""


class TooLargeError(UnipriorError):
    """The instance exceeds the enforced exhaustive-enumeration cap."""


class UndecodableError(UnipriorError):
    """Some demand cannot be recovered from the given transmissions."""


class NonTreeUnionError(UnipriorError):
    """Joining per-component trees did not produce a spanning tree."""


class InvalidParameterError(UnipriorError):
    """A numeric parameter is outside its admissible range."""


class EmptyProfileError(UnipriorError):
    """An average was requested over a profile with no demands."""
