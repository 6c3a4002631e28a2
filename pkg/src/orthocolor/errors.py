"""Exception hierarchy.

Every error raised for malformed input derives from :class:`OrthocolorError`,
which is itself a ``ValueError`` so callers can catch either.
"""


class OrthocolorError(ValueError):
    pass


class InvalidEdge(OrthocolorError):
    pass


class InvalidVertex(OrthocolorError):
    pass


class DuplicateEdge(OrthocolorError):
    pass


class EmptySelection(OrthocolorError):
    pass


class SizeLimitExceeded(OrthocolorError):
    pass


class GraphFormatError(OrthocolorError):
    pass


class SizeMismatch(OrthocolorError):
    pass


class ImproperColoring(OrthocolorError):
    pass


class InvalidColoring(OrthocolorError):
    pass


class InvalidPartition(OrthocolorError):
    pass


class DuplicateCell(OrthocolorError):
    pass


class UnverifiedFamily(OrthocolorError):
    pass


class NotPrimePower(OrthocolorError):
    pass


class WrongOrder(OrthocolorError):
    pass


class NotBijective(OrthocolorError):
    pass


class NotLatin(OrthocolorError):
    pass
