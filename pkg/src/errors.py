"""
Atlas Errors
Exception types raised by the bicirculant atlas.
"""


class AtlasError(ValueError):
    """Base class for every error the atlas raises on bad input."""


class IndexOutOfRange(AtlasError):
    pass


class LoopEdge(AtlasError):
    pass


class InvalidBipartition(AtlasError):
    pass


class InvalidPartition(AtlasError):
    pass


class TooLarge(AtlasError):
    pass


class MalformedEncoding(AtlasError):
    """Malformed graph6 text; `offset` is the byte position of the fault."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class NotPrimePower(AtlasError):
    pass


class DivisionByZero(AtlasError, ZeroDivisionError):
    pass


class ZeroArgument(AtlasError):
    pass


class DegreeMismatch(AtlasError):
    pass


class InvalidParameter(AtlasError):
    pass


class VoltageAntisymmetryError(InvalidParameter):
    pass


class BudgetExceeded(AtlasError):
    pass


class MissingEdgeVoltage(AtlasError):
    pass


class UnknownGroupElement(AtlasError):
    pass


class NotAWalk(AtlasError):
    pass


class DisconnectedBase(AtlasError):
    pass


class NotASpanningTree(AtlasError):
    pass


class IdentityInConnection(AtlasError):
    pass


class NotInverseClosed(AtlasError):
    pass
