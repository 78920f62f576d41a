"""Exception types shared across the package."""


class LPSnakeError(Exception):
    """Base class for all domain errors raised by this package."""


class NotMaximalNested(LPSnakeError):
    pass


class NotConnected(LPSnakeError):
    pass


class NotWeaklyRooted(LPSnakeError):
    pass


class VertexNotInRootedPortion(LPSnakeError):
    pass


class SetInCollection(LPSnakeError):
    pass


class MissingGlueEdge(LPSnakeError):
    pass


class DivisionByZero(LPSnakeError):
    pass


class UnknownEdgeId(LPSnakeError):
    pass


class NotAdmissible(LPSnakeError):
    pass


class IndexOutOfRange(LPSnakeError):
    pass


class EmptySet(LPSnakeError):
    pass


class ArcInTriangulation(LPSnakeError):
    pass


class AdjacentEndpoints(LPSnakeError):
    pass


class NotAPath(LPSnakeError):
    pass
