"""Exception hierarchy.

Every error raised by the library derives from :class:`TowerGlueError`.
Input problems derive from :class:`InvalidInput` and numerical breakdowns
from :class:`NumericalFailure`; the CLI maps them to exit codes 1 and 2.
"""


class TowerGlueError(Exception):
    exit_code = 2


class InvalidInput(TowerGlueError):
    exit_code = 1


class NumericalFailure(TowerGlueError):
    exit_code = 2


# combinatorial input
class FixedPointInvolution(InvalidInput):
    pass


class Disconnected(InvalidInput):
    pass


class ShortFace(InvalidInput):
    pass


class LowDegree(InvalidInput):
    pass


class NotOrientable(InvalidInput):
    pass


class GenusMismatch(InvalidInput):
    pass


class TooManyVertices(InvalidInput):
    pass


# geometric input
class EmbeddingInvalid(InvalidInput):
    pass


class DegenerateLattice(InvalidInput):
    pass


class NonOrdinaryVertex(InvalidInput):
    pass


class InvalidWingAngles(InvalidInput):
    pass


class ShiftMismatch(InvalidInput):
    pass


class ParseError(InvalidInput):
    pass


class InvalidFamily(InvalidInput):
    pass


class HigherOrderPole(InvalidInput):
    pass


# numerics
class NonConvergence(NumericalFailure):
    pass


class SingularSystem(NumericalFailure):
    pass


class RankDeficient(NumericalFailure):
    pass


class IntegrationPathHitsPuncture(NumericalFailure):
    pass


class PoleOnPath(NumericalFailure):
    pass
