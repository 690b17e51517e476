"""Exception hierarchy shared by all modules."""


class AdSError(Exception):
    """Base class for every error raised by adsfn."""


class LightLikeElement(AdSError, ZeroDivisionError):
    """A split-complex element with (numerically) zero square norm was inverted."""


class DomainError(AdSError, ValueError):
    pass


class NotSpacelike(AdSError, ValueError):
    pass


class InfiniteCrossRatio(AdSError, ValueError):
    pass


class NotAdmissible(AdSError, ValueError):
    pass


class NotLoxodromic(NotAdmissible):
    pass


class BoundaryHit(AdSError, ValueError):
    """A Möbius map sends the point through the boundary of the chart."""


class LightLikeDisplacement(AdSError, ValueError):
    pass


class NonSpacelikeSegment(AdSError, ValueError):
    pass


class ConeViolation(AdSError, ValueError):
    pass


class LengthMismatch(AdSError, ValueError):
    pass


class MissingRecord(AdSError, KeyError):
    pass


class DegenerateCurve(AdSError, ValueError):
    pass


class AxisDegenerate(AdSError, ValueError):
    pass


class InvalidStratumPoint(AdSError, ValueError):
    pass


class NotContained(AdSError, ValueError):
    pass


class ScheduleInvalid(AdSError, ValueError):
    pass


class ConstraintViolation(AdSError, ValueError):
    """Peripheral data off the set delta**2 == |length|**2."""


class InvalidDecomposition(AdSError, ValueError):
    pass
