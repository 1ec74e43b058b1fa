"""Exception types shared across the package."""


class BoundExceeded(Exception):
    """A size bound (group order, degree, rank) was exceeded."""


class SRingError(ValueError):
    """Base class for S-ring validation failures."""


class NotAPartition(SRingError):
    pass


class IdentityNotSingleton(SRingError):
    pass


class NotInverseClosed(SRingError):
    pass


class NotClosedUnderProduct(SRingError):
    """Some product of class sums is not constant on a class.

    Carries the offending class pair and the element pair with unequal
    coefficients.
    """

    def __init__(self, msg, x=None, y=None, pair=None):
        super().__init__(msg)
        self.x = x
        self.y = y
        self.pair = pair


class SchurViolation(SRingError):
    """A coprime-power image of a class is not a class (corrupt S-ring)."""


class NotASection(ValueError):
    pass


class RightRegularNotContained(ValueError):
    pass


class MapNotAlgebraicAutomorphism(ValueError):
    pass


class IncompatibleOnSection(ValueError):
    pass


class QuotientMismatch(ValueError):
    pass
