# app/errors.py
"""
Error types raised by the homology engine.

Every error the library raises on bad input derives from KhovanovError so the
CLI can turn it into a one-line diagnostic and exit code 1.
"""


class KhovanovError(Exception):
    """Base class for all library errors."""


# ====================
# INPUT VALIDATION
# ====================
class MalformedWord(KhovanovError):
    pass


class StrandOutOfRange(KhovanovError):
    pass


class RelationNotApplicable(KhovanovError):
    pass


class MalformedGrid(KhovanovError):
    pass


class MalformedCoefficients(KhovanovError):
    pass


class UnsupportedRender(KhovanovError):
    pass


# ====================
# CUBE / GEOMETRY
# ====================
class NoArcAtSite(KhovanovError):
    """The crossing is already in its 1-state, so no surgery arc sits there."""


class NotASquareRoot(KhovanovError):
    """A square was requested at a vertex that is not 0 at both crossings."""


class NotPositiveCrossing(KhovanovError):
    pass


class CubeTooLarge(KhovanovError):
    pass


# ====================
# LINEAR ALGEBRA
# ====================
class ShapeError(KhovanovError):
    pass
