"""Named error conditions.

Every failure raised by the kernel carries a machine-readable ``code`` so the
CLI can report it on a single line.
"""


class SangakuError(ValueError):
    code = "SANGAKU_ERROR"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)


class DivisionByZero(SangakuError, ZeroDivisionError):
    code = "DIVISION_BY_ZERO"


class RadicandOverflow(SangakuError):
    code = "RADICAND_OVERFLOW"


class NegativeRadicand(SangakuError):
    code = "NEGATIVE_RADICAND"


class CoincidentPoints(SangakuError):
    code = "COINCIDENT_POINTS"


class ZeroRatio(SangakuError):
    code = "ZERO_RATIO"


class PointNotIncident(SangakuError):
    code = "POINT_NOT_INCIDENT"


class NotSeparate(SangakuError):
    code = "NOT_SEPARATE"


class NonpositiveRadius(SangakuError):
    code = "NONPOSITIVE_RADIUS"


class NonpositiveInput(SangakuError):
    code = "NONPOSITIVE_INPUT"


class EqualRadiiDegenerate(SangakuError):
    code = "EQUAL_RADII_DEGENERATE"


class ParallelLines(SangakuError):
    code = "PARALLEL_LINES"


class InvalidInput(SangakuError):
    code = "INVALID_INPUT"
