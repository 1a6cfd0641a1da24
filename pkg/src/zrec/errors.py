"""Exception hierarchy.

Every domain error carries a short numeric code so the command line can
print stable diagnostics.
"""


class ZrecError(Exception):
    code = "E000"


# matrices and scalars
class NotUnitriangular(ZrecError):
    code = "E101"


class NotReduced(ZrecError):
    code = "E102"


class FieldMismatch(ZrecError):
    code = "E103"


# reduction
class PivotZero(ZrecError):
    code = "E201"


class SeamInconsistency(ZrecError):
    code = "E202"


class FuelExhausted(ZrecError):
    code = "E203"


class NonPeriodicLimit(ZrecError):
    code = "E204"


class ContainmentViolated(ZrecError):
    code = "E205"


# kernel
class InfiniteDimension(ZrecError):
    code = "E301"


class NotASchedule(ZrecError):
    code = "E302"


class MissingInitial(ZrecError):
    code = "E303"


class IndexOutOfRange(ZrecError):
    code = "E304"


# oracle / combinatorics
class NoStabilization(ZrecError):
    code = "E401"


class WindowTooSmall(ZrecError):
    code = "E402"


class RankDeficient(ZrecError):
    code = "E403"


# frieze
class ShapeError(ZrecError):
    code = "E501"


class InvalidFrieze(ZrecError):
    code = "E502"


class WindowTooShort(ZrecError):
    code = "E503"


# dsl
class DslError(ZrecError):
    code = "E600"

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = "" if line is None else f" (line {line}, column {col})"
        super().__init__(message + where)


class DslSyntaxError(DslError):
    code = "E601"


class SelfReference(DslError):
    code = "E602"


class ForwardReference(DslError):
    code = "E603"


class CoverageGap(DslError):
    code = "E604"


class CoverageOverlap(DslError):
    code = "E605"


class ZeroModulus(DslError):
    code = "E606"


class DuplicateTerm(DslError):
    code = "E607"


class DslFieldMismatch(DslError, FieldMismatch):
    code = "E608"
