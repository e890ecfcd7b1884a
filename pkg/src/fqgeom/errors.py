"""Exception hierarchy.

Every error carries a stable ``code`` string and an exit category used by the
CLI: ``negative`` (an honest "no" such as an exhausted search) or
``infeasible`` (bad input, oversized request, internal fault).
"""


class FqGeomError(Exception):
    code = "ERROR"
    category = "infeasible"


# gf
class NotPrime(FqGeomError):
    code = "NOT_PRIME"


class ReducibleModulus(FqGeomError):
    code = "REDUCIBLE_MODULUS"


class NotASubfield(FqGeomError):
    code = "NOT_A_SUBFIELD"


class DegenerateLeadingCoefficient(FqGeomError):
    code = "DEGENERATE_LEADING_COEFFICIENT"


class FieldTooLarge(FqGeomError):
    code = "FIELD_TOO_LARGE"


# mpoly
class ArityMismatch(FqGeomError):
    code = "ARITY_MISMATCH"


class FieldMismatch(FqGeomError):
    code = "FIELD_MISMATCH"


class DegenerateSpan(FqGeomError):
    code = "DEGENERATE_SPAN"


class ZeroForm(FqGeomError):
    code = "ZERO_FORM"


class BothZero(FqGeomError):
    code = "BOTH_ZERO"


class ZeroPolynomial(FqGeomError):
    code = "ZERO_POLYNOMIAL"


class SearchSpaceTooLarge(FqGeomError):
    code = "SEARCH_SPACE_TOO_LARGE"


# projvar / incidence
class PointNotOnHypersurface(FqGeomError):
    code = "POINT_NOT_ON_HYPERSURFACE"


class PlaneContainedInX(FqGeomError):
    code = "PLANE_CONTAINED_IN_X"


class InseparableProjection(FqGeomError):
    code = "INSEPARABLE_PROJECTION"
    category = "negative"


class NotFound(FqGeomError):
    code = "NOT_FOUND"
    category = "negative"


class LineNotInX(FqGeomError):
    code = "LINE_NOT_IN_X"


class LineNotInPlane(FqGeomError):
    code = "LINE_NOT_IN_PLANE"


class SingularConic(FqGeomError):
    code = "SINGULAR_CONIC"


class NoRationalPoint(FqGeomError):
    code = "NO_RATIONAL_POINT"


# chord
class EqualPoints(FqGeomError):
    code = "EQUAL_POINTS"


class LineContainedInX(FqGeomError):
    code = "LINE_CONTAINED_IN_X"


class DegeneratePencil(FqGeomError):
    code = "DEGENERATE_PENCIL"
    category = "negative"


class NotDefinedOverBase(FqGeomError):
    code = "NOT_DEFINED_OVER_BASE"


class EvenCharacteristic(FqGeomError):
    code = "EVEN_CHARACTERISTIC"


class SquareParameter(FqGeomError):
    code = "SQUARE_PARAMETER"


class SecantNotFound(FqGeomError):
    code = "SECANT_NOT_FOUND"
    category = "negative"


class ExtensionSearchExhausted(FqGeomError):
    code = "EXTENSION_SEARCH_EXHAUSTED"
    category = "negative"

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class TangentSectionDegenerate(FqGeomError):
    code = "TANGENT_SECTION_DEGENERATE"
    category = "negative"


class DominanceCertificateNotFound(FqGeomError):
    code = "DOMINANCE_CERTIFICATE_NOT_FOUND"
    category = "negative"


# curvespace
class AmbientMismatch(FqGeomError):
    code = "AMBIENT_MISMATCH"


class ImageMeetsSingularLocus(FqGeomError):
    code = "IMAGE_MEETS_SINGULAR_LOCUS"


class NotAMember(FqGeomError):
    code = "NOT_A_MEMBER"


class PointNotOnSurface(FqGeomError):
    code = "POINT_NOT_ON_SURFACE"


class DegreeTooSmall(FqGeomError):
    code = "DEGREE_TOO_SMALL"


class DuplicateSupport(FqGeomError):
    code = "DUPLICATE_SUPPORT"


class CommonFactor(FqGeomError):
    code = "COMMON_FACTOR"


# gallery
class ParameterOutOfRange(FqGeomError):
    code = "PARAMETER_OUT_OF_RANGE"


class NotAGenerator(FqGeomError):
    code = "NOT_A_GENERATOR"


class NotInIdeal(FqGeomError):
    code = "NOT_IN_IDEAL"


class UnknownClaim(FqGeomError):
    code = "UNKNOWN_CLAIM"


# cli / store
class ParseError(FqGeomError):
    code = "PARSE_ERROR"

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}, column {column})"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class ValidationError(FqGeomError):
    code = "VALIDATION_ERROR"

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}, column {column})"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class StoreCorrupt(FqGeomError):
    code = "STORE_CORRUPT"


class ReplayMismatch(FqGeomError):
    code = "REPLAY_MISMATCH"
    category = "negative"
