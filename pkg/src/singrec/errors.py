"""Exception hierarchy shared by the whole package."""


class SingrecError(Exception):
    """Base class for every error raised by this package."""


# --- jet kernel ---------------------------------------------------------


class OrderMismatch(SingrecError):
    """Operands do not share the same truncation order or variable count."""


class DivisionBySingular(SingrecError):
    """Denominator jet has a vanishing constant term."""


class SqrtOfNonpositive(SingrecError):
    """Square root of a jet whose constant term is not strictly positive."""


class OrderExceedsTruncation(SingrecError):
    """A derivative or vanishing order beyond the truncation order was requested."""


# --- expression parsing / evaluation ------------------------------------


class ParseError(SingrecError):
    """Malformed expression text; carries the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class UnknownIdentifier(ParseError):
    """Identifier is neither a declared variable nor a known function."""


class ArityError(SingrecError):
    """A component tuple has the wrong number of entries."""


class EvalError(SingrecError):
    """Evaluation failure (division by a singular jet, bad sqrt) with position."""

    def __init__(self, message: str, pos: int, cause: SingrecError | None = None):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos
        self.cause = cause


# --- corank-one analysis -------------------------------------------------


class NotCorankOne(SingrecError):
    """The differential does not have a one-dimensional kernel at the base point."""


# --- frontal pipeline -----------------------------------------------------


class NotOrthogonal(SingrecError):
    """An explicit normal field fails the orthogonality contract."""


class NotFrontal(SingrecError):
    """No admissible normal field could be extracted; the map is not frontal here."""


class NoSingularity(SingrecError):
    """The area density does not vanish at the base point (regular point)."""


class DegenerateSingularity(SingrecError):
    """The area density vanishes but its differential is zero; no regular singular curve."""


class CurveDegenerate(SingrecError):
    """Every candidate test curve has a vanishing second derivative of its image."""


class ParallelismUnsolvable(SingrecError):
    """No curve correction makes the third image derivative parallel to the second."""


# --- curve / application criteria ----------------------------------------


class NotSingular(SingrecError):
    """Curve has a nonzero velocity at the base point."""


class DegenerateSecond(SingrecError):
    """Curve has a vanishing second derivative at the base point."""


class NotRegular(SingrecError):
    """Space curve has a vanishing velocity at the base point."""


class CurvatureVanishes(SingrecError):
    """Space curve has vanishing curvature at the base point."""


class PreconditionFailed(SingrecError):
    """A prediction gate was violated; the message names the gate."""
