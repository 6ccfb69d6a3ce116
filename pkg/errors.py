"""
errors.py

Exception hierarchy shared by the library and the CLI.

Every error belongs to one of three families; the CLI maps each family to its exit code
(see EXIT_* in constants.py):
- ValidationFailure: an input is well formed but violates a stated invariant.
- DocumentError: a JSON document could not be read or does not follow its schema.
- PreconditionError: a mathematical precondition of an operation does not hold.
"""

from constants import EXIT_PARSE_ERROR, EXIT_PRECONDITION, EXIT_VALIDATION_FAILURE


class PrevarietyError(Exception):
    """Base class of all errors raised on purpose by this project."""

    exit_code = 1


class ValidationFailure(PrevarietyError):
    exit_code = EXIT_VALIDATION_FAILURE


class DocumentError(PrevarietyError):
    exit_code = EXIT_PARSE_ERROR


class PreconditionError(PrevarietyError):
    exit_code = EXIT_PRECONDITION


# ================================
# Precondition errors
# ================================
class DimensionMismatch(PreconditionError, ValueError):
    pass


class NotSimplicial(PreconditionError):
    pass


class NotAGenerator(PreconditionError):
    pass


class RankDeficient(PreconditionError):
    pass


class RaysDoNotSpan(PreconditionError):
    pass


class UnknownRay(PreconditionError):
    pass


class BoxTooSmall(PreconditionError):
    pass


class NotStrictlyConvex(PreconditionError):
    pass


class KernelNotPreserved(PreconditionError):
    pass


class NotAKernelBasis(PreconditionError):
    pass


class CompositionError(PreconditionError):
    pass


class SamplingExhausted(PreconditionError):
    pass


# ================================
# Validation failures
# ================================
class IneffectiveGrading(ValidationFailure):
    pass


class NotInIrrelevantIdeal(ValidationFailure):
    def __init__(self, generator):
        super().__init__(f"B-generator {generator} is not in the irrelevant ideal S_+")
        self.generator = generator


class IncompatibleDegree(ValidationFailure):
    def __init__(self, index: int, detail: str = ""):
        message = f"variable {index} violates deg(phi(T_i)) = alpha(deg(T_i))"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)
        self.index = index


class InvalidHomomorphism(ValidationFailure):
    pass


# ================================
# Document errors
# ================================
class SchemaError(DocumentError):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location
