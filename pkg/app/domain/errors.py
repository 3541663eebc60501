"""
Defines the exception hierarchy shared by every layer of the application.
"""

from dataclasses import dataclass
from enum import StrEnum


class KappaError(Exception):
    """
    Base class for every error raised by the library.
    """


class ExponentError(KappaError):
    """
    Raised when exponent arithmetic or a symbolic exponent is invalid.
    """


class IllFormedInstantiation(ExponentError):
    """
    Raised when a symbolic exponent does not instantiate to a valid value.
    """


class SymbolicExponentError(KappaError):
    """
    Raised when an operation needs constant exponents and meets the
    schematic parameter.
    """


class SignatureError(KappaError):
    """
    Raised when a term or identity is not expressible in its signature.
    """


class TermSyntaxError(KappaError, ValueError):
    """
    Raised when term text cannot be parsed.
    """

    def __init__(
        self, message: str, text: str = "", line: int = 1, column: int = 1
    ) -> None:
        super().__init__(f"{message} (line {line}, column {column})")
        self.text = text
        self.line = line
        self.column = column


class UnassignedLetter(KappaError):
    """
    Raised when a term is evaluated under an assignment missing a letter.
    """


class SemigroupError(KappaError):
    """
    Base class for invalid finite semigroup data.
    """


class NotAssociative(SemigroupError):
    """
    Raised when a multiplication table fails associativity.
    """

    def __init__(self, triple: tuple[int, int, int]) -> None:
        a, b, c = triple
        super().__init__(f"table is not associative at ({a}, {b}, {c})")
        self.triple = triple


class NotAGroup(SemigroupError):
    """
    Raised when a group was required.
    """


class NotACongruence(SemigroupError):
    """
    Raised when a partition is not compatible with multiplication.
    """


class MissingIdentity(SemigroupError):
    """
    Raised when a zero exponent is used in a semigroup without identity.
    """


class SizeGuardExceeded(SemigroupError):
    """
    Raised when an enumeration is asked for more than its guard allows.
    """


class FormatError(KappaError):
    """
    Raised when a semigroup or proof file is malformed.
    """

    def __init__(self, message: str, line: int = 0) -> None:
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class RejectReason(StrEnum):
    """Reasons a proof step can be rejected for."""

    UNKNOWN_STEP = "unknown-step"
    UNKNOWN_HYPOTHESIS = "unknown-hypothesis"
    FORWARD_REFERENCE = "forward-reference"
    DUPLICATE_STEP = "duplicate-step"
    CLAIM_MISMATCH = "claim-mismatch"
    SIDE_MISMATCH = "side-mismatch"
    REFL_MISMATCH = "refl-mismatch"
    ILL_FORMED_EXPONENT = "ill-formed-exponent"
    OPEN_ASSUMPTION = "open-assumption"
    NOT_SCHEMATIC = "not-schematic"
    MIXED_SIGNATURE = "mixed-signature"
    BAD_CONTEXT = "bad-context"
    BAD_SCHEMA = "bad-schema"
    INDUCTION_BASE = "induction-base"
    INDUCTION_STEP = "induction-step"
    BELOW_THRESHOLD = "below-threshold"
    GOAL_NOT_REACHED = "goal-not-reached"
    SYMBOLIC_HYPOTHESIS = "symbolic-hypothesis"


@dataclass(frozen=True)
class Rejection:
    """
    Describes why a proof script was rejected.
    """

    step_id: str
    reason: RejectReason
    detail: str

    def __str__(self) -> str:
        return f"step {self.step_id}: {self.reason}: {self.detail}"


class ProofRejected(KappaError):
    """
    Raised when an accepted proof script was required.
    """

    def __init__(self, rejection: Rejection) -> None:
        super().__init__(str(rejection))
        self.rejection = rejection


class ContextError(KappaError):
    """
    Raised when a context does not contain exactly one hole.
    """


class UnknownVariety(KappaError):
    """
    Raised when a variety or one of its bases is not in the registry.
    """
