"""Exception types shared across the package."""

from __future__ import annotations


class SelfReducibilityError(Exception):
    """Base class for all errors raised by this package."""


class FormulaSyntaxError(SelfReducibilityError):
    """Malformed formula text; carries the byte offset of the failure."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class UnknownVariable(SelfReducibilityError):
    """A variable index that does not occur in the formula."""


class NoVariables(SelfReducibilityError):
    """Self-reduction was requested on a constant formula."""


class IncompleteAssignment(SelfReducibilityError):
    """An assignment does not cover every variable of the formula."""


class TooLarge(SelfReducibilityError):
    """The formula exceeds the exhaustive-enumeration limit."""


class MalformedInput(SelfReducibilityError):
    """The decider was handed something that is not a formula."""


class InvalidBound(SelfReducibilityError):
    """A polynomial bound with a negative coefficient."""


class EncodingInvariantBroken(SelfReducibilityError):
    """A tree node serialized longer than the input formula."""


class OracleContractViolation(SelfReducibilityError):
    """An oracle's answers are inconsistent with its declared contract."""


class ConstantOperand(SelfReducibilityError):
    """The combiner was applied to a zero-variable operand."""


class InvalidParams(SelfReducibilityError):
    """Invalid generator or experiment parameters."""
