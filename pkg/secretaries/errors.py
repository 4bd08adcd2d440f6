"""Exception hierarchy shared by every package in the project.

All errors derive from :class:`SecretaryGraphError`. Constraint-style errors
also derive from ``ValueError`` and unknown-reference errors from
``LookupError`` so callers that only care about the builtin family can keep
catching those.
"""

from __future__ import annotations


class SecretaryGraphError(Exception):
    """Base class for every error raised by the library."""


# ---------------------------------------------------------------------------
# Graph construction and management
# ---------------------------------------------------------------------------


class ConstraintViolation(SecretaryGraphError, ValueError):
    pass


class DuplicateUser(SecretaryGraphError, ValueError):
    pass


class DuplicateLabel(SecretaryGraphError, ValueError):
    pass


class DuplicateGroup(SecretaryGraphError, ValueError):
    pass


class EmptySpec(SecretaryGraphError, ValueError):
    pass


class ThresholdExceeded(SecretaryGraphError, ValueError):
    pass


class SecretaryBusy(SecretaryGraphError, ValueError):
    pass


class NotOwner(SecretaryGraphError, ValueError):
    pass


class UnknownUser(SecretaryGraphError, LookupError):
    pass


class UnknownGroup(SecretaryGraphError, LookupError):
    pass


class UnknownSnode(SecretaryGraphError, LookupError):
    pass


# ---------------------------------------------------------------------------
# Connections
# ---------------------------------------------------------------------------


class SelfConnection(SecretaryGraphError, ValueError):
    pass


class DuplicatePair(SecretaryGraphError, ValueError):
    pass


class NoSuchRequest(SecretaryGraphError, LookupError):
    pass


class NotConnected(SecretaryGraphError, LookupError):
    pass


# ---------------------------------------------------------------------------
# Access control, analysis and inference
# ---------------------------------------------------------------------------


class InvalidPermissionSet(SecretaryGraphError, ValueError):
    pass


class DomainError(SecretaryGraphError, ValueError):
    pass


class TooLarge(SecretaryGraphError, ValueError):
    pass


class InconsistentKnowledge(SecretaryGraphError, ValueError):
    pass


# ---------------------------------------------------------------------------
# Serialization and scenarios
# ---------------------------------------------------------------------------


class VersionMismatch(SecretaryGraphError, ValueError):
    pass


class MalformedInput(SecretaryGraphError, ValueError):
    pass


class ScenarioParseError(SecretaryGraphError, ValueError):
    exit_code = 2


class ScenarioValidationError(SecretaryGraphError, ValueError):
    exit_code = 3


class ScenarioRuntimeError(SecretaryGraphError, RuntimeError):
    """A scenario operation failed; ``index`` is the zero-based op position."""

    exit_code = 4

    def __init__(self, index: int, operation: str, cause: Exception) -> None:
        super().__init__(f"op {index} ({operation}) failed: {type(cause).__name__}: {cause}")
        self.index = index
        self.operation = operation
        self.cause = cause
