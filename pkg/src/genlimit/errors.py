"""Exception hierarchy shared across the toolkit.

Grouped by how the command line reports them: domain errors exit with
status 1, parse and I/O errors with status 2, resource caps with status 3.
"""

from __future__ import annotations


class ToolkitError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ToolkitError):
    """A well-formed request that is invalid at the formal-language level."""


class AlphabetMismatch(DomainError):
    """Operands do not share the same ordered alphabet."""


class EmptyInput(DomainError):
    """An operation that needs at least one operand got none."""


class UnknownSymbol(DomainError):
    """A word contains a symbol outside the relevant alphabet."""


class InvalidParams(DomainError):
    """Parameters outside the domain an operation is defined for."""


class IndexOutOfRange(DomainError):
    """A 1-based index fell outside its valid range."""


class InfiniteMemberViolation(DomainError):
    """A family member turned out to have a finite language."""


class InconsistentExamples(DomainError):
    """No family member contains every supplied example word."""


class OracleRequired(DomainError):
    """The halting driver reached the case that needs a generatability bound."""


class ParseError(ToolkitError):
    """Malformed text input."""


class ResourceError(ToolkitError):
    """A configured search or materialization budget was exhausted."""


class ResourceCap(ResourceError):
    """Enumeration or materialization exceeded its word budget."""


class CapExceeded(ResourceError):
    """A bounded search hit its caps before resolving the query."""


class BudgetExceeded(ResourceError):
    """A verification run was rejected as too large for the configured budget."""
