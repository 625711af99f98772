"""Exception types shared across the package.

Each class carries a machine-readable ``code`` that the CLI emits in its
error JSON, so scripts can branch on failure kinds without parsing text.
"""


class HiranoError(Exception):
    code = "error"


class InputFormatError(HiranoError):
    """Malformed element, matrix or descriptor input."""

    code = "bad-input"


class RingMismatchError(HiranoError):
    """Operands constructed under different ring descriptors."""

    code = "descriptor-mismatch"


class UnsupportedRingError(HiranoError):
    """The requested ring/dimension combination has no implemented path."""

    code = "unsupported-ring"


class PreconditionError(HiranoError):
    """A stated operation precondition was violated by the caller."""

    code = "precondition-failed"


class AxiomVerificationError(HiranoError):
    """A constructed witness failed its own verification; internal bug guard."""

    code = "axiom-verification-failed"


class BudgetExceededError(HiranoError):
    """A finite-ring enumeration would exceed the configured element budget."""

    code = "budget-exceeded"
