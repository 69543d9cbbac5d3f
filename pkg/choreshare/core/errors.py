"""
Exception hierarchy shared by services and the command line.

Every error carries a human readable ``detail`` and the process ``exit_code``
the CLI reports for it: 1 for usage problems, 2 for broken invariants or
failed audits.
"""

USAGE_EXIT_CODE = 1
INVARIANT_EXIT_CODE = 2


class ChoreShareError(Exception):
    """Base error; ``exit_code`` is what the CLI returns for it."""
    exit_code: int = USAGE_EXIT_CODE

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail

    def __str__(self) -> str:
        return self.detail


# --- Usage errors (exit 1) ---

class BudgetExceededError(ChoreShareError):
    """An exact oracle or exhaustive search was asked for more than its budget allows."""


class IncompatibleAllocatorError(ChoreShareError):
    """Allocator and valuation kind do not go together (e.g. bagfill on job scheduling)."""


class MalformedFileError(ChoreShareError):
    """An instance or allocation file could not be parsed."""


class PreconditionError(ChoreShareError):
    """An operation was called on input outside its documented domain."""


class UnsortedInputError(PreconditionError):
    """Jobs or speeds were expected in nonincreasing order."""


# --- Invariant / audit errors (exit 2) ---

class InvalidInstanceError(ChoreShareError):
    exit_code = INVARIANT_EXIT_CODE


class InvalidAllocationError(ChoreShareError):
    exit_code = INVARIANT_EXIT_CODE


class AllocatorInvariantError(ChoreShareError):
    """An allocator reached a state its correctness argument rules out."""
    exit_code = INVARIANT_EXIT_CODE


class AuditFailedError(ChoreShareError):
    exit_code = INVARIANT_EXIT_CODE


class CertificationFailedError(ChoreShareError):
    exit_code = INVARIANT_EXIT_CODE
