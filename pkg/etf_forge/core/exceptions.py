from typing import Any, Dict, Optional


class EtfForgeError(Exception):
    """Base class for every error raised by etf_forge"""

    status_code = 400
    exit_code = 1

    def __init__(self, message: str, report: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.report = report or {}


# ==============================
# Usage Errors (exit 1)
# ==============================
class UsageError(EtfForgeError):
    """Invalid input or a precondition the caller is responsible for"""


class OrderMismatchError(UsageError):
    """Cyclotomic operands live in different fields"""


class NotADifferenceSetError(UsageError):
    pass


class NotTightError(UsageError):
    pass


class NotEtfError(UsageError):
    pass


class DegenerateComplementError(UsageError):
    pass


# ==============================
# Consistency Errors (exit 2)
# ==============================
class ConsistencyError(EtfForgeError):
    """A structural assertion failed on a computed instance"""

    status_code = 500
    exit_code = 2


# ==============================
# Out Of Reach (exit 3)
# ==============================
class OutOfReachError(EtfForgeError):
    """The instance is declared beyond what is computed here"""

    status_code = 413
    exit_code = 3


class BudgetExceededError(OutOfReachError):
    """An enumeration budget or cap would be exceeded"""
