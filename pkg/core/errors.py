"""
Exception hierarchy shared by every package.

Each error carries the process exit status the CLI reports for it:
0 success, 1 failed mathematical check, 2 input error, 3 resource limit.
"""

from typing import Any, Dict, Optional


class MvLabError(Exception):
    """Base error for the toolkit"""
    exit_code = 2

    def __init__(self, message: str, payload: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.payload = payload or {}


class InvalidParameterError(MvLabError, ValueError):
    """Constructor parameter outside its documented range"""


class TableFormatError(MvLabError, ValueError):
    """Operation tables are not total over the named carrier"""


class InvalidArgumentError(MvLabError, ValueError):
    """Operation called on an argument it is not defined for"""


class PreconditionError(MvLabError):
    """A documented precondition of an operation does not hold"""


class UndefinedPartialSum(MvLabError, ArithmeticError):
    """Partial addition x + y requested with x not below the complement of y"""


class DescriptionError(MvLabError):
    """Description file is not valid JSON or violates the schema"""


class ConfigError(MvLabError):
    """Settings file is missing sections or holds invalid values"""


class ResourceLimitError(MvLabError):
    """Carrier or enumeration guard exceeded"""
    exit_code = 3


class AxiomViolation(MvLabError):
    """Operation tables fail one of the MV-algebra axioms"""
    exit_code = 1

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report


class InvariantViolation(MvLabError, AssertionError):
    """An exhaustive internal check failed"""
    exit_code = 1


class HomomorphismError(InvariantViolation):
    """A claimed homomorphism or isomorphism witness failed verification"""


class TheoremViolation(InvariantViolation):
    """A structure theorem failed on a concrete instance"""
