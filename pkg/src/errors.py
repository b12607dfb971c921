"""
Error Types
Typed exceptions raised across the pipeline, each carrying structured details
"""

from typing import Any, Dict, Optional


class PillowcaseKhError(ValueError):
    """
    Base class for every error raised by the package.

    The ``details`` payload ends up verbatim in the CLI's structured error JSON.
    """

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {
            'type': type(self).__name__,
            'message': self.message,
            'details': self.details,
        }


class TangleFormatError(PillowcaseKhError):
    """Malformed, dangling, non-planar or inconsistently oriented diagram"""


class OrientationError(PillowcaseKhError):
    """Orientation missing, or not extending to the requested closure"""


class NonComposableError(PillowcaseKhError):
    """Morphisms whose sources and targets do not chain"""


class TemplateArityError(PillowcaseKhError):
    """Saddle template requested with too few circles"""


class PivotError(PillowcaseKhError):
    """Cancellation pivot is not an invertible unit entry"""


class PostconditionError(PillowcaseKhError):
    """A cancellation produced a complex failing its checks"""


class PairingAuditError(PillowcaseKhError):
    """Non-zero quadratic module contribution where none is allowed"""


class ChainComplexError(PillowcaseKhError):
    """Differential does not square to zero or has the wrong bidegree"""


class GradingModeError(PillowcaseKhError):
    """Relative-grading data passed where absolute gradings are required"""


class InputValidationError(PillowcaseKhError):
    """Input file rejected before parsing"""
