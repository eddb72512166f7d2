"""Exception types shared by the services and the command line front end."""
from __future__ import annotations

from typing import Any, Optional


class InputError(ValueError):
    """Malformed input: bad file, unknown kind, dimension/arity mismatch,
    a cochain outside the subspace an operation requires.

    The CLI maps it to exit code 2.
    """

    def __init__(self, message: str, field: Optional[str] = None) -> None:
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}" if field else message)


class VerificationFailure(RuntimeError):
    """A mathematical check failed where the operation refuses to continue.

    The CLI maps it to exit code 3.
    """

    def __init__(self, message: str, report: Any = None) -> None:
        self.report = report
        super().__init__(message)
