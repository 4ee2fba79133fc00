"""
Exceptions raised by the CKS library.

The CLI maps GraphParseError to exit code 1 and InvalidParameterError to
exit code 2; the HTTP service maps both to 4xx responses.
"""

from typing import Optional


class CKSError(Exception):
    """Base class for every library error"""


class GraphParseError(CKSError):
    """Edge list could not be turned into a graph"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class InvalidParameterError(CKSError, ValueError):
    """A precondition on an argument does not hold"""
