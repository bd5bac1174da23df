"""
This module defines the exceptions raised by the workbench controllers.
Law violations are never raised: they are returned as `CheckResult` values.
The exceptions below are reserved for malformed input and guard aborts.
Classes:
    WorkbenchError: Base class of every workbench exception.
    TermSyntaxError: Raised when term text does not parse; carries the position.
    OpenTermError: Raised when a closed term or expression is required.
    MalformedAlgebraError: Raised for non-total tables or non-lattice orders.
    UnknownElementError: Raised when an element id is outside a carrier.
    UnknownNameError: Raised for unknown builtin algebra, topology or suite names.
    TierMismatchError: Raised when a monadic value meets a core of another tier.
    ScaleGuardError: Raised when an enumeration would exceed the configured ceiling.
    ResolutionError: Raised when a suite or input file cannot be resolved.
    FrameMismatchError: Raised when objects over different frames are combined.
    NotMonicError: Raised when a mono is required and the input is not monic.
"""


class WorkbenchError(Exception):
    """
    Base class for all workbench errors.
    Attributes:
        message (str): Human readable description of the failure.
    """

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class TermSyntaxError(WorkbenchError):
    """
    Raised when a term text cannot be parsed.
    Attributes:
        position (int): Zero based character offset of the offending token.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class OpenTermError(WorkbenchError):
    pass


class MalformedAlgebraError(WorkbenchError):
    pass


class UnknownElementError(WorkbenchError):
    pass


class UnknownNameError(WorkbenchError):
    pass


class TierMismatchError(WorkbenchError):
    pass


class ScaleGuardError(WorkbenchError):
    pass


class ResolutionError(WorkbenchError):
    """
    Raised when a file or a reference inside a suite cannot be resolved.
    Attributes:
        location (str): File name and, when known, the entry that failed.
    """

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class FrameMismatchError(WorkbenchError):
    pass


class NotMonicError(WorkbenchError):
    pass
