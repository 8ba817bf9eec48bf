"""Shared exception types."""


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class UnknownGenerator(ToolkitError):
    pass


class EmptyRelator(ToolkitError):
    pass


class InvalidSpec(ToolkitError):
    pass


class EmptyBase(ToolkitError):
    pass


class LetterClash(ToolkitError):
    pass


class EmptyAssociation(ToolkitError):
    pass


class BaseNotFree(ToolkitError):
    pass


class NotInvolution(ToolkitError):
    pass


class IncompatibleAssociations(ToolkitError):
    pass


class SupportViolation(ToolkitError):
    pass


class OrderBoundExceeded(ToolkitError):
    pass


class NotNormal(ToolkitError):
    pass


class SearchBoundExceeded(ToolkitError):
    pass


class PreconditionViolated(ToolkitError):
    pass


class ParseError(ToolkitError):
    pass
