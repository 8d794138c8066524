"""Shared exception types."""


class OrderCapExceeded(RuntimeError):
    """Element order exceeded the hard multiplication cap."""


class SearchBudgetExceeded(RuntimeError):
    """Chain search ran out of its node budget before completing."""


class WittExtensionError(RuntimeError):
    """A partial isometry could not be extended to the whole space."""


class UnsupportedCase(ValueError):
    """The requested family/parameter combination has no implementation."""
