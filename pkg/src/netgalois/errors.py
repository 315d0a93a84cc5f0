"""Shared exception types."""


class InputError(ValueError):
    """Malformed or unsupported user input (CLI exit code 2)."""


class CapExceeded(RuntimeError):
    """An enumeration or closure grew past its configured cap (CLI exit code 3).

    Carries the partial count reached before aborting.
    """

    def __init__(self, message, partial_count=None):
        super().__init__(message)
        self.partial_count = partial_count
