"""Exception hierarchy. Every error carries a short machine-parsable reason slug."""


class MorankitError(Exception):
    """Base error; ``reason`` is a stable slug, the message adds detail."""

    def __init__(self, reason: str, message: str):
        super().__init__(f"{reason}: {message}")
        self.reason = reason
        self.message = message


class InvalidInput(MorankitError):
    """Bad rule, spec file, digit set, window, or parameter (CLI exit code 2)."""


class ResourceLimit(MorankitError):
    """Enumeration cap or horizon exceeded (CLI exit code 3)."""
