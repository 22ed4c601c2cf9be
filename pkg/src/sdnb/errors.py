"""Exception hierarchy shared by the library and the CLI exit codes."""


class DomainError(ValueError):
    """Invalid input for an operation (CLI exit code 4)."""


class NoSdnbError(DomainError):
    """The extension has no self-dual normal basis (CLI exit code 2)."""


class UnsupportedCaseError(DomainError):
    """A valid request outside the supported cases, e.g. mixed-degree enumeration (exit 3)."""


class InternalError(RuntimeError):
    """A postcondition that the mathematics guarantees failed (exit 5)."""
