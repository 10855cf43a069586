"""Shared exception types."""


class ResourceGuardError(RuntimeError):
    """A computation refused to start or continue past a hard size guard.

    Carries an optional suggestion for the caller (typically: switch from
    exhaustive enumeration to the Monte Carlo estimators in `sampler`).
    """

    def __init__(self, message: str, suggestion: str | None = None):
        super().__init__(message)
        self.suggestion = suggestion

    def __str__(self) -> str:
        base = super().__str__()
        if self.suggestion:
            return f"{base} ({self.suggestion})"
        return base
