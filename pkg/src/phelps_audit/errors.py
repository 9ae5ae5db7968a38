class InputError(ValueError):
    """Malformed or inconsistent input (dimensions, probabilities, duplicates)."""


class InvariantViolation(RuntimeError):
    """An internal self-check failed; results must not be trusted."""
