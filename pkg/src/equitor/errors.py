"""Exceptions shared across the engine."""


class EquitorError(Exception):
    """Base class for all engine errors."""


class InputError(EquitorError):
    """Malformed or inconsistent input data."""


class CappedComputationError(EquitorError):
    """A resource cap (degree / candidate count) was exceeded.

    Carries a short description of the computation that hit the cap so
    reports can surface it instead of silently truncating.
    """

    def __init__(self, what: str, cap: int):
        super().__init__(f"resource cap exceeded in {what} (cap={cap})")
        self.what = what
        self.cap = cap


class CharacterNotRealizedError(EquitorError):
    """The requested character has an empty monomial fiber."""


class InvariantViolationError(EquitorError):
    """Two independently computed values that must agree do not.

    Signals an implementation bug or an input outside the engine's
    hypotheses; never swallowed.
    """
