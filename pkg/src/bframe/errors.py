"""Exception types shared across the package."""


class BframeError(Exception):
    """Base class for errors raised by bframe."""


class DimensionError(BframeError, ValueError):
    """Operand shapes do not conform."""


class DomainError(BframeError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class GroupAxiomError(DomainError):
    """A Cayley table or permutation violates a group axiom."""

    def __init__(self, axiom: str, detail: str = ""):
        self.axiom = axiom
        msg = f"group axiom violated: {axiom}"
        super().__init__(f"{msg} ({detail})" if detail else msg)


class CapacityError(BframeError, RuntimeError):
    """A request exceeds the size an exhaustive routine is allowed to handle."""


class NotAGroupFrameError(DomainError):
    """A family is not Parseval, or its Gramian is outside the group algebra."""


class DegenerateCodeError(DomainError):
    """The zero matrix has no code weight."""


class UnsupportedError(BframeError, NotImplementedError):
    """No available strategy or backend handles the input."""


class FixtureError(BframeError, OSError):
    """A reference fixture file is missing or unreadable."""
