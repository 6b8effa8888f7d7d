"""Exception types shared across the package."""


class SubsumsError(Exception):
    """Base class for all package errors."""


class BadScalarLiteral(SubsumsError, ValueError):
    pass


class MixedRadicand(SubsumsError, ValueError):
    """Scalars from Q(sqrt d1) and Q(sqrt d2) with d1 != d2 were combined."""


class SpecError(SubsumsError, ValueError):
    pass


class ArityMismatch(SpecError):
    pass


class InvalidP(SpecError):
    pass


class NonmonotoneA(SpecError):
    pass


class NotEventuallyMonotone(SpecError):
    pass


class CoefficientNotInP(SpecError):
    pass


class DepthBudgetExceeded(SubsumsError):
    def __init__(self, states: int, cap: int):
        super().__init__(f"deduplicated state count {states} exceeds budget {cap}")
        self.states = states
        self.cap = cap


class EmptyCover(SubsumsError, ValueError):
    pass


class EmptySet(SubsumsError, ValueError):
    pass


class ViewportDegenerate(SubsumsError, ValueError):
    pass


class SpacingMismatch(SubsumsError, ValueError):
    pass


class ConfigError(SubsumsError):
    """Invalid run configuration.

    ``code`` is one of ``SyntaxError``, ``UnknownKind``, ``BadScalarLiteral``,
    ``MixedRadicand`` or ``InvalidConfig``; ``location`` is a field path such as
    ``spec.q`` or ``line 3 column 7``.
    """

    def __init__(self, code: str, message: str, location: str = ""):
        where = f" at {location}" if location else ""
        super().__init__(f"{code}{where}: {message}")
        self.code = code
        self.message = message
        self.location = location
