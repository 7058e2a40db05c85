"""Exception types shared across the package."""


class RealBrauerError(Exception):
    """Base class; ``witness`` carries the offending data when available."""

    def __init__(self, message: str = "", witness=None):
        super().__init__(message)
        self.witness = witness


class CompositionNotZero(RealBrauerError):
    pass


class SizeExceeded(RealBrauerError):
    pass


class NotElementary(RealBrauerError):
    pass


class NotRealStructure(RealBrauerError):
    pass


class NonScalarSquare(RealBrauerError):
    pass


class InvalidGroupoid(RealBrauerError):
    pass


class NotFree(RealBrauerError):
    pass


class NotStabilized(RealBrauerError):
    pass


class OddOrder(RealBrauerError):
    pass


class MixedContext(RealBrauerError):
    pass


class NontrivialInvolution(RealBrauerError):
    pass


class NotCocycle(RealBrauerError):
    pass


class NotReal(RealBrauerError):
    pass
