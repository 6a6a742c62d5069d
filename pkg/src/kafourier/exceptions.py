"""Exception hierarchy shared by all kafourier modules."""


class KAFourierError(Exception):
    """Base class for every error raised by kafourier."""


class InadmissibleParams(KAFourierError, ValueError):
    pass


class SingularAtOrigin(KAFourierError, ValueError):
    pass


class QuadratureFailure(KAFourierError, RuntimeError):
    pass


class GramFailure(KAFourierError, RuntimeError):
    """Orthonormalisation lost accuracy; reduce n_basis or add nodes."""


class SelfAdjointnessDefect(KAFourierError, RuntimeError):
    pass


class ProjectionResidualTooLarge(KAFourierError, RuntimeError):
    def __init__(self, residual, limit):
        super().__init__(
            f"relative projection residual {residual:.3e} exceeds {limit:.1e}"
        )
        self.residual = residual
        self.limit = limit


class InfinitePaleyFunctional(KAFourierError, ValueError):
    pass


class ExponentOutOfRange(KAFourierError, ValueError):
    pass


class BoundInfinite(KAFourierError, ValueError):
    pass


class NoConvergence(KAFourierError, RuntimeError):
    def __init__(self, iterations, residual):
        super().__init__(
            f"Picard iteration did not converge after {iterations} "
            f"iterations (last increment {residual:.3e})"
        )
        self.iterations = iterations
        self.residual = residual


class SymbolSpecError(KAFourierError, ValueError):
    pass


class BeyondExistenceTime(KAFourierError, ValueError):
    """Horizon exceeds the closed-form existence time and no override was given."""
