"""Exception hierarchy shared by all modules."""


class LameBandsError(Exception):
    """Base class for errors raised by this package."""


class DomainError(LameBandsError, ValueError):
    """An argument lies outside the mathematical domain of a function."""


class SingularityError(LameBandsError, ArithmeticError):
    """An evaluation point is too close to a pole of the elliptic lattice.

    Attributes
    ----------
    point : complex
        The offending argument.
    pole : complex
        The nearest lattice pole.
    """

    def __init__(self, point: complex, pole: complex, distance: float):
        self.point = point
        self.pole = pole
        self.distance = distance
        super().__init__(
            f"argument {point} lies within {distance:.3g} (lattice units) "
            f"of the pole at {pole}"
        )


class ConvergenceError(LameBandsError, ArithmeticError):
    """A series or iteration failed to converge within its cap."""


class IntegrationError(LameBandsError, ArithmeticError):
    """The adaptive integrator could not advance.

    Attributes
    ----------
    x : float
        Abscissa at which the step size underflowed.
    """

    def __init__(self, message: str, x: float):
        self.x = x
        super().__init__(f"{message} at x={x!r}")


class CatalogMissError(LameBandsError, LookupError):
    """No closed-form band-edge catalog exists for the requested potential."""


class UnsupportedError(LameBandsError, NotImplementedError):
    """The requested operation is not defined for this potential family."""


class ContractError(LameBandsError, ValueError):
    """Inputs violate a documented precondition."""
