"""Exception hierarchy shared across the package."""


class EfimovError(Exception):
    """Base class for all errors raised by this package."""


class InvalidBracketError(EfimovError, ValueError):
    """The supplied interval does not bracket a sign change."""


class NoRootError(EfimovError, RuntimeError):
    """A transcendental equation has no root in the searched range."""


class NoBoundStateError(EfimovError, ValueError):
    """The interaction is too weak to support a bound state."""


class SubcriticalMassRatioError(EfimovError, ValueError):
    """The mass ratio is too small for an attractive inverse-square channel.

    Attributes
    ----------
    mass_ratio : float
        The rejected heavy/light mass ratio.
    critical_ratio : float
        Threshold ratio above which the Efimov effect appears.
    """

    def __init__(self, mass_ratio: float, critical_ratio: float):
        self.mass_ratio = mass_ratio
        self.critical_ratio = critical_ratio
        super().__init__(
            f"mass ratio {mass_ratio:g} is at or below the critical value "
            f"{critical_ratio:.6f}; no Efimov effect in this channel"
        )


class DivergentIntegralError(EfimovError, ValueError):
    """A requested integral does not exist on the given domain."""
