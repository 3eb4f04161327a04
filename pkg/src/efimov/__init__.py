"""Numerical toolkit for the Efimov effect.

Modules
-------
specfun        K_{is}(x), its zeros, root finding and quadrature
twobody        Yamaguchi separable potential and low-energy scattering
bo3body        Born-Oppenheimer potential of a heavy-heavy-light system
spectrum       bound states of the cut-off inverse-square well
semiclassical  partition function, density of states, WKB state counting
observables    recombination rate and length in lab units
cli            command-line front end
"""

__version__ = "0.1.0"

from .exceptions import (  # noqa: E402
    DivergentIntegralError,
    EfimovError,
    InvalidBracketError,
    NoBoundStateError,
    NoRootError,
    SubcriticalMassRatioError,
)
