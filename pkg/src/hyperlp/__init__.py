"""Numerical companion for L^p spectra of the Hodge Laplacian on hyperbolic space.

Modules:

- :mod:`hyperlp.regions`: parabolic spectral regions and membership tests
- :mod:`hyperlp.halfspace`: exact form calculus in the upper half-space and L^p quadrature
- :mod:`hyperlp.radial`: radial eigen-ODE, Frobenius start and growth rates
- :mod:`hyperlp.middle`: harmonic middle-degree forms and their integrability threshold
- :mod:`hyperlp.kernels`: heat and resolvent kernels, volume growth, waves and scalar lemmas
- :mod:`hyperlp.acceptance`: the aggregated acceptance checks
- :mod:`hyperlp.cli`: command-line front end
"""

__version__ = "0.1.0"

from .regions import RegionSpec, boundary_point, contains  # noqa: E402
from .report import CheckReport  # noqa: E402

__all__ = ["RegionSpec", "boundary_point", "contains", "CheckReport", "__version__"]
