"""Exact analysis of expansive observables on finite systems, shifts and circle maps.

Rationals are returned as fractions.Fraction and accepted as int, str ("p/q")
or Fraction. Reports and certificates are plain dicts in the CLI's JSON schemas.
"""

from ._core import (
    Error,
    System,
    __version__,
    analyze,
    circle,
    delta_star,
    e_star,
    law_suite,
    mesh,
    omega,
    orbit_distance,
    quotient,
    render_svg,
    sigma_star_squared,
    symbolic,
)

__all__ = [
    "Error",
    "System",
    "__version__",
    "analyze",
    "circle",
    "delta_star",
    "e_star",
    "law_suite",
    "mesh",
    "omega",
    "orbit_distance",
    "quotient",
    "render_svg",
    "sigma_star_squared",
    "symbolic",
]
