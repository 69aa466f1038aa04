"""mzstar: numerical and symbolic tooling for multiple zeta-star sum identities.

The package evaluates multiple zeta(-star) values and their generating
functions at high precision, verifies the gamma-function / hypergeometric
identity chain relating them, and extracts the exact zeta-value polynomials
representing alternating differences and diagonal sums of zeta-star sums.
"""

__version__ = "0.1.0"

from .rational import rational
from .zring import ZetaRing, ZetaPoly, even_zeta_display
from .series import (
    QSeries,
    RingMismatchError,
    NonDivisibleError,
    series_add,
    series_mul,
    series_exp,
    series_invert,
    series_div_exact,
    power_sums,
    elementary_series,
)

__all__ = [
    "rational",
    "ZetaRing",
    "ZetaPoly",
    "even_zeta_display",
    "QSeries",
    "RingMismatchError",
    "NonDivisibleError",
    "series_add",
    "series_mul",
    "series_exp",
    "series_invert",
    "series_div_exact",
    "power_sums",
    "elementary_series",
    "__version__",
]
