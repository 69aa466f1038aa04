"""Exact rational scalars used throughout the symbolic layer.

gmpy2.mpq is preferred (GMP-backed, several times faster on the dense
polynomial workloads); fractions.Fraction is a drop-in fallback so the
package still imports on interpreters without gmpy2.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as _mpq

    def rational(num, den=1):
        return _mpq(num, den)

    RATIONAL_TYPES = (_mpq, Fraction, int)
    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    def rational(num, den=1):
        return Fraction(num, den)

    RATIONAL_TYPES = (Fraction, int)
    HAVE_GMPY2 = False

QQ_ZERO = rational(0)
QQ_ONE = rational(1)


def is_rational(x):
    return isinstance(x, RATIONAL_TYPES)


def rational_from_str(s):
    """Parse 'p/q' or 'p' into an exact rational."""
    if "/" in s:
        num, den = s.split("/", 1)
        return rational(int(num), int(den))
    return rational(int(s))


def as_fraction(q):
    """Convert any supported rational to fractions.Fraction."""
    if isinstance(q, Fraction):
        return q
    return Fraction(q.numerator, q.denominator)
