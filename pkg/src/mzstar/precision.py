"""Arbitrary-precision real arithmetic and special functions.

Public values are mpmath mpf numbers; every function takes an explicit
``precision_bits`` argument and computes with guard bits so the result is
good to roughly 2^(8 - precision_bits) relative error, comfortably inside
the documented 2^(24 - precision_bits) contract.

mpmath supplies the production Gamma/digamma/zeta implementations.  An
independent argument-shifted Stirling evaluation of Gamma and psi lives
here as well; :func:`validate_special_functions` cross-checks the two
routes and the verification CLI refuses to trust the backend until that
check has passed once per precision.

Hot summation kernels elsewhere in the package use gmpy2.mpfr numbers;
the exact mantissa/exponent converters live here too.
"""

import mpmath as mp

try:
    import gmpy2
except ImportError:  # pragma: no cover
    gmpy2 = None

POLE_MARGIN = mp.mpf("1e-6")


class PoleError(ArithmeticError):
    """Argument too close to a pole of the requested function."""


class DomainError(ValueError):
    """Argument outside the documented sampling/convergence domain."""


def mpf_from(x, precision_bits):
    """Convert to mpf at the working precision (exact for floats/ints)."""
    with mp.workprec(precision_bits):
        if gmpy2 is not None and isinstance(x, gmpy2.mpfr):
            return from_mpfr(x, precision_bits)
        if hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, int):
            return mp.mpf(x.numerator) / mp.mpf(x.denominator)
        return mp.mpf(x)


def _near_nonpositive_integer(x, margin=POLE_MARGIN):
    if x > margin:
        return False
    n = mp.nint(x)
    return n <= 0 and abs(x - n) <= margin


def _near_integer(x, margin=POLE_MARGIN):
    return abs(x - mp.nint(x)) <= margin


def gamma(x, precision_bits=256):
    x = mpf_from(x, precision_bits + 16)
    if _near_nonpositive_integer(x):
        raise PoleError("Gamma argument %s is within %s of a pole" % (mp.nstr(x, 8), POLE_MARGIN))
    with mp.workprec(precision_bits + 16):
        y = mp.gamma(x)
    with mp.workprec(precision_bits):
        return +y


def loggamma(x, precision_bits=256):
    x = mpf_from(x, precision_bits + 16)
    if x <= 0:
        raise DomainError("loggamma is only used on positive arguments here")
    with mp.workprec(precision_bits + 16):
        y = mp.loggamma(x)
    with mp.workprec(precision_bits):
        return +y


def digamma(x, precision_bits=256):
    x = mpf_from(x, precision_bits + 16)
    if _near_nonpositive_integer(x):
        raise PoleError("digamma argument %s is within %s of a pole" % (mp.nstr(x, 8), POLE_MARGIN))
    with mp.workprec(precision_bits + 16):
        y = mp.psi(0, x)
    with mp.workprec(precision_bits):
        return +y


def trig_pi(kind, x, precision_bits=256):
    """sin(pi x), cos(pi x) or cot(pi x) with argument reduction in pi units."""
    x = mpf_from(x, precision_bits + 16)
    with mp.workprec(precision_bits + 16):
        if kind == "sin":
            y = mp.sinpi(x)
        elif kind == "cos":
            y = mp.cospi(x)
        elif kind == "cot":
            if _near_integer(x):
                raise PoleError("cot(pi x) pole: x=%s is within %s of an integer" % (mp.nstr(x, 8), POLE_MARGIN))
            y = mp.cospi(x) / mp.sinpi(x)
        else:
            raise ValueError("unknown trig kind %r" % (kind,))
    with mp.workprec(precision_bits):
        return +y


def zeta_value(n, precision_bits=256):
    with mp.workprec(precision_bits + 16):
        y = mp.zeta(n)
    with mp.workprec(precision_bits):
        return +y


def euler_gamma(precision_bits=256):
    with mp.workprec(precision_bits + 16):
        y = +mp.euler
    with mp.workprec(precision_bits):
        return +y


def pi_value(precision_bits=256):
    with mp.workprec(precision_bits):
        return +mp.pi


# -- independent second method: argument-shifted Stirling ------------------------


def _stirling_loggamma(z, work):
    """log Gamma(z) for z >= ~0.12*work via the asymptotic series."""
    with mp.workprec(work):
        z = mp.mpf(z)
        total = (z - mp.mpf(1) / 2) * mp.log(z) - z + mp.log(2 * mp.pi) / 2
        eps = mp.mpf(2) ** (-work)
        zpow = z
        z2 = z * z
        prev = mp.inf
        j = 1
        while True:
            b = mp.bernoulli(2 * j)
            term = b / ((2 * j) * (2 * j - 1) * zpow)
            at = abs(term)
            if at < eps * abs(total) or at > prev:
                break
            total += term
            prev = at
            zpow *= z2
            j += 1
            if j > 4 * work:  # pragma: no cover - safety stop
                break
        return total


def gamma_stirling(x, precision_bits=256):
    """Gamma via reflection + argument shifting + Stirling series.

    Independent of mpmath's gamma algorithm; used to validate the backend.
    """
    work = precision_bits + 48
    with mp.workprec(work):
        x = mp.mpf(x)
        if _near_nonpositive_integer(x):
            raise PoleError("Gamma argument too close to a pole")
        if x < mp.mpf(1) / 2:
            # Gamma(x) Gamma(1-x) = pi / sin(pi x)
            y = mp.pi / (mp.sinpi(x) * gamma_stirling(1 - x, work))
        else:
            z0 = int(0.13 * work) + 10
            k = max(0, int(mp.ceil(z0 - x)))
            z = x + k
            lg = _stirling_loggamma(z, work)
            y = mp.exp(lg)
            for i in range(k):
                y /= x + i
    with mp.workprec(precision_bits):
        return +y


def digamma_stirling(x, precision_bits=256):
    """psi via reflection + argument shifting + Stirling series."""
    work = precision_bits + 48
    with mp.workprec(work):
        x = mp.mpf(x)
        if _near_nonpositive_integer(x):
            raise PoleError("digamma argument too close to a pole")
        if x < mp.mpf(1) / 2:
            # psi(1-x) - psi(x) = pi cot(pi x)
            y = digamma_stirling(1 - x, work) - mp.pi * mp.cospi(x) / mp.sinpi(x)
        else:
            z0 = int(0.13 * work) + 10
            k = max(0, int(mp.ceil(z0 - x)))
            z = x + k
            total = mp.log(z) - 1 / (2 * z)
            eps = mp.mpf(2) ** (-work)
            z2 = z * z
            zpow = z2
            prev = mp.inf
            j = 1
            while True:
                term = mp.bernoulli(2 * j) / (2 * j * zpow)
                at = abs(term)
                if at < eps * abs(total) or at > prev:
                    break
                total -= term
                prev = at
                zpow *= z2
                j += 1
                if j > 4 * work:  # pragma: no cover
                    break
            for i in range(k):
                total -= 1 / (x + i)
            y = total
    with mp.workprec(precision_bits):
        return +y


_validated_precisions = set()


def validate_special_functions(precision_bits=256, points=10, seed=20570):
    """Cross-check mpmath Gamma/psi against the Stirling route.

    Requires agreement to 2^(24 - precision_bits) relative error at
    ``points`` pseudo-random arguments; caches success per precision.
    """
    if precision_bits in _validated_precisions:
        return True
    import random

    rng = random.Random(seed)
    tol = mp.mpf(2) ** (24 - precision_bits)
    with mp.workprec(precision_bits + 16):
        for _ in range(points):
            x = mp.mpf(rng.uniform(0.01, 6.0))
            if _near_nonpositive_integer(x) or abs(x - mp.nint(x)) < mp.mpf("1e-3"):
                continue
            g1 = gamma(x, precision_bits)
            g2 = gamma_stirling(x, precision_bits)
            if abs(g1 - g2) > tol * abs(g1):
                raise AssertionError(
                    "gamma backends disagree at x=%s: %s vs %s" % (x, g1, g2)
                )
            d1 = digamma(x, precision_bits)
            d2 = digamma_stirling(x, precision_bits)
            if abs(d1 - d2) > tol * max(mp.mpf(1), abs(d1)):
                raise AssertionError(
                    "digamma backends disagree at x=%s: %s vs %s" % (x, d1, d2)
                )
    _validated_precisions.add(precision_bits)
    return True


# -- mpf <-> gmpy2.mpfr bridges ----------------------------------------------------


def to_mpfr(x, precision_bits):
    """Exact conversion mpf/int/float -> gmpy2.mpfr at the given precision."""
    if gmpy2 is None:  # pragma: no cover
        raise RuntimeError("gmpy2 is not available")
    if isinstance(x, mp.mpf):
        sign, man, exp, bc = x._mpf_
        if man == 0:
            return gmpy2.mpfr(0, precision_bits)
        # mantissa load is exact given enough bits; the 2^exp shift never rounds
        with gmpy2.context(precision=max(precision_bits, bc + 8)):
            v = gmpy2.mpfr(gmpy2.mpz(man))
            v = gmpy2.mul_2exp(v, exp) if exp >= 0 else gmpy2.div_2exp(v, -exp)
            if sign:
                v = -v
        return gmpy2.mpfr(v, precision_bits)
    return gmpy2.mpfr(x, precision_bits)


def from_mpfr(y, precision_bits):
    """Exact conversion gmpy2.mpfr -> mpf, rounded at the given precision."""
    with mp.workprec(precision_bits):
        if gmpy2 is None or not isinstance(y, gmpy2.mpfr):  # pragma: no cover
            return mp.mpf(y)
        if not gmpy2.is_finite(y):
            raise ValueError("cannot convert non-finite mpfr %r" % (y,))
        if y == 0:
            return mp.mpf(0)
        m, e = y.as_mantissa_exp()
        return +mp.mpf((int(m), int(e)))
