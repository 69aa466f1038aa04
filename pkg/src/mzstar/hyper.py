"""Generalized hypergeometric machinery at unit argument.

Pochhammer symbols, Gauss's 2F1 summation, direct adaptive 3F2 summation
with Euler-Maclaurin tail correction, the two Bailey-type transformation
identities, and the digamma-limit evaluation of 3F2(a,b,c; a+b,1+c) with
its epsilon-regularized derivation probe.

Every check evaluates both sides independently and returns a
VerificationReport; nothing is shared between the two routes beyond the
Gamma/digamma backend.
"""

from collections import namedtuple

import mpmath as mp

from .precision import DomainError, PoleError, digamma, euler_gamma, gamma, mpf_from
from .report import make_report
from .tails import PochhammerSeries, ToleranceNotReached

HYPOTHESIS_MARGIN = mp.mpf("1e-3")
POLE_MARGIN = mp.mpf("1e-6")

# expansion depth used by the verification suites; the standalone default
# for f32_unit_direct stays at the plain two-term tail correction
SUITE_TAIL_ORDER = 12
DEFAULT_F32_TARGET = mp.mpf("1e-30")


class HypothesisError(ValueError):
    """A transformation identity was requested outside its hypotheses."""


class ConvergenceError(ArithmeticError):
    """Series parameters give a divergent (or non-positive-excess) sum."""


def pochhammer(a, n, precision_bits=256):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    with mp.workprec(precision_bits + 16):
        a = mpf_from(a, precision_bits + 16)
        out = mp.mpf(1)
        for i in range(n):
            out *= a + i
    with mp.workprec(precision_bits):
        return +out


class HyperParams32(namedtuple("HyperParams32", "tops bottoms")):
    """Parameters of 3F2(tops; bottoms; 1)."""

    def __new__(cls, tops, bottoms):
        tops = tuple(mp.mpf(t) for t in tops)
        bottoms = tuple(mp.mpf(b) for b in bottoms)
        if len(tops) != 3 or len(bottoms) != 2:
            raise ValueError("3F2 takes three top and two bottom parameters")
        for b in bottoms:
            if b <= POLE_MARGIN and abs(b - mp.nint(b)) <= POLE_MARGIN:
                raise PoleError("bottom parameter %s is (near) a nonpositive integer" % b)
        return super().__new__(cls, tops, bottoms)

    @property
    def excess(self):
        return sum(self.bottoms) - sum(self.tops)


def f21_unit_gauss(a, b, c, precision_bits=256):
    """Gauss: 2F1(a,b;c;1) = Gamma(c)Gamma(c-a-b)/(Gamma(c-a)Gamma(c-b))."""
    with mp.workprec(precision_bits + 16):
        a, b, c = (mpf_from(x, precision_bits + 16) for x in (a, b, c))
        if c - a - b <= 0:
            raise ConvergenceError("2F1 at unit argument needs c - a - b > 0")
        num = gamma(c, precision_bits + 16) * gamma(c - a - b, precision_bits + 16)
        den = gamma(c - a, precision_bits + 16) * gamma(c - b, precision_bits + 16)
        out = num / den
    with mp.workprec(precision_bits):
        return +out


def f21_unit_direct(a, b, c, target_abs_err=None, precision_bits=256,
                    tail_order=SUITE_TAIL_ORDER):
    """2F1(a,b;c;1) by direct summation with EM tail (oracle for Gauss)."""
    with mp.workprec(precision_bits + 16):
        if mp.mpf(c) - mp.mpf(a) - mp.mpf(b) <= 0:
            raise ConvergenceError("2F1 at unit argument needs c - a - b > 0")
    target = target_abs_err if target_abs_err is not None else suite_target(precision_bits)
    series = PochhammerSeries([a, b], [c], precision_bits=precision_bits)
    value, _err, _n = series.sum(target, tail_order=tail_order)
    return value


def f32_unit_direct(params, target_abs_err=DEFAULT_F32_TARGET, precision_bits=256,
                    tail_order=2, n_cap=10 ** 7):
    """3F2(tops; bottoms; 1) by adaptive partial summation.

    The tail is estimated from the asymptotic behaviour of the terms
    (t_n ~ K n^(-1-excess)); ``tail_order`` controls how many 1/n expansion
    terms back that estimate (default: the plain two-term correction).
    Raises ToleranceNotReached if the target needs more than ``n_cap``
    terms at this tail order; the exception carries the achieved error.
    """
    params = params if isinstance(params, HyperParams32) else HyperParams32(*params)
    if params.excess <= 0:
        raise ConvergenceError(
            "3F2 at unit argument diverges: excess = %s <= 0" % mp.nstr(params.excess, 8)
        )
    series = PochhammerSeries(list(params.tops), list(params.bottoms),
                              precision_bits=precision_bits)
    value, err, n = series.sum(target_abs_err, tail_order=max(2, tail_order), n_cap=n_cap)
    return value, err, n


def suite_target(precision_bits):
    """Summation target for tier-1 identity checks: far below the 1e-20
    tier, but not all the way down to the precision floor (which would
    force hundreds of thousands of terms per series)."""
    return max(mp.mpf("1e-26"), mp.mpf(2) ** (16 - precision_bits))


def f32_value(tops, bottoms, precision_bits=256, target=None):
    """Convenience wrapper used by the identity suites (deep tail order)."""
    if target is None:
        target = suite_target(precision_bits)
    value, _e, _n = f32_unit_direct(
        HyperParams32(tops, bottoms), target, precision_bits,
        tail_order=SUITE_TAIL_ORDER,
    )
    return value


def _require(condition, message):
    if not condition:
        raise HypothesisError(message)


def trans_check_two(params, precision_bits=256, tolerance=None):
    """Two-term transformation of 3F2 (Bailey Sec. 3.8 type).

    Valid for excess > 0 and tops[2] - bottoms[0] + 1 > 0; both conditions
    are enforced with a small margin.
    """
    params = params if isinstance(params, HyperParams32) else HyperParams32(*params)
    a1, a2, a3 = params.tops
    b1, b2 = params.bottoms
    with mp.workprec(precision_bits + 16):
        _require(params.excess > HYPOTHESIS_MARGIN, "excess must exceed the margin")
        _require(a3 - b1 + 1 > HYPOTHESIS_MARGIN, "need tops[2] - bottoms[0] + 1 > 0")
        _require(abs(a1 + a2 - b1 - mp.nint(a1 + a2 - b1)) > HYPOTHESIS_MARGIN,
                 "a1 + a2 - b1 too close to an integer (Gamma poles)")
        lhs = f32_value((a1, a2, a3), (b1, b2), precision_bits)
        g = precision_bits + 16
        term1 = (
            gamma(b1, g) * gamma(b1 - a1 - a2, g)
            / (gamma(b1 - a1, g) * gamma(b1 - a2, g))
            * f32_value((a1, a2, b2 - a3), (a1 + a2 - b1 + 1, b2), precision_bits)
        )
        term2 = (
            gamma(b1, g) * gamma(b2, g) * gamma(a1 + a2 - b1, g)
            * gamma(b1 + b2 - a1 - a2 - a3, g)
            / (gamma(a1, g) * gamma(a2, g) * gamma(b2 - a3, g)
               * gamma(b1 + b2 - a1 - a2, g))
            * f32_value(
                (b1 - a1, b1 - a2, b1 + b2 - a1 - a2 - a3),
                (b1 - a1 - a2 + 1, b1 + b2 - a1 - a2),
                precision_bits,
            )
        )
        rhs = term1 + term2
    if tolerance is None:
        tolerance = mp.mpf("1e-20")
    return make_report(
        "3f2-transformation-two-term",
        {"a1": a1, "a2": a2, "a3": a3, "b1": b1, "b2": b2},
        lhs, rhs, tolerance, precision_bits,
    )


def trans_check_one(params, precision_bits=256, tolerance=None):
    """One-term transformation of 3F2 (Bailey Ex. 7 type).

    Valid for excess > 0 and bottoms[1] - tops[2] > 0.
    """
    params = params if isinstance(params, HyperParams32) else HyperParams32(*params)
    a1, a2, a3 = params.tops
    b1, b2 = params.bottoms
    with mp.workprec(precision_bits + 16):
        _require(params.excess > HYPOTHESIS_MARGIN, "excess must exceed the margin")
        _require(b2 - a3 > HYPOTHESIS_MARGIN, "need bottoms[1] - tops[2] > 0")
        lhs = f32_value((a1, a2, a3), (b1, b2), precision_bits)
        g = precision_bits + 16
        rhs = (
            gamma(b2, g) * gamma(b1 + b2 - a1 - a2 - a3, g)
            / (gamma(b2 - a3, g) * gamma(b1 + b2 - a1 - a2, g))
            * f32_value((b1 - a1, b1 - a2, a3), (b1, b1 + b2 - a1 - a2), precision_bits)
        )
    if tolerance is None:
        tolerance = mp.mpf("1e-20")
    return make_report(
        "3f2-transformation-one-term",
        {"a1": a1, "a2": a2, "a3": a3, "b1": b1, "b2": b2},
        lhs, rhs, tolerance, precision_bits,
    )


# -- the digamma-limit proposition ---------------------------------------------------


def _prop31_guards(a, b, c):
    for name, x in (("a", a), ("b", b), ("c", c)):
        if abs(x) > mp.mpf("0.25") + mp.mpf("1e-12"):
            raise DomainError("|%s| must be <= 1/4" % name)
    for name, x in (
        ("a", a), ("b", b), ("a+b", a + b),
        ("1+c-a", 1 + c - a), ("1+c-b", 1 + c - b), ("1+c-a-b", 1 + c - a - b),
    ):
        if abs(x - mp.nint(x)) < HYPOTHESIS_MARGIN and mp.nint(x) <= 0:
            raise HypothesisError("%s too close to a Gamma pole" % name)


def prop31_closed_form(a, b, c, precision_bits=256):
    """Right side: Gamma prefactor times (psi terms minus the auxiliary sum)."""
    g = precision_bits + 16
    with mp.workprec(g):
        a, b, c = (mpf_from(x, g) for x in (a, b, c))
        pref = (
            gamma(a + b, g) * gamma(1 + c, g) * gamma(1 + c - a - b, g)
            / (gamma(a, g) * gamma(b, g) * gamma(1 + c - a, g) * gamma(1 + c - b, g))
        )
        psi_part = digamma(1 + c - b, g) - digamma(a, g) - digamma(b, g) - euler_gamma(g)
        aux = PochhammerSeries(
            [a, 1 - b], [1 + c - b], lin_den=[mp.mpf(0)], start=1,
            precision_bits=precision_bits,
        )
        s, _err, _n = aux.sum(suite_target(precision_bits), tail_order=SUITE_TAIL_ORDER)
        out = pref * (psi_part - s)
    with mp.workprec(precision_bits):
        return +out


def prop31_check(a, b, c, precision_bits=256, tolerance=None):
    """3F2(a,b,c; a+b,1+c) against the closed digamma form."""
    with mp.workprec(precision_bits + 16):
        a, b, c = (mpf_from(x, precision_bits + 16) for x in (a, b, c))
        _prop31_guards(a, b, c)
        lhs = f32_value((a, b, c), (a + b, 1 + c), precision_bits)
        rhs = prop31_closed_form(a, b, c, precision_bits)
    if tolerance is None:
        tolerance = mp.mpf("1e-20")
    return make_report(
        "prop-3f2-digamma-limit",
        {"a": a, "b": b, "c": c},
        lhs, rhs, tolerance, precision_bits,
    )


def _prop31_epsilon_direct(a, b, c, eps, precision_bits):
    return f32_value((a, b, c), (a + b + eps, 1 + c - eps), precision_bits)


def _prop31_epsilon_decomposition(a, b, c, eps, precision_bits):
    """The 1/eps bracket plus corrected series from the regularized proof."""
    g = precision_bits + 16
    with mp.workprec(g):
        bracket = (
            gamma(1 + eps, g) * gamma(a + b + eps, g) * gamma(1 + c - eps, g)
            * gamma(1 + c - a - b - eps, g)
            / (gamma(a + eps, g) * gamma(b + eps, g) * gamma(1 + c - a - eps, g)
               * gamma(1 + c - b - eps, g))
        )
        pref = (
            gamma(a + b + eps, g) * gamma(1 + c - eps, g) * gamma(1 + c - a - b - eps, g)
            / (gamma(a, g) * gamma(b, g) * gamma(1 + c - a - eps, g) * gamma(1 + c - b, g))
        )
        series = PochhammerSeries(
            [a + eps, 1 - b], [1 + c - b], lin_den=[eps], start=1,
            precision_bits=precision_bits,
        )
        s, _err, _n = series.sum(suite_target(precision_bits), tail_order=SUITE_TAIL_ORDER)
        out = (bracket - pref) / eps - pref * s
    with mp.workprec(precision_bits):
        return +out


def prop31_epsilon_probe(a, b, c, eps, precision_bits=256, tolerance=None):
    """Regularized-parameter probe of the digamma-limit proposition.

    Evaluates 3F2(a,b,c; a+b+eps, 1+c-eps) directly and via the 1/eps
    decomposition; reports that residual, plus (in the notes) the
    two-point Richardson extrapolation to eps = 0 against the closed form.
    """
    with mp.workprec(precision_bits + 16):
        a, b, c, eps = (mpf_from(x, precision_bits + 16) for x in (a, b, c, eps))
        _prop31_guards(a, b, c)
        if not mp.mpf("1e-6") <= abs(eps) <= mp.mpf("1e-2"):
            raise HypothesisError("eps must satisfy 1e-6 <= |eps| <= 1e-2")
        direct = _prop31_epsilon_direct(a, b, c, eps, precision_bits)
        decomp = _prop31_epsilon_decomposition(a, b, c, eps, precision_bits)
        direct_half = _prop31_epsilon_direct(a, b, c, eps / 2, precision_bits)
        richardson = 2 * direct_half - direct
        closed = prop31_closed_form(a, b, c, precision_bits)
    if tolerance is None:
        tolerance = mp.mpf("1e-15")
    return make_report(
        "prop-3f2-epsilon-probe",
        {"a": a, "b": b, "c": c, "eps": eps},
        direct, decomp, tolerance, precision_bits,
        notes={
            "richardson_limit": richardson,
            "closed_form": closed,
            "richardson_error": abs(richardson - closed),
            "richardson_tolerance": 10 * abs(eps),
        },
    )
