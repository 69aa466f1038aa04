"""Numeric verification of the gamma-function identity chain.

Implements the quadratic root pairs, the three closed forms of the
A-function, the generating function of zeta-star height sums via its 3F2
closed form and via the two-series integral representation, the F/F1/F2
decomposition with its closed forms, the main two-variable identity, and
its height-one (t = 0) specialization.  Every check evaluates the two
sides by independent routes and reports the absolute residual.
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .hyper import SUITE_TAIL_ORDER, f32_value, suite_target
from .mzvnum import phi_star_truncated
from .precision import DomainError, digamma, gamma, mpf_from, trig_pi
from .report import make_report
from .tails import PochhammerSeries

TIER1 = mp.mpf("1e-20")
TRUNC_TIER_12 = mp.mpf("1e-4")
TRUNC_TIER_14 = mp.mpf("1e-6")
DEGENERACY_MARGIN = mp.mpf("1e-3")


@dataclass(frozen=True)
class QuadRoots:
    """Roots r_plus >= r_minus of x^2 - e1 x + e2 = 0 (real discriminant)."""

    e1: object
    e2: object
    r_plus: object
    r_minus: object

    def pair(self, ordered=True):
        return (self.r_plus, self.r_minus) if ordered else (self.r_minus, self.r_plus)

    def swapped(self):
        return QuadRoots(self.e1, self.e2, self.r_minus, self.r_plus)


def _solve_roots(e1, e2, precision_bits):
    with mp.workprec(precision_bits + 16):
        disc = e1 * e1 - 4 * e2
        if disc < 0:
            raise DomainError("negative discriminant: roots are not real")
        sq = mp.sqrt(disc)
        return QuadRoots(e1, e2, (e1 + sq) / 2, (e1 - sq) / 2)


def roots_ab(u, v, t, precision_bits=256):
    """a + b = -u + v, ab = -uv - t^2; discriminant (u+v)^2 + 4t^2 >= 0."""
    with mp.workprec(precision_bits + 16):
        u, v, t = (mpf_from(x, precision_bits + 16) for x in (u, v, t))
        return _solve_roots(-u + v, -u * v - t * t, precision_bits)


def roots_alphabeta(u, v, t, precision_bits=256):
    """alpha + beta = u + v, alpha*beta = uv - t^2; discriminant (u-v)^2 + 4t^2."""
    with mp.workprec(precision_bits + 16):
        u, v, t = (mpf_from(x, precision_bits + 16) for x in (u, v, t))
        return _solve_roots(u + v, u * v - t * t, precision_bits)


def _refl(x, g):
    """Gamma(x) Gamma(1-x)."""
    return gamma(x, g) * gamma(1 - x, g)


def A_eval(form, u, v, roots, precision_bits=256):
    """The symmetric A-function in its trigonometric or gamma closed forms."""
    g = precision_bits + 16
    with mp.workprec(g):
        u = mpf_from(u, g)
        v = mpf_from(v, g)
        a, b = roots.r_plus, roots.r_minus
        if form == "trig":
            out = (
                trig_pi("cos", u, g) / trig_pi("sin", v, g)
                - trig_pi("cos", v, g) / trig_pi("sin", u, g)
                + trig_pi("cos", a - b, g) * (trig_pi("cot", u, g) - trig_pi("cot", v, g))
            ) / (2 * mp.pi)
        elif form == "gamma_a":
            out = (_refl(v, g) / _refl(a, g) + _refl(u, g) / _refl(b, g)) / _refl(u + a, g)
        elif form == "gamma_b":
            out = (_refl(v, g) / _refl(b, g) + _refl(u, g) / _refl(a, g)) / _refl(u + b, g)
        else:
            raise ValueError("unknown A form %r" % (form,))
    with mp.workprec(precision_bits):
        return +out


def lemma21_check(u, v, t, precision_bits=256, tolerance=None):
    """Pairwise agreement of the three A-function forms."""
    roots = roots_ab(u, v, t, precision_bits)
    with mp.workprec(precision_bits + 16):
        a_trig = A_eval("trig", u, v, roots, precision_bits)
        a_ga = A_eval("gamma_a", u, v, roots, precision_bits)
        a_gb = A_eval("gamma_b", u, v, roots, precision_bits)
        worst = max(abs(a_trig - a_ga), abs(a_trig - a_gb), abs(a_ga - a_gb))
    if tolerance is None:
        tolerance = TIER1
    report = make_report(
        "a-function-three-forms",
        {"u": u, "v": v, "t": t},
        a_trig, a_ga, tolerance, precision_bits,
        notes={"gamma_b_form": a_gb},
    )
    report.residual = worst
    return report


# -- the generating function, two ways ------------------------------------------------


def phi_star_3f2(u, v, t, precision_bits=256, beta_choice="minus"):
    """Closed 3F2 form: 1/((1-v)(1-beta)) 3F2(1-beta, 1-beta+u, 1; 2-v, 2-beta).

    beta is the r_minus root of alpha+beta = u+v, alpha beta = uv - t^2 by
    convention; beta_choice="plus" evaluates the swapped ordering (a
    diagnostic for the root-labelling question, not used by the suites).
    """
    g = precision_bits + 16
    with mp.workprec(g):
        u, v, t = (mpf_from(x, g) for x in (u, v, t))
        roots = roots_alphabeta(u, v, t, precision_bits)
        alpha, beta = roots.pair(ordered=(beta_choice == "minus"))
        excess = 1 - alpha
        if excess <= DEGENERACY_MARGIN:
            raise DomainError("3F2 excess 1 - alpha = %s too small" % mp.nstr(excess, 8))
        val = f32_value(
            (1 - beta, 1 - beta + u, mp.mpf(1)),
            (2 - v, 2 - beta),
            precision_bits,
        ) / ((1 - v) * (1 - beta))
    with mp.workprec(precision_bits):
        return +val


def phi_star_ako(u, v, t, precision_bits=256):
    """Two-series representation of the same generating function.

    Each series is sum_n (alpha)_n (1-beta)_n / (n! (1+alpha-beta)_n) *
    (alpha-u)/(n+alpha-u), with the alpha <-> beta companion; the gamma
    prefactors need alpha != beta (enforced with a margin).
    """
    g = precision_bits + 16
    with mp.workprec(g):
        u, v, t = (mpf_from(x, g) for x in (u, v, t))
        roots = roots_alphabeta(u, v, t, precision_bits)
        alpha, beta = roots.r_plus, roots.r_minus
        if abs(alpha - beta) < DEGENERACY_MARGIN:
            raise DomainError("alpha and beta coincide within the margin")
        total = mp.mpf(0)
        for x, y in ((alpha, beta), (beta, alpha)):
            pref = (
                gamma(y - x, g) * gamma(1 - y, g) * _refl(v, g)
                / (gamma(1 - x, g) * gamma(1 + u - x, g) * gamma(1 + x - u, g))
            )
            series = PochhammerSeries(
                [x, 1 - y], [1 + x - y], lin_den=[x - u], start=0,
                precision_bits=precision_bits,
            )
            s, _e, _n = series.sum(suite_target(precision_bits),
                                   tail_order=SUITE_TAIL_ORDER)
            total += pref * (x - u) * s
    with mp.workprec(precision_bits):
        return +total


def phi_star_swap_probe(u, v, t, precision_bits=256):
    """Diagnostic: the 3F2 closed form under both root orderings."""
    minus = phi_star_3f2(u, v, t, precision_bits, beta_choice="minus")
    plus = phi_star_3f2(u, v, t, precision_bits, beta_choice="plus")
    return make_report(
        "phi-star-root-swap-probe",
        {"u": u, "v": v, "t": t},
        minus, plus, mp.inf, precision_bits,
        notes={"difference": abs(minus - plus)},
    )


def phi_agreement_check(u, v, t, precision_bits=256, tolerance=None):
    """3F2 closed form against the two-series representation."""
    lhs = phi_star_3f2(u, v, t, precision_bits)
    rhs = phi_star_ako(u, v, t, precision_bits)
    if tolerance is None:
        tolerance = TIER1
    return make_report(
        "phi-star-3f2-vs-two-series",
        {"u": u, "v": v, "t": t},
        lhs, rhs, tolerance, precision_bits,
    )


def phi_truncation_check(u, v, t, precision_bits=256, max_weight=14, tolerance=None):
    """3F2 closed form against the weight-truncated definition."""
    lhs = phi_star_3f2(u, v, t, precision_bits)
    rhs, tail = phi_star_truncated(u, v, t, max_weight, precision_bits)
    if tolerance is None:
        tolerance = TRUNC_TIER_14 if max_weight >= 14 else TRUNC_TIER_12
    return make_report(
        "phi-star-3f2-vs-definition",
        {"u": u, "v": v, "t": t, "max_weight": max_weight},
        lhs, rhs, tolerance, precision_bits,
        notes={"weight_tail_estimate": tail},
    )


# -- the F / F1 / F2 decomposition ----------------------------------------------------


def _f_series(x, y, u, precision_bits, shifted):
    """sum_n (x)_n (1-y)_n / (n! (1+x-y)_n) * (u+x)/(n+u+x), or the
    (1+x)_n (-y)_n variant when shifted=True."""
    tops = [1 + x, -y] if shifted else [x, 1 - y]
    series = PochhammerSeries(
        tops, [1 + x - y], lin_den=[u + x], start=0, precision_bits=precision_bits
    )
    s, _e, _n = series.sum(suite_target(precision_bits), tail_order=SUITE_TAIL_ORDER)
    return (u + x) * s


def F_eval(u, v, roots, ordered=True, precision_bits=256):
    """The half-sum building block of the two-series split (Lemma level)."""
    g = precision_bits + 16
    with mp.workprec(g):
        u = mpf_from(u, g)
        v = mpf_from(v, g)
        a, b = roots.pair(ordered)
        pref = gamma(b - a, g) / (gamma(1 - u - a, g) * gamma(1 + u + a, g))
        s1 = _f_series(a, b, u, precision_bits, shifted=False)
        s2 = _f_series(a, b, u, precision_bits, shifted=True)
        out = pref * (
            u * _refl(v, g) * gamma(1 - b, g) / gamma(1 - a, g) * s1
            - v * _refl(u, g) * gamma(1 + a, g) / gamma(1 + b, g) * s2
        )
    with mp.workprec(precision_bits):
        return +out


def F1_eval(u, v, roots, ordered=True, precision_bits=256):
    """Closed elementary part after Gauss summation."""
    g = precision_bits + 16
    with mp.workprec(g):
        u = mpf_from(u, g)
        v = mpf_from(v, g)
        a, b = roots.pair(ordered)
        out = (
            (u + a) * gamma(b - a, g) * gamma(1 + a - b, g)
            / ((u + b) * gamma(1 - u - a, g) * gamma(1 + u + a, g))
            * (u * _refl(v, g) / (b * _refl(a, g)) - v * _refl(u, g) / (a * _refl(b, g)))
        )
    with mp.workprec(precision_bits):
        return +out


def F2_eval(u, v, roots, ordered=True, precision_bits=256):
    """Remaining 3F2 part: prefactor times 3F2(a,-b,u+a; a-b,1+u+a)."""
    g = precision_bits + 16
    with mp.workprec(g):
        u = mpf_from(u, g)
        v = mpf_from(v, g)
        a, b = roots.pair(ordered)
        pref = (
            u * v * (a - b) * gamma(b - a, g)
            / ((u + b) * gamma(1 - u - a, g) * gamma(1 + u + a, g))
            * (_refl(v, g) * gamma(-b, g) / gamma(1 - a, g)
               - _refl(u, g) * gamma(a, g) / gamma(1 + b, g))
        )
        f32 = f32_value((a, -b, u + a), (a - b, 1 + u + a), precision_bits)
        out = pref * f32
    with mp.workprec(precision_bits):
        return +out


def lemma42_check(u, v, t, precision_bits=256, tolerance=None):
    """u Phi(-u,v,t) - v Phi(-v,u,t) = F(a,b) + F(b,a)."""
    g = precision_bits + 16
    with mp.workprec(g):
        u, v, t = (mpf_from(x, g) for x in (u, v, t))
        lhs = u * phi_star_3f2(-u, v, t, precision_bits) - v * phi_star_3f2(-v, u, t, precision_bits)
        roots = roots_ab(u, v, t, precision_bits)
        rhs = F_eval(u, v, roots, True, precision_bits) + F_eval(u, v, roots, False, precision_bits)
    if tolerance is None:
        tolerance = TIER1
    return make_report(
        "two-series-split", {"u": u, "v": v, "t": t}, lhs, rhs, tolerance, precision_bits
    )


def lemma43_check(u, v, t, precision_bits=256, tolerance=None):
    """F = F1 + F2, checked in both root orderings."""
    roots = roots_ab(u, v, t, precision_bits)
    with mp.workprec(precision_bits + 16):
        worst = mp.mpf(0)
        vals = {}
        for ordered in (True, False):
            f = F_eval(u, v, roots, ordered, precision_bits)
            f1 = F1_eval(u, v, roots, ordered, precision_bits)
            f2 = F2_eval(u, v, roots, ordered, precision_bits)
            worst = max(worst, abs(f - (f1 + f2)))
            if ordered:
                vals = {"F": f, "F1_plus_F2": f1 + f2}
    if tolerance is None:
        tolerance = TIER1
    report = make_report(
        "gauss-split-of-F", {"u": u, "v": v, "t": t},
        vals["F"], vals["F1_plus_F2"], tolerance, precision_bits,
    )
    report.residual = worst
    return report


def lemma44_check(u, v, t, precision_bits=256, tolerance=None):
    """F1(a,b) + F1(b,a) against its elementary closed form."""
    g = precision_bits + 16
    with mp.workprec(g):
        u, v, t = (mpf_from(x, g) for x in (u, v, t))
        roots = roots_ab(u, v, t, precision_bits)
        a, b = roots.r_plus, roots.r_minus
        lhs = F1_eval(u, v, roots, True, precision_bits) + F1_eval(u, v, roots, False, precision_bits)
        A = A_eval("gamma_a", u, v, roots, precision_bits)
        rhs = (u - v) / (a * b) + (
            (a - b) * u * v / (a * b * (u + a) * (u + b))
            * gamma(b - a, g) * gamma(1 + a - b, g) * A
        )
    if tolerance is None:
        tolerance = TIER1
    return make_report(
        "elementary-part-closed-form", {"u": u, "v": v, "t": t},
        lhs, rhs, tolerance, precision_bits,
    )


def lemma45_check(u, v, t, precision_bits=256, tolerance=None):
    """F2(a,b) + F2(b,a) against its closed form."""
    g = precision_bits + 16
    with mp.workprec(g):
        u, v, t = (mpf_from(x, g) for x in (u, v, t))
        roots = roots_ab(u, v, t, precision_bits)
        a, b = roots.r_plus, roots.r_minus
        lhs = F2_eval(u, v, roots, True, precision_bits) + F2_eval(u, v, roots, False, precision_bits)
        A = A_eval("gamma_a", u, v, roots, precision_bits)
        rhs = (
            (b - a) * u * v / (a * b * (u + a) * (u + b))
            * gamma(b - a, g) * gamma(1 + a - b, g) * A
            + A * _refl(a, g) * _refl(b, g) * gamma(u + a, g) * gamma(u + b, g)
            / (gamma(u, g) * gamma(v, g))
        )
    if tolerance is None:
        tolerance = TIER1
    return make_report(
        "hypergeometric-part-closed-form", {"u": u, "v": v, "t": t},
        lhs, rhs, tolerance, precision_bits,
    )


# -- the main identity and its height-one case ----------------------------------------


def theorem_rhs(u, v, t, precision_bits=256):
    """(u-v)/(ab) + A * Gamma-product / (Gamma(u) Gamma(v))."""
    g = precision_bits + 16
    with mp.workprec(g):
        u, v, t = (mpf_from(x, g) for x in (u, v, t))
        roots = roots_ab(u, v, t, precision_bits)
        a, b = roots.r_plus, roots.r_minus
        A = A_eval("gamma_a", u, v, roots, precision_bits)
        out = (u - v) / (a * b) + A * (
            _refl(a, g) * _refl(b, g) * gamma(u + a, g) * gamma(u + b, g)
            / (gamma(u, g) * gamma(v, g))
        )
    with mp.workprec(precision_bits):
        return +out


def theorem_lhs(u, v, t, lhs_method="f32", precision_bits=256, max_weight=12):
    g = precision_bits + 16
    with mp.workprec(g):
        u, v, t = (mpf_from(x, g) for x in (u, v, t))
        if lhs_method == "f32":
            phi = lambda x, y: phi_star_3f2(x, y, t, precision_bits)
        elif lhs_method == "ako":
            phi = lambda x, y: phi_star_ako(x, y, t, precision_bits)
        elif lhs_method == "truncated":
            phi = lambda x, y: phi_star_truncated(x, y, t, max_weight, precision_bits)[0]
        else:
            raise ValueError("unknown lhs_method %r" % (lhs_method,))
        out = u * phi(-u, v) - v * phi(-v, u)
    with mp.workprec(precision_bits):
        return +out


def theorem_check(u, v, t, lhs_method="f32", precision_bits=256, tolerance=None,
                  max_weight=12):
    """The main two-variable identity, LHS by the chosen Phi evaluation."""
    lhs = theorem_lhs(u, v, t, lhs_method, precision_bits, max_weight)
    rhs = theorem_rhs(u, v, t, precision_bits)
    if tolerance is None:
        tolerance = TIER1 if lhs_method != "truncated" else (
            TRUNC_TIER_12 if max_weight <= 12 else TRUNC_TIER_14
        )
    return make_report(
        "main-identity",
        {"u": u, "v": v, "t": t, "lhs_method": lhs_method},
        lhs, rhs, tolerance, precision_bits,
    )


def height_one_rhs(u, v, precision_bits=256):
    """1/u - 1/v + Gamma(u+v)/(Gamma(u)Gamma(v)) ((G(v)G(1-v))^2 - (G(u)G(1-u))^2)."""
    g = precision_bits + 16
    with mp.workprec(g):
        u, v = mpf_from(u, g), mpf_from(v, g)
        out = 1 / u - 1 / v + gamma(u + v, g) / (gamma(u, g) * gamma(v, g)) * (
            _refl(v, g) ** 2 - _refl(u, g) ** 2
        )
    with mp.workprec(precision_bits):
        return +out


def height_one_check(u, v, precision_bits=256, tolerance=None):
    """The height-one identity: t = 0 specialization via the 3F2 form."""
    g = precision_bits + 16
    with mp.workprec(g):
        u, v = mpf_from(u, g), mpf_from(v, g)
        zero = mp.mpf(0)
        lhs = (
            u * phi_star_3f2(-u, v, zero, precision_bits)
            - v * phi_star_3f2(-v, u, zero, precision_bits)
        )
        rhs = height_one_rhs(u, v, precision_bits)
    if tolerance is None:
        tolerance = TIER1
    return make_report(
        "height-one-identity", {"u": u, "v": v}, lhs, rhs, tolerance, precision_bits
    )


# -- exact rational identity -----------------------------------------------------------


def partial_fraction_identity(n, a, b, u):
    """(n-b)/((n+a-b)(n+u+a)) == -a/(u+b)/(n+a-b) + v/(u+b)/(n+u+a), v = u+a+b.

    Exact Fraction arithmetic; returns True iff the identity holds exactly.
    """
    n, a, b, u = (Fraction(x) for x in (n, a, b, u))
    v = u + a + b
    lhs = (n - b) / ((n + a - b) * (n + u + a))
    rhs = (-a / (u + b)) / (n + a - b) + (v / (u + b)) / (n + u + a)
    return lhs == rhs
