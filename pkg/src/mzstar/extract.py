"""Exact series expansion of the main identity and polynomial extraction.

The gamma-function side of the main identity is expanded as a truncated
series in (u, v, w = t^2) with coefficients in the graded ring
Q[gamma, pi^2, zeta(3), zeta(5), ...]:

  (i)   the quadratic root data enters only through Newton power sums of
        (a, b) and (u+a, u+b), which are exact polynomials;
  (ii)  log Gamma(1-a)(1+a)(1-b)(1+b) needs only even power sums, so no
        gamma (Euler's constant) appears there at all;
  (iii) Gamma(u+a)Gamma(u+b) = -Gamma(1+u+a)Gamma(1+u+b)/w because
        (u+a)(u+b) = -w, and 1/(Gamma(u)Gamma(v)) = uv/(Gamma(1+u)Gamma(1+v));
        their gamma-linear parts cancel exactly and are asserted to;
  (iv)  the trigonometric block is cleared of denominators: multiplying the
        A-function by sin(pi u) sin(pi v) gives a series every coefficient
        of which carries a positive power of pi^2 (asserted), so one formal
        pi^2 division plus the structural w and uv+w exact divisions land
        the result in the polynomial ring with no pi left;
  (v)   finally every pi^2 power is rewritten as the single even zeta value
        of that weight, so the u^(k-1) coefficient of the height-one row
        comes out as the generator zeta(k) itself.

Every exact division is recorded; gamma-freeness and weight homogeneity
(weight = degree + 1 with w counting twice) are asserted on the result.
The extracted polynomials are cross-validated against the brute-force
nested sums of :mod:`mzstar.mzvnum`.
"""

import math
from dataclasses import dataclass, field

import mpmath as mp

from .mzvnum import SumKey, x_star_sum
from .precision import mpf_from
from .rational import rational
from .report import make_report
from .series import QSeries, elementary_series, power_sums, zeta_coefficient
from .zring import ZetaRing

DEFAULT_MAX_DEGREE = 11


class ExpansionError(ArithmeticError):
    """A structural assertion of the expansion pipeline failed."""


@dataclass
class ExpansionResult:
    series: QSeries
    max_total_degree: int
    gamma_free: bool
    divisibility_log: list
    ring: ZetaRing

    def coefficient(self, eu, ev, ew):
        return self.series.coefficient((eu, ev, ew))


@dataclass
class DifferencePoly:
    m: int
    n: int
    s: int
    poly: object

    @property
    def weight(self):
        return self.m + self.n + 1


def _log_division(log, name, divisor, series):
    log.append({"step": name, "divisor": divisor, "terms": len(series.coeffs)})


def expand_theorem_rhs(max_total_degree=DEFAULT_MAX_DEGREE):
    """Expand the gamma-function side as an exact (u, v, w)-series.

    Degrees are weighted (w counts 2); the returned series holds every
    coefficient of weighted degree <= max_total_degree, each one a
    gamma-free zeta polynomial homogeneous of weight degree + 1.
    """
    if max_total_degree < 2:
        raise ValueError("max_total_degree must be >= 2")
    D = max_total_degree
    inner = D + 4  # two weighted degrees lost to each of the w and uv+w divisions
    ring = ZetaRing(max_zeta=max(inner, 4), with_pi2=True)
    log = []

    u = QSeries.variable("u", inner, ring)
    v = QSeries.variable("v", inner, ring)
    w = QSeries.variable("w", inner, ring)
    one = QSeries.one(inner, ring)

    # (i) exact root data
    e1 = v - u
    e2 = -(u * v) - w
    p = power_sums(e1, e2, inner)
    q = power_sums(u + v, -w, inner)

    # (ii) + (iii): one combined log for all gamma factors
    combined = QSeries.zero(inner, ring)
    for n in range(2, inner + 1):
        zc = zeta_coefficient(ring, n)
        if n % 2 == 0:
            combined = combined + p[n - 1].scale(zc * rational(2, n))
        un_vn = (u ** n) + (v ** n)
        combined = combined + (q[n - 1] - un_vn).scale(zc * rational((-1) ** n, n))
    # gamma-linear parts of steps (iii) and (iv) cancel: -(u+a)-(u+b) + u + v = 0.
    if not all(c.is_gamma_free() for c in combined.coeffs.values()):
        raise ExpansionError("gamma did not cancel in the combined gamma-block log")
    mega = combined.truncate(D + 2).exp()

    # (iv) trigonometric block, denominators cleared by sin(pi u) sin(pi v)
    S_u = elementary_series("sin_pi_over_pi", u)
    S_v = elementary_series("sin_pi_over_pi", v)
    C_u = elementary_series("cos_pi", u * u)
    C_v = elementary_series("cos_pi", v * v)
    disc = (u + v) * (u + v) + w.scale(rational(4))
    C_d = elementary_series("cos_pi", disc)
    a_hat = (
        u * C_u * S_u - v * C_v * S_v + C_d * (v * C_u * S_v - u * C_v * S_u)
    )
    if any(c.min_pi2_degree() < 1 for c in a_hat.coeffs.values()):
        raise ExpansionError("cleared trig numerator is not divisible by pi^2")
    b_series = a_hat.div_pi2()
    _log_division(log, "trig-numerator / pi^2", "pi^2", b_series)

    w_quotient = b_series.div_exact(w)
    _log_division(log, "trig-numerator / w", "w", w_quotient)

    inv_sines = (S_u * S_v).truncate(D + 2).invert()
    t_a = w_quotient.truncate(D + 2) * mega * inv_sines
    t_a = t_a.scale(rational(1, 2))

    numerator = (u - v).truncate(D + 2) - t_a
    quotient = numerator.div_exact((u * v + w).truncate(D + 2))
    _log_division(log, "assembled numerator / (uv + w)", "uv + w", quotient)
    result = (-quotient).map_coefficients(lambda c: c.canonicalize_pi2())

    gamma_free = all(c.is_gamma_free() for c in result.coeffs.values())
    if not gamma_free:
        raise ExpansionError("final expansion is not gamma-free")
    for mono, c in result.coeffs.items():
        degree = mono[0] + mono[1] + 2 * mono[2]
        if not c.is_homogeneous(weight=degree + 1):
            raise ExpansionError(
                "coefficient at u^%d v^%d w^%d is not weight-homogeneous of weight %d"
                % (mono[0], mono[1], mono[2], degree + 1)
            )
    return ExpansionResult(result, D, gamma_free, log, ring)


_EXPANSION_CACHE = {}


def cached_expansion(max_total_degree=DEFAULT_MAX_DEGREE):
    if max_total_degree not in _EXPANSION_CACHE:
        _EXPANSION_CACHE[max_total_degree] = expand_theorem_rhs(max_total_degree)
    return _EXPANSION_CACHE[max_total_degree]


def difference_poly(m, n, s, expansion=None):
    """The zeta polynomial equal to
    (-1)^m X0*(m+n+1, n+1, s) - (-1)^n X0*(m+n+1, m+1, s).

    Reads (-1)^s times the u^(m+1-s) v^(n+1-s) w^(s-1) coefficient; both
    exponents are >= 1 for m, n >= s, so the diagonal row of the expansion
    never contaminates the coefficient.
    """
    if not (s >= 1 and m >= s and n >= s):
        raise ValueError("need m, n >= s >= 1")
    expansion = expansion or cached_expansion()
    if m + n > expansion.max_total_degree:
        raise ValueError(
            "weight %d exceeds the expansion depth (max degree %d)"
            % (m + n + 1, expansion.max_total_degree)
        )
    coeff = expansion.coefficient(m + 1 - s, n + 1 - s, s - 1)
    poly = coeff if s % 2 == 0 else -coeff
    return DifferencePoly(m, n, s, poly)


def diagonal_poly(k, s, expansion=None):
    """The zeta polynomial equal to the diagonal sum X0*(k, s, s)."""
    if not (s >= 1 and k >= 2 * s):
        raise ValueError("need k >= 2s and s >= 1")
    expansion = expansion or cached_expansion()
    if k - 1 > expansion.max_total_degree:
        raise ValueError(
            "weight %d exceeds the expansion depth (max degree %d)"
            % (k, expansion.max_total_degree)
        )
    coeff = expansion.coefficient(k - 2 * s + 1, 0, s - 1)
    return coeff if k % 2 == 0 else -coeff


def cross_validate(m, n, s, precision_bits=256, expansion=None, trunc_N=100_000,
                   tolerance=None):
    """Difference polynomial against the brute-force nested-sum difference."""
    if m + n + 1 > 9:
        raise ValueError("brute-force cross-validation is limited to weight <= 9")
    dp = difference_poly(m, n, s, expansion)
    lhs = dp.poly.eval(precision_bits)
    with mp.workprec(precision_bits + 16):
        key_n = SumKey(m + n + 1, n + 1, s)
        key_m = SumKey(m + n + 1, m + 1, s)
        xn = x_star_sum(key_n, precision_bits, trunc_N).value
        xm = x_star_sum(key_m, precision_bits, trunc_N).value
        rhs = (-1) ** m * xn - (-1) ** n * xm
    if tolerance is None:
        tolerance = mp.mpf("1e-8")
    return make_report(
        "difference-poly-vs-brute-force",
        {"m": m, "n": n, "s": s},
        lhs, rhs, tolerance, precision_bits,
        notes={"polynomial": dp.poly.render()},
    )


def cross_validate_diagonal(k, s, precision_bits=256, expansion=None, trunc_N=100_000,
                            tolerance=None):
    """Diagonal polynomial against the brute-force X0*(k, s, s)."""
    if k > 9:
        raise ValueError("brute-force cross-validation is limited to weight <= 9")
    poly = diagonal_poly(k, s, expansion)
    lhs = poly.eval(precision_bits)
    rhs = x_star_sum(SumKey(k, s, s), precision_bits, trunc_N).value
    if tolerance is None:
        tolerance = mp.mpf("1e-8")
    return make_report(
        "diagonal-poly-vs-brute-force",
        {"k": k, "s": s},
        lhs, rhs, tolerance, precision_bits,
        notes={"polynomial": poly.render()},
    )


# -- secondary evidence: tie the s=1 rows to the height-one closed form ----------------


def _bivariate_coefficient_fit(f, m, n, h, degree, precision_bits):
    """[u^m v^n] of f by a Vandermonde fit on a (degree+1)^2 grid of step h.

    The grid avoids the coordinate axes (the closed form has 1/u, 1/v
    poles that cancel only in the total expression), so plain polynomial
    fitting applies to f(u,v) = sum c_ij u^i v^j + O(h^degree).
    """
    G = degree + 1
    with mp.workprec(precision_bits + 32):
        h = mp.mpf(h)
        offsets = [h * (i + 1) for i in range(G)]
        vander = mp.matrix(G, G)
        for r in range(G):
            for c in range(G):
                vander[r, c] = offsets[r] ** c
        rows = []
        for uo in offsets:
            values = mp.matrix([f(uo, vo) for vo in offsets])
            rows.append(mp.lu_solve(vander, values)[n])
        coefs = mp.lu_solve(vander, mp.matrix(rows))
        return +coefs[m]


def height_one_coefficient_probe(m, n, precision_bits=256, steps=(0.02, 0.03, 0.04)):
    """Numeric [u^m v^n] of the height-one closed form at several grids.

    Returns the list of fitted coefficients, one per grid step; used as
    secondary evidence that the s = 1 difference polynomials match the
    proven height-one identity.
    """
    from .identities import height_one_rhs

    degree = m + n + 4
    out = []
    for h in steps:
        out.append(
            _bivariate_coefficient_fit(
                lambda uu, vv: height_one_rhs(uu, vv, precision_bits + 32),
                m, n, h, degree, precision_bits,
            )
        )
    return out
