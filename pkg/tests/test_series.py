"""Exact truncated-series arithmetic."""

import pytest
from hypothesis import given, settings, strategies as st

from mzstar.rational import rational as Q
from mzstar.series import (
    NonDivisibleError,
    QSeries,
    RingMismatchError,
    elementary_series,
    power_sums,
    series_div_exact,
    series_exp,
    series_invert,
)
from mzstar.zring import ZetaRing

ORDER = 8


def u_v_w(order=ORDER, ring=None):
    return (
        QSeries.variable("u", order, ring),
        QSeries.variable("v", order, ring),
        QSeries.variable("w", order, ring),
    )


# -- multiplication ----------------------------------------------------------------


def test_difference_of_squares():
    u, _, _ = u_v_w()
    one = QSeries.one(ORDER)
    assert (one + u) * (one - u) == one - u * u


def test_one_is_identity():
    u, v, w = u_v_w()
    s = u * v + w * w - u.scale(Q(3, 7))
    assert s * QSeries.one(ORDER) == s


def test_geometric_convolution_oracle():
    # (sum_{n<=5} u^n)(1-u) at order 5: direct convolution gives 1 - u^6 -> 1
    N = 5
    u = QSeries.variable("u", N)
    geo = QSeries.one(N)
    for n in range(1, N + 1):
        geo = geo + u ** n
    # independent convolution oracle over raw coefficient lists
    a = [1] * (N + 1)          # geometric
    b = [1, -1] + [0] * (N - 1)  # 1 - u
    conv = [sum(a[i] * b[d - i] for i in range(d + 1)) for d in range(N + 1)]
    assert conv == [1] + [0] * N
    product = geo * (QSeries.one(N) - u)
    assert product == QSeries.one(N)


def test_order_drops_to_min():
    u5 = QSeries.variable("u", 5)
    u9 = QSeries.variable("u", 9)
    assert (u5 * u9).order == 5
    assert (u5 + u9).order == 5


def test_ring_mismatch_rejected():
    ring = ZetaRing(max_zeta=6)
    u_plain = QSeries.variable("u", 4)
    u_ring = QSeries.variable("u", 4, ring)
    with pytest.raises(RingMismatchError):
        u_plain * u_ring


# -- exp ---------------------------------------------------------------------------


def test_exp_of_zero():
    assert series_exp(QSeries.zero(6)) == QSeries.one(6)


def test_exp_requires_zero_constant():
    with pytest.raises(ValueError):
        series_exp(QSeries.one(6))


def test_exp_two_term_hand_expansion():
    # exp(g u + z2 u^2/2): coefficient of u^2 is g^2/2 + z2/2
    ring = ZetaRing(max_zeta=6)
    u = QSeries.variable("u", 4, ring)
    s = u.scale(ring.gamma()) + (u * u).scale(ring.zeta(2) * Q(1, 2))
    # term-by-term truncated exponential oracle: 1 + s + s^2/2 + s^3/6 + s^4/24
    oracle = QSeries.one(4, ring)
    power = QSeries.one(4, ring)
    fact = 1
    for k in range(1, 5):
        power = power * s
        fact *= k
        oracle = oracle + power.scale(Q(1, fact))
    assert series_exp(s) == oracle
    expected = ring.gamma() ** 2 * Q(1, 2) + ring.zeta(2) * Q(1, 2)
    assert series_exp(s).coefficient((2, 0, 0)) == expected


def test_exp_group_law():
    u, v, w = u_v_w()
    s = u + v.scale(Q(2)) + (u * w).scale(Q(1, 3))
    t = v - w + (u * u).scale(Q(5))
    assert series_exp(s + t) == series_exp(s) * series_exp(t)
    assert series_exp(s) * series_exp(-s) == QSeries.one(ORDER)


# -- invert ------------------------------------------------------------------------


def test_invert_geometric():
    u = QSeries.variable("u", 6)
    geo = QSeries.one(6)
    for n in range(1, 7):
        geo = geo + u ** n
    assert series_invert(QSeries.one(6) - u) == geo


def test_invert_one():
    assert series_invert(QSeries.one(5)) == QSeries.one(5)


def test_invert_two_variables_newton_oracle():
    # Newton iteration x -> x(2 - s x) doubles correct order each step
    order = 2
    u, v, _ = u_v_w(order)
    s = QSeries.one(order) + u + v
    x = QSeries.one(order)
    for _ in range(3):
        x = x * (QSeries.const(2, order) - s * x)
    inv = series_invert(s)
    assert inv == x
    expected = {
        (0, 0, 0): Q(1), (1, 0, 0): Q(-1), (0, 1, 0): Q(-1),
        (2, 0, 0): Q(1), (1, 1, 0): Q(2), (0, 2, 0): Q(1),
    }
    assert inv.coeffs == expected


def test_invert_rejects_zero_constant():
    u = QSeries.variable("u", 4)
    with pytest.raises(ValueError):
        series_invert(u)


# -- exact division ------------------------------------------------------------------


def test_div_monomial_factor():
    u, v, w = u_v_w()
    s = u * u * v + u * w
    d = u * v + w
    assert series_div_exact(s, d) == u.truncate(s.order - 2)


def test_div_self():
    u, v, w = u_v_w()
    d = u * v + w
    assert series_div_exact(d, d) == QSeries.one(ORDER - 2)


def test_div_non_divisible_is_loud():
    u, v, w = u_v_w()
    with pytest.raises(NonDivisibleError):
        series_div_exact(u, u * v + w)


def test_div_quotient_order():
    u, v, w = u_v_w()
    q = series_div_exact((u * v + w) * (u + v), u * v + w)
    assert q.order == ORDER - 2
    assert q == (u + v).truncate(ORDER - 2)


# -- Newton power sums ----------------------------------------------------------------


def test_power_sums_first_two():
    u, v, w = u_v_w()
    e1 = v - u
    e2 = -(u * v) - w
    p = power_sums(e1, e2, 3)
    assert p[0] == e1
    assert p[1] == u * u + v * v + w.scale(Q(2))
    # (a-b)^2 = p2 - 2 e2 = (u+v)^2 + 4w
    assert p[1] - e2.scale(Q(2)) == (u + v) * (u + v) + w.scale(Q(4))


def test_power_sums_against_binomial_oracle():
    # p_n = ((e1+d)/2)^n + ((e1-d)/2)^n with d^2 = e1^2 - 4 e2: expanding and
    # keeping even powers of d gives 2^(1-n) sum_{j even} C(n,j) e1^(n-j) d^j
    from math import comb

    u, v, w = u_v_w()
    e1 = v - u
    e2 = -(u * v) - w
    d2 = e1 * e1 - e2.scale(Q(4))
    p = power_sums(e1, e2, 6)
    for n in range(1, 7):
        total = QSeries.zero(ORDER)
        for j in range(0, n + 1, 2):
            term = (e1 ** (n - j)) * (d2 ** (j // 2))
            total = total + term.scale(Q(2 * comb(n, j), 2 ** n))
        assert p[n - 1] == total


# -- elementary series -----------------------------------------------------------------


@pytest.fixture
def zring10():
    return ZetaRing(max_zeta=11)


def test_gamma_one_minus_linear_term(zring10):
    u = QSeries.variable("u", 10, zring10)
    g = elementary_series("gamma_one_minus", u)
    assert g.coefficient((1, 0, 0)) == zring10.gamma()


def test_sin_pi_over_pi_quadratic_term(zring10):
    u = QSeries.variable("u", 10, zring10)
    s = elementary_series("sin_pi_over_pi", u)
    # Taylor oracle: sin(pi u)/(pi u) = 1 - (pi u)^2/6 + ... with pi^2 -> 6 zeta(2)
    assert s.coefficient((2, 0, 0)) == -zring10.zeta(2)


def test_reflection_identity_exact_through_order_10(zring10):
    u = QSeries.variable("u", 10, zring10)
    gamma_minus = elementary_series("gamma_one_minus", u)
    gamma_minus_neg = elementary_series("gamma_one_minus", -u)
    sinpp = elementary_series("sin_pi_over_pi", u)
    assert gamma_minus * gamma_minus_neg * sinpp == QSeries.one(10, zring10)


def test_elementary_series_guards(zring10):
    one = QSeries.one(6, zring10)
    with pytest.raises(ValueError):
        elementary_series("gamma_one_minus", one)
    with pytest.raises(RingMismatchError):
        elementary_series("gamma_one_minus", QSeries.variable("u", 6))


# -- serialization ---------------------------------------------------------------------


def test_json_round_shape():
    u, v, w = u_v_w(4)
    s = u * v - w.scale(Q(3, 2))
    data = s.to_json()
    assert data["order"] == 4
    assert data["terms"] == [
        {"eu": 0, "ev": 0, "ew": 1, "coeff": "-3/2"},
        {"eu": 1, "ev": 1, "ew": 0, "coeff": "1"},
    ]


# -- hypothesis property tests ----------------------------------------------------------

small_rationals = st.fractions(max_numerator=9, max_denominator=7)
monomials = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2))


@st.composite
def sparse_series(draw, order=6, zero_constant=False):
    n = draw(st.integers(1, 5))
    coeffs = {}
    for _ in range(n):
        m = draw(monomials)
        if zero_constant and m == (0, 0, 0):
            continue
        q = draw(small_rationals)
        if q:
            coeffs[m] = Q(q.numerator, q.denominator)
    return QSeries.build(order, coeffs)


@settings(max_examples=60, deadline=None)
@given(sparse_series(), sparse_series(), sparse_series())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@settings(max_examples=30, deadline=None)
@given(sparse_series(zero_constant=True), sparse_series(zero_constant=True))
def test_exp_homomorphism(s, t):
    assert series_exp(s + t) == series_exp(s) * series_exp(t)


@settings(max_examples=30, deadline=None)
@given(sparse_series(), st.sampled_from([(0, 0, 1), (1, 1, 0), (1, 0, 0)]),
       sparse_series(zero_constant=True))
def test_division_recovers_quotient(q, lead, rest):
    # divisor with an isolatable lowest monomial: lead * (1 + higher terms)
    order = 6
    lead_series = QSeries.build(order, {lead: Q(1)})
    d = lead_series * (QSeries.one(order) + rest)
    if d.is_zero():
        return
    recovered = series_div_exact(q * d, d)
    assert recovered == q.truncate(recovered.order)
