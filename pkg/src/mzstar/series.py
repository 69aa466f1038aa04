"""Truncated formal power series in (u, v, w) over exact coefficients.

The third variable w stands for t^2, so it carries degree 2 in the
truncation grading: deg(u^i v^j w^k) = i + j + 2k.  All generating-function
series of interest are even in t, and the w-encoding makes that structural
while keeping the truncation order aligned with the weight of the extracted
zeta polynomials (weight = degree + 1 for the expanded main identity).

Coefficients are either exact rationals (ring=None) or ZetaPoly elements
over an explicit ZetaRing.  Series are immutable; every operation returns a
new series truncated to the minimum order of its operands.

Representation is sparse: a dict mapping exponent triples (eu, ev, ew) to
nonzero coefficients.
"""

import heapq
import math

from .rational import rational, is_rational
from .zring import ZetaPoly, ZetaRing

VAR_NAMES = ("u", "v", "w")
VAR_DEGREES = (1, 1, 2)

ZERO_MONO = (0, 0, 0)


def mono_degree(m):
    return m[0] + m[1] + 2 * m[2]


def mono_mul(m1, m2):
    return (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])


def mono_divides(d, m):
    return d[0] <= m[0] and d[1] <= m[1] and d[2] <= m[2]


def mono_div(m, d):
    return (m[0] - d[0], m[1] - d[1], m[2] - d[2])


def grlex_key(m):
    """Graded-lexicographic sort key (degree first, then eu > ev > ew)."""
    return (mono_degree(m), m)


class RingMismatchError(TypeError):
    """Operands live over different coefficient rings."""


class NonDivisibleError(ArithmeticError):
    """Exact series division hit a monomial that cannot be eliminated."""

    def __init__(self, message, monomial=None):
        super().__init__(message)
        self.monomial = monomial


class QSeries:
    __slots__ = ("order", "coeffs", "ring")

    def __init__(self, order, coeffs, ring=None):
        self.order = order
        self.ring = ring
        self.coeffs = coeffs

    # -- constructors ---------------------------------------------------------

    @classmethod
    def build(cls, order, terms, ring=None):
        """Normalized construction from {monomial: coefficient}."""
        coeffs = {}
        for m, c in terms.items():
            if mono_degree(m) > order:
                continue
            if _is_zero_coeff(c):
                continue
            coeffs[m] = c
        return cls(order, coeffs, ring)

    @classmethod
    def zero(cls, order, ring=None):
        return cls(order, {}, ring)

    @classmethod
    def const(cls, q, order, ring=None):
        c = ring.const(q) if ring is not None else rational(q)
        return cls.build(order, {ZERO_MONO: c}, ring)

    @classmethod
    def one(cls, order, ring=None):
        return cls.const(1, order, ring)

    @classmethod
    def variable(cls, name, order, ring=None):
        idx = VAR_NAMES.index(name)
        mono = tuple(1 if i == idx else 0 for i in range(3))
        c = ring.one() if ring is not None else rational(1)
        return cls.build(order, {mono: c}, ring)

    # -- basics ---------------------------------------------------------------

    def _check_ring(self, other):
        if self.ring is None and other.ring is None:
            return
        if self.ring is not None and other.ring is not None:
            if self.ring is other.ring or self.ring.compatible(other.ring):
                return
        raise RingMismatchError(
            "series coefficient rings differ (%r vs %r)" % (self.ring, other.ring)
        )

    def with_ring(self, ring):
        """Promote a rational-coefficient series into a ZetaRing."""
        if self.ring is not None:
            if ring.compatible(self.ring):
                return self
            raise RingMismatchError("cannot convert between distinct zeta rings")
        return QSeries(self.order, {m: ring.const(c) for m, c in self.coeffs.items()}, ring)

    def coefficient(self, mono):
        c = self.coeffs.get(tuple(mono))
        if c is not None:
            return c
        return self.ring.zero() if self.ring is not None else rational(0)

    def constant_term(self):
        return self.coefficient(ZERO_MONO)

    def truncate(self, order):
        if order >= self.order:
            return self
        return QSeries(
            order, {m: c for m, c in self.coeffs.items() if mono_degree(m) <= order}, self.ring
        )

    def min_degree(self):
        if not self.coeffs:
            return None
        return min(mono_degree(m) for m in self.coeffs)

    def homogeneous_parts(self):
        """dict: degree -> {monomial: coeff}."""
        parts = {}
        for m, c in self.coeffs.items():
            parts.setdefault(mono_degree(m), {})[m] = c
        return parts

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, frozenset(self.coeffs.keys())))

    # -- ring operations --------------------------------------------------------

    def __add__(self, other):
        if is_rational(other):
            other = QSeries.const(other, self.order, self.ring)
        self._check_ring(other)
        order = min(self.order, other.order)
        coeffs = {m: c for m, c in self.coeffs.items() if mono_degree(m) <= order}
        for m, c in other.coeffs.items():
            if mono_degree(m) > order:
                continue
            s = coeffs.get(m)
            s = c if s is None else s + c
            if _is_zero_coeff(s):
                coeffs.pop(m, None)
            else:
                coeffs[m] = s
        return QSeries(order, coeffs, self.ring or other.ring)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.order, {m: -c for m, c in self.coeffs.items()}, self.ring)

    def __sub__(self, other):
        if is_rational(other):
            other = QSeries.const(other, self.order, self.ring)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, q):
        """Multiply by a scalar from the coefficient ring (or a rational)."""
        if _is_zero_coeff(q) and not isinstance(q, ZetaPoly):
            return QSeries.zero(self.order, self.ring)
        return QSeries.build(self.order, {m: c * q for m, c in self.coeffs.items()}, self.ring)

    def __mul__(self, other):
        if is_rational(other):
            return self.scale(other)
        if isinstance(other, ZetaPoly):
            return self.scale(other)
        self._check_ring(other)
        order = min(self.order, other.order)
        # iterate the sparser operand outside; prune by degree early
        a, b = self.coeffs, other.coeffs
        if len(a) > len(b):
            a, b = b, a
        b_sorted = sorted(b.items(), key=lambda item: mono_degree(item[0]))
        out = {}
        for m1, c1 in a.items():
            d1 = mono_degree(m1)
            budget = order - d1
            for m2, c2 in b_sorted:
                if mono_degree(m2) > budget:
                    break
                key = mono_mul(m1, m2)
                prod = c1 * c2
                s = out.get(key)
                s = prod if s is None else s + prod
                if _is_zero_coeff(s):
                    out.pop(key, None)
                else:
                    out[key] = s
        return QSeries(order, out, self.ring or other.ring)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("series powers must be nonnegative integers")
        result = QSeries.one(self.order, self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- exp / invert / exact division -------------------------------------------

    def exp(self):
        """exp of a series with zero constant term, exact to this order.

        Uses the graded recurrence d*E_d = sum_j j*L_j*E_{d-j} over
        homogeneous components, which costs about one full multiplication.
        """
        if not _is_zero_coeff(self.constant_term()):
            raise ValueError("series_exp requires a zero constant term")
        L = self.homogeneous_parts()
        E = {0: {ZERO_MONO: _one_coeff(self.ring)}}
        for d in range(1, self.order + 1):
            acc = {}
            for j, Lj in L.items():
                if j < 1 or j > d:
                    continue
                Ed = E.get(d - j)
                if not Ed:
                    continue
                _convolve_into(acc, Lj, Ed, scalar=rational(j))
            if acc:
                inv_d = rational(1, d)
                E[d] = {m: c * inv_d for m, c in acc.items() if not _is_zero_coeff(c)}
        out = {}
        for part in E.values():
            out.update(part)
        return QSeries(self.order, {m: c for m, c in out.items() if not _is_zero_coeff(c)}, self.ring)

    def invert(self):
        """Multiplicative inverse; requires an invertible constant term."""
        c0 = self.constant_term()
        q0 = _as_invertible_rational(c0, self.ring)
        inv0 = rational(1) / q0
        S = self.homogeneous_parts()
        I = {0: {ZERO_MONO: _one_coeff(self.ring) * inv0}}
        for d in range(1, self.order + 1):
            acc = {}
            for j, Sj in S.items():
                if j < 1 or j > d:
                    continue
                Id = I.get(d - j)
                if not Id:
                    continue
                _convolve_into(acc, Sj, Id)
            if acc:
                neg_inv0 = -inv0
                part = {m: c * neg_inv0 for m, c in acc.items() if not _is_zero_coeff(c)}
                if part:
                    I[d] = part
        out = {}
        for part in I.values():
            out.update(part)
        return QSeries(self.order, out, self.ring)

    def div_exact(self, divisor):
        """Exact division by a series with a well-defined lowest pivot term.

        Eliminates monomials in increasing graded-lex order against the
        divisor's lowest term; raises NonDivisibleError if any remaining
        monomial within resolution cannot be eliminated.  The quotient's
        order drops by the pivot degree.
        """
        self._check_ring(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("exact division by the zero series")
        pivot = min(divisor.coeffs, key=grlex_key)
        pivot_deg = mono_degree(pivot)
        pivot_coeff = _as_invertible_rational(divisor.coeffs[pivot], divisor.ring)
        inv_pivot = rational(1) / pivot_coeff
        qorder = min(self.order, divisor.order) - pivot_deg
        rest = [(m, c) for m, c in divisor.coeffs.items() if m != pivot]

        rem = dict(self.coeffs)
        heap = [grlex_key(m) for m in rem]
        heapq.heapify(heap)
        quotient = {}
        while heap:
            key = heapq.heappop(heap)
            mu = key[1]
            c = rem.pop(mu, None)
            if c is None or _is_zero_coeff(c):
                continue
            if not mono_divides(pivot, mu):
                raise NonDivisibleError(
                    "monomial u^%d v^%d w^%d is not divisible by the pivot "
                    "u^%d v^%d w^%d" % (*mu, *pivot),
                    monomial=mu,
                )
            qm = mono_div(mu, pivot)
            qc = c * inv_pivot
            quotient[qm] = qc
            for dm, dc in rest:
                m2 = mono_mul(qm, dm)
                if mono_degree(m2) > self.order:
                    continue
                s = rem.get(m2)
                s = (-qc * dc) if s is None else s - qc * dc
                if _is_zero_coeff(s):
                    rem.pop(m2, None)
                else:
                    rem[m2] = s
                    heapq.heappush(heap, grlex_key(m2))
        return QSeries(qorder, {m: c for m, c in quotient.items() if not _is_zero_coeff(c)}, self.ring)

    # -- coefficient-level transforms ---------------------------------------------

    def map_coefficients(self, fn, ring=None):
        out = {}
        for m, c in self.coeffs.items():
            c2 = fn(c)
            if not _is_zero_coeff(c2):
                out[m] = c2
        return QSeries(self.order, out, self.ring if ring is None else ring)

    def subs_pi2(self):
        """Rewrite pi2 -> 6 zeta(2) in every ZetaPoly coefficient."""
        return self.map_coefficients(lambda c: c.subs_pi2())

    def div_pi2(self):
        """Exact coefficient-wise division by the pi2 generator."""
        return self.map_coefficients(lambda c: c.div_pi2())

    # -- output ------------------------------------------------------------------

    def sorted_items(self):
        return sorted(self.coeffs.items(), key=lambda item: grlex_key(item[0]))

    def to_json(self):
        records = []
        for (eu, ev, ew), c in self.sorted_items():
            if isinstance(c, ZetaPoly):
                coeff = c.to_json()
            else:
                coeff = str(c)
            records.append({"eu": eu, "ev": ev, "ew": ew, "coeff": coeff})
        return {"order": self.order, "terms": records}

    def __repr__(self):
        if not self.coeffs:
            return "QSeries(0; order=%d)" % self.order
        bits = []
        for m, c in self.sorted_items()[:8]:
            mono = "·".join(
                "%s^%d" % (n, e) if e > 1 else n
                for n, e in zip(VAR_NAMES, m)
                if e
            ) or "1"
            bits.append("(%s)·%s" % (c, mono))
        suffix = " + ..." if len(self.coeffs) > 8 else ""
        return "QSeries(%s%s; order=%d)" % (" + ".join(bits), suffix, self.order)


# -- helpers --------------------------------------------------------------------


def _is_zero_coeff(c):
    if isinstance(c, ZetaPoly):
        return c.is_zero()
    return c == 0


def _one_coeff(ring):
    return ring.one() if ring is not None else rational(1)


def _as_invertible_rational(c, ring):
    """Constant coefficients must be (or reduce to) nonzero rationals."""
    if isinstance(c, ZetaPoly):
        if len(c.terms) == 1 and not c.is_zero():
            const = c.constant_part()
            if const != 0:
                return rational(const)
        if c.is_zero():
            raise ValueError("zero constant term is not invertible")
        raise ValueError("constant term %r is not a rational unit" % (c,))
    if c == 0:
        raise ValueError("zero constant term is not invertible")
    return rational(c)


def _convolve_into(acc, part1, part2, scalar=None):
    for m1, c1 in part1.items():
        for m2, c2 in part2.items():
            key = mono_mul(m1, m2)
            prod = c1 * c2
            if scalar is not None:
                prod = prod * scalar
            s = acc.get(key)
            s = prod if s is None else s + prod
            acc[key] = s


# -- named operations matching the public surface ---------------------------------


def series_add(s1, s2):
    return s1 + s2


def series_mul(s1, s2):
    return s1 * s2


def series_exp(s):
    return s.exp()


def series_invert(s):
    return s.invert()


def series_div_exact(s, d):
    return s.div_exact(d)


def power_sums(e1, e2, nmax):
    """Newton power sums p_n = a^n + b^n from e1 = a+b, e2 = ab.

    p1 = e1, p2 = e1^2 - 2 e2, p_n = e1 p_{n-1} - e2 p_{n-2}.
    """
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    p = [e1]
    if nmax >= 2:
        p.append(e1 * e1 - e2.scale(rational(2)))
    for _ in range(3, nmax + 1):
        p.append(e1 * p[-1] - e2 * p[-2])
    return p


def zeta_coefficient(ring, n):
    """zeta(n) expressed in the ring's working basis for series expansions.

    Odd n stays the generator zeta(n).  Even n = 2k is pi-power content and
    must live in the same basis as the trigonometric series for identities
    like the reflection formula to cancel exactly: it becomes r_k * pi2^k on
    rings carrying the formal pi2 generator, and r_k * (6 zeta(2))^k
    otherwise (r_k = zeta(2k)/pi^(2k), an exact Bernoulli rational).
    """
    from .zring import zeta_even_over_pi_power

    if n % 2 == 1:
        if n > ring.max_zeta:
            raise ValueError(
                "expansion needs zeta(%d) but the ring stops at zeta(%d)" % (n, ring.max_zeta)
            )
        return ring.zeta(n)
    k = n // 2
    r = zeta_even_over_pi_power(k)
    if ring.with_pi2:
        return ring.pi2() ** k * r
    return (ring.zeta(2) * 6) ** k * r


def pi_squared_coefficient(ring):
    """The series-level stand-in for pi^2: the pi2 generator or 6 zeta(2)."""
    return ring.pi2() if ring.with_pi2 else ring.zeta(2) * 6


def elementary_series(kind, x):
    """Classical series with zeta-value coefficients.

    kind:
      gamma_one_minus   Gamma(1-x) = exp(gamma*x + sum_{n>=2} zeta(n) x^n / n)
      inv_gamma_one_plus 1/Gamma(1+x) = exp(gamma*x + sum_{n>=2} (-1)^{n+1} zeta(n) x^n / n)
      sin_pi_over_pi    sin(pi x)/(pi x) as a series in x^2
      cos_pi            cos of pi*sqrt(X) where the *argument X is already
                        the squared series* (keeps coefficients in the ring)

    Even zeta values are emitted through :func:`zeta_coefficient`, so all
    pi-power content shares one basis and products like
    Gamma(1-x) Gamma(1+x) sin(pi x)/(pi x) collapse to 1 exactly.
    """
    ring = x.ring
    if ring is None:
        raise RingMismatchError("elementary_series requires ZetaPoly coefficients")
    if not _is_zero_coeff(x.constant_term()):
        raise ValueError("elementary_series requires a zero constant term")

    if kind in ("gamma_one_minus", "inv_gamma_one_plus"):
        mindeg = x.min_degree()
        if mindeg is None:
            return QSeries.one(x.order, ring)
        nmax = x.order // mindeg
        log_term = x.scale(ring.gamma())
        xn = x
        for n in range(2, nmax + 1):
            xn = xn * x
            if xn.is_zero():
                break
            coeff = zeta_coefficient(ring, n) * rational(1, n)
            if kind == "inv_gamma_one_plus" and n % 2 == 0:
                coeff = -coeff
            log_term = log_term + xn.scale(coeff)
        return log_term.exp()

    if kind == "sin_pi_over_pi":
        x2 = x * x
        return _even_pi_series(x2, offset=1)
    if kind == "cos_pi":
        return _even_pi_series(x, offset=0)
    raise ValueError("unknown elementary series kind %r" % (kind,))


def _even_pi_series(X, offset, lam=None):
    """sum_k (-1)^k lam^k X^k / (2k+offset)! with lam standing for pi^2.

    offset=0 gives cos(pi sqrt(X)); offset=1 gives sin(pi sqrt(X))/(pi sqrt(X)).
    """
    ring = X.ring
    if lam is None:
        lam = pi_squared_coefficient(ring)
    mindeg = X.min_degree()
    out = QSeries.one(X.order, ring)
    if mindeg is None:
        return out
    kmax = X.order // mindeg
    Xk = QSeries.one(X.order, ring)
    lam_k = ring.one()
    for k in range(1, kmax + 1):
        Xk = Xk * X
        if Xk.is_zero():
            break
        lam_k = lam_k * lam
        coeff = lam_k * rational((-1) ** k, math.factorial(2 * k + offset))
        out = out + Xk.scale(coeff)
    return out
