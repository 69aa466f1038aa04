"""Euler-Maclaurin tail machinery for slowly convergent sums.

Two toolkits live here, both running on gmpy2.mpfr numbers inside explicit
precision contexts:

1. Pochhammer-ratio series (hypergeometric terms).  A term

       t_n = prod (a_i)_n / (n! prod (b_j)_n) * prod (n+c) / prod (n+d)

   behaves like K * n^alpha * (1 + e_1/n + e_2/n^2 + ...).  The exponent is
   elementary and the e_k come from assembling Stirling expansions of the
   log-Gamma factors; the overall scale K is *fitted* from the exactly
   computed term at the truncation point (and re-fitted at half the range,
   which doubles as an error estimate).  The tail is then a combination of
   Euler-Maclaurin power tails sum_{n>N} n^(j-alpha).

2. Partial sums of m^(-p) log^q m.  Used by the nested multiple-zeta sums:
   every level's cumulative sum has an asymptotic expansion in the basis
   m^(-p) log^q m (plus a constant, fitted from the exact table at m = N).
   The structural coefficient tables are exact rationals, cached, and
   include the Bernoulli correction terms to a configurable order.
"""

import functools
from fractions import Fraction
from math import comb, factorial

import gmpy2
import mpmath as mp

from .precision import from_mpfr, to_mpfr


class ToleranceNotReached(ArithmeticError):
    """Adaptive summation hit its cap before the requested accuracy."""

    def __init__(self, message, value=None, achieved=None, n_used=None):
        super().__init__(message)
        self.value = value
        self.achieved = achieved
        self.n_used = n_used


@functools.lru_cache(maxsize=None)
def bernoulli_fraction(n):
    p, q = mp.bernfrac(n)
    return Fraction(int(p), int(q))


def _frac_to_mpfr(fr):
    return gmpy2.mpfr(fr.numerator) / gmpy2.mpfr(fr.denominator)


# ---------------------------------------------------------------------------
# Part 1: Pochhammer-ratio term asymptotics and tails
# ---------------------------------------------------------------------------


def power_tail(s, N, jmax=8):
    """sum_{n>N} n^(-s) for real s > 1 via Euler-Maclaurin.

    Returns (value, last_term_magnitude); uses the ambient gmpy2 context.
    """
    N = gmpy2.mpfr(N)
    lnN = gmpy2.log(N)
    npow_1ms = gmpy2.exp((1 - s) * lnN)  # N^(1-s)
    invN = 1 / N
    total = npow_1ms / (s - 1)
    f = npow_1ms * invN  # N^(-s)
    total -= f / 2
    # + sum_j B_2j/(2j)! (s)_{2j-1} N^(-s-2j+1)
    poch = s  # (s)_1
    npow = f * N  # N^{-s+1}; term j uses N^(-s-2j+1)
    last = abs(f) / 2
    for j in range(1, jmax + 1):
        npow = npow * invN * invN
        b = _frac_to_mpfr(bernoulli_fraction(2 * j) / factorial(2 * j))
        term = b * poch * npow
        total += term
        last = abs(term)
        # advance (s)_{2j-1} -> (s)_{2j+1}
        poch = poch * (s + 2 * j - 1) * (s + 2 * j)
    return total, last


class _DenseSeries:
    """Tiny dense series in x = 1/n with mpfr coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = list(coeffs)

    @classmethod
    def zero(cls, nterms):
        return cls([gmpy2.mpfr(0)] * nterms)

    def add_inplace(self, other, scale=None):
        for i, x in enumerate(other.c):
            self.c[i] += x if scale is None else scale * x
        return self

    def mul(self, other):
        n = len(self.c)
        out = [gmpy2.mpfr(0)] * n
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j in range(n - i):
                b = other.c[j]
                if b != 0:
                    out[i + j] += a * b
        return _DenseSeries(out)

    def exp(self):
        """exp of a series with zero constant term."""
        n = len(self.c)
        e = [gmpy2.mpfr(0)] * n
        e[0] = gmpy2.mpfr(1)
        for k in range(1, n):
            acc = gmpy2.mpfr(0)
            for j in range(1, k + 1):
                if self.c[j] != 0:
                    acc += j * self.c[j] * e[k - j]
            e[k] = acc / k
        return _DenseSeries(e)


def _log1p_series(theta, nterms):
    """log(1 + theta*x) without the constant term."""
    c = [gmpy2.mpfr(0)] * nterms
    tp = gmpy2.mpfr(1)
    for j in range(1, nterms):
        tp *= theta
        c[j] = tp / j if j % 2 == 1 else -tp / j
    return _DenseSeries(c)


def _binom_series(theta, power, nterms):
    """(1 + theta*x)^power for integer power (possibly negative)."""
    c = [gmpy2.mpfr(0)] * nterms
    c[0] = gmpy2.mpfr(1)
    num = gmpy2.mpfr(1)
    for i in range(1, nterms):
        num *= (power - (i - 1)) * theta
        c[i] = num / factorial(i)
    return _DenseSeries(c)


class TermAsymptotics:
    """Large-n expansion t_n ~ K n^alpha (1 + e_1/n + ...) of a term ratio."""

    def __init__(self, tops, bottoms, lin_num=(), lin_den=(), nterms=18):
        gammas = [(t, 1) for t in tops] + [(gmpy2.mpfr(1), -1)] + [(b, -1) for b in bottoms]
        alpha = sum(t for t in tops) - 1 - sum(b for b in bottoms)
        alpha += len(lin_num) - len(lin_den)
        self.alpha = gmpy2.mpfr(alpha)

        S = _DenseSeries.zero(nterms)
        for theta, sigma in gammas:
            theta = gmpy2.mpfr(theta)
            # (n + theta - 1/2) log(1 + theta/n) - theta, dropping constants:
            L = _log1p_series(theta, nterms)
            S.add_inplace(L, scale=gmpy2.mpfr(sigma) * (theta - gmpy2.mpfr(1) / 2))
            M = _DenseSeries.zero(nterms)
            tp = theta
            for j in range(1, nterms):
                tp *= theta
                M.c[j] = tp / (j + 1) if j % 2 == 0 else -tp / (j + 1)
            S.add_inplace(M, scale=gmpy2.mpfr(sigma))
            # Stirling correction sum_j B_2j/(2j(2j-1)) x^(2j-1) (1+theta x)^(1-2j)
            for j in range(1, (nterms + 1) // 2 + 1):
                deg = 2 * j - 1
                if deg >= nterms:
                    break
                coeff = _frac_to_mpfr(bernoulli_fraction(2 * j) / (2 * j * (2 * j - 1)))
                pw = _binom_series(theta, 1 - 2 * j, nterms - deg)
                for i, a in enumerate(pw.c):
                    if a != 0:
                        S.c[deg + i] += sigma * coeff * a
        for c in lin_num:
            S.add_inplace(_log1p_series(gmpy2.mpfr(c), nterms))
        for c in lin_den:
            S.add_inplace(_log1p_series(gmpy2.mpfr(c), nterms), scale=gmpy2.mpfr(-1))
        self.e = S.exp().c  # e[0] = 1

    def density(self, N):
        """n^alpha * sum_j e_j n^-j at n = N."""
        N = gmpy2.mpfr(N)
        invN = 1 / N
        base = gmpy2.exp(self.alpha * gmpy2.log(N))
        acc = gmpy2.mpfr(0)
        p = gmpy2.mpfr(1)
        for e in self.e:
            acc += e * p
            p *= invN
        return base * acc

    def tail_factor(self, N, em_terms=8):
        """sum_j e_j * sum_{n>N} n^(alpha - j); also returns an error proxy.

        The proxy combines the magnitude of the deepest retained expansion
        slot with the last Euler-Maclaurin correction terms.
        """
        total = gmpy2.mpfr(0)
        em_err = gmpy2.mpfr(0)
        deepest = gmpy2.mpfr(0)
        for j, e in enumerate(self.e):
            s = j - self.alpha
            if s <= 1:
                raise ValueError(
                    "tail exponent alpha=%s gives a divergent tail" % (self.alpha,)
                )
            pt, last = power_tail(s, N, jmax=em_terms)
            total += e * pt
            em_err += abs(e) * abs(last)
            if j == len(self.e) - 1:
                deepest = abs(e) * abs(pt)
        return total, deepest + em_err


class PochhammerSeries:
    """Adaptive summation of sum_{n>=start} t_n with asymptotic tail fitting.

    tops/bottoms are the Pochhammer parameters ((a)_n in the numerator,
    n! * (b)_n in the denominator); lin_num/lin_den multiply the n-th term
    by (n+c) or 1/(n+c).  ``tail_order`` is the number of 1/n expansion
    terms used for the tail (2 reproduces the plain two-term correction).
    """

    def __init__(self, tops, bottoms, lin_num=(), lin_den=(), start=0, precision_bits=256):
        self.prec = precision_bits
        self.work = precision_bits + 32
        with gmpy2.context(precision=self.work):
            self.tops = [to_mpfr(t, self.work) for t in tops]
            self.bottoms = [to_mpfr(b, self.work) for b in bottoms]
            self.lin_num = [to_mpfr(c, self.work) for c in lin_num]
            self.lin_den = [to_mpfr(c, self.work) for c in lin_den]
        self.start = start
        excess = sum(bottoms) + 1 - sum(tops) - len(lin_num) + len(lin_den)
        self.excess = excess

    def _term_at(self, n):
        t = gmpy2.mpfr(1)
        for a in self.tops:
            for i in range(n):
                t *= a + i
        for i in range(n):
            t /= i + 1
        for b in self.bottoms:
            for i in range(n):
                t /= b + i
        for c in self.lin_num:
            t *= c + n
        for c in self.lin_den:
            t /= c + n
        return t

    def _ratio(self, n):
        """t_{n+1} / t_n."""
        r = gmpy2.mpfr(1)
        for a in self.tops:
            r *= a + n
        r /= n + 1
        for b in self.bottoms:
            r /= b + n
        for c in self.lin_num:
            r *= (c + n + 1) / (c + n)
        for c in self.lin_den:
            r *= (c + n) / (c + n + 1)
        return r

    def sum(self, target_abs_err, tail_order=12, n_cap=10 ** 7, em_terms=8, first_checkpoint=256):
        """Return (value, error_estimate, n_used) as mpmath numbers.

        Raises ToleranceNotReached if n_cap is hit first (the exception
        carries the best value and the achieved error estimate).
        """
        with gmpy2.context(precision=self.work):
            target = to_mpfr(target_abs_err, self.work)
            asym = TermAsymptotics(
                self.tops, self.bottoms, self.lin_num, self.lin_den,
                nterms=max(2, tail_order),
            )
            n = self.start
            t = self._term_at(n)
            partial = t
            checkpoint = max(first_checkpoint, 2 * (self.start + 1))
            prev_fit = None
            best = None
            while True:
                while n < checkpoint:
                    t *= self._ratio(n)
                    n += 1
                    partial += t
                K = t / asym.density(n)
                tail_base, tail_err = asym.tail_factor(n, em_terms=em_terms)
                value = partial + K * tail_base
                err = abs(K) * tail_err
                if prev_fit is not None:
                    err += abs(K - prev_fit) * abs(tail_base)
                else:
                    err += abs(K) * abs(tail_base) / 4
                prev_fit = K
                best = (value, err, n)
                if err <= target:
                    return (
                        from_mpfr(value, self.prec),
                        from_mpfr(err, self.prec),
                        n,
                    )
                if 2 * checkpoint > n_cap:
                    raise ToleranceNotReached(
                        "needed error %s not reached within n_cap=%d (achieved %s)"
                        % (mp.nstr(from_mpfr(target, 53), 6), n_cap,
                           mp.nstr(from_mpfr(best[1], 53), 6)),
                        value=from_mpfr(best[0], self.prec),
                        achieved=from_mpfr(best[1], self.prec),
                        n_used=best[2],
                    )
                checkpoint *= 2


# ---------------------------------------------------------------------------
# Part 2: partial sums over the basis m^(-p) log(m)^q
# ---------------------------------------------------------------------------
#
# Expansions are dicts {(p, q): mpfr coefficient} describing
#     sum_{p,q} c_{p,q} m^(-p) log(m)^q
# with 0 <= p <= pmax.  A (0, 0) entry is the constant term.  Structural
# tables below are exact Fractions and cached; they encode how one level's
# expansion turns into the next level's partial-sum expansion.


def _diff_table(terms):
    """d/dx of {(p, q): Fraction} in the same basis."""
    out = {}
    for (p, q), c in terms.items():
        if p:
            key = (p + 1, q)
            out[key] = out.get(key, Fraction(0)) - p * c
        if q:
            key = (p + 1, q - 1)
            out[key] = out.get(key, Fraction(0)) + q * c
    return {k: v for k, v in out.items() if v}


@functools.lru_cache(maxsize=None)
def _integral_nonconst(p, q):
    """Non-constant part of int_1^m x^(-p) log(x)^q dx, p >= 1."""
    if p == 1:
        return ((0, q + 1), Fraction(1, q + 1)),
    # int x^-p log^q = -m^(1-p) log^q m/(p-1) + q/(p-1) * int x^-p log^(q-1)
    out = {(p - 1, q): Fraction(-1, p - 1)}
    if q:
        for key, c in _integral_nonconst(p, q - 1):
            out[key] = out.get(key, Fraction(0)) + Fraction(q, p - 1) * c
    return tuple(sorted(out.items()))


@functools.lru_cache(maxsize=None)
def partial_sum_table(alpha, q, pmax, em_order):
    """Non-constant expansion of sum_{m'<=m} m'^(-alpha) log(m')^q.

    Euler-Maclaurin: integral + f(m)/2 + sum_j B_2j/(2j)! f^(2j-1)(m),
    truncated to basis powers p <= pmax.  Returns a tuple of
    ((p, q), Fraction) pairs plus a marker row for the first dropped
    correction order (used for error estimates).
    """
    if alpha < 1:
        raise ValueError("summand must decay: alpha >= 1")
    out = {}
    for key, c in _integral_nonconst(alpha, q):
        if key[0] <= pmax:
            out[key] = out.get(key, Fraction(0)) + c
    if alpha <= pmax:
        out[(alpha, q)] = out.get((alpha, q), Fraction(0)) + Fraction(1, 2)
    d = _diff_table({(alpha, q): Fraction(1)})  # f'
    for j in range(1, em_order + 1):
        if not d or min(p for p, _ in d) > pmax:
            break
        b = bernoulli_fraction(2 * j) / Fraction(factorial(2 * j))
        for (p, qq), c in d.items():
            if p <= pmax:
                out[(p, qq)] = out.get((p, qq), Fraction(0)) + b * c
        d = _diff_table(_diff_table(d))  # f^(2j-1) -> f^(2j+1)
    return tuple(sorted((k, v) for k, v in out.items() if v))


@functools.lru_cache(maxsize=None)
def shift_minus_one_table(p, q, pmax):
    """(m-1)^(-p) log(m-1)^q re-expanded at m, truncated to powers <= pmax.

    Uses (m-1)^(-p) = m^-p sum_i C(p+i-1, i) m^-i and
    log(m-1) = log m - sum_{i>=1} m^-i / i.
    """
    jmax = pmax - p
    if jmax < 0:
        return ()
    # powers of  s = sum_{i>=1} m^-i / i  up to degree jmax
    s = [Fraction(0)] * (jmax + 1)
    for i in range(1, jmax + 1):
        s[i] = Fraction(1, i)
    spow = [[Fraction(0)] * (jmax + 1) for _ in range(q + 1)]
    spow[0][0] = Fraction(1)
    for k in range(1, q + 1):
        for i in range(jmax + 1):
            acc = Fraction(0)
            for t in range(i + 1):
                acc += spow[k - 1][t] * s[i - t]
            spow[k][i] = acc
    out = {}
    for i in range(jmax + 1):
        binom_c = Fraction(comb(p + i - 1, i)) if p > 0 else (Fraction(1) if i == 0 else Fraction(0))
        if binom_c == 0:
            continue
        # log(m-1)^q = sum_k C(q,k) (log m)^(q-k) (-s)^k
        for k in range(q + 1):
            sign = Fraction((-1) ** k) * comb(q, k)
            for t, sc in enumerate(spow[k]):
                if sc == 0 or p + i + t > pmax:
                    continue
                key = (p + i + t, q - k)
                out[key] = out.get(key, Fraction(0)) + sign * sc * binom_c
    return tuple(sorted((k, v) for k, v in out.items() if v))


def apply_shift_minus_one(expansion, pmax):
    """Re-expand an {(p,q): mpfr} expansion of A(m) as A(m-1) at m."""
    out = {}
    for (p, q), c in expansion.items():
        if p == 0 and q == 0:
            out[(0, 0)] = out.get((0, 0), gmpy2.mpfr(0)) + c
            continue
        for key, fr in shift_minus_one_table(p, q, pmax):
            out[key] = out.get(key, gmpy2.mpfr(0)) + c * _frac_to_mpfr(fr)
    return {k: v for k, v in out.items() if v != 0}


def level_expansion(inner, k, pmax, em_order):
    """Non-constant expansion of sum_{m'<=m} m'^(-k) * inner(m')."""
    out = {}
    for (p, q), c in inner.items():
        alpha = p + k
        if alpha > pmax + 1:
            continue
        for (key, fr) in partial_sum_table(alpha, q, pmax, em_order):
            out[key] = out.get(key, gmpy2.mpfr(0)) + c * _frac_to_mpfr(fr)
    return {key: v for key, v in out.items() if v != 0}


def eval_expansion(expansion, m, skip_constant=False):
    """Evaluate an {(p,q): mpfr} expansion at integer m."""
    m = gmpy2.mpfr(m)
    lnm = gmpy2.log(m)
    invm = 1 / m
    total = gmpy2.mpfr(0)
    for (p, q), c in expansion.items():
        if skip_constant and p == 0 and q == 0:
            continue
        total += c * invm ** p * lnm ** q
    return total


def expansion_resolution(expansion, m, pmax):
    """Magnitude of the deepest retained powers at m: the error floor proxy."""
    m = gmpy2.mpfr(m)
    lnm = gmpy2.log(m)
    acc = gmpy2.mpfr(0)
    for (p, q), c in expansion.items():
        if p >= pmax:
            acc += abs(c) * m ** (-p) * lnm ** q
    return acc * lnm
