"""Brute-force numerics for multiple zeta(-star) values and their sums.

A depth-n value is computed by cumulative partial sums from the innermost
index outward (cost O(n*N) instead of N^n), and every level's tail is
corrected through the Euler-Maclaurin expansion machinery in
:mod:`mzstar.tails`: each cumulative sum acquires an asymptotic expansion
in m^(-p) log(m)^q whose free constant is fitted against the exact table
at m = N.  With the default expansion depth the fitted constants are good
to roughly N^-(order+1), far below the 1e-12 default target.

The same level step run over a prefix tree of compositions produces every
height-graded sum up to a weight bound in one pass; that powers the
truncated generating-function evaluations.
"""

import itertools
from collections import namedtuple

import gmpy2
import mpmath as mp

from .precision import DomainError, from_mpfr, to_mpfr
from .report import make_report
from .tails import (
    apply_shift_minus_one,
    eval_expansion,
    expansion_resolution,
    level_expansion,
)

DEFAULT_TRUNC_N = 100_000
DEFAULT_EM_ORDER = 8
GF_TRUNC_N = 2_000
DOMAIN_BOUND = 0.25


class Composition:
    """An admissible index (k1,...,kn) with k1 >= 2 and all parts >= 1."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(int(p) for p in parts)
        if not parts or any(p < 1 for p in parts):
            raise ValueError("composition parts must be positive integers")
        if parts[0] < 2:
            raise ValueError("composition %r is not admissible (needs k1 >= 2)" % (parts,))
        self.parts = parts

    @property
    def weight(self):
        return sum(self.parts)

    @property
    def depth(self):
        return len(self.parts)

    @property
    def height(self):
        return sum(1 for p in self.parts if p >= 2)

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other):
        other_parts = other.parts if isinstance(other, Composition) else tuple(other)
        return self.parts == other_parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return "Composition(%s)" % (self.parts,)


class SumKey(namedtuple("SumKey", "k n s")):
    """Weight/depth/height key for the sums X0(k,n,s) and X0*(k,n,s)."""

    def __new__(cls, k, n, s):
        k, n, s = int(k), int(n), int(s)
        if not (s >= 1 and n >= s and k >= n + s):
            raise ValueError(
                "invalid key (k,n,s)=(%d,%d,%d): need k >= n+s and n >= s >= 1" % (k, n, s)
            )
        return super().__new__(cls, k, n, s)


def enumerate_compositions(key):
    """All admissible compositions of weight k, depth n, height s, in lex order."""
    key = SumKey(*key)
    out = []

    def rec(prefix, remaining_w, remaining_n, remaining_s, first):
        if remaining_n == 0:
            if remaining_w == 0 and remaining_s == 0:
                out.append(Composition(prefix))
            return
        low = 2 if first else 1
        for p in range(low, remaining_w + 1):
            tall = 1 if p >= 2 else 0
            if remaining_s - tall < 0:
                continue
            # the rest needs >= 1 each plus one extra per remaining tall slot
            if remaining_w - p < (remaining_n - 1) + (remaining_s - tall):
                continue
            rec(prefix + (p,), remaining_w - p, remaining_n - 1, remaining_s - tall, False)

    rec((), key.k, key.n, key.s, True)
    return out


NumericResult = namedtuple("NumericResult", "value error_estimate n_terms precision_bits")


# -- level kernel -------------------------------------------------------------------

_INVPOW_CACHE = {"key": None, "tables": {}}


def _invpow(k, N, work):
    """[0, 1/1^k, 1/2^k, ..., 1/N^k] as mpfr at the working precision."""
    cache_key = (N, work)
    if _INVPOW_CACHE["key"] != cache_key:
        _INVPOW_CACHE["key"] = cache_key
        _INVPOW_CACHE["tables"] = {}
    tables = _INVPOW_CACHE["tables"]
    if k not in tables:
        one = gmpy2.mpfr(1)
        tables[k] = [gmpy2.mpfr(0)] + [one / gmpy2.mpz(m) ** k for m in range(1, N + 1)]
    return tables[k]


def _level_step(k, star, prev_table, prev_exp, N, pmax, em_order, work):
    """One cumulative-sum level: returns (table, expansion-with-constant)."""
    inv = _invpow(k, N, work)
    T = [gmpy2.mpfr(0)] * (N + 1)
    acc = gmpy2.mpfr(0)
    if prev_table is None:
        for m in range(1, N + 1):
            acc += inv[m]
            T[m] = acc
    elif star:
        for m in range(1, N + 1):
            acc += inv[m] * prev_table[m]
            T[m] = acc
    else:
        for m in range(1, N + 1):
            acc += inv[m] * prev_table[m - 1]
            T[m] = acc
    inner = prev_exp if star or prev_table is None else apply_shift_minus_one(prev_exp, pmax)
    nonconst = level_expansion(inner, k, pmax, em_order)
    c = T[N] - eval_expansion(nonconst, N)
    expansion = dict(nonconst)
    expansion[(0, 0)] = expansion.get((0, 0), gmpy2.mpfr(0)) + c
    return T, expansion


def _nested_sum(parts, star, precision_bits, trunc_N, em_order):
    """Core evaluation; returns (value mpfr, error mpfr) at work precision."""
    work = precision_bits + 32
    pmax = em_order
    with gmpy2.context(precision=work):
        table, exp = None, {(0, 0): gmpy2.mpfr(1)}
        err = gmpy2.mpfr(0)
        for k in reversed(parts):
            table, exp = _level_step(k, star, table, exp, trunc_N, pmax, em_order, work)
            err += expansion_resolution(exp, trunc_N, pmax)
        return exp[(0, 0)], err


def mzv_numeric(composition, precision_bits=256, trunc_N=DEFAULT_TRUNC_N, em_order=DEFAULT_EM_ORDER):
    """Multiple zeta value of an admissible composition (strict indices)."""
    comp = composition if isinstance(composition, Composition) else Composition(composition)
    value, err = _nested_sum(comp.parts, False, precision_bits, trunc_N, em_order)
    return NumericResult(
        from_mpfr(value, precision_bits), from_mpfr(err, precision_bits), trunc_N, precision_bits
    )


def mzsv_numeric(composition, precision_bits=256, trunc_N=DEFAULT_TRUNC_N, em_order=DEFAULT_EM_ORDER):
    """Multiple zeta-star value of an admissible composition (weak indices)."""
    comp = composition if isinstance(composition, Composition) else Composition(composition)
    value, err = _nested_sum(comp.parts, True, precision_bits, trunc_N, em_order)
    return NumericResult(
        from_mpfr(value, precision_bits), from_mpfr(err, precision_bits), trunc_N, precision_bits
    )


def x_sum(key, precision_bits=256, trunc_N=DEFAULT_TRUNC_N, em_order=DEFAULT_EM_ORDER, star=False):
    """X0(k,n,s) (star=False) or X0*(k,n,s) (star=True) by direct summation."""
    key = SumKey(*key)
    work = precision_bits + 32
    with gmpy2.context(precision=work):
        total = gmpy2.mpfr(0)
        err = gmpy2.mpfr(0)
        for comp in enumerate_compositions(key):
            v, e = _nested_sum(comp.parts, star, precision_bits, trunc_N, em_order)
            total += v
            err += e
    return NumericResult(
        from_mpfr(total, precision_bits), from_mpfr(err, precision_bits), trunc_N, precision_bits
    )


def x_star_sum(key, precision_bits=256, trunc_N=DEFAULT_TRUNC_N, em_order=DEFAULT_EM_ORDER):
    return x_sum(key, precision_bits, trunc_N, em_order, star=True)


# -- all height-graded sums up to a weight bound -------------------------------------

_ALL_SUMS_CACHE = {}


def all_height_sums(max_weight, star=True, precision_bits=256, trunc_N=GF_TRUNC_N,
                    em_order=DEFAULT_EM_ORDER):
    """Every X0(*) (k,n,s) with k <= max_weight, as {SumKey: (value, err)}.

    One depth-first pass over the suffix tree of compositions; each tree edge
    is a single cumulative-sum level, so suffixes shared between compositions
    are computed once.
    """
    cache_key = (max_weight, star, precision_bits, trunc_N, em_order)
    if cache_key in _ALL_SUMS_CACHE:
        return _ALL_SUMS_CACHE[cache_key]
    work = precision_bits + 32
    pmax = em_order
    sums = {}
    with gmpy2.context(precision=work):
        def record(first_part, weight, depth, height, expansion):
            key = SumKey(weight, depth, height)
            c = expansion[(0, 0)]
            e = expansion_resolution(expansion, trunc_N, pmax)
            if key in sums:
                v0, e0 = sums[key]
                sums[key] = (v0 + c, e0 + e)
            else:
                sums[key] = (c, e)

        def walk(table, expansion, weight, depth, height):
            budget = max_weight - weight
            for p in range(1, budget + 1):
                if p == 1 and weight + 1 + 2 > max_weight:
                    # a leading 1 is inadmissible and can only be saved by
                    # prepending another part of weight >= 2
                    continue
                t2, e2 = _level_step(p, star, table, expansion, trunc_N, pmax, em_order, work)
                w2 = weight + p
                d2 = depth + 1
                h2 = height + (1 if p >= 2 else 0)
                if p >= 2:
                    record(p, w2, d2, h2, e2)
                if w2 < max_weight:
                    walk(t2, e2, w2, d2, h2)

        walk(None, {(0, 0): gmpy2.mpfr(1)}, 0, 0, 0)
        out = {
            key: (from_mpfr(v, precision_bits), from_mpfr(e, precision_bits))
            for key, (v, e) in sums.items()
        }
    _ALL_SUMS_CACHE[cache_key] = out
    return out


def _check_domain(u, v, t):
    if max(abs(u), abs(v), abs(t)) > DOMAIN_BOUND:
        raise DomainError("(u,v,t) outside the |.| <= 1/4 sampling domain")


def phi_star_truncated(u, v, t, max_weight=14, precision_bits=256, trunc_N=GF_TRUNC_N):
    """Weight-truncated generating function of the zeta-star height sums.

    sum over k <= max_weight of X0*(k,n,s) u^(k-n-s) v^(n-s) t^(2s-2);
    returns (value, tail_estimate) where the tail estimate is the crude
    geometric extrapolation of the top weight shell.
    """
    u = mp.mpf(u); v = mp.mpf(v); t = mp.mpf(t)
    _check_domain(u, v, t)
    sums = all_height_sums(max_weight, True, precision_bits, trunc_N)
    with mp.workprec(precision_bits + 16):
        total = mp.mpf(0)
        shell = mp.mpf(0)
        t2 = t * t
        for key, (val, _err) in sorted(sums.items()):
            term = val * u ** (key.k - key.n - key.s) * v ** (key.n - key.s) * t2 ** (key.s - 1)
            total += term
            if key.k == max_weight:
                shell += abs(term)
        r = max(abs(u), abs(v), abs(t))
        tail = shell * r / (1 - r) if r > 0 else mp.mpf(0)
    with mp.workprec(precision_bits):
        return +total, +tail


def phi_nonstar_truncated(u, v, t, max_weight=12, precision_bits=256, trunc_N=GF_TRUNC_N):
    """Weight-truncated Ohno-Zagier generating function (note: t^(s-1))."""
    u = mp.mpf(u); v = mp.mpf(v); t = mp.mpf(t)
    sums = all_height_sums(max_weight, False, precision_bits, trunc_N)
    with mp.workprec(precision_bits + 16):
        total = mp.mpf(0)
        shell = mp.mpf(0)
        for key, (val, _err) in sorted(sums.items()):
            term = val * u ** (key.k - key.n - key.s) * v ** (key.n - key.s) * t ** (key.s - 1)
            total += term
            if key.k == max_weight:
                shell += abs(term)
        r = max(abs(u), abs(v), abs(t))
        tail = shell * r / (1 - r) if r > 0 else mp.mpf(0)
    with mp.workprec(precision_bits):
        return +total, +tail


def ohno_zagier_closed_form(u, v, t, precision_bits=256):
    """1/(uv-t) * (1 - exp(sum_{n>=2} zeta(n)/n (u^n + v^n - alpha^n - beta^n)))

    with alpha+beta = u+v and alpha*beta = t; the power sums alpha^n+beta^n
    run through the Newton recurrence, so everything stays real even when
    the quadratic roots are complex.
    """
    work = precision_bits + 32
    with mp.workprec(work):
        u = mp.mpf(u); v = mp.mpf(v); t = mp.mpf(t)
        if abs(u * v - t) < mp.mpf("1e-3"):
            raise DomainError("uv - t too close to zero for the closed form")
        e1, e2 = u + v, t
        # p_n = alpha^n + beta^n
        p_prev = e1
        p_curr = e1 * e1 - 2 * e2
        s = mp.zeta(2) / 2 * (u * u + v * v - p_curr)
        un, vn = u * u, v * v
        eps = mp.mpf(2) ** (-work - 8)
        n = 2
        while True:
            n += 1
            un *= u
            vn *= v
            p_next = e1 * p_curr - e2 * p_prev
            p_prev, p_curr = p_curr, p_next
            term = mp.zeta(n) / n * (un + vn - p_curr)
            s += term
            scale = max(abs(un), abs(vn), abs(p_curr))
            if scale < eps and n > 8:
                break
            if n > 64 * work:  # pragma: no cover - safety stop
                break
        value = (1 - mp.exp(s)) / (u * v - t)
    with mp.workprec(precision_bits):
        return +value


def ohno_zagier_check(u, v, t, max_weight=12, precision_bits=256, tolerance=None,
                      trunc_N=GF_TRUNC_N):
    """Truncated X0 generating function against the Ohno-Zagier closed form."""
    u = mp.mpf(u); v = mp.mpf(v); t = mp.mpf(t)
    _check_domain(u, v, t)
    lhs, tail = phi_nonstar_truncated(u, v, t, max_weight, precision_bits, trunc_N)
    rhs = ohno_zagier_closed_form(u, v, t, precision_bits)
    if tolerance is None:
        tolerance = mp.mpf("1e-4")
    return make_report(
        "ohno-zagier",
        {"u": u, "v": v, "t": t, "max_weight": max_weight},
        lhs,
        rhs,
        tolerance,
        precision_bits,
        notes={"weight_tail_estimate": tail},
    )


# -- small helpers used by property tests ---------------------------------------------


def count_admissible(k, n):
    """Number of admissible compositions of weight k and depth n (direct)."""
    count = 0
    for comp in itertools.product(range(1, k + 1), repeat=n):
        if sum(comp) == k and comp[0] >= 2:
            count += 1
    return count
