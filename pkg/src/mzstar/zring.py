"""Graded polynomial ring of zeta constants.

Elements are exact-rational polynomials in the generators

    gamma, zeta(2), zeta(3), ..., zeta(max_zeta)

with gamma carrying weight 1 and zeta(n) carrying weight n.  An optional
extra generator ``pi2`` (weight 2, rendered as pi^2) is available for
pipelines that track powers of pi separately before rewriting them via
pi^2 = 6*zeta(2); final results are expected to be free of both gamma
and pi2.

Even zeta values are kept as independent generators: zeta(4) is *not*
normalised to a multiple of zeta(2)^2.  A display-only rewrite is offered
by :func:`even_zeta_display` and is numerically re-verified every time it
is applied.
"""

import mpmath as mp

from .rational import rational, is_rational, as_fraction

_GAMMA_SYMBOL = "γ"
_PI2_SYMBOL = "π²"


def zeta_even_over_pi_power(k):
    """The exact rational zeta(2k) / pi^(2k) = (-1)^(k+1) B_{2k} 2^(2k-1) / (2k)!."""
    import math

    if k < 1:
        raise ValueError("k must be >= 1")
    p, q = mp.bernfrac(2 * k)
    sign = 1 if k % 2 == 1 else -1
    return rational(sign * int(p) * 2 ** (2 * k - 1), int(q) * math.factorial(2 * k))


class ZetaRing:
    """Ring context: fixes the generator list and the weight grading."""

    def __init__(self, max_zeta=12, with_pi2=False):
        if max_zeta < 2:
            raise ValueError("max_zeta must be at least 2")
        self.max_zeta = max_zeta
        self.with_pi2 = with_pi2
        names = ["gamma"]
        weights = [1]
        if with_pi2:
            names.append("pi2")
            weights.append(2)
        self._zeta_offset = len(names)
        for n in range(2, max_zeta + 1):
            names.append("zeta%d" % n)
            weights.append(n)
        self.names = tuple(names)
        self.weights = tuple(weights)
        self.ngens = len(names)
        self._zero_exps = (0,) * self.ngens

    # -- element constructors -------------------------------------------------

    def zero(self):
        return ZetaPoly(self, {})

    def one(self):
        return self.const(1)

    def const(self, q):
        q = q if is_rational(q) else rational(q)
        q = rational(q)
        if q == 0:
            return self.zero()
        return ZetaPoly(self, {self._zero_exps: q})

    def gen(self, index):
        exps = list(self._zero_exps)
        exps[index] = 1
        return ZetaPoly(self, {tuple(exps): rational(1)})

    def gamma(self):
        return self.gen(0)

    def pi2(self):
        if not self.with_pi2:
            raise ValueError("ring was built without the pi2 generator")
        return self.gen(1)

    def zeta(self, n):
        if not 2 <= n <= self.max_zeta:
            raise ValueError("zeta(%d) is outside this ring (max %d)" % (n, self.max_zeta))
        return self.gen(self._zeta_offset + n - 2)

    def zeta_index(self, n):
        return self._zeta_offset + n - 2

    def term_weight(self, exps):
        return sum(e * w for e, w in zip(exps, self.weights))

    def compatible(self, other):
        return (
            isinstance(other, ZetaRing)
            and other.max_zeta == self.max_zeta
            and other.with_pi2 == self.with_pi2
        )

    def generator_values(self, precision_bits):
        """Numeric generator values at the working precision (with guard bits)."""
        with mp.workprec(precision_bits + 16):
            vals = [+mp.euler]
            if self.with_pi2:
                vals.append(mp.pi ** 2)
            for n in range(2, self.max_zeta + 1):
                vals.append(+mp.zeta(n))
        return vals

    def __repr__(self):
        tag = ", pi2" if self.with_pi2 else ""
        return "ZetaRing(gamma%s, zeta(2..%d))" % (tag, self.max_zeta)


class ZetaPoly:
    """Exact polynomial in the ring's generators; immutable value object."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms  # dict: exponent tuple -> nonzero rational

    # -- ring arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, ZetaPoly):
            if other.ring is self.ring or self.ring.compatible(other.ring):
                return other
            raise ValueError("ZetaPoly operands come from incompatible rings")
        if is_rational(other):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            s = terms.get(exps, 0) + c
            if s == 0:
                terms.pop(exps, None)
            else:
                terms[exps] = s
        return ZetaPoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return ZetaPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_rational(other):
            if other == 0:
                return self.ring.zero()
            q = rational(other)
            return ZetaPoly(self.ring, {e: c * q for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(key, 0) + c1 * c2
                if s == 0:
                    terms.pop(key, None)
                else:
                    terms[key] = s
        return ZetaPoly(self.ring, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if is_rational(other):
            if other == 0:
                raise ZeroDivisionError("division of ZetaPoly by zero rational")
            inv = rational(1) / rational(other)
            return self * inv
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("ZetaPoly powers must be nonnegative integers")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if is_rational(other):
            other = self.ring.const(other)
        if not isinstance(other, ZetaPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- structure queries ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_gamma_free(self):
        return all(e[0] == 0 for e in self.terms)

    def is_pi2_free(self):
        if not self.ring.with_pi2:
            return True
        return all(e[1] == 0 for e in self.terms)

    def constant_part(self):
        return self.terms.get(self.ring._zero_exps, rational(0))

    def weights(self):
        return sorted({self.ring.term_weight(e) for e in self.terms})

    def weight_decompose(self):
        """Split into weight-homogeneous components: weight -> ZetaPoly."""
        parts = {}
        for e, c in self.terms.items():
            w = self.ring.term_weight(e)
            parts.setdefault(w, {})[e] = c
        return {w: ZetaPoly(self.ring, t) for w, t in sorted(parts.items())}

    def is_homogeneous(self, weight=None):
        ws = self.weights()
        if not ws:
            return True
        if len(ws) > 1:
            return False
        return weight is None or ws[0] == weight

    def min_pi2_degree(self):
        if not self.ring.with_pi2:
            return 0
        if not self.terms:
            return 0
        return min(e[1] for e in self.terms)

    # -- special exact operations ---------------------------------------------

    def div_pi2(self):
        """Exact division by the pi2 generator; every term must contain it."""
        if not self.ring.with_pi2:
            raise ValueError("ring has no pi2 generator")
        terms = {}
        for e, c in self.terms.items():
            if e[1] < 1:
                raise ValueError("ZetaPoly term %r is not divisible by pi2" % (e,))
            key = e[:1] + (e[1] - 1,) + e[2:]
            terms[key] = c
        return ZetaPoly(self.ring, terms)

    def subs_pi2(self):
        """Rewrite every pi2 power via pi^2 = 6*zeta(2)."""
        if not self.ring.with_pi2:
            return self
        six_zeta2 = self.ring.zeta(2) * 6
        out = self.ring.zero()
        powers = {0: self.ring.one()}
        for e, c in self.terms.items():
            k = e[1]
            if k not in powers:
                powers[k] = six_zeta2 ** k
            stripped = ZetaPoly(self.ring, {e[:1] + (0,) + e[2:]: c})
            out = out + stripped * powers[k]
        return out

    def canonicalize_pi2(self):
        """Rewrite pi2^b as the single generator zeta(2b) per term.

        Uses pi^(2b) = zeta(2b) / r_b with r_b the exact Bernoulli-number
        rational; the result carries at most one even-zeta generator per
        term, so e.g. a pure pi^4 content becomes the generator zeta(4)
        rather than a zeta(2)^2 multiple.
        """
        if not self.ring.with_pi2:
            return self
        out_terms = {}
        for e, c in self.terms.items():
            b = e[1]
            key = e[:1] + (0,) + e[2:]
            if b:
                if 2 * b > self.ring.max_zeta:
                    raise ValueError(
                        "canonicalizing pi2^%d needs zeta(%d) beyond the ring" % (b, 2 * b)
                    )
                idx = self.ring.zeta_index(2 * b)
                key = key[:idx] + (key[idx] + 1,) + key[idx + 1 :]
                c = c / zeta_even_over_pi_power(b)
            s = out_terms.get(key, 0) + c
            if s == 0:
                out_terms.pop(key, None)
            else:
                out_terms[key] = s
        return ZetaPoly(self.ring, out_terms)

    # -- numerics ---------------------------------------------------------------

    def eval(self, precision_bits=256, generator_values=None):
        """Numeric value as an mpmath mpf at the requested precision."""
        if precision_bits < 64:
            raise ValueError("precision_bits must be >= 64")
        gens = generator_values or self.ring.generator_values(precision_bits)
        with mp.workprec(precision_bits + 16):
            total = mp.mpf(0)
            for e, c in self.terms.items():
                f = as_fraction(c)
                term = mp.mpf(f.numerator) / f.denominator
                for g, k in zip(gens, e):
                    if k:
                        term *= g ** k
                total += term
        with mp.workprec(precision_bits):
            return +total

    # -- rendering --------------------------------------------------------------

    def sorted_terms(self):
        """Terms sorted canonically by (weight, exponent vector)."""
        return sorted(
            self.terms.items(), key=lambda item: (self.ring.term_weight(item[0]), item[0])
        )

    def _term_symbols(self, exps, latex=False):
        parts = []
        for i, k in enumerate(exps):
            if not k:
                continue
            name = self.ring.names[i]
            if name == "gamma":
                sym = r"\gamma" if latex else _GAMMA_SYMBOL
            elif name == "pi2":
                sym = r"\pi^{2}" if latex else _PI2_SYMBOL
            else:
                n = int(name[4:])
                sym = (r"\zeta(%d)" % n) if latex else ("ζ(%d)" % n)
            if k == 1:
                parts.append(sym)
            elif latex:
                parts.append("%s^{%d}" % (sym, k))
            else:
                parts.append("%s^%d" % (sym, k))
        return parts

    def render(self, latex=False):
        if not self.terms:
            return "0"
        chunks = []
        for exps, c in self.sorted_terms():
            f = as_fraction(c)
            sign = "-" if f < 0 else "+"
            f = abs(f)
            syms = self._term_symbols(exps, latex=latex)
            if f.denominator == 1:
                num = str(f.numerator)
                coeff = "" if (f.numerator == 1 and syms) else num
            elif latex:
                coeff = r"\frac{%d}{%d}" % (f.numerator, f.denominator)
            else:
                coeff = "%d/%d" % (f.numerator, f.denominator)
            body = ("·" if not latex else " ").join(syms) if syms else ""
            if coeff and body:
                body = coeff + ("·" if not latex else " ") + body
            elif coeff:
                body = coeff
            elif not body:
                body = "1"
            chunks.append((sign, body))
        first_sign, first_body = chunks[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in chunks[1:]:
            out += " %s %s" % (sign, body)
        return out

    def to_json(self):
        """Canonical JSON form: sorted list of {exponents, coeff} records."""
        return [
            {"exps": list(e), "coeff": str(as_fraction(c))}
            for e, c in self.sorted_terms()
        ]

    def __repr__(self):
        return "ZetaPoly(%s)" % self.render()


_EVEN_ZETA_AS_ZETA2 = {4: rational(2, 5), 6: rational(8, 35)}


def even_zeta_display(poly):
    """Display transform rewriting zeta(4), zeta(6) as powers of zeta(2).

    Uses zeta(4) = (2/5) zeta(2)^2 and zeta(6) = (8/35) zeta(2)^3, each
    re-verified numerically before use; purely presentational, the canonical
    form keeps every zeta(n) as its own generator.
    """
    ring = poly.ring
    with mp.workprec(128):
        assert mp.almosteq(mp.zeta(4), rational(2, 5) * mp.zeta(2) ** 2, rel_eps=mp.mpf(2) ** -100)
        assert mp.almosteq(mp.zeta(6), rational(8, 35) * mp.zeta(2) ** 3, rel_eps=mp.mpf(2) ** -100)
    out = ring.zero()
    z2 = ring.zeta(2)
    for e, c in poly.terms.items():
        factor = ring.const(c)
        exps = list(e)
        for n, coeff in _EVEN_ZETA_AS_ZETA2.items():
            if n > ring.max_zeta:
                continue
            idx = ring.zeta_index(n)
            k = exps[idx]
            if k:
                factor = factor * ((z2 ** (n // 2)) * coeff) ** k
                exps[idx] = 0
        out = out + factor * ZetaPoly(ring, {tuple(exps): rational(1)})
    return out
