"""Seeded rejection samplers for the verification suites.

All identity checks run on real (u, v, t) with |u|,|v|,|t| <= 1/4; points
are rejected when any of u, v, u-v, a-b, ab, u+a, u+b (with a, b the
difference-equation roots) falls within the margin of zero, which keeps
every Gamma/digamma argument and trigonometric denominator safely away
from poles.  Truncated-generating-function comparisons use a smaller box,
since the weight-truncation error grows quickly with the point size.
"""

import math
import random
from fractions import Fraction

import mpmath as mp

DEFAULT_BOX = 0.25
TRUNCATION_BOX = 0.15
DEFAULT_MARGIN = 1e-3


class PointSampler:
    def __init__(self, seed=0, box=DEFAULT_BOX, margin=DEFAULT_MARGIN):
        self.rng = random.Random(seed)
        self.box = box
        self.margin = margin

    # -- (u, v, t) triples -----------------------------------------------------

    def _uvt_ok(self, u, v, t):
        m = self.margin
        disc = (u + v) ** 2 + 4 * t * t
        sq = math.sqrt(disc)
        a = (-u + v + sq) / 2
        b = (-u + v - sq) / 2
        checks = (u, v, u - v, a - b, u * v + t * t, u + a, u + b)
        return all(abs(x) >= m for x in checks)

    def uvt(self, count, box=None):
        """Admissible (u, v, t) triples as exact-binary mpf values."""
        box = box or self.box
        out = []
        while len(out) < count:
            u = self.rng.uniform(-box, box)
            v = self.rng.uniform(-box, box)
            t = self.rng.uniform(-box, box)
            if self._uvt_ok(u, v, t):
                out.append((mp.mpf(u), mp.mpf(v), mp.mpf(t)))
        return out

    def uvt_truncation(self, count):
        """Smaller-box points for definition-vs-formula comparisons."""
        return self.uvt(count, box=TRUNCATION_BOX)

    def uv_pairs(self, count, box=None):
        """(u, v) pairs for the height-one identity (t = 0)."""
        box = box or self.box
        out = []
        while len(out) < count:
            u = self.rng.uniform(-box, box)
            v = self.rng.uniform(-box, box)
            if self._uvt_ok(u, v, 0.0) and abs(u + v) >= self.margin:
                out.append((mp.mpf(u), mp.mpf(v)))
        return out

    # -- hypergeometric parameters ----------------------------------------------

    def _off_integers(self, x):
        return abs(x - round(x)) >= self.margin

    def hyper32(self, count):
        """3F2 parameter tuples satisfying both transformation hypotheses."""
        out = []
        while len(out) < count:
            tops = [self.rng.uniform(-0.25, 0.25) for _ in range(3)]
            bottoms = [self.rng.uniform(0.5, 1.5) for _ in range(2)]
            a1, a2, a3 = tops
            b1, b2 = bottoms
            excess = b1 + b2 - a1 - a2 - a3
            if excess < self.margin:
                continue
            if a3 - b1 + 1 < self.margin:  # two-term transformation hypothesis
                continue
            if b2 - a3 < self.margin:  # one-term transformation hypothesis
                continue
            if not all(abs(t) >= self.margin for t in tops):
                continue
            if not self._off_integers(a1 + a2 - b1):
                continue
            if not all(self._off_integers(x) for x in (b1 - a1, b1 - a2, b2 - a3)):
                continue
            out.append((tuple(mp.mpf(t) for t in tops), tuple(mp.mpf(b) for b in bottoms)))
        return out

    def prop31_abc(self, count):
        """(a, b, c) triples inside the digamma-limit proposition's domain."""
        out = []
        while len(out) < count:
            a = self.rng.uniform(-0.25, 0.25)
            b = self.rng.uniform(-0.25, 0.25)
            c = self.rng.uniform(-0.25, 0.25)
            checks = (a, b, a + b, 1 + c - a, 1 + c - b, 1 + c - a - b)
            if all(abs(x) >= self.margin and self._off_integers(x) for x in checks):
                out.append((mp.mpf(a), mp.mpf(b), mp.mpf(c)))
        return out

    def rational_quadruples(self, count, denom_bound=40):
        """Exact rationals (n, a, b, u) for the partial-fraction identity."""
        out = []
        while len(out) < count:
            n = Fraction(self.rng.randint(1, 50))
            a = Fraction(self.rng.randint(-30, 30), self.rng.randint(1, denom_bound))
            b = Fraction(self.rng.randint(-30, 30), self.rng.randint(1, denom_bound))
            u = Fraction(self.rng.randint(-30, 30), self.rng.randint(1, denom_bound))
            v = u + a + b
            if 0 in (u + b, n + a - b, n + u + a) or v == 0:
                continue
            out.append((n, a, b, u))
        return out
