"""Truncated power and Laurent series with absolute x-adic precision.

A series is a window of known coefficients [val, prec): orders below val are
zero, orders at or above prec are unknown.  Precision is absolute and is
propagated through every operation:

* addition: min of the precisions,
* multiplication: min(val1 + prec2, val2 + prec1),
* inversion of x^v * u: prec - 2v,
* substitution f(g): min(val(g) * prec(f), prec(g) + (val(f) - 1) * val(g)),
* p-th powers via the freshman's dream multiply precision by p.

The zero-to-precision element is stored with an empty coefficient window and
val == prec.
"""

from __future__ import annotations

from .errors import DomainError, PrecisionError


class TruncSeries:
    __slots__ = ("ring", "val", "coeffs", "prec")

    def __init__(self, ring, val, coeffs, prec, normalize=True):
        if normalize:
            coeffs = list(coeffs)
            # drop unknown orders
            if val + len(coeffs) > prec:
                del coeffs[max(0, prec - val):]
            while coeffs and not coeffs[0]:
                coeffs.pop(0)
                val += 1
            while coeffs and not coeffs[-1]:
                coeffs.pop()
            if not coeffs:
                val = prec
        self.ring = ring
        self.val = val
        self.coeffs = tuple(coeffs)
        self.prec = prec

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(ring, prec):
        return TruncSeries(ring, prec, (), prec, normalize=False)

    @staticmethod
    def one(ring, prec):
        return TruncSeries.constant(ring.one, ring, prec)

    @staticmethod
    def constant(c, ring, prec):
        if prec <= 0:
            raise PrecisionError("constant needs positive precision")
        if not c:
            return TruncSeries.zero(ring, prec)
        return TruncSeries(ring, 0, (c,), prec, normalize=False)

    @staticmethod
    def x_power(ring, k, prec):
        if k >= prec:
            raise PrecisionError("x^%d is not visible at precision %d" % (k, prec))
        return TruncSeries(ring, k, (ring.one,), prec, normalize=False)

    @staticmethod
    def from_coeffs(ring, val, coeffs, prec):
        return TruncSeries(ring, val, tuple(coeffs), prec)

    # -- queries ----------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def order(self):
        """x-adic valuation; None for the zero-to-precision element."""
        return self.val if self.coeffs else None

    def coeff(self, k):
        if k >= self.prec:
            raise PrecisionError("coefficient of x^%d beyond precision %d"
                                 % (k, self.prec))
        if k < self.val or k >= self.val + len(self.coeffs):
            return self.ring.zero
        return self.coeffs[k - self.val]

    def coeff_range(self):
        return range(self.val, self.val + len(self.coeffs))

    def leading(self):
        if not self.coeffs:
            raise DomainError("zero-to-precision series has no leading coefficient")
        return self.coeffs[0]

    def agrees_with(self, other, upto=None):
        """Equality of known coefficients up to the joint precision."""
        if other.ring is not self.ring:
            return False
        n = min(self.prec, other.prec)
        if upto is not None:
            n = min(n, upto)
        lo = min(self.val, other.val)
        for k in range(lo, n):
            if self.coeff(k) != other.coeff(k):
                return False
        return True

    # -- arithmetic -------------------------------------------------------

    def _zip(self, other):
        if isinstance(other, TruncSeries):
            if other.ring is not self.ring:
                raise DomainError("mismatched series rings")
            return other
        try:
            c = self.ring.coerce(other)
        except (DomainError, TypeError):
            return None
        return TruncSeries.constant(c, self.ring, self.prec) if c else \
            TruncSeries.zero(self.ring, self.prec)

    def __add__(self, other):
        o = self._zip(other)
        if o is None:
            return NotImplemented
        prec = min(self.prec, o.prec)
        if not self.coeffs:
            return o.truncate(prec)
        if not o.coeffs:
            return self.truncate(prec)
        lo = min(self.val, o.val)
        hi = min(prec, max(self.val + len(self.coeffs), o.val + len(o.coeffs)))
        out = [self.coeff(k) + o.coeff(k) for k in range(lo, hi)]
        return TruncSeries(self.ring, lo, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.ring, self.val, tuple(-c for c in self.coeffs),
                           self.prec, normalize=False)

    def __sub__(self, other):
        o = self._zip(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._zip(other)
        if o is None:
            return NotImplemented
        prec = min(self.val + o.prec, o.val + self.prec)
        if not self.coeffs or not o.coeffs:
            return TruncSeries.zero(self.ring, prec)
        val = self.val + o.val
        n = prec - val
        if n <= 0:
            return TruncSeries.zero(self.ring, prec)
        zero = self.ring.zero
        out = [zero] * min(n, len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            jmax = min(len(o.coeffs), len(out) - i)
            for j in range(jmax):
                b = o.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncSeries(self.ring, val, out, prec)

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply by an exact coefficient-ring element."""
        c = self.ring.coerce(c)
        if not c:
            return TruncSeries.zero(self.ring, self.prec)
        return TruncSeries(self.ring, self.val,
                           tuple(c * a for a in self.coeffs), self.prec)

    def inv(self):
        if not self.coeffs:
            raise PrecisionError("cannot invert a zero-to-precision series")
        relprec = self.prec - self.val
        if relprec < 1:
            raise PrecisionError("precision underflow in series inversion")
        try:
            lead_inv = self.coeffs[0].inv()
        except DomainError:
            raise DomainError("leading series coefficient is not a unit")
        n = relprec
        u = self.coeffs
        zero = self.ring.zero
        out = [zero] * n
        out[0] = lead_inv
        for k in range(1, n):
            acc = zero
            for j in range(1, min(k, len(u) - 1) + 1):
                if u[j] and out[k - j]:
                    acc = acc + u[j] * out[k - j]
            out[k] = -(lead_inv * acc)
        return TruncSeries(self.ring, -self.val, out, relprec - self.val)

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        if n == 0:
            return TruncSeries.one(self.ring, max(1, self.prec - self.val))
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def pth_power(self, k=1):
        """(sum c_i x^i)^(p^k) = sum c_i^(p^k) x^(i p^k); precision multiplies."""
        if k == 0:
            return self
        step = self.ring.p ** k
        prec = self.prec * step
        if not self.coeffs:
            return TruncSeries.zero(self.ring, prec)
        zero = self.ring.zero
        out = [zero] * ((len(self.coeffs) - 1) * step + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * step] = c.pth_power(k)
        return TruncSeries(self.ring, self.val * step, out, prec, normalize=False)

    def frob(self, k=1):
        e = self.ring.base_field.e
        return self.pth_power(e * k)

    def derivative(self):
        """Termwise d/dx; the integer factor is reduced into the prime field."""
        ring = self.ring
        out = []
        for i, c in enumerate(self.coeffs):
            k = self.val + i
            out.append(c * ring.from_int(k))
        val = self.val - 1
        return TruncSeries(ring, val, out, self.prec - 1)

    def truncate(self, prec):
        if prec >= self.prec:
            return self
        return TruncSeries(self.ring, min(self.val, prec), self.coeffs, prec)

    def shift(self, k):
        """Multiply by x^k (k may be negative); exact on the stored window."""
        return TruncSeries(self.ring, self.val + k, self.coeffs, self.prec + k,
                           normalize=False)

    def substitute(self, g, self_is_polynomial=False):
        """Compose: substitute the series g for x in self.

        Requires val(g) >= 1 unless self is declared an exact (Laurent)
        polynomial, in which case any invertible g works and only g's
        precision limits the result.
        """
        ring = self.ring
        if g.ring is not ring:
            raise DomainError("mismatched series rings in substitution")
        gval = g.order()
        if gval is None:
            gval = g.prec
        if gval <= 0 and not self_is_polynomial:
            raise DomainError("substitution target must have positive valuation")
        if not self.coeffs:
            if self_is_polynomial:
                raise DomainError("exact zero polynomial with no precision bound")
            return TruncSeries.zero(ring, gval * self.prec)
        if self_is_polynomial:
            certified = None
            for k in self.coeff_range():
                if k != 0 and self.coeff(k):
                    cand = g.prec + (k - 1) * gval
                    certified = cand if certified is None else min(certified, cand)
            if certified is None:
                certified = g.prec
        else:
            certified = gval * self.prec
            kmin = None
            for k in self.coeff_range():
                if k != 0 and self.coeff(k):
                    kmin = k
                    break
            if kmin is not None:
                certified = min(certified, g.prec + (kmin - 1) * gval)
        if certified < 1:
            raise PrecisionError("substitution cannot certify any precision")
        # Horner on x^(-val) * self, then scale by g^val.
        acc = TruncSeries.zero(ring, certified - min(0, self.val) * gval)
        for k in range(self.val + len(self.coeffs) - 1, self.val - 1, -1):
            acc = acc * g
            c = self.coeff(k)
            if c:
                acc = acc + TruncSeries.constant(c, ring, max(1, acc.prec))
        if self.val > 0:
            acc = acc * (g ** self.val)
        elif self.val < 0:
            acc = acc * (g.inv() ** (-self.val))
        return acc.truncate(certified)

    # -- structure checks --------------------------------------------------

    def in_subring(self, step):
        """True when every known coefficient sits in an order divisible by step."""
        for k in self.coeff_range():
            if k % step != 0 and self.coeff(k):
                return False
        return True

    def compress(self, step):
        """Rewrite a series in x^step as a series in y = x^step."""
        if not self.in_subring(step):
            raise DomainError("series does not lie in the x^%d subring" % step)
        prec = -(-self.prec // step)
        if not self.coeffs:
            return TruncSeries.zero(self.ring, prec)
        val = self.val // step
        out = [self.coeff(k * step) for k in range(val, prec)
               if k * step < self.prec]
        return TruncSeries(self.ring, val, out, prec)

    def map_coeffs(self, func, ring):
        return TruncSeries(ring, self.val, tuple(func(c) for c in self.coeffs),
                           self.prec)

    # -- misc ---------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return (other.ring is self.ring and other.val == self.val
                    and other.coeffs == self.coeffs and other.prec == self.prec)
        return NotImplemented

    def __repr__(self):
        ring = self.ring
        names = getattr(ring, "to_str", repr)
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append("(%s)*x^%d" % (names(c), self.val + i))
        body = " + ".join(parts) if parts else "0"
        return "%s + O(x^%d)" % (body, self.prec)


class SeriesRing:
    """Handle pairing a coefficient ring with a default working precision."""

    def __init__(self, ring, prec):
        self.ring = ring
        self.prec = prec
        self.p = ring.p
        self.q = ring.q
        self.zero = TruncSeries.zero(ring, prec)
        self.one = TruncSeries.one(ring, prec)

    @property
    def base_field(self):
        return self.ring.base_field

    @property
    def theta(self):
        return TruncSeries.constant(self.ring.theta, self.ring, self.prec)

    def from_int(self, n):
        return self.constant(self.ring.from_int(n))

    def constant(self, c):
        c = self.ring.coerce(c)
        if not c:
            return self.zero
        return TruncSeries.constant(c, self.ring, self.prec)

    def x(self, k=1):
        return TruncSeries.x_power(self.ring, k, self.prec)

    def coerce(self, x):
        if isinstance(x, TruncSeries) and x.ring is self.ring:
            return x
        if isinstance(x, int):
            return self.from_int(x)
        return self.constant(self.ring.coerce(x))

    def structure(self, a):
        return self.constant(self.ring.structure(a))

    def __repr__(self):
        return "%r[[x]] (prec %d)" % (self.ring, self.prec)


def newton_slopes(points):
    """Lower convex hull of (exponent, valuation) pairs.

    Returns the hull vertices in increasing exponent order; segments between
    consecutive vertices carry the slopes of the Newton polygon.
    """
    pts = sorted(points)
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # keep the hull lower-convex
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull
