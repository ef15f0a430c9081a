"""The twisted polynomial ring B{tau} over a ring with Frobenius.

A twisted polynomial sum b_i tau^i is the additive polynomial
X -> sum b_i X^(q^i); multiplication is composition, governed by
a tau^i * b tau^j = a b^(q^i) tau^(i+j).  Only right division is provided:
the quotient step needs b^(q^s) powers of the divisor's inverted leading
coefficient, never q-th roots.
"""

from __future__ import annotations

from .errors import DomainError
from .fields import NEG_INF


class TauPoly:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs, normalize=True):
        if normalize:
            coeffs = list(coeffs)
            while coeffs and not coeffs[-1]:
                coeffs.pop()
        self.ring = ring
        self.coeffs = tuple(coeffs)

    @staticmethod
    def zero(ring):
        return TauPoly(ring, (), normalize=False)

    @staticmethod
    def one(ring):
        return TauPoly(ring, (ring.one,), normalize=False)

    @staticmethod
    def tau(ring, k=1):
        return TauPoly(ring, (ring.zero,) * k + (ring.one,), normalize=False)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero

    def leading(self):
        if not self.coeffs:
            raise DomainError("zero twisted polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return TauPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return TauPoly(self.ring, tuple(-c for c in self.coeffs), normalize=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def _coerce(self, other):
        if isinstance(other, TauPoly):
            if other.ring is not self.ring:
                raise DomainError("mismatched coefficient rings")
            return other
        try:
            c = self.ring.coerce(other)
        except (DomainError, TypeError):
            return NotImplemented
        return TauPoly(self.ring, (c,))

    def __mul__(self, other):
        """Composition product: (f*g)(X) = f(g(X))."""
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return TauPoly.zero(self.ring)
        zero = self.ring.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = out[i + j] + ai * bj.frob(i)
        return TauPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise DomainError("negative power of a twisted polynomial")
        result = TauPoly.one(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, TauPoly):
            return other.ring is self.ring and other.coeffs == self.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ring), self.coeffs))

    def __call__(self, x):
        """Evaluate the additive polynomial: sum b_i x^(q^i)."""
        if not self.coeffs:
            return x - x
        acc = None
        power = x
        for i, c in enumerate(self.coeffs):
            if i > 0:
                power = power.frob()
            if c:
                term = power.scale(c) if hasattr(power, "scale") else c * power
                acc = term if acc is None else acc + term
        if acc is None:
            return x - x
        return acc

    def twist(self, k=1):
        """Coefficientwise q^k-power; the base change along Frobenius."""
        if k < 0:
            raise DomainError("twist exponent must be nonnegative")
        if k == 0:
            return self
        return TauPoly(self.ring, tuple(c.frob(k) for c in self.coeffs))

    def scale_left(self, c):
        c = self.ring.coerce(c)
        return TauPoly(self.ring, tuple(c * b for b in self.coeffs))

    def rdivmod(self, u):
        """(s, r) with self = s*u + r and deg r < deg u.

        Requires the leading coefficient of u to be a unit.  The leading
        step solves c * lead^(q^s) = top, so only Frobenius powers of the
        inverted leading coefficient are needed.
        """
        if not isinstance(u, TauPoly) or u.ring is not self.ring:
            raise DomainError("mismatched coefficient rings in division")
        if u.is_zero():
            raise DomainError("twisted division by zero")
        try:
            lead_inv = u.leading().inv()
        except DomainError:
            raise DomainError("leading coefficient of the divisor is not a unit")
        du = u.degree
        rem = list(self.coeffs)
        if len(rem) - 1 < du:
            return TauPoly.zero(self.ring), self
        quot = [self.ring.zero] * (len(rem) - du)
        while len(rem) - 1 >= du:
            top = rem[-1]
            if not top:
                rem.pop()
                continue
            s = len(rem) - 1 - du
            c = top * lead_inv.frob(s)
            quot[s] = c
            for j, uj in enumerate(u.coeffs):
                if uj:
                    rem[s + j] = rem[s + j] - c * uj.frob(s)
            rem.pop()
        return TauPoly(self.ring, quot), TauPoly(self.ring, rem)

    def rmod(self, u):
        return self.rdivmod(u)[1]

    def map_coeffs(self, func, ring):
        return TauPoly(ring, tuple(func(c) for c in self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "TauPoly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append("(%r)tau^%d" % (c, i))
        return " + ".join(parts)
