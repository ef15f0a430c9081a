"""Exact arithmetic for small finite fields, the ring A = F_q[t], and its
quotients.

Conventions shared by the whole package:

* q = p^e is fixed once by the base field; ``frob`` always means the q-power
  map, even on extension rings where it is not the identity.
* Polynomials are dense, stored low degree first, with no trailing zeros.
* The degree of the zero polynomial is the sentinel ``NEG_INF``, never an
  integer, so division loops can compare degrees without off-by-one traps.
* Ring handles (Fq, PolyRing, ResidueRing) are lightweight objects exposing
  ``zero``, ``one``, ``p``, ``q``, ``from_int``, ``coerce`` and, where it
  makes sense, ``theta`` (the image of t) and ``structure`` (the A-algebra
  map a -> a(theta)).
"""

from __future__ import annotations

import itertools

from .errors import DomainError

NEG_INF = float("-inf")

# Irreducible moduli over F_p for the built-in field table.  For prime q the
# modulus u makes F_p[u]/(u) = F_p, so every field is handled uniformly.
_DEFAULT_MODULI = {
    (2, 1): (0, 1),
    (3, 1): (0, 1),
    (5, 1): (0, 1),
    (2, 2): (1, 1, 1),     # u^2 + u + 1
    (2, 3): (1, 1, 0, 1),  # u^3 + u + 1
    (3, 2): (1, 0, 1),     # u^2 + 1
}

_MAX_TABLE_Q = 128


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# Polynomial helpers over F_p on plain int tuples, used only to bootstrap the
# multiplication tables of Fq.

def _ptrim(c):
    while c and c[-1] == 0:
        c = c[:-1]
    return tuple(c)


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        if a[-1] == 0:
            a.pop()
            continue
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    return _ptrim(a)


def _pgcd(a, b, p):
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppow_mod(base, e, m, p):
    result = (1,)
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _pirreducible(m, p):
    """Degree-n m over F_p has no factor of degree <= n/2."""
    n = len(m) - 1
    if n < 1:
        return False
    u = (0, 1)
    for i in range(1, n // 2 + 1):
        h = _ppow_mod(u, p ** i, m, p)
        diff = _ptrim(tuple((hi - ui) % p for hi, ui in
                            itertools.zip_longest(h, u, fillvalue=0)))
        if len(_pgcd(m, diff, p)) != 1:
            return False
    return True


class FqElem:
    """Element of a small finite field, interned and table driven."""

    __slots__ = ("ring", "idx")

    def __init__(self, ring, idx):
        self.ring = ring
        self.idx = idx

    def __add__(self, other):
        if isinstance(other, FqElem) and other.ring is self.ring:
            return self.ring._els[self.ring._add[self.idx][other.idx]]
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return self.ring._els[self.ring._neg[self.idx]]

    def __sub__(self, other):
        if isinstance(other, FqElem) and other.ring is self.ring:
            return self + (-other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, FqElem) and other.ring is self.ring:
            return self.ring._els[self.ring._mul[self.idx][other.idx]]
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inv(self):
        j = self.ring._inv[self.idx]
        if j is None:
            raise DomainError("division by zero in F_q")
        return self.ring._els[j]

    def pth_power(self, k=1):
        i = self.idx
        for _ in range(k % self.ring.e if self.ring.e > 1 else 0):
            i = self.ring._frobp[i]
        return self.ring._els[i]

    def frob(self, k=1):
        # r^(q^k) = r on F_q itself.
        return self

    def __bool__(self):
        return self.idx != 0

    def __eq__(self, other):
        return isinstance(other, FqElem) and other.ring is self.ring \
            and other.idx == self.idx

    def __hash__(self):
        return hash((id(self.ring), self.idx))

    def __repr__(self):
        return self.ring.to_str(self)


class Fq:
    """The finite field F_q = F_p[u]/(m(u)) with q = p^e.

    All q elements are interned at construction and arithmetic runs off
    precomputed tables, so elements are cheap enough to use as coefficients
    in the series kernels.  Intended for desk-scale q (q <= 128).
    """

    def __init__(self, p, e=1, modulus=None):
        if not _is_prime(p):
            raise DomainError("p must be prime, got %r" % (p,))
        if e < 1:
            raise DomainError("extension degree must be positive")
        q = p ** e
        if q > _MAX_TABLE_Q:
            raise DomainError("field order %d too large for table arithmetic" % q)
        if modulus is None:
            if e == 1:
                modulus = (0, 1)
            elif (p, e) in _DEFAULT_MODULI:
                modulus = _DEFAULT_MODULI[(p, e)]
            else:
                modulus = self._find_modulus(p, e)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise DomainError("modulus must be monic of degree e")
        if e > 1 and not _pirreducible(modulus, p):
            raise DomainError("modulus is reducible over F_p")
        self.p = p
        self.e = e
        self.q = q
        self.modulus = modulus
        self.theta = None
        self._build_tables()

    @staticmethod
    def _find_modulus(p, e):
        for k in range(p ** e):
            coeffs = []
            kk = k
            for _ in range(e):
                coeffs.append(kk % p)
                kk //= p
            m = tuple(coeffs) + (1,)
            if _pirreducible(m, p):
                return m
        raise DomainError("no irreducible modulus found")  # pragma: no cover

    def _vec(self, idx):
        out = []
        for _ in range(self.e):
            out.append(idx % self.p)
            idx //= self.p
        return tuple(out)

    def _idx(self, vec):
        out = 0
        for c in reversed(vec):
            out = out * self.p + (c % self.p)
        return out

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        vecs = [self._vec(i) for i in range(q)]
        self._add = [[self._idx(tuple((a + b) % p for a, b in zip(vecs[i], vecs[j])))
                      for j in range(q)] for i in range(q)]
        self._neg = [self._idx(tuple((-a) % p for a in vecs[i])) for i in range(q)]
        mul = []
        for i in range(q):
            row = []
            ai = _ptrim(vecs[i])
            for j in range(q):
                prod = _pmod(_pmul(ai, _ptrim(vecs[j]), p), self.modulus, p) \
                    if e > 1 else _pmul(ai, _ptrim(vecs[j]), p)
                prod = prod + (0,) * (e - len(prod))
                row.append(self._idx(prod))
            mul.append(row)
        self._mul = mul
        inv = [None] * q
        for i in range(1, q):
            for j in range(1, q):
                if mul[i][j] == 1:
                    inv[i] = j
                    break
        self._inv = inv
        self._els = tuple(FqElem(self, i) for i in range(q))
        frobp = []
        for i in range(q):
            acc = 1
            for _ in range(p):
                acc = mul[acc][i]
            frobp.append(acc)
        self._frobp = frobp
        self.zero = self._els[0]
        self.one = self._els[1]
        self.gen = self._els[self._idx((0, 1) + (0,) * (e - 2))] if e > 1 else self.one

    # -- handle protocol -------------------------------------------------

    def from_int(self, n):
        return self._els[n % self.p]

    def coerce(self, x):
        if isinstance(x, FqElem) and x.ring is self:
            return x
        if isinstance(x, int):
            return self.from_int(x)
        raise DomainError("cannot coerce %r into F_%d" % (x, self.q))

    def elements(self):
        return self._els

    @property
    def order(self):
        return self.q

    def el(self, spec):
        """Element from an int (prime q), coefficient tuple, or u-string."""
        if isinstance(spec, FqElem) and spec.ring is self:
            return spec
        if isinstance(spec, int):
            if self.e == 1:
                return self._els[spec % self.p]
            return self._els[spec % self.q]
        if isinstance(spec, (tuple, list)):
            return self._els[self._idx(tuple(spec))]
        if isinstance(spec, str):
            return self.parse(spec)
        raise DomainError("cannot build field element from %r" % (spec,))

    def to_str(self, a):
        if self.e == 1:
            return str(a.idx)
        vec = self._vec(a.idx)
        terms = []
        for k in range(self.e - 1, -1, -1):
            c = vec[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                var = "u" if k == 1 else "u^%d" % k
                terms.append(var if c == 1 else "%d*%s" % (c, var))
        return "+".join(terms) if terms else "0"

    def parse(self, s):
        s = s.strip()
        if self.e == 1:
            return self._els[int(s) % self.p]
        vec = [0] * self.e
        for term in s.replace("-", "+-").split("+"):
            term = term.strip()
            if not term:
                continue
            sign = 1
            if term.startswith("-"):
                sign, term = -1, term[1:]
            if "u" not in term:
                vec[0] = (vec[0] + sign * int(term)) % self.p
                continue
            c, _, rest = term.partition("u")
            c = c.rstrip("*").strip()
            coef = int(c) if c else 1
            k = 1
            if rest.startswith("^"):
                k = int(rest[1:])
            vec[k] = (vec[k] + sign * coef) % self.p
        return self._els[self._idx(tuple(vec))]

    def __repr__(self):
        return "F_%d" % self.q


_FQ_CACHE = {}


def fq(q, modulus=None):
    """Memoized field constructor; q may be any prime power <= 128."""
    key = (q, modulus)
    if key in _FQ_CACHE:
        return _FQ_CACHE[key]
    p = None
    for cand in range(2, q + 1):
        if _is_prime(cand):
            e = 0
            qq = q
            while qq % cand == 0:
                qq //= cand
                e += 1
            if qq == 1:
                p = cand
                break
    if p is None:
        raise DomainError("%d is not a prime power" % q)
    field = Fq(p, e, modulus)
    _FQ_CACHE[key] = field
    return field


class Poly:
    """Dense univariate polynomial over a ring handle.

    Used both for elements of A = F_q[t] (coefficients in Fq) and for
    polynomials in an outer variable with coefficients in A or a quotient
    ring.  Coefficients are stored low degree first with no trailing zeros.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs, normalize=True):
        if normalize:
            coeffs = list(coeffs)
            while coeffs and not coeffs[-1]:
                coeffs.pop()
        self.ring = ring
        self.coeffs = tuple(coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.ring.one

    def leading(self):
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def constant(self):
        return self.coeffs[0] if self.coeffs else self.ring.zero

    def _wrap(self, coeffs, normalize=True):
        return Poly(self.ring, coeffs, normalize)

    def __add__(self, other):
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return self._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(tuple(-c for c in self.coeffs), normalize=False)

    def __sub__(self, other):
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._wrap((), normalize=False)
        zero = self.ring.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = out[i + j] + ai * bj
        return self._wrap(out)

    __rmul__ = __mul__

    def _coerce_operand(self, other):
        if isinstance(other, Poly) and other.ring is self.ring:
            return other
        try:
            c = self.ring.coerce(other)
        except (DomainError, TypeError):
            return NotImplemented
        return Poly(self.ring, (c,))

    def __pow__(self, n):
        if n < 0:
            raise DomainError("negative power of a polynomial")
        result = Poly(self.ring, (self.ring.one,), normalize=False)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return other.ring is self.ring and other.coeffs == self.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ring), self.coeffs))

    def __divmod__(self, other):
        if not isinstance(other, Poly) or other.ring is not self.ring:
            raise DomainError("mismatched rings in division")
        if other.is_zero():
            raise DomainError("polynomial division by zero")
        lead = other.leading()
        inv_lead = lead.inv() if lead != self.ring.one else None
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return self._wrap((), normalize=False), self
        quot = [self.ring.zero] * (dq + 1)
        db = other.degree
        while len(rem) - 1 >= db:
            top = rem[-1]
            if not top:
                rem.pop()
                continue
            c = top * inv_lead if inv_lead is not None else top
            shift = len(rem) - 1 - db
            quot[shift] = c
            for i, bc in enumerate(other.coeffs):
                if bc:
                    rem[shift + i] = rem[shift + i] - c * bc
            rem.pop()
        return self._wrap(quot), self._wrap(rem)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise DomainError("division is not exact")
        return q

    def inv(self):
        """Inverse of a unit; in F_q[t] the units are the nonzero constants."""
        if self.degree != 0:
            raise DomainError("non-constant polynomial is not a unit")
        return Poly(self.ring, (self.coeffs[0].inv(),), normalize=False)

    def shift(self, k):
        """Multiply by the k-th power of the variable (k >= 0)."""
        if not self.coeffs:
            return self
        return self._wrap((self.ring.zero,) * k + self.coeffs, normalize=False)

    def map_coeffs(self, func, ring):
        return Poly(ring, tuple(func(c) for c in self.coeffs))

    def __call__(self, x):
        """Horner evaluation; x may live in a larger ring than the coefficients."""
        if not self.coeffs:
            try:
                return x.ring.zero
            except AttributeError:
                return x * 0
        acc = None
        for c in reversed(self.coeffs):
            if acc is None:
                acc = x.ring.coerce(c) if hasattr(x, "ring") else c
            else:
                acc = acc * x + c
        return acc

    def pth_power(self, k=1):
        """Freshman's-dream power: (sum a_i t^i)^(p^k) = sum a_i^(p^k) t^(i p^k)."""
        if k == 0 or not self.coeffs:
            return self
        step = self.ring.p ** k
        zero = self.ring.zero
        out = [zero] * ((len(self.coeffs) - 1) * step + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * step] = c.pth_power(k) if hasattr(c, "pth_power") else c ** step
        return self._wrap(out, normalize=False)

    def frob(self, k=1):
        e = getattr(self.ring, "e", None)
        if e is None:
            e = getattr(self.ring.base_field, "e")
        return self.pth_power(e * k)

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a * Poly(a.ring, (a.leading().inv(),))

    def pow_mod(self, n, modulus):
        result = Poly(self.ring, (self.ring.one,), normalize=False)
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result

    def __repr__(self):
        ring = self.ring
        if isinstance(ring, Fq):
            return poly_to_tstring(self)
        return "Poly(%r)" % (self.coeffs,)


class PolyRing:
    """Handle for F_q[t] (or an outer polynomial ring over another handle)."""

    def __init__(self, base, var="t"):
        self.base = base
        self.var = var
        self.zero = Poly(base, (), normalize=False)
        self.one = Poly(base, (base.one,), normalize=False)
        self.gen = Poly(base, (base.zero, base.one), normalize=False)
        self.p = base.p
        self.q = base.q

    @property
    def base_field(self):
        b = self.base
        while not isinstance(b, Fq):
            b = b.base
        return b

    @property
    def theta(self):
        # The structure map A -> A sends t to itself.
        return self.gen

    def from_int(self, n):
        c = self.base.from_int(n)
        return Poly(self.base, (c,))

    def coerce(self, x):
        if isinstance(x, Poly) and x.ring is self.base:
            return x
        if isinstance(x, int):
            return self.from_int(x)
        c = self.base.coerce(x)
        return Poly(self.base, (c,))

    def structure(self, a):
        if not (isinstance(a, Poly) and a.ring is self.base):
            raise DomainError("expected an element of %r" % self)
        return a

    def poly(self, coeffs):
        return Poly(self.base, tuple(self.base.coerce(c) for c in coeffs))

    def monic_polys(self, degree):
        """All monic degree-d polynomials, in a fixed deterministic order."""
        base = self.base
        if degree == 0:
            yield self.one
            return
        for k in range(base.q ** degree):
            coeffs = []
            kk = k
            for _ in range(degree):
                coeffs.append(base._els[kk % base.q])
                kk //= base.q
            yield Poly(base, tuple(coeffs) + (base.one,), normalize=False)

    def monic_irreducibles(self, max_degree):
        for d in range(1, max_degree + 1):
            for f in self.monic_polys(d):
                if is_irreducible(f):
                    yield f

    def __repr__(self):
        return "%r[%s]" % (self.base, self.var)


_POLYRING_CACHE = {}


def polyring(field, var="t"):
    key = (id(field), var)
    if key not in _POLYRING_CACHE:
        _POLYRING_CACHE[key] = PolyRing(field, var)
    return _POLYRING_CACHE[key]


def is_irreducible(f):
    """Irreducibility over F_q: no factor of degree <= deg(f)/2, detected via
    gcd(f, t^(q^i) - t)."""
    if not isinstance(f.ring, Fq):
        raise DomainError("irreducibility test expects F_q coefficients")
    if not f.is_monic():
        raise DomainError("irreducibility test expects a monic polynomial")
    n = f.degree
    if n < 1:
        raise DomainError("irreducibility test expects positive degree")
    if n == 1:
        return True
    ring = polyring(f.ring)
    t = ring.gen
    power = t
    for _ in range(1, n // 2 + 1):
        power = power.pow_mod(f.ring.q, f)
        g = f.gcd(power - t)
        if g.degree != 0:
            return False
    return True


class AResidue:
    """Element of A/(m): a reduced polynomial plus its quotient-ring handle."""

    __slots__ = ("ring", "value")

    def __init__(self, ring, value):
        self.ring = ring
        self.value = value

    def _lift(self, other):
        if isinstance(other, AResidue) and other.ring is self.ring:
            return other
        try:
            return self.ring.coerce(other)
        except DomainError:
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return AResidue(self.ring, self.value + o.value)

    __radd__ = __add__

    def __neg__(self):
        return AResidue(self.ring, -self.value)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return AResidue(self.ring, (self.value * o.value) % self.ring.modulus)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inv(self):
        g, s = _half_xgcd(self.value, self.ring.modulus)
        if g.degree != 0:
            raise DomainError("element is not invertible in %r" % self.ring)
        c = g.leading().inv()
        return AResidue(self.ring, (s * Poly(s.ring, (c,))) % self.ring.modulus)

    def pth_power(self, k=1):
        if k == 0:
            return self
        return AResidue(self.ring, self.value.pth_power(k) % self.ring.modulus)

    def frob(self, k=1):
        return self.pth_power(self.ring.base_field.e * k)

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, AResidue):
            return other.ring is self.ring and other.value == self.value
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ring), self.value.coeffs))

    def __repr__(self):
        return "(%s mod %s)" % (poly_to_tstring(self.value),
                                poly_to_tstring(self.ring.modulus))


def _half_xgcd(a, m):
    """(g, s) with s*a = g mod m, by the extended Euclidean algorithm."""
    ring = a.ring
    one = Poly(ring, (ring.one,), normalize=False)
    zero = Poly(ring, (), normalize=False)
    r0, r1 = a % m, m
    s0, s1 = one, zero
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    return r0, s0


class ResidueRing:
    """A/(modulus), with lift and reduce maps.

    When the modulus is irreducible this is the field F_(q^d); ``theta``
    defaults to the class of t, which is then a root of the modulus.  For
    extension fields built around a root of some other prime, theta is set
    explicitly and ``structure`` evaluates A at it.
    """

    def __init__(self, modulus, theta=None):
        if not isinstance(modulus.ring, Fq):
            raise DomainError("residue ring expects a modulus over F_q")
        if not modulus.is_monic() or modulus.degree < 1:
            raise DomainError("modulus must be monic and nonconstant")
        self.field = modulus.ring
        self.modulus = modulus
        self.p = self.field.p
        self.q = self.field.q
        self.zero = AResidue(self, Poly(self.field, (), normalize=False))
        self.one = AResidue(self, Poly(self.field, (self.field.one,), normalize=False))
        self.degree = modulus.degree
        self.order = self.q ** self.degree
        if theta is None:
            theta = AResidue(self, polyring(self.field).gen % modulus)
        self.theta = theta

    @property
    def base_field(self):
        return self.field

    def reduce(self, a):
        if not (isinstance(a, Poly) and a.ring is self.field):
            raise DomainError("reduce expects an element of A")
        return AResidue(self, a % self.modulus)

    def lift(self, r):
        if not (isinstance(r, AResidue) and r.ring is self):
            raise DomainError("lift expects an element of this ring")
        return r.value

    def structure(self, a):
        """The A-algebra map a -> a(theta)."""
        if not (isinstance(a, Poly) and a.ring is self.field):
            raise DomainError("structure map expects an element of A")
        if not a.coeffs:
            return self.zero
        acc = self.zero
        for c in reversed(a.coeffs):
            acc = acc * self.theta + c
        return acc

    def from_int(self, n):
        return AResidue(self, Poly(self.field, (self.field.from_int(n),)))

    def coerce(self, x):
        if isinstance(x, AResidue) and x.ring is self:
            return x
        if isinstance(x, FqElem) and x.ring is self.field:
            return AResidue(self, Poly(self.field, (x,)))
        if isinstance(x, int):
            return self.from_int(x)
        raise DomainError("cannot coerce %r into %r" % (x, self))

    def elements(self):
        field = self.field
        for k in range(self.order):
            coeffs = []
            kk = k
            for _ in range(self.degree):
                coeffs.append(field._els[kk % field.q])
                kk //= field.q
            yield AResidue(self, Poly(field, tuple(coeffs)))

    def element_key(self, r):
        """Deterministic sort key for elements (coefficient indices, low first)."""
        coeffs = r.value.coeffs
        return tuple(c.idx for c in coeffs) + (0,) * (self.degree - len(coeffs))

    def is_field(self):
        return is_irreducible(self.modulus)

    def __repr__(self):
        return "A/(%s)" % poly_to_tstring(self.modulus)


def residue_ring(modulus):
    """Ring handle for A/(modulus) with lift/reduce maps."""
    return ResidueRing(modulus)


def find_root(f, ring):
    """Smallest root of an A-polynomial in a finite residue ring, or None."""
    for cand in ring.elements():
        acc = ring.zero
        for c in reversed(f.coeffs):
            acc = acc * cand + c
        if not acc:
            return cand
    return None


def residue_field_with_theta(wp, m=1):
    """The field F_(q^(d*m)) together with a distinguished root theta of wp.

    For m = 1 this is A/(wp) itself.  For m > 1 a single-level quotient
    A/(P) with P irreducible of degree d*m is built and theta is chosen as
    the smallest root of wp in it.
    """
    if not is_irreducible(wp):
        raise DomainError("characteristic polynomial must be irreducible")
    if m < 1:
        raise DomainError("extension degree must be positive")
    if m == 1:
        return ResidueRing(wp)
    ring = polyring(wp.ring)
    d = wp.degree
    target = d * m
    for cand in ring.monic_polys(target):
        if is_irreducible(cand):
            K = ResidueRing(cand)
            root = find_root(wp, K)
            if root is None:  # pragma: no cover - d divides target
                continue
            K.theta = root
            return K
    raise DomainError("no irreducible polynomial of degree %d found" % target)


def extension_with_embedding(k, m):
    """Degree-m extension K of the residue field k plus the embedding map.

    The embedding sends the class of t in k to the smallest root of k's
    modulus in K; theta is carried along so the A-algebra structures agree.
    """
    if m == 1:
        return k, lambda r: r
    ring = polyring(k.field)
    target = k.degree * m
    for cand in ring.monic_polys(target):
        if is_irreducible(cand):
            K = ResidueRing(cand)
            root = find_root(k.modulus, K)
            if root is None:  # pragma: no cover
                continue

            def embed(r, _root=root, _K=K):
                acc = _K.zero
                for c in reversed(r.value.coeffs):
                    acc = acc * _root + c
                return acc

            K.theta = embed(k.theta)
            return K, embed
    raise DomainError("no extension of degree %d found" % m)


def wp_valuation(a, wp, cap=64):
    """wp-adic valuation of a in A (cap for the zero polynomial)."""
    if a.is_zero():
        return cap
    v = 0
    while v < cap:
        q, r = divmod(a, wp)
        if not r.is_zero():
            return v
        a = q
        v += 1
        if a.is_zero():
            return cap
    return cap


# -- text encodings ------------------------------------------------------

def poly_to_tstring(a, var="t"):
    """Human-readable t-polynomial form, e.g. 't^2+t+1'."""
    if a.is_zero():
        return "0"
    field = a.ring
    terms = []
    for k in range(len(a.coeffs) - 1, -1, -1):
        c = a.coeffs[k]
        if not c:
            continue
        cs = field.to_str(c)
        if k == 0:
            terms.append(cs if field.e == 1 else "(%s)" % cs)
        else:
            v = var if k == 1 else "%s^%d" % (var, k)
            if cs == "1":
                terms.append(v)
            elif field.e == 1:
                terms.append("%s*%s" % (cs, v))
            else:
                terms.append("(%s)*%s" % (cs, v))
    return "+".join(terms)


def poly_to_bracket(a):
    """Canonical coefficient-list encoding, low degree first: '[1,1,1]'."""
    return "[%s]" % ",".join(a.ring.to_str(c) for c in a.coeffs)


def parse_apoly(ring, s):
    """Parse an element of A from bracket form '[c0,c1,...]' or a t-string."""
    field = ring.base if isinstance(ring, PolyRing) else ring
    s = s.strip()
    if s.startswith("["):
        if not s.endswith("]"):
            raise DomainError("unterminated coefficient list: %r" % s)
        inner = s[1:-1].strip()
        if not inner:
            return Poly(field, ())
        coeffs = [field.parse(part) for part in inner.split(",")]
        return Poly(field, tuple(coeffs))
    # t-polynomial form with integer coefficients
    coeffs = {}
    for term in s.replace("-", "+-").split("+"):
        term = term.strip()
        if not term:
            continue
        sign = 1
        if term.startswith("-"):
            sign, term = -1, term[1:]
        if "t" not in term:
            coeffs[0] = coeffs.get(0, 0) + sign * int(term)
            continue
        c, _, rest = term.partition("t")
        c = c.rstrip("*").strip()
        coef = int(c) if c else 1
        k = 1
        if rest.startswith("^"):
            k = int(rest[1:])
        coeffs[k] = coeffs.get(k, 0) + sign * coef
    if not coeffs:
        return Poly(field, ())
    out = [field.zero] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        out[k] = field.from_int(c)
    return Poly(field, tuple(out))
