"""The Carlitz module and its torsion polynomials.

The Carlitz action sends t to theta + tau and extends multiplicatively; its
image polynomials Phi^C_a are cached per base ring because the Tate-Drinfeld
engine recomputes them constantly.
"""

from __future__ import annotations

import threading

from .errors import DomainError, InternalConsistencyError
from .fields import Poly, polyring, is_irreducible, wp_valuation
from .tau import TauPoly


class CarlitzAction:
    """The rank-one Drinfeld module with Phi_t = theta + tau over a base ring.

    The cache maps coefficient tuples of a in A to TauPoly values; inserts
    are guarded by a lock so instances can be shared across threads.
    """

    def __init__(self, ring):
        if getattr(ring, "theta", None) is None:
            raise DomainError("Carlitz action needs a base ring with theta")
        self.ring = ring
        self.phi_t = TauPoly(ring, (ring.theta, ring.one))
        self._cache = {}
        self._lock = threading.Lock()

    def phi(self, a):
        """Phi^C_a by Horner recursion on the t-expansion of a."""
        key = tuple(c.idx for c in a.coeffs)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        ring = self.ring
        acc = TauPoly.zero(ring)
        for c in reversed(a.coeffs):
            acc = acc * self.phi_t
            if c:
                acc = acc + TauPoly(ring, (ring.coerce(c),))
        with self._lock:
            self._cache.setdefault(key, acc)
        return acc


_ACTIONS = {}
_ACTIONS_LOCK = threading.Lock()


def carlitz_action(ring):
    key = id(ring)
    with _ACTIONS_LOCK:
        if key not in _ACTIONS:
            _ACTIONS[key] = CarlitzAction(ring)
        return _ACTIONS[key]


def carlitz_phi(ring, a):
    return carlitz_action(ring).phi(a)


def _tau_to_zpoly(f, zring):
    """Rewrite sum b_i tau^i as the additive polynomial sum b_i Z^(q^i)."""
    q = f.ring.q
    if f.is_zero():
        return zring.zero
    out = [zring.base.zero] * (q ** f.degree + 1)
    for i, c in enumerate(f.coeffs):
        if c:
            out[q ** i] = c
    return Poly(zring.base, tuple(out))


def carlitz_torsion_poly(field, a):
    """Phi^C_a(Z) over A itself (theta = t), as a dense polynomial in Z."""
    if a.is_zero():
        raise DomainError("torsion polynomial needs a nonzero index")
    A = polyring(field)
    f = carlitz_phi(A, a)
    zring = polyring(A, var="Z")
    return _tau_to_zpoly(f, zring)


def check_eisenstein(field, wp):
    """Eisenstein certificate for Phi^C_wp(Z) at the prime wp.

    Verifies: monic; every non-leading coefficient divisible by wp; the
    linear coefficient exactly wp (valuation one); and returns the mod-wp
    reduction, which must equal Z^(q^d).
    """
    if not is_irreducible(wp):
        raise DomainError("expected a monic irreducible polynomial")
    d = wp.degree
    q = field.q
    phi = carlitz_torsion_poly(field, wp)
    witness = {"degree": phi.degree, "expected_degree": q ** d}
    ok = phi.is_monic() and phi.degree == q ** d
    divisible = True
    for k in range(phi.degree):
        c = phi.coeffs[k] if k < len(phi.coeffs) else None
        if c and wp_valuation(c, wp) < 1:
            divisible = False
            break
    linear_ok = phi.coeffs[1] == wp if len(phi.coeffs) > 1 else False
    reduction_exponent = None
    reduction_ok = False
    nonzero_mod = [k for k in range(phi.degree + 1)
                   if k < len(phi.coeffs) and not (phi.coeffs[k] % wp).is_zero()]
    if nonzero_mod == [q ** d]:
        reduction_exponent = q ** d
        reduction_ok = True
    witness.update({
        "monic": phi.is_monic(),
        "nonleading_divisible": divisible,
        "linear_coefficient_is_wp": linear_ok,
        "reduction": "Z^%d" % q ** d if reduction_ok else "unexpected",
    })
    return (ok and divisible and linear_ok and reduction_ok), witness


def _divisors_from_factorization(field, factors):
    """All monic divisors with their Moebius value mu(n/m).

    ``factors`` lists the monic irreducible factors of n with multiplicity.
    Yields (divisor m, mu(n/m)); mu vanishes unless n/m is squarefree.
    """
    A = polyring(field)
    distinct = []
    mult = []
    for f in factors:
        if f in distinct:
            mult[distinct.index(f)] += 1
        else:
            distinct.append(f)
            mult.append(1)
    r = len(distinct)

    def rec(i, m, comu):
        if i == r:
            yield m, comu
            return
        f, e = distinct[i], mult[i]
        power = A.one  # f^k
        for k in range(e + 1):
            # mu(n/m) vanishes unless the cofactor exponent e - k is 0 or 1
            if e - k <= 1:
                yield from rec(i + 1, m * power,
                               comu * (-1 if e - k == 1 else 1))
            power = power * f

    yield from rec(0, A.one, 1)


def carlitz_cyclotomic(field, factors):
    """The cyclotomic factor W_n(X): the classes of exact C-division points.

    n is supplied as its list of monic irreducible factors (with
    multiplicity).  W_n is the Moebius-alternating product of the torsion
    polynomials Phi^C_m(X) over monic divisors m of n, carried out by exact
    division; inexactness signals an internal inconsistency.
    """
    if not factors:
        raise DomainError("the cyclotomic polynomial needs a nonconstant index")
    for f in factors:
        if not is_irreducible(f):
            raise DomainError("factor %r is not monic irreducible" % (f,))
    A = polyring(field)
    num = None
    den = None
    expected_degree = 0
    for m, mu in _divisors_from_factorization(field, factors):
        if mu == 0:
            continue
        phi_m = carlitz_torsion_poly(field, m) if m.degree >= 1 else None
        if m.degree == 0:
            phi_m = Poly(A, (A.zero, A.one))  # Phi^C_1(X) = X
        expected_degree += mu * (field.q ** m.degree)
        if mu == 1:
            num = phi_m if num is None else num * phi_m
        else:
            den = phi_m if den is None else den * phi_m
    if num is None:
        raise DomainError("empty divisor set")
    w = num if den is None else num.exact_div(den)
    if w.degree != expected_degree:
        raise InternalConsistencyError(
            "cyclotomic degree %r does not match the Moebius count %d"
            % (w.degree, expected_degree))
    n = factors[0]
    for f in factors[1:]:
        n = n * f
    phi_n = carlitz_torsion_poly(field, n)
    if not (phi_n % w).is_zero():
        raise InternalConsistencyError("W_n does not divide Phi^C_n exactly")
    return w
