import pytest
from hypothesis import given, settings, strategies as st

from drinfeld.errors import DomainError, PrecisionError
from drinfeld.fields import Poly, fq, polyring
from drinfeld.series import SeriesRing, TruncSeries, newton_slopes
from drinfeld.tate import lattice_inverse


def sring(q, prec):
    return SeriesRing(polyring(fq(q)), prec)


def random_series(data, S, max_terms=4, allow_laurent=False):
    field = S.ring.base
    apoly = st.lists(st.sampled_from(field.elements()), max_size=3).map(
        lambda cs: Poly(field, cs))
    coeffs = data.draw(st.lists(apoly, min_size=0, max_size=max_terms))
    val = data.draw(st.integers(-2 if allow_laurent else 0, 2))
    return TruncSeries(S.ring, val, coeffs, S.prec)


class TestArith:
    def test_geometric_series(self):
        S = sring(2, 4)
        g = (S.one - S.x()).inv()
        assert [g.coeff(k) for k in range(4)] == [S.ring.one] * 4

    def test_laurent_shift(self):
        S = sring(2, 6)
        x = S.x()
        f = (x + x * x).shift(-1)
        assert f.val == 0 and f.coeff(0) == S.ring.one and f.coeff(1) == S.ring.one

    def test_geometric_with_theta(self):
        S = sring(2, 3)
        t = S.ring.gen
        h = (S.one + S.theta * S.x()).inv()
        assert h.coeff(0) == S.ring.one
        assert h.coeff(1) == t and h.coeff(2) == t * t

    def test_inv_requires_unit(self):
        S = sring(2, 5)
        t = S.ring.gen
        f = S.one.scale(t) + S.x()
        with pytest.raises(DomainError):
            f.inv()

    def test_inv_zero_to_precision(self):
        S = sring(2, 5)
        with pytest.raises(PrecisionError):
            S.zero.inv()

    def test_precision_propagation_rules(self):
        S = sring(2, 8)
        a = TruncSeries(S.ring, 1, (S.ring.one,), 5)
        b = TruncSeries(S.ring, 2, (S.ring.one,), 7)
        assert (a + b).prec == 5
        assert (a * b).prec == min(1 + 7, 2 + 5)
        inv = a.inv()
        assert inv.val == -1 and inv.prec == 5 - 2

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_mul_commutes_and_associates(self, data):
        S = sring(data.draw(st.sampled_from([2, 3])), 6)
        a = random_series(data, S)
        b = random_series(data, S)
        c = random_series(data, S)
        assert (a * b).agrees_with(b * a)
        assert ((a * b) * c).agrees_with(a * (b * c))

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_precision_soundness(self, data):
        # recompute a pipeline at higher precision; truncation must agree
        lo, hi = 5, 9
        Slo, Shi = sring(2, lo), sring(2, hi)
        field = fq(2)
        apoly = st.lists(st.sampled_from(field.elements()), max_size=3).map(
            lambda cs: Poly(field, cs))
        coeffs = data.draw(st.lists(apoly, min_size=1, max_size=4))
        val = data.draw(st.integers(0, 2))
        a_lo = TruncSeries(Slo.ring, val, coeffs, lo)
        a_hi = TruncSeries(Shi.ring, val, coeffs, hi)
        pipe = lambda f, one, x: (f * f + one) * (x + f)
        out_lo = pipe(a_lo, Slo.one, Slo.x())
        out_hi = pipe(a_hi, Shi.one, Shi.x())
        assert out_hi.truncate(out_lo.prec).agrees_with(out_lo)
        assert out_hi.truncate(out_lo.prec) == out_lo.truncate(out_hi.prec)


class TestSubstitute:
    def test_simple(self):
        S = sring(2, 8)
        f = S.one + S.x()
        g = f.substitute(S.x() * S.x())
        assert g.coeff(0) == S.ring.one and g.coeff(2) == S.ring.one
        assert not g.coeff(1)

    def test_lattice_inverse_oracle(self):
        # F_t = x^2 / (1 + theta x) = x^2 + theta x^3 + theta^2 x^4 + ...
        F2 = fq(2)
        A = polyring(F2)
        t = A.gen
        F = lattice_inverse(F2, t, 8)
        assert F.val == 2
        for k in range(2, 8):
            assert F.coeff(k) == t ** (k - 2)

    def test_identity_substitution(self):
        F2 = fq(2)
        S = sring(2, 8)
        F = lattice_inverse(F2, polyring(F2).gen, 8)
        assert S.x().substitute(F).agrees_with(F)

    def test_nonpositive_valuation_rejected(self):
        S = sring(2, 6)
        f = (S.one - S.x()).inv()  # genuine infinite tail
        with pytest.raises(DomainError):
            f.substitute(S.one + S.x())

    def test_polynomial_flag_allows_constant_target(self):
        S = sring(2, 6)
        f = S.x()  # exact polynomial x
        out = f.substitute(S.one + S.x(), self_is_polynomial=True)
        assert out.coeff(0) == S.ring.one and out.coeff(1) == S.ring.one

    @settings(max_examples=30, deadline=None)
    @given(st.data())
    def test_substitution_associativity(self, data):
        S = sring(2, 7)
        f = random_series(data, S)
        g = random_series(data, S)
        g = g.shift(1 - g.val if g.coeffs and g.val < 1 else 0)
        h = random_series(data, S)
        h = h.shift(1 - h.val if h.coeffs and h.val < 1 else 0)
        if not g.coeffs or not h.coeffs:
            return
        lhs = f.substitute(g).substitute(h)
        rhs = f.substitute(g.substitute(h))
        assert lhs.agrees_with(rhs, upto=min(lhs.prec, rhs.prec))


class TestDerivative:
    def test_char2_powers(self):
        S = sring(2, 8)
        x = S.x()
        assert (x ** 3).derivative().agrees_with(x * x)
        assert (x * x).derivative().is_zero()
        f = S.one + S.theta * x
        assert f.derivative().coeff(0) == S.ring.gen

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_derivation_rule(self, data):
        S = sring(data.draw(st.sampled_from([2, 3])), 7)
        a = random_series(data, S)
        b = random_series(data, S)
        lhs = (a * b).derivative()
        rhs = a * b.derivative() + b * a.derivative()
        assert lhs.agrees_with(rhs)


class TestSubring:
    def test_q3_examples(self):
        S = sring(3, 6)
        x = S.x()
        f = S.one + x ** 2 + x ** 4
        assert f.in_subring(2)
        assert not (S.one + x).in_subring(2)

    def test_q2_always(self):
        S = sring(2, 6)
        f = S.one + S.x() + S.x() ** 3
        assert f.in_subring(1)

    def test_compress(self):
        S = sring(3, 7)
        x = S.x()
        f = S.one + x ** 2 + x ** 6
        y = f.compress(2)
        assert y.coeff(0) == S.ring.one and y.coeff(1) == S.ring.one
        assert y.coeff(3) == S.ring.one
        assert y.prec == 4  # ceil(7/2)


class TestFrobenius:
    def test_pth_power_precision_multiplies(self):
        S = sring(2, 5)
        f = S.one + S.x()
        g = f.pth_power(1)
        assert g.prec == 10
        assert g.coeff(0) == S.ring.one and g.coeff(2) == S.ring.one
        assert not g.coeff(1)

    def test_matches_repeated_multiplication(self):
        S = sring(3, 5)
        t = S.ring.gen
        f = S.one + S.x().scale(t) + S.x() ** 2
        assert f.pth_power(1).agrees_with(f * f * f)

    @settings(max_examples=30, deadline=None)
    @given(st.data())
    def test_frobenius_is_additive(self, data):
        S = sring(data.draw(st.sampled_from([2, 3])), 6)
        a = random_series(data, S)
        b = random_series(data, S)
        assert (a + b).frob(1).agrees_with(a.frob(1) + b.frob(1))
        assert (a * b).frob(1).agrees_with(a.frob(1) * b.frob(1))


def test_newton_slopes():
    hull = newton_slopes([(1, 3), (2, 1), (4, 0), (8, 2)])
    assert hull == [(1, 3), (2, 1), (4, 0), (8, 2)]
    hull2 = newton_slopes([(0, 0), (1, 5), (2, 1)])
    assert hull2 == [(0, 0), (2, 1)]
