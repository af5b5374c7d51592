"""
切り捨て冪級数のテスト
"""
import pytest
from hypothesis import given, settings, strategies

from wildram.errors import InsufficientPrecision, NonUnitConstant, NonzeroConstant, NotInvertible, RingMismatch
from wildram.rings import FpField, MPolyRing
from wildram.series import (
    AtLeast, Finite, TruncatedSeries, series_comp_inverse, series_compose, series_derivative,
    series_frobenius, series_mul, series_order, series_pow, series_reciprocal,
)

PRIMES = [2, 3, 5, 7]


def series_over(p, prec, constant=None, linear=None):
    """F_p 上の級数（constant, linear を指定するとその係数に固定する）"""
    field = FpField(p)

    def build(values):
        values = list(values)
        if constant is not None:
            values[0] = constant
        if linear is not None:
            values[1] = linear
        return TruncatedSeries.from_coeffs(field, prec, values)

    return strategies.lists(strategies.integers(0, p - 1), min_size=prec + 1, max_size=prec + 1).map(build)


def tangent_to_identity(p, prec):
    return series_over(p, prec, constant=0, linear=1)


class TestBasics:
    def test_coefficients_beyond_precision(self):
        f = TruncatedSeries.identity(FpField(3), 4)
        assert f.coeff(4) == 0
        with pytest.raises(InsufficientPrecision):
            f.coeff(5)
        with pytest.raises(InsufficientPrecision):
            f.truncate(6)

    def test_order(self):
        field = FpField(5)
        assert series_order(TruncatedSeries.monomial(field, 8, 3, 2)) == Finite(3)
        assert series_order(TruncatedSeries.zero(field, 8)) == AtLeast(9)

    def test_ring_mismatch(self):
        with pytest.raises(RingMismatch):
            TruncatedSeries.one(FpField(3), 4) + TruncatedSeries.one(FpField(5), 4)

    def test_render(self):
        f = TruncatedSeries.from_terms(FpField(3), 6, {1: 1, 5: 2})
        assert f.render() == "z + 2*z^5 + O(z^7)"

    def test_product_precision_is_the_minimum(self):
        field = FpField(3)
        f = TruncatedSeries.identity(field, 5)
        g = TruncatedSeries.identity(field, 3)
        assert series_mul(f, g).prec == 3


class TestPowers:
    @given(strategies.sampled_from(PRIMES), strategies.data(), strategies.integers(0, 12))
    def test_pow_matches_repeated_product(self, p, data, n):
        f = data.draw(series_over(p, 10))
        expected = TruncatedSeries.one(FpField(p), 10)
        for _ in range(n):
            expected = series_mul(expected, f)
        assert series_pow(f, n) == expected

    @given(strategies.sampled_from(PRIMES), strategies.data())
    def test_frobenius_is_pth_power(self, p, data):
        f = data.draw(series_over(p, 12))
        assert series_frobenius(f) == series_pow(f, p)

    @given(strategies.sampled_from(PRIMES), strategies.data())
    def test_reciprocal(self, p, data):
        u = data.draw(series_over(p, 10, constant=1))
        assert series_mul(u, series_reciprocal(u)) == TruncatedSeries.one(FpField(p), 10)

    def test_reciprocal_needs_unit(self):
        with pytest.raises(NonUnitConstant):
            series_reciprocal(TruncatedSeries.identity(FpField(3), 4))

    def test_derivative_kills_pth_powers(self):
        field = FpField(3)
        f = TruncatedSeries.from_terms(field, 9, {3: 1, 6: 2, 4: 1})
        assert series_derivative(f) == TruncatedSeries.from_terms(field, 8, {3: 1})


class TestComposition:
    @settings(max_examples=60)
    @given(strategies.sampled_from(PRIMES), strategies.data())
    def test_strategies_agree(self, p, data):
        f = data.draw(series_over(p, 14))
        g = data.draw(tangent_to_identity(p, 14))
        horner = series_compose(f, g, "horner")
        assert series_compose(f, g, "power") == horner
        assert series_compose(f, g, "taylor") == horner
        assert series_compose(f, g) == horner

    @given(strategies.sampled_from(PRIMES), strategies.data())
    def test_general_inner_series(self, p, data):
        f = data.draw(series_over(p, 9))
        g = data.draw(series_over(p, 9, constant=0))
        assert series_compose(f, g, "power") == series_compose(f, g, "horner")

    def test_inner_series_must_vanish(self):
        field = FpField(5)
        with pytest.raises(NonzeroConstant):
            series_compose(TruncatedSeries.identity(field, 4), TruncatedSeries.one(field, 4))

    def test_taylor_needs_tangent_to_identity(self):
        field = FpField(5)
        g = TruncatedSeries.from_terms(field, 6, {1: 2, 2: 1})
        with pytest.raises(ValueError):
            series_compose(TruncatedSeries.identity(field, 6), g, "taylor")

    @settings(max_examples=40)
    @given(strategies.sampled_from(PRIMES), strategies.data())
    def test_compositional_inverse(self, p, data):
        h = data.draw(series_over(p, 12, constant=0, linear=data.draw(strategies.integers(1, p - 1))))
        inverse = series_comp_inverse(h)
        identity = TruncatedSeries.identity(FpField(p), 12)
        assert series_compose(h, inverse) == identity
        assert series_compose(inverse, h) == identity

    def test_inverse_needs_unit_linear_term(self):
        with pytest.raises(NotInvertible):
            series_comp_inverse(TruncatedSeries.monomial(FpField(3), 6, 2))

    def test_symbolic_coefficients(self):
        ring = MPolyRing(3, 2)
        x0, x1 = ring.gens()
        f = TruncatedSeries.from_terms(ring, 10, {1: ring.one, 3: x0, 5: x1})
        horner = series_compose(f, f, "horner")
        assert series_compose(f, f, "power") == horner
        assert series_compose(f, f, "taylor") == horner
        # z + 2x_0 z^3 + ... の z^3 の係数
        assert horner.coeff(3) == ring.scale(x0, 2)
