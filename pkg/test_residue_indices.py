"""
Λ(q, F_p)、部分指数 pind_j、反復留数、分岐数の判定のテスト
"""
import pytest
from hypothesis import given, settings, strategies

from wildram.dynamics.ramification import lower_ramification
from wildram.dynamics.wild import WildSeries, iterate, required_precision
from wildram.errors import EvenCharacteristic, NotDivisible, PreconditionViolation
from wildram.indices.classify import (
    VerdictKind, VerdictStatus, classify, compare_profile, is_q_ramified, predicted_profile,
)
from wildram.indices.lambda_set import geometric_sum, lambda_set, omega
from wildram.indices.residue import (
    delta_coefficient, expected_delta, index_report, iterative_residue, partitions, pind_closed,
    pind_laurent, residue_index, residue_of_form, smallest_index_j,
)
from wildram.rings import FpField
from wildram.series import TruncatedSeries
from wildram.suites.sampling import SplitMix64, random_coordinate, random_q, random_wild


def wild(p, prec, terms):
    return WildSeries.from_terms(FpField(p), prec, terms)


class TestLambdaSet:
    def test_elements(self):
        assert lambda_set(7, 3).elements == (1, 4, 7)
        assert lambda_set(4, 3).elements == (1, 4)
        assert lambda_set(6, 3).elements == (0, 3, 6)
        assert lambda_set(2, 5).elements == (2,)

    def test_ell_and_range(self):
        lam = lambda_set(7, 3)
        assert lam.r == 3
        assert lam.ell(2) == 4
        assert list(lam.theorem_range()) == [1, 2]
        assert list(lambda_set(6, 3).theorem_range()) == [1]
        with pytest.raises(PreconditionViolation):
            lam.ell(4)

    def test_omega(self):
        assert geometric_sum(3, 3) == 13
        assert omega(4, 1, 3, 1) == 13
        assert omega(4, 4, 3, 2) == 52
        assert omega(7, 4, 3, 0) == 7

    def test_partitions(self):
        assert len(list(partitions(4))) == 5
        assert len(list(partitions(10))) == 42
        assert all(sum(k * m for k, m in parts.items()) == 7 for parts in partitions(7))


class TestPartialIndices:
    def test_examples(self):
        f = wild(3, 12, {5: 1, 6: 2})
        assert pind_laurent(f, 1) == 2
        assert pind_closed(f, 1) == 2
        assert smallest_index_j(f).j == 1

    def test_q_ramified_example(self):
        f = wild(3, 12, {5: 1})
        assert pind_laurent(f, 1) == 0
        assert residue_index(f) == 0
        assert iterative_residue(f) == 1
        assert str(smallest_index_j(f)) == "NoneUpTo(2)"

    def test_vanishing_iterative_residue(self):
        # z + z^3 + 4z^5 over F_5：ind = 4 = (q+1)/2
        f = wild(5, 8, {3: 1, 5: 4})
        assert residue_index(f) == 4
        assert iterative_residue(f) == 0

    def test_iterative_residue_needs_odd_p(self):
        with pytest.raises(EvenCharacteristic):
            iterative_residue(wild(2, 8, {4: 1}))

    @settings(max_examples=60)
    @given(strategies.sampled_from([3, 5, 7]), strategies.integers(0, 2 ** 32))
    def test_closed_formula_matches_laurent(self, p, seed):
        rng = SplitMix64(seed)
        q = random_q(rng, p, 1, 14)
        f = random_wild(rng, p, q, 2 * q + 2)
        for j in range(1, lambda_set(q, p).r + 1):
            assert pind_closed(f, j) == pind_laurent(f, j)

    @settings(max_examples=30)
    @given(strategies.sampled_from([3, 5]), strategies.integers(0, 2 ** 32), strategies.integers(1, 6))
    def test_iterates_divide_first_index(self, p, seed, n):
        if n % p == 0:
            n += 1
        rng = SplitMix64(seed)
        q = random_q(rng, p, p + 1, 2 * p + 2)
        f = random_wild(rng, p, q, 2 * q + 2)
        field = f.ring
        assert pind_laurent(iterate(f, n), 1) == field.mul(field.inverse(field.from_int(n)), pind_laurent(f, 1))

    def test_index_report(self):
        f = wild(3, 12, {5: 1})
        report = index_report(f)
        assert report.ind == 0
        assert report.closed_agrees
        data = report.to_dict()
        assert data['ell'] == [1, 4]
        assert data['pind'] == {'1': '0', '2': '0'}
        assert data['resit'] == '1'
        assert data['smallest_j'] == 'NoneUpTo(2)'

    def test_partial_index_report(self):
        report = index_report(wild(3, 30, {8: 1, 9: 1}), 1)
        assert report.pind == [1]
        assert report.ind is None
        assert report.resit is None


class TestDeltaAndResidues:
    def test_expected_delta_first_levels(self):
        field = FpField(3)
        assert expected_delta(field, 0, 2, 1) == 2
        assert expected_delta(field, 1, 1, 1) == 2
        assert expected_delta(field, 2, 1, 1) == 1

    def test_delta_matches_closed_form(self):
        f = wild(3, required_precision(7, 3, 1), {8: 1, 9: 1})
        assert delta_coefficient(f, 1) == expected_delta(f.ring, 1, f.a(7), pind_laurent(f, 1))

    @settings(max_examples=20)
    @given(strategies.integers(0, 2 ** 32))
    def test_delta_closed_form_on_samples(self, seed):
        rng = SplitMix64(seed)
        f = random_wild(rng, 3, 4, required_precision(4, 3, 1))
        pind_1 = pind_laurent(f, 1)
        if pind_1 == 0:
            return
        assert delta_coefficient(f, 1) == expected_delta(f.ring, 1, f.a(4), pind_1)

    def test_residue_of_form_examples(self):
        field = FpField(3)
        h = TruncatedSeries.from_terms(field, 6, {1: 1, 2: 1})
        assert residue_of_form(h, 3, 4) == 0
        assert residue_of_form(h, 3, 3) == 1
        h2 = TruncatedSeries.from_terms(field, 6, {1: 2, 2: 1})
        assert residue_of_form(h2, 3, 3) == 2

    def test_residue_of_form_needs_multiple_of_p(self):
        h = TruncatedSeries.identity(FpField(3), 6)
        with pytest.raises(NotDivisible):
            residue_of_form(h, 2, 4)

    @settings(max_examples=30)
    @given(strategies.sampled_from([3, 5]), strategies.integers(0, 2 ** 32))
    def test_powers_are_zero(self, p, seed):
        rng = SplitMix64(seed)
        h = random_coordinate(rng, p, 4 * p + 2)
        field = h.ring
        for N in range(1, 2 * p + 1):
            if N % p:
                assert residue_of_form(h, p, N) == 0
        assert residue_of_form(h, p, p) == field.pow(h.coeff(1), -p)


class TestClassification:
    def test_smallest_index_verdict(self):
        f = wild(3, required_precision(7, 3, 1), {8: 1, 12: 1})
        verdict = classify(f, 1)
        assert verdict.kind is VerdictKind.SMALLEST_INDEX
        assert (verdict.j, verdict.ell) == (2, 4)
        assert verdict.predicted == [7, 25]
        assert verdict.matches

    def test_q_ramified_verdict(self):
        f = wild(3, required_precision(4, 3, 2), {5: 1})
        verdict = classify(f, 2)
        assert verdict.kind is VerdictKind.Q_RAMIFIED
        assert verdict.predicted == [4, 16, 52]
        assert verdict.to_dict()['status'] == 'match'

    def test_unclassified(self):
        f = wild(3, required_precision(4, 3, 1), {5: 1, 9: 1})
        assert predicted_profile(f, 1) is None
        assert classify(f, 1).kind is VerdictKind.UNCLASSIFIED

    def test_unresolved_at_low_precision(self):
        f = wild(3, 20, {8: 1, 9: 1})
        assert compare_profile(lower_ramification(f, 1), [7, 22]) is VerdictStatus.UNRESOLVED
        assert compare_profile(lower_ramification(f, 1), [7, 19]) is VerdictStatus.MISMATCH

    def test_precondition(self):
        with pytest.raises(PreconditionViolation):
            classify(wild(3, 20, {3: 1}), 1)

    @pytest.mark.parametrize("terms,expected", [
        ({5: 1}, (True, True)),
        ({5: 1, 6: 2}, (False, False)),
        ({5: 1, 9: 1}, (False, False)),
    ])
    def test_is_q_ramified(self, terms, expected):
        f = wild(3, required_precision(4, 3, 1), terms)
        assert is_q_ramified(f, 1) == expected
