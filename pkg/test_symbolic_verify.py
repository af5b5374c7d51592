"""
一般形の級数（係数が F_p[x_0, x_1, ...]）による記号的な検証のテスト
"""
import pytest
from hypothesis import given, settings, strategies

from wildram.dynamics.wild import WildSeries, iterate
from wildram.errors import PreconditionViolation
from wildram.rings import MPolyRing
from wildram.symbolic.generic import GenericShape, build_generic, specialize_generic, tail_start
from wildram.symbolic.verify import (
    delta_short_target, main_lemma_targets, recurrence_alpha_beta, verify_delta_identity,
    verify_delta_short, verify_main_lemma,
)


class TestGenericSeries:
    def test_shape(self):
        generic = build_generic(3, 4, 1, GenericShape.DELTA_SHORT, 16)
        gens = generic.ring.gens()
        assert generic.series.coeff(5) == gens[0]
        assert generic.series.coeff(6) == gens[1]
        assert generic.tail_start() == 4 + 1 + 3 + 2
        # z^10..z^16 にそれぞれ x_2..x_8
        assert generic.tail == 7
        assert len(gens) == 9
        assert [generic.series.coeff(d) for d in range(10, 17)] == gens[2:]
        assert not generic.series.coeff(9)

    def test_tail_is_cut_by_precision(self):
        generic = build_generic(3, 4, 1, GenericShape.MAIN_LEMMA, 8)
        assert generic.tail == 1
        assert generic.ring.nvars == 3
        short = build_generic(3, 4, 1, GenericShape.MAIN_LEMMA, 7)
        assert short.tail == 0
        assert short.ring.nvars == 2

    def test_main_lemma_tail_starts_at_q_plus_two_ell_plus_two(self):
        assert tail_start(4, 1, 3, GenericShape.MAIN_LEMMA) == 4 + 2 * 1 + 2
        assert tail_start(11, 1, 5, GenericShape.MAIN_LEMMA) == 15
        generic = build_generic(3, 4, 1, GenericShape.MAIN_LEMMA, 12)
        gens = generic.ring.gens()
        assert not generic.series.coeff(7)
        assert [generic.series.coeff(d) for d in range(8, 13)] == gens[2:]

    def test_delta_short_tail_starts_at_q_plus_ell_plus_p_plus_two(self):
        assert tail_start(4, 1, 3, GenericShape.DELTA_SHORT) == 4 + 1 + 3 + 2
        assert tail_start(7, 7, 5, GenericShape.DELTA_SHORT) == 7 + 7 + 5 + 2
        generic = build_generic(5, 7, 2, GenericShape.DELTA_SHORT, 20)
        gens = generic.ring.gens()
        assert generic.tail_start() == 16
        assert [generic.series.coeff(d) for d in range(10, 16)] == [gens[1]] + [generic.ring.zero] * 5
        assert [generic.series.coeff(d) for d in range(16, 21)] == gens[2:]

    @pytest.mark.parametrize("p,q,ell,shape", [
        (3, 6, 0, GenericShape.DELTA_SHORT),
        (3, 4, 2, GenericShape.DELTA_SHORT),
        (3, 4, 2, GenericShape.MAIN_LEMMA),
        (3, 7, 4, GenericShape.MAIN_LEMMA),
    ])
    def test_rejected_shapes(self, p, q, ell, shape):
        with pytest.raises(PreconditionViolation):
            build_generic(p, q, ell, shape, 30)

    @settings(max_examples=20)
    @given(strategies.data())
    def test_specialization_commutes_with_iteration(self, data):
        generic = build_generic(3, 4, 1, GenericShape.DELTA_SHORT, 16)
        values = data.draw(strategies.lists(strategies.integers(0, 2), min_size=9, max_size=9))
        values[0] = data.draw(strategies.integers(1, 2))
        specialized = WildSeries(specialize_generic(generic.series, values))
        expected = specialize_generic(iterate(generic.wild(), 3).series, values)
        assert iterate(specialized, 3).series == expected

    def test_specialization_needs_all_values(self):
        generic = build_generic(3, 4, 1, GenericShape.DELTA_SHORT, 16)
        with pytest.raises(PreconditionViolation):
            specialize_generic(generic.series, [1, 1])


class TestCongruences:
    def test_main_lemma_targets(self):
        ring = MPolyRing(3, 2)
        x0, x1 = ring.gens()
        beta, gamma = main_lemma_targets(ring, 3)
        assert beta == -(x0 * x0 * x1)
        assert gamma == -(x0 * x1 * x1)

    @pytest.mark.parametrize("p,q,ell", [(3, 4, 1), (3, 5, 2), (3, 7, 1)])
    def test_main_lemma(self, p, q, ell):
        report = verify_main_lemma(p, q, ell)
        assert report.passed, report.to_dict()
        assert report.offending is None

    def test_main_lemma_range(self):
        with pytest.raises(PreconditionViolation):
            verify_main_lemma(3, 2, 2)

    @pytest.mark.parametrize("p,q,ell", [(3, 4, 1), (3, 4, 4), (3, 5, 2), (3, 5, 5)])
    def test_delta_short(self, p, q, ell):
        report = verify_delta_short(p, q, ell)
        assert report.passed, report.to_dict()
        assert report.beta == delta_short_target(MPolyRing(p, report.beta.ring.ngens), p, q, ell)

    def test_delta_short_target_for_q(self):
        ring = MPolyRing(3, 2)
        x0, x1 = ring.gens()
        # (q+1)/2 = 5/2 = 1 in F_3
        assert delta_short_target(ring, 3, 4, 4) == x0 * x0 * (x0 * x0 - x1)

    def test_delta_identity(self):
        assert verify_delta_identity(3, 4, 1)
        assert verify_delta_identity(3, 5, 5)


class TestRecurrence:
    @pytest.mark.parametrize("ell", [1, 4])
    def test_recurrence_up_to_p(self, ell):
        table = recurrence_alpha_beta(3, 4, ell, 3)
        assert table.passed, table.to_dict()
        assert table.alpha_p_vanishes is True
        assert table.beta_p_matches is True

    def test_first_rows(self):
        table = recurrence_alpha_beta(3, 4, 1, 2)
        ring = MPolyRing(3, 2)
        x0, x1 = ring.gens()
        assert table.alphas == [x0, ring.scale(x0 * x0, 5)]
        assert table.betas[0] == x1
        assert table.alpha_p_vanishes is None
        assert table.to_dict()['rows'][0] == [1, "x0", "x1"]

    def test_recurrence_needs_a_row(self):
        with pytest.raises(PreconditionViolation):
            recurrence_alpha_beta(3, 4, 1, 0)
