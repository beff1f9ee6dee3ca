"""Core bargaining-model behavior: validation, weights, shares, partition."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nashroyalty import (
    DegeneratePayoffsError,
    DisorderedBoundsError,
    FinancialStatement,
    ModelKind,
    NormalizedPayoffs,
    OutOfRangeError,
    PerceptionMatrix,
    SurplusViolationError,
    alpha_case1,
    alpha_case2,
    alpha_from_perceptions,
    optimal_partition,
    party2_share,
    royalty_rate,
    theta_general,
    theta_model,
    validate_bounds,
)

UNIT = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


@st.composite
def payoff_pairs(draw):
    d1 = draw(UNIT)
    d2 = draw(st.floats(min_value=0.0, max_value=1.0 - d1, allow_nan=False))
    return d1, d2


class TestValidateBounds:
    def test_golden_bounds_accepted(self):
        bounds = validate_bounds(0.0, 0.2, 0.0, 0.8)
        assert (bounds.a, bounds.b, bounds.c, bounds.d) == (0.0, 0.2, 0.0, 0.8)
        assert bounds.width1 == pytest.approx(0.2)
        assert bounds.area == pytest.approx(0.16)

    def test_point_mass_bounds_accepted(self):
        bounds = validate_bounds(0.3, 0.3, 0.1, 0.1)
        assert bounds.is_point_mass1 and bounds.is_point_mass2

    def test_disordered_interval_rejected(self):
        with pytest.raises(DisorderedBoundsError, match="a <= b"):
            validate_bounds(0.5, 0.2, 0.0, 0.3)
        with pytest.raises(DisorderedBoundsError, match="c <= d"):
            validate_bounds(0.0, 0.2, 0.4, 0.3)

    def test_out_of_range_values_rejected(self):
        for bad in (-0.1, 1.1, math.nan, math.inf):
            with pytest.raises(OutOfRangeError, match=r"\[0, 1\]"):
                validate_bounds(bad, 0.2, 0.0, 0.3)

    def test_surplus_violation_rejected(self):
        with pytest.raises(SurplusViolationError, match="b \\+ d <= 1"):
            validate_bounds(0.0, 0.6, 0.0, 0.6)

    def test_edge_of_simplex_accepted(self):
        validate_bounds(0.0, 0.5, 0.0, 0.5)
        validate_bounds(0.0, 1.0, 0.0, 0.0)

    def test_swapped_exchanges_parties(self):
        bounds = validate_bounds(0.1, 0.2, 0.3, 0.4)
        assert bounds.swapped() == validate_bounds(0.3, 0.4, 0.1, 0.2)


class TestNormalizedPayoffs:
    def test_sum_above_one_rejected(self):
        with pytest.raises(SurplusViolationError, match="d1 \\+ d2"):
            NormalizedPayoffs(0.6, 0.6)

    def test_unit_range_enforced(self):
        with pytest.raises(OutOfRangeError):
            NormalizedPayoffs(-0.2, 0.1)


class TestBargainingWeights:
    def test_balanced_perceptions_give_exactly_half(self):
        assert alpha_from_perceptions(PerceptionMatrix(1, 1, 1, 1)) == 0.5
        assert alpha_from_perceptions(PerceptionMatrix(0.3, 0.4, 0.3, 0.4)) == 0.5

    def test_one_sided_perceptions(self):
        assert alpha_from_perceptions(PerceptionMatrix(1, 1, 0, 0)) == 1.0
        assert alpha_from_perceptions(PerceptionMatrix(0, 0, 1, 1)) == 0.0

    def test_perception_example(self):
        alpha = alpha_from_perceptions(PerceptionMatrix(0.5, 0.7, 0.4, 0.4))
        assert alpha == pytest.approx(0.6, abs=1e-15)

    @given(UNIT, UNIT, UNIT, UNIT)
    def test_perception_weight_in_unit_interval(self, p11, p12, p21, p22):
        alpha = alpha_from_perceptions(PerceptionMatrix(p11, p12, p21, p22))
        assert 0.0 <= alpha <= 1.0

    def test_outside_option_weight(self):
        assert alpha_case1(0.2, 0.8) == pytest.approx(0.2, abs=1e-15)
        assert alpha_case1(0.5, 0.5) == 0.5
        assert alpha_case1(0.0, 0.0) == 0.5

    def test_proportional_weight(self):
        assert alpha_case2(0.2, 0.8) == pytest.approx(0.2, abs=1e-15)
        assert alpha_case2(0.3, 0.1) == pytest.approx(0.75, abs=1e-15)

    def test_proportional_weight_undefined_at_origin(self):
        with pytest.raises(DegeneratePayoffsError, match="d1 = d2 = 0"):
            alpha_case2(0.0, 0.0)


class TestThetaGeneral:
    def test_examples(self):
        assert theta_general(0.2, 0.8, 0.7) == pytest.approx(0.2, abs=1e-15)
        assert theta_general(0.0, 0.0, 0.5) == 0.5
        assert theta_general(0.3, 0.1, 0.5) == pytest.approx(0.6, abs=1e-15)

    def test_alpha_validated(self):
        with pytest.raises(OutOfRangeError, match="alpha"):
            theta_general(0.2, 0.3, 1.5)

    @given(payoff_pairs(), UNIT)
    def test_individual_rationality(self, pair, alpha):
        d1, d2 = pair
        theta = theta_general(d1, d2, alpha)
        assert d1 - 1e-12 <= theta <= 1.0 - d2 + 1e-12
        assert 0.0 <= theta <= 1.0


class TestThetaModel:
    def test_golden_point_all_models(self):
        for model in ModelKind:
            assert theta_model(model, 0.2, 0.8) == pytest.approx(0.2, abs=1e-15)

    @given(st.floats(min_value=0.0, max_value=0.5, allow_nan=False))
    def test_equal_payoffs_give_exactly_half(self, v):
        assert theta_model(ModelKind.NBS, v, v) == 0.5
        assert theta_model(ModelKind.CASE1, v, v) == 0.5
        if v > 0.0:
            assert theta_model(ModelKind.CASE2, v, v) == 0.5

    def test_proportional_model_undefined_at_origin(self):
        with pytest.raises(DegeneratePayoffsError):
            theta_model(ModelKind.CASE2, 0.0, 0.0)

    @given(payoff_pairs(), st.sampled_from(list(ModelKind)))
    def test_matches_general_solution_with_model_weight(self, pair, model):
        d1, d2 = pair
        if model is ModelKind.CASE2 and d1 + d2 == 0.0:
            return
        weight = {
            ModelKind.NBS: lambda: 0.5,
            ModelKind.CASE1: lambda: alpha_case1(d1, d2),
            ModelKind.CASE2: lambda: alpha_case2(d1, d2),
        }[model]()
        direct = theta_model(model, d1, d2)
        composed = theta_general(d1, d2, weight)
        assert direct == pytest.approx(composed, abs=1e-12)

    @given(payoff_pairs(), st.sampled_from(list(ModelKind)))
    def test_exchange_antisymmetry(self, pair, model):
        d1, d2 = pair
        if model is ModelKind.CASE2 and d1 + d2 == 0.0:
            return
        assert theta_model(model, d1, d2) + theta_model(model, d2, d1) == pytest.approx(
            1.0, abs=1e-12
        )

    @given(payoff_pairs(), st.sampled_from(list(ModelKind)))
    def test_share_stays_in_unit_interval(self, pair, model):
        d1, d2 = pair
        if model is ModelKind.CASE2 and d1 + d2 == 0.0:
            return
        assert 0.0 <= theta_model(model, d1, d2) <= 1.0

    def test_nbs_recovered_from_general_solution(self):
        for d1, d2 in ((0.0, 0.0), (0.2, 0.8), (0.3, 0.3), (0.15, 0.4)):
            assert theta_general(d1, d2, 0.5) == pytest.approx(
                theta_model(ModelKind.NBS, d1, d2), abs=1e-12
            )


class TestOptimalPartition:
    def test_example_split(self):
        part = optimal_partition(100.0, 20.0, 30.0, 0.5)
        assert part.pi1 == pytest.approx(45.0, abs=1e-12)
        assert part.pi2 == pytest.approx(55.0, abs=1e-12)

    def test_full_weight_gives_whole_surplus_to_party1(self):
        part = optimal_partition(100.0, 20.0, 30.0, 1.0)
        assert part.pi1 == pytest.approx(70.0)
        assert part.pi2 == pytest.approx(30.0)

    @given(
        st.floats(min_value=1e-6, max_value=1e9, allow_nan=False),
        UNIT,
        UNIT,
        UNIT,
    )
    def test_conserves_operating_income(self, oi, f1, f2, alpha):
        d1_abs = f1 * oi
        d2_abs = f2 * (oi - d1_abs)
        part = optimal_partition(oi, d1_abs, d2_abs, alpha)
        assert abs(part.pi1 + part.pi2 - oi) <= 1e-12 * oi
        assert part.pi1 >= d1_abs - 1e-12 * oi
        assert part.pi2 >= d2_abs - 1e-12 * oi

    def test_payoffs_exceeding_income_rejected(self):
        with pytest.raises(SurplusViolationError, match="operating income"):
            optimal_partition(100.0, 60.0, 50.0, 0.5)

    def test_nonpositive_income_rejected(self):
        with pytest.raises(OutOfRangeError):
            optimal_partition(0.0, 0.0, 0.0, 0.5)


class TestFinancials:
    def test_margin_and_royalty_rate(self):
        fs = FinancialStatement(operating_revenue=100.0, operating_cost=80.0)
        assert fs.operating_income == pytest.approx(20.0)
        assert fs.operating_margin == pytest.approx(0.2)
        assert royalty_rate(0.35, fs) == pytest.approx(0.07, abs=1e-15)

    def test_income_must_be_positive(self):
        with pytest.raises(OutOfRangeError, match="operating income"):
            FinancialStatement(operating_revenue=80.0, operating_cost=80.0)

    def test_negative_inputs_rejected(self):
        with pytest.raises(OutOfRangeError):
            FinancialStatement(operating_revenue=-1.0, operating_cost=0.0)

    @given(UNIT)
    def test_party2_share_complements_exactly(self, theta1):
        assert theta1 + party2_share(theta1) == 1.0
