import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chshlab.errors import InvalidInputError
from chshlab.trig_model import (
    AngleSet,
    pair_distribution,
    pair_distribution_from_cos,
    pair_expectation,
    pair_probability,
    single_marginal,
)

TOL = 1e-12

finite_angles = st.floats(
    min_value=-50.0, max_value=50.0, allow_nan=False, allow_infinity=False
)


class TestPairProbability:
    def test_equal_outcomes_at_two_pi_thirds(self):
        assert pair_probability(+1, +1, 2 * math.pi / 3) == pytest.approx(1 / 8, abs=TOL)

    def test_unequal_outcomes_at_pi(self):
        assert pair_probability(-1, +1, math.pi) == pytest.approx(0.0, abs=TOL)

    def test_equal_outcomes_at_zero(self):
        assert pair_probability(+1, +1, 0.0) == 0.5

    @pytest.mark.parametrize("bad", [0, 2, -2, "x"])
    def test_rejects_bad_outcome(self, bad):
        with pytest.raises(InvalidInputError):
            pair_probability(bad, +1, 0.0)

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf, None])
    def test_rejects_bad_angle(self, bad):
        with pytest.raises(InvalidInputError):
            pair_probability(+1, +1, bad)


class TestPairDistribution:
    def test_worked_block(self):
        dist = pair_distribution(2 * math.pi / 3)
        assert dist.as_tuple() == pytest.approx((1 / 8, 3 / 8, 3 / 8, 1 / 8), abs=TOL)

    def test_pi_block(self):
        assert pair_distribution(math.pi).as_tuple() == pytest.approx(
            (1 / 2, 0, 0, 1 / 2), abs=TOL
        )

    def test_orthogonal_block(self):
        assert pair_distribution(math.pi / 2).as_tuple() == pytest.approx(
            (0, 1 / 2, 1 / 2, 0), abs=TOL
        )

    def test_from_cos_is_exact_for_rational_cosine(self):
        from fractions import Fraction

        dist = pair_distribution_from_cos(Fraction(-1, 2))
        assert dist.as_tuple() == (
            Fraction(1, 8),
            Fraction(3, 8),
            Fraction(3, 8),
            Fraction(1, 8),
        )

    def test_from_cos_rejects_out_of_range(self):
        with pytest.raises(InvalidInputError):
            pair_distribution_from_cos(1.5)

    def test_validate_accepts_the_law_and_rejects_junk(self):
        from chshlab.trig_model import PairDistribution

        pair_distribution(1.234).validate()
        with pytest.raises(InvalidInputError):
            PairDistribution(0.6, 0.6, 0.0, 0.0).validate()
        with pytest.raises(InvalidInputError):
            PairDistribution(1.2, -0.2, 0.0, 0.0).validate()

    def test_random_blocks_are_distributions(self):
        rng = np.random.default_rng(11)
        for tb in rng.uniform(-20, 20, size=10_000):
            p = pair_distribution(float(tb)).as_tuple()
            assert all(-TOL <= x <= 1 + TOL for x in p)
            assert abs(sum(p) - 1.0) <= TOL
            assert p[0] == p[3] and p[1] == p[2]


class TestPairExpectation:
    def test_known_cosine_values(self):
        assert pair_expectation(2 * math.pi / 3) == pytest.approx(-0.5, abs=TOL)
        assert pair_expectation(math.pi) == pytest.approx(1.0, abs=TOL)
        assert pair_expectation(0.0) == 1.0

    def test_matches_brute_force_sum(self):
        rng = np.random.default_rng(12)
        for tb in rng.uniform(-20, 20, size=10_000):
            tb = float(tb)
            brute = sum(
                z * zp * pair_probability(z, zp, tb)
                for z in (-1, +1)
                for zp in (-1, +1)
            )
            assert pair_expectation(tb) == pytest.approx(brute, abs=TOL)

    @given(finite_angles)
    def test_even_in_the_angle(self, tb):
        assert pair_expectation(tb) == pair_expectation(-tb)


class TestSingleMarginal:
    def test_is_half_at_worked_angle(self):
        assert single_marginal(+1, 2 * math.pi / 3) == pytest.approx(0.5, abs=TOL)
        assert single_marginal(-1, 0.0) == pytest.approx(0.5, abs=TOL)

    def test_matches_row_sum_oracle(self):
        tb = 1.234
        oracle = pair_probability(+1, -1, tb) + pair_probability(+1, +1, tb)
        assert single_marginal(+1, tb) == oracle
        assert oracle == pytest.approx(0.5, abs=TOL)

    def test_single_expectations_vanish(self):
        rng = np.random.default_rng(13)
        for tb in rng.uniform(-20, 20, size=1000):
            e = single_marginal(+1, float(tb)) - single_marginal(-1, float(tb))
            assert abs(e) <= TOL

    def test_rejects_extended_alphabet(self):
        with pytest.raises(InvalidInputError):
            single_marginal(0, 1.0)


class TestAngleSet:
    def test_thetabar_antisymmetry(self, example_angles):
        for j in range(1, 5):
            for k in range(1, 5):
                assert example_angles.thetabar(j, k) == -example_angles.thetabar(k, j)

    def test_measured_differences(self, example_angles):
        tb13, tb14, tb23, tb24 = example_angles.measured_thetabars()
        assert tb13 == pytest.approx(2 * math.pi / 3)
        assert tb14 == pytest.approx(math.pi)
        assert tb23 == pytest.approx(math.pi / 3)
        assert tb24 == pytest.approx(2 * math.pi / 3)

    def test_vartheta_maps_routes_onto_pairs(self, example_angles):
        assert example_angles.vartheta(1, 1) == example_angles.thetabar(1, 3)
        assert example_angles.vartheta(1, 2) == example_angles.thetabar(1, 4)
        assert example_angles.vartheta(2, 1) == example_angles.thetabar(2, 3)
        assert example_angles.vartheta(2, 2) == example_angles.thetabar(2, 4)

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidInputError):
            AngleSet(0.0, math.nan, 0.0, 0.0)
        with pytest.raises(InvalidInputError):
            AngleSet(0.0, 0.0, math.inf, 0.0)

    def test_rejects_bad_indices(self, example_angles):
        with pytest.raises(InvalidInputError):
            example_angles.theta(5)
        with pytest.raises(InvalidInputError):
            example_angles.vartheta(1, 3)
