import math
from fractions import Fraction

import numpy as np
import pytest

from chshlab.errors import InconsistentSystemError, InvalidInputError
from chshlab.quasiprob import (
    FREE_EVENTS,
    JOINT_OUTCOMES,
    FreeAssignment,
    QuasiDistribution,
    abs_variant,
    apply_sigma,
    augmented_rank,
    build_marginals,
    build_sigma,
    chsh_from_quasi,
    expectations_from_quasi,
    joint_index,
    kolmogorov_check,
    marginals_from_cosines,
    rank,
    solve_family,
)
from chshlab.trig_model import AngleSet

from conftest import (
    EXAMPLE_ABS_MARGINALS,
    EXAMPLE_COSINES,
    EXAMPLE_MARGINALS,
    EXAMPLE_QUASI,
    SIGMA_LITERAL,
)

F = Fraction


class TestSigma:
    def test_matches_expected_matrix(self):
        assert build_sigma() == SIGMA_LITERAL

    def test_every_row_aggregates_four_outcomes(self):
        assert all(sum(row) == 4 for row in build_sigma())

    def test_every_outcome_feeds_four_constraints(self):
        sigma = build_sigma()
        assert all(sum(row[c] for row in sigma) == 4 for c in range(16))

    def test_all_plus_column_membership(self):
        sigma = build_sigma()
        col = joint_index(+1, +1, +1, +1)
        rows_with_one = [r for r in range(16) if sigma[r][col]]
        # the (+,+) row of each pair block
        assert rows_with_one == [3, 7, 11, 15]


class TestRank:
    def test_sigma_rank_is_nine(self):
        assert rank(build_sigma()) == 9

    def test_identity_and_zero(self):
        identity = [[int(i == j) for j in range(16)] for i in range(16)]
        assert rank(identity) == 16
        assert rank([[0] * 16 for _ in range(16)]) == 0

    def test_augmented_rank_consistent_cases(self):
        sigma = build_sigma()
        p = marginals_from_cosines(EXAMPLE_COSINES)
        assert augmented_rank(sigma, p) == 9
        assert augmented_rank(sigma, [F(0)] * 16) == 9

    def test_augmented_rank_detects_inconsistency(self):
        sigma = build_sigma()
        p = list(marginals_from_cosines(EXAMPLE_COSINES))
        for i in range(4):
            p[i] *= 2
        assert augmented_rank(sigma, p) == 10

    def test_float_marginals_stay_consistent(self):
        sigma = build_sigma()
        rng = np.random.default_rng(21)
        for _ in range(1000):
            angles = AngleSet(*rng.uniform(-math.pi, math.pi, size=4))
            assert augmented_rank(sigma, build_marginals(angles)) == 9


class TestMarginals:
    def test_worked_example_exact(self):
        assert tuple(marginals_from_cosines(EXAMPLE_COSINES)) == EXAMPLE_MARGINALS

    def test_worked_example_float(self, example_angles):
        p = build_marginals(example_angles)
        assert p == pytest.approx([float(x) for x in EXAMPLE_MARGINALS], abs=1e-12)

    def test_equal_angles_blocks(self):
        p = build_marginals(AngleSet(0.7, 0.7, 0.7, 0.7))
        assert p == pytest.approx([0.5, 0, 0, 0.5] * 4, abs=1e-12)

    def test_eighth_multiples_against_direct_evaluation(self):
        angles = AngleSet(0.0, math.pi / 8, math.pi / 4, 3 * math.pi / 8)
        p = build_marginals(angles)
        for block, tb in enumerate((math.pi / 4, 3 * math.pi / 8, math.pi / 8, math.pi / 4)):
            eq = math.cos(tb) ** 2 / 2
            ne = math.sin(tb) ** 2 / 2
            assert p[4 * block : 4 * block + 4] == pytest.approx([eq, ne, ne, eq], abs=1e-12)


class TestSolveFamily:
    def test_worked_example_bit_for_bit(self):
        solution = solve_family(marginals_from_cosines(EXAMPLE_COSINES))
        assert solution.weights == EXAMPLE_QUASI

    def test_worked_example_satisfies_system_exactly(self):
        p = marginals_from_cosines(EXAMPLE_COSINES)
        solution = solve_family(p)
        assert apply_sigma(solution.weights) == list(p)
        assert solution.total_mass() == 1

    def test_exactly_three_negative_eighths(self):
        solution = solve_family(marginals_from_cosines(EXAMPLE_COSINES))
        assert sum(1 for w in solution.weights if w == F(-1, 8)) == 3

    def test_zero_differences_round_trip(self):
        p = marginals_from_cosines((F(1), F(1), F(1), F(1)))
        solution = solve_family(p)
        assert apply_sigma(solution.weights) == list(p)

    def test_inconsistent_marginals_raise(self):
        p = list(marginals_from_cosines(EXAMPLE_COSINES))
        for i in range(4):
            p[i] *= 2
        with pytest.raises(InconsistentSystemError):
            solve_family(p)

    def test_random_angles_and_free_assignments(self):
        rng = np.random.default_rng(22)
        for _ in range(300):
            angles = AngleSet(*rng.uniform(-math.pi, math.pi, size=4))
            p = build_marginals(angles)
            free = FreeAssignment(tuple(rng.uniform(-1, 1, size=7)))
            solution = solve_family(p, free)
            residual = max(
                abs(lhs - rhs) for lhs, rhs in zip(apply_sigma(solution.weights), p)
            )
            assert residual <= 1e-10
            for event, value in free.as_mapping().items():
                assert solution[event] == value

    def test_total_mass_identity_for_zero_assignment(self):
        rng = np.random.default_rng(23)
        for _ in range(300):
            angles = AngleSet(*rng.uniform(-math.pi, math.pi, size=4))
            solution = solve_family(build_marginals(angles))
            assert abs(solution.total_mass() - 1.0) <= 1e-10

    def test_free_assignment_validation(self):
        with pytest.raises(InvalidInputError):
            FreeAssignment((0,) * 6)
        with pytest.raises(InvalidInputError):
            FreeAssignment((math.nan,) + (0,) * 6)
        assert set(FreeAssignment.zeros().as_mapping()) == set(FREE_EVENTS)


class TestKolmogorovCheck:
    def test_worked_example_negatives(self):
        report = kolmogorov_check(QuasiDistribution(EXAMPLE_QUASI))
        assert report.min_entry == F(-1, 8)
        assert report.negative_outcomes == (
            (-1, -1, -1, -1),
            (-1, -1, -1, +1),
            (+1, -1, -1, -1),
        )
        assert report.total_mass == 1
        assert not report.nonneg_ok
        assert report.total_ok

    def test_uniform_passes_both(self):
        report = kolmogorov_check(QuasiDistribution((F(1, 16),) * 16))
        assert report.nonneg_ok and report.total_ok and report.all_ok

    def test_abs_variant_of_example_breaks_total_mass(self):
        report = kolmogorov_check(abs_variant(QuasiDistribution(EXAMPLE_QUASI)))
        assert report.total_mass == F(7, 4)
        assert not report.total_ok
        assert report.nonneg_ok


class TestAbsVariant:
    def test_flips_exactly_the_negative_entries(self):
        q = QuasiDistribution(EXAMPLE_QUASI)
        qa = abs_variant(q)
        flipped = [i for i in range(16) if qa.weights[i] != q.weights[i]]
        assert flipped == [
            joint_index(-1, -1, -1, -1),
            joint_index(-1, -1, -1, +1),
            joint_index(+1, -1, -1, -1),
        ]
        assert all(w == F(1, 8) for i, w in enumerate(qa.weights) if i in flipped)

    def test_nonnegative_input_unchanged(self):
        q = QuasiDistribution((F(1, 16),) * 16)
        assert abs_variant(q).weights == q.weights

    def test_negated_input_gives_same_result(self):
        q = QuasiDistribution(EXAMPLE_QUASI)
        negated = QuasiDistribution(tuple(-w for w in q.weights))
        assert abs_variant(negated).weights == abs_variant(q).weights


class TestExpectationsAndChsh:
    def test_worked_example_expectations(self):
        q = QuasiDistribution(EXAMPLE_QUASI)
        assert expectations_from_quasi(q) == (F(-1, 2), F(1), F(-1, 2), F(-1, 2))
        assert chsh_from_quasi(q) == F(-5, 2)

    def test_abs_variant_expectations(self):
        qa = abs_variant(QuasiDistribution(EXAMPLE_QUASI))
        assert tuple(apply_sigma(qa.weights)) == EXAMPLE_ABS_MARGINALS
        assert expectations_from_quasi(qa) == (F(-1, 4), F(3, 4), F(1, 4), F(-1, 4))
        assert chsh_from_quasi(qa) == F(-1)

    def test_uniform_gives_zeros(self):
        q = QuasiDistribution((F(1, 16),) * 16)
        assert expectations_from_quasi(q) == (0, 0, 0, 0)
        assert chsh_from_quasi(q) == 0

    def test_genuine_distributions_respect_the_bound(self):
        rng = np.random.default_rng(24)
        masses = rng.dirichlet(np.ones(16), size=10_000)
        for row in masses:
            q = QuasiDistribution(tuple(float(x) for x in row))
            assert abs(chsh_from_quasi(q)) <= 2 + 1e-12


class TestJointIndex:
    def test_lexicographic_order(self):
        assert [JOINT_OUTCOMES[joint_index(*z)] for z in JOINT_OUTCOMES] == list(
            JOINT_OUTCOMES
        )
        assert joint_index(-1, -1, -1, -1) == 0
        assert joint_index(+1, +1, +1, +1) == 15

    def test_rejects_extended_alphabet(self):
        with pytest.raises(InvalidInputError):
            joint_index(0, 1, 1, 1)
