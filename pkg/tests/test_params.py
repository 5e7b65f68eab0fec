from fractions import Fraction

import pytest

from klooster import theorem_parameters
from klooster.errors import InvalidL, ValidationError


class TestRangeExponent:
    def test_worked_value(self):
        # l = 2, n = 4: (29/32) / (7/8); exceeds 1, as expected far below
        # the hypothesis threshold
        tp = theorem_parameters(2, 4, 3)
        assert tp.delta_nl == Fraction(29, 28)
        assert not tp.satisfies_range_hypothesis

    def test_limit_value(self):
        tp = theorem_parameters(2, 10 ** 12, 3)
        assert abs(float(tp.delta_nl - Fraction(29, 32))) < 1e-11
        assert tp.delta_nl_limit == Fraction(29, 32)

    def test_exceeds_limit_for_every_finite_n(self):
        grid = list(range(2, 500)) + [10 ** k for k in range(3, 13)]
        for n in grid:
            assert theorem_parameters(2, n, 3).delta_nl > Fraction(29, 32)

    def test_strictly_decreasing_in_n(self):
        grid = list(range(2, 2000)) + [10 ** k for k in range(4, 7)]
        vals = [theorem_parameters(2, n, 3).delta_nl for n in grid]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_limit_grows_with_depth(self):
        limits = [theorem_parameters(l, 100, 3).delta_nl_limit for l in (2, 3, 4)]
        assert limits[0] < limits[1] < limits[2]

    def test_exact_formula(self):
        for l, n in ((2, 7), (3, 100), (4, 12345)):
            tp = theorem_parameters(l, n, 5)
            num = 1 - Fraction(3, 2 ** (2 ** l + 2 * l - 3))
            den = 1 - Fraction(1, n * 2 ** (l - 1))
            assert tp.delta_nl == num / den


class TestAuxiliaryConstants:
    def test_support_size_constants(self):
        tp = theorem_parameters(2, 50, 3)
        assert tp.t_size == 4
        assert tp.delta1 == tp.delta2 == Fraction(1, 16)
        assert tp.delta3 == Fraction(1, 6)  # 1 / C(4,2)

    def test_rho_small_prime(self):
        # p = 3 <= 2*4 - 1, and 3^r >= 8 needs r = 2
        assert theorem_parameters(2, 50, 3).rho == 1 + 2

    def test_rho_large_prime(self):
        # p = 11 > 7; 11^1 >= 8
        assert theorem_parameters(2, 50, 11).rho == 1

    def test_depth_bound_value(self):
        # floor((1/6) * (floor(50/16) - 3)) = 0 at n = 50, p = 3
        assert theorem_parameters(2, 50, 3).d_l == 0
        # n = 160: floor(160/16) = 10; (10 - 3)/6 -> 1
        assert theorem_parameters(2, 160, 3).d_l == 1

    def test_k_threshold_exponent(self):
        tp = theorem_parameters(2, 5, 3)
        assert tp.k_min_exponent == Fraction(5, 128) + 1

    def test_hypothesis_thresholds(self):
        tp = theorem_parameters(2, 5, 3)
        assert tp.n_min_range == 2 ** 20
        assert tp.n_min_weighted == 2 ** 10
        assert not tp.satisfies_weighted_hypothesis
        assert theorem_parameters(2, 2 ** 10 + 1, 3).satisfies_weighted_hypothesis
        assert theorem_parameters(2, 2 ** 20 + 1, 3).satisfies_range_hypothesis

    def test_subdivision_exponent(self):
        assert theorem_parameters(2, 5, 3).delta_subdivision == Fraction(1, 64)


class TestValidation:
    def test_depth_below_two(self):
        with pytest.raises(InvalidL):
            theorem_parameters(1, 10, 3)

    def test_bad_prime(self):
        with pytest.raises(ValidationError):
            theorem_parameters(2, 10, 4)

    def test_bad_exponent(self):
        with pytest.raises(ValidationError):
            theorem_parameters(2, 0, 3)
