import cmath
import math

import pytest

from klooster import (
    Interval,
    PrimePowerModulus,
    WeightedSumSpec,
    completion_identity_check,
    geometric_window,
    kappa,
    thm2_ratio,
    weighted_sum,
)
from klooster.errors import IntervalTooLong, ValidationError

M9 = PrimePowerModulus(3, 2)
M27 = PrimePowerModulus(3, 3)
M243 = PrimePowerModulus(3, 5)


def e(x):
    return cmath.exp(2j * math.pi * x)


def oracle_double_sum(a, M, q, N, K):
    """Literal double loop over (b, x): no row tables, no reductions."""
    total = 0j
    for b in range(N + 1, N + K + 1):
        inner = 0j
        for x in range(1, q):
            if math.gcd(x, q) != 1:
                continue
            inner += e(((a * pow(x, -1, q) + b * x) % q) / q)
        total += e((-M * b) % q / q) * inner
    return total


class TestInterval:
    def test_count_floors_real_lengths(self):
        assert Interval(0, 4.9).count == 4
        assert list(Interval(2, 3).points()) == [3, 4, 5]
        assert Interval(5, 0).count == 0

    def test_negative_length_rejected(self):
        with pytest.raises(ValidationError):
            Interval(0, -1)


class TestWeightedSum:
    def test_single_point(self):
        spec = WeightedSumSpec(a=1, M=2, modulus=M9, interval=Interval(4, 1))
        from klooster import KloostermanQuery, kl_brute

        expected = e((-2 * 5) % 9 / 9) * kl_brute(KloostermanQuery(1, 5, M9)).value
        assert abs(weighted_sum(spec, "brute") - expected) < 1e-9

    def test_full_period_orthogonality(self):
        spec = WeightedSumSpec(a=1, M=0, modulus=M9, interval=Interval(0, 9))
        assert abs(weighted_sum(spec, "brute")) < 1e-6 * 9

    def test_against_double_loop_oracle(self):
        spec = WeightedSumSpec(a=1, M=1, modulus=M27, interval=Interval(0, 13))
        expected = oracle_double_sum(1, 1, 27, 0, 13)
        assert abs(weighted_sum(spec, "brute") - expected) < 1e-8

    def test_methods_agree(self):
        spec = WeightedSumSpec(a=2, M=5, modulus=M27, interval=Interval(-7, 19))
        vb = weighted_sum(spec, "brute")
        vc = weighted_sum(spec, "closed")
        assert abs(vb - vc) < 1e-6 * math.sqrt(27) * 19

    def test_non_unit_rejected(self):
        with pytest.raises(ValidationError):
            WeightedSumSpec(a=3, M=0, modulus=M9, interval=Interval(0, 3))


class TestThm2Ratio:
    def test_zero_sum_gives_zero_ratio(self):
        spec = WeightedSumSpec(a=1, M=0, modulus=M243, interval=Interval(0, 243))
        meas = thm2_ratio(spec, 2)
        assert meas.ratio < 1e-8

    def test_partial_interval_is_finite_and_positive(self):
        spec = WeightedSumSpec(a=1, M=1, modulus=M243, interval=Interval(0, 81))
        meas = thm2_ratio(spec, 2)
        assert meas.ratio > 0
        assert meas.abs_value == pytest.approx(abs(weighted_sum(spec, "brute")))
        # threshold p^(n/2^(2^l+2l-1) + 1) = 3^(5/128 + 1)
        assert meas.k_threshold == pytest.approx(3.0 ** (5 / 128 + 1))
        assert meas.meets_threshold

    def test_threshold_flag_off_for_short_intervals(self):
        spec = WeightedSumSpec(a=1, M=1, modulus=M243, interval=Interval(0, 3))
        assert not thm2_ratio(spec, 2).meets_threshold


class TestGeometricWindow:
    def test_zero_frequency_gives_length(self):
        assert geometric_window(9, 0, 5, 7) == 7
        assert geometric_window(9, 18, 5, 7) == 7

    def test_zero_length(self):
        assert geometric_window(9, 1, 0, 0) == 0

    def test_against_direct_sum(self):
        w, s, U1, length = 9, 1, 0, 5
        direct = sum(e((-s * d) % w / w) for d in range(U1 + 1, U1 + length + 1))
        assert abs(geometric_window(w, s, U1, length) - direct) < 1e-12

    def test_independent_of_window_start(self):
        assert geometric_window(25, 3, 0, 11) == pytest.approx(
            geometric_window(25, 3, 999, 11))

    @pytest.mark.parametrize("w,length", [(27, 5), (27, 27), (125, 60)])
    def test_magnitude_bound(self, w, length):
        for s in range(-w, w + 1):
            dist = abs(s / w - round(s / w))
            cap = length if dist == 0 else min(length, 1 / (2 * dist))
            assert abs(geometric_window(w, s, 3, length)) <= cap + 1


class TestCompletionIdentity:
    def test_empty_interval(self):
        res = completion_identity_check(1, 1, M27, 0, 0)
        assert res.lhs == 0 and abs(res.rhs) < 1e-9

    def test_single_unit(self):
        res = completion_identity_check(3, 1, PrimePowerModulus(5, 2), 1, 1)
        # interval (1, 2] holds the single unit u = 2
        assert abs(res.lhs - e((3 * pow(2, -1, 25)) % 25 / 25)) < 1e-12
        assert res.difference < 1e-6 * 5

    def test_worked_interval(self):
        res = completion_identity_check(1, 1, M27, 0, 10)
        assert res.difference < 1e-6 * 27 ** 0.5

    def test_interval_skips_non_units(self):
        # (0, 3] holds units 1, 2 only
        res = completion_identity_check(1, 1, M9, 0, 3)
        direct = e((1 * 1) % 9 / 9) + e((1 * pow(2, -1, 9)) % 9 / 9)
        assert abs(res.lhs - direct) < 1e-12

    def test_non_unit_first_argument_still_exact(self):
        # p | k*a only restricts nothing: the identity holds regardless
        res = completion_identity_check(3, 1, M27, 2, 11)
        assert res.difference < 1e-6 * 27 ** 0.5

    def test_too_long_rejected(self):
        with pytest.raises(IntervalTooLong):
            completion_identity_check(1, 1, M9, 0, 10)


class TestKappa:
    def test_single_term(self):
        got = kappa(1, 1, M27, 0, 1, block=1)
        from klooster import KloostermanQuery, kl_brute

        # K = 1: the block at m = 1 is the single point s = 1
        expected = abs(kl_brute(KloostermanQuery(1, 1, M27)).value)
        assert got == pytest.approx(expected, abs=1e-9)

    def test_all_zero_block(self):
        # q = 9, block s in {2, 3}: both Kloosterman values vanish
        got = kappa(1, 1, M9, 0, 2, block=1)
        assert got < 1e-6

    def test_prefix_maximum_matches_direct_resummation(self):
        from klooster.kloosterman import brute_row

        row = brute_row(M27)
        U1, K, block = 0, 9, 1
        best = 0.0
        for R in range(1, K + 1):
            total = 0j
            for s in range((K - 1) * block + 1, (K - 1) * block + R + 1):
                total += e((-s * U1) % 27 / 27) * float(row[s % 27])
            best = max(best, abs(total))
        assert kappa(1, 1, M27, U1, K, block=block) == pytest.approx(best, abs=1e-9)

    def test_invalid_k(self):
        with pytest.raises(ValidationError):
            kappa(1, 1, M9, 0, 0)
