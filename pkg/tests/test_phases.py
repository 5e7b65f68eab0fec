import math

import pytest

from klooster import (
    PhaseSpec,
    PrimePowerModulus,
    complete_class_sum,
    mixed_character_sum,
    phase_eval,
)
from klooster.errors import (
    NonResidueAtTau,
    NonUnitAtTau,
    SearchTooLarge,
    ValidationError,
)
from klooster.phases import admissible_class_representatives

M49 = PrimePowerModulus(7, 2)
M125 = PrimePowerModulus(5, 3)


class TestPhaseSpec:
    def test_admissibility_checked_at_construction(self):
        # inv(1)*(d + 0) must be a nonzero square mod 7: squares are {1,2,4}
        PhaseSpec(support=(0,), eps=(1,), a=1, modulus=M49, d_class=2)
        with pytest.raises(NonResidueAtTau):
            PhaseSpec(support=(0,), eps=(1,), a=1, modulus=M49, d_class=3)
        with pytest.raises(NonUnitAtTau):
            PhaseSpec(support=(0,), eps=(1,), a=1, modulus=M49, d_class=0)

    def test_duplicate_support_rejected(self):
        with pytest.raises(ValidationError):
            PhaseSpec(support=(1, 1 + 49), eps=(1, 1), a=1, modulus=M49, d_class=0)

    def test_admissible_representatives(self):
        reps = admissible_class_representatives(1, (0,), M49)
        assert reps == [1, 2, 4]


class TestPhaseEval:
    def test_zero_weights(self):
        spec = PhaseSpec(support=(0,), eps=(0,), a=1, modulus=M49, d_class=2)
        assert phase_eval(spec, 2) == 0

    def test_worked_value(self):
        # root(2) = 10 mod 49, so f(2) = 2 * 10 = 20
        spec = PhaseSpec(support=(0,), eps=(1,), a=1, modulus=M49, d_class=2)
        assert phase_eval(spec, 2) == 20

    def test_half_of_single_term_squares_back(self):
        spec = PhaseSpec(support=(0,), eps=(1,), a=1, modulus=M49, d_class=2)
        for k in (2, 9, 16, 44):
            f = phase_eval(spec, k)
            half = f * pow(2 * 1, -1, 49) % 49
            assert (half * half - k) % 49 == 0

    def test_class_membership_enforced(self):
        spec = PhaseSpec(support=(0,), eps=(1,), a=1, modulus=M49, d_class=2)
        with pytest.raises(ValidationError):
            phase_eval(spec, 3)

    def test_multi_offset(self):
        from klooster import sqrt_mod_prime_power

        spec = PhaseSpec(support=(0, 2), eps=(1, -1), a=1, modulus=M49, d_class=2)
        r0 = sqrt_mod_prime_power(2, M49).r1
        r2 = sqrt_mod_prime_power(4, M49).r1
        assert phase_eval(spec, 2) == 2 * (r0 - r2) % 49


class TestCompleteClassSum:
    def test_constant_phase_full_class(self):
        spec = PhaseSpec(support=(0,), eps=(0,), a=1, modulus=M125, d_class=1)
        res = complete_class_sum(spec, 0)
        assert res.value == pytest.approx(25 + 0j, abs=1e-9)
        assert res.points == 25

    def test_geometric_orthogonality(self):
        spec = PhaseSpec(support=(0,), eps=(0,), a=1, modulus=M125, d_class=1)
        for r in (1, 5, 7, 24):
            assert abs(complete_class_sum(spec, r).value) < 1e-9 * 125

    def test_full_magnitude_at_last_level(self):
        spec = PhaseSpec(support=(0,), eps=(0,), a=1, modulus=M125, d_class=1)
        res = complete_class_sum(spec, 25)
        assert abs(res.value) == pytest.approx(25, abs=1e-9)

    def test_against_direct_python_sum(self):
        from klooster import unit_circle

        spec = PhaseSpec(support=(1, 3), eps=(1, 1), a=1, modulus=M125, d_class=3)
        r = 7
        direct = 0j
        for t in range(25):
            k = 3 + 5 * t
            direct += unit_circle(phase_eval(spec, k) + r * k, 125)
        res = complete_class_sum(spec, r)
        assert abs(res.value - direct) < 1e-9

    def test_ratio_normalization(self):
        spec = PhaseSpec(support=(1, 3), eps=(1, 1), a=1, modulus=M125, d_class=3)
        res = complete_class_sum(spec, 0)
        assert res.bound == pytest.approx(5.0 ** ((1 - 0.25) * 3))
        assert res.ratio == pytest.approx(abs(res.value) / res.bound)

    def test_guard(self):
        big = PrimePowerModulus(3, 16)
        spec_kwargs = dict(support=(0,), eps=(0,), a=1, modulus=big, d_class=1)
        with pytest.raises(SearchTooLarge):
            complete_class_sum(PhaseSpec(**spec_kwargs), 0)


class TestMixedCharacterSum:
    def test_worked_example(self):
        res = mixed_character_sum(1, (0,), 0, 7)
        # admissible d: the nonzero squares mod 7, i.e. {1, 2, 4}
        assert res.value == pytest.approx(3 + 0j)
        assert res.main == pytest.approx(3.5)
        assert res.error == pytest.approx(-0.5 + 0j)

    def test_empty_offsets(self):
        res = mixed_character_sum(1, (), 0, 7)
        assert res.value == pytest.approx(7 + 0j)
        assert res.error == pytest.approx(0j)
        res1 = mixed_character_sum(1, (), 3, 7)
        assert abs(res1.value) < 1e-12

    def test_nonzero_frequency_bound(self):
        res = mixed_character_sum(1, (0,), 1, 7)
        assert abs(res.error) <= 3 * math.sqrt(7)

    def test_direct_enumeration(self):
        from klooster import unit_circle

        p, A, T, C = 11, 3, (0, 2), 4
        squares = {x * x % p for x in range(1, p)}
        direct = sum(unit_circle(d * C, p) for d in range(p)
                     if all((A * (d + t)) % p in squares for t in T))
        res = mixed_character_sum(A, T, C, p)
        assert abs(res.value - direct) < 1e-12

    def test_validation(self):
        with pytest.raises(ValidationError):
            mixed_character_sum(7, (0,), 0, 7)
        with pytest.raises(ValidationError):
            mixed_character_sum(1, (0, 7), 0, 7)
        with pytest.raises(ValidationError):
            mixed_character_sum(1, (0, 1, 2, 3, 4, 5), 0, 13)
