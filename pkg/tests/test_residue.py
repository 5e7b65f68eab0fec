import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from klooster import (
    PrimePowerModulus,
    epsilon_factor,
    jacobi_symbol,
    mod_inverse,
    p_adic_valuation,
    sqrt_mod_prime,
    sqrt_mod_prime_power,
    unit_circle,
)
from klooster.errors import (
    EvenModulus,
    NonResidue,
    NotInvertible,
    ValidationError,
    ZeroInput,
)

ODD_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23]


class TestPrimePowerModulus:
    def test_basic(self):
        m = PrimePowerModulus(3, 4)
        assert (m.p, m.n, m.q) == (3, 4, 81)
        assert m.phi == 54

    @pytest.mark.parametrize("p,n", [(2, 3), (9, 1), (15, 2), (1, 1), (3, 0), (3, -1)])
    def test_rejects_bad_inputs(self, p, n):
        with pytest.raises(ValidationError):
            PrimePowerModulus(p, n)

    def test_rejects_oversized(self):
        with pytest.raises(ValidationError):
            PrimePowerModulus(3, 40)  # 3^40 > 2^62
        with pytest.raises(ValidationError):
            PrimePowerModulus((1 << 20) + 7, 1)


class TestModInverse:
    def test_identity(self):
        assert mod_inverse(1, 9) == 1

    def test_worked_value(self):
        # 3*5 = 15 = 1 mod 7; exhaustive search confirms 5 is the only inverse
        assert [y for y in range(1, 7) if 3 * y % 7 == 1] == [5]
        assert mod_inverse(3, 7) == 5

    def test_not_invertible(self):
        with pytest.raises(NotInvertible):
            mod_inverse(3, 9)

    @given(st.integers(2, 10 ** 12), st.integers(1, 10 ** 12))
    def test_involution(self, m, x):
        x %= m
        if x == 0 or math.gcd(x, m) != 1:
            return
        assert mod_inverse(mod_inverse(x, m), m) == x


class TestJacobi:
    def test_identity(self):
        assert jacobi_symbol(1, 3) == 1

    def test_non_residue(self):
        # squares mod 3 are {1}
        assert {x * x % 3 for x in range(1, 3)} == {1}
        assert jacobi_symbol(2, 3) == -1

    def test_prime_power_is_power_of_legendre(self):
        assert jacobi_symbol(2, 9) == 1  # (2/3)^2

    def test_even_modulus_rejected(self):
        with pytest.raises(EvenModulus):
            jacobi_symbol(3, 8)

    @pytest.mark.parametrize("p", ODD_PRIMES)
    def test_matches_euler_criterion(self, p):
        for x in range(p):
            euler = pow(x, (p - 1) // 2, p)
            expected = 0 if euler == 0 else (1 if euler == 1 else -1)
            assert jacobi_symbol(x, p) == expected

    @given(st.integers(1, 2001), st.integers(-500, 500), st.integers(-500, 500))
    def test_multiplicative(self, m, x, y):
        m = 2 * m + 1
        assert jacobi_symbol(x * y, m) == jacobi_symbol(x, m) * jacobi_symbol(y, m)


class TestSqrtModPrime:
    def test_unity(self):
        pair = sqrt_mod_prime(1, 11)
        assert (pair.r1, pair.r2) == (1, 10)

    def test_worked_value(self):
        # exhaustive: 3^2 = 9 = 2 mod 7 and 4^2 = 16 = 2 mod 7
        assert [x for x in range(1, 7) if x * x % 7 == 2] == [3, 4]
        pair = sqrt_mod_prime(2, 7)
        assert (pair.r1, pair.r2) == (3, 4)

    def test_non_residue(self):
        assert {x * x % 7 for x in range(1, 7)} == {1, 2, 4}
        with pytest.raises(NonResidue):
            sqrt_mod_prime(3, 7)

    def test_zero_input(self):
        with pytest.raises(ZeroInput):
            sqrt_mod_prime(14, 7)

    @pytest.mark.parametrize("p", [13, 17, 41, 97, 193])  # exercises 2-Sylow descent
    def test_all_roots_square_back(self, p):
        squares = sorted({x * x % p for x in range(1, p)})
        for r in squares:
            pair = sqrt_mod_prime(r, p)
            assert pair.r1 * pair.r1 % p == r
            assert pair.r2 * pair.r2 % p == r
            assert pair.r1 <= (p - 1) // 2


class TestSqrtModPrimePower:
    def test_unity(self):
        mod = PrimePowerModulus(5, 3)
        pair = sqrt_mod_prime_power(1, mod)
        assert (pair.r1, pair.r2) == (1, 124)

    def test_worked_value(self):
        # exhaustive search mod 49: 10^2 = 100 = 2*49 + 2
        assert [x for x in range(49) if x * x % 49 == 2] == [10, 39]
        pair = sqrt_mod_prime_power(2, PrimePowerModulus(7, 2))
        assert (pair.r1, pair.r2) == (10, 39)

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_two_is_never_square_mod_powers_of_three(self, n):
        with pytest.raises(NonResidue):
            sqrt_mod_prime_power(2, PrimePowerModulus(3, n))

    def test_zero_input(self):
        with pytest.raises(ZeroInput):
            sqrt_mod_prime_power(27, PrimePowerModulus(3, 3))

    def test_canonical_root_has_small_base_residue(self):
        mod = PrimePowerModulus(7, 3)
        for r in range(1, mod.q):
            if r % 7 == 0 or jacobi_symbol(r, 7) != 1:
                continue
            pair = sqrt_mod_prime_power(r, mod)
            assert 1 <= pair.r1 % 7 <= 3
            assert pair.r1 * pair.r1 % mod.q == r
            assert (pair.r1 + pair.r2) % mod.q == 0

    def test_large_modulus_lift(self):
        mod = PrimePowerModulus(1048573, 2)  # largest prime below 2^20, squared
        r = 12345678
        pair = sqrt_mod_prime_power(pow(r, 2, mod.q), mod)
        assert pair.r1 * pair.r1 % mod.q == pow(r, 2, mod.q)


class TestValuation:
    def test_unit(self):
        assert p_adic_valuation(1, 7).v == 0

    def test_worked_value(self):
        assert p_adic_valuation(18, 3).v == 2  # 18 = 2 * 3^2

    def test_zero_is_infinite(self):
        val = p_adic_valuation(0, 5)
        assert val.is_infinite
        assert val.absolute_value == 0.0
        assert val.v > 10 ** 100  # comparisons work cleanly

    @given(st.integers(0, 8), st.integers(1, 1000))
    def test_construction(self, k, u):
        if u % 3 == 0:
            return
        val = p_adic_valuation(3 ** k * u, 3)
        assert val.v == k
        assert val.absolute_value == 3.0 ** -k


class TestEpsilonFactor:
    def test_five_is_real(self):
        assert epsilon_factor(PrimePowerModulus(5, 1)).value == 1

    def test_three_is_imaginary(self):
        assert epsilon_factor(PrimePowerModulus(3, 1)).value == 1j

    def test_nine_is_real(self):
        assert epsilon_factor(PrimePowerModulus(3, 2)).value == 1


class TestUnitCircle:
    def test_identity(self):
        assert unit_circle(0, 7) == 1

    def test_periodicity(self):
        assert unit_circle(12 + 35, 35) == unit_circle(12, 35)

    def test_quarter_turn(self):
        assert abs(unit_circle(1, 4) - 1j) < 1e-12

    @given(st.integers(-10 ** 15, 10 ** 15), st.integers(1, 10 ** 9))
    def test_conjugate_product(self, x, w):
        z = unit_circle(x, w) * unit_circle(-x, w)
        assert abs(z - 1) < 1e-12

    @given(st.integers(-10 ** 9, 10 ** 9), st.integers(1, 10 ** 6))
    def test_on_the_circle(self, x, w):
        z = unit_circle(x, w)
        assert abs(z.real ** 2 + z.imag ** 2 - 1) < 1e-12
