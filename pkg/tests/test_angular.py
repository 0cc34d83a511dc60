import math
import random

import numpy as np
import pytest
from sympy import Rational
from sympy.physics.wigner import wigner_3j as sympy_3j

from attopanda.atomic import angular
from attopanda.errors import DomainError


class TestWigner3j:
    def test_known_value_110(self):
        # orthogonality-normalized benchmark value
        assert angular.wigner_3j(1, 1, 0, 0, 0, 0) == pytest.approx(
            -0.57735026919, abs=1e-11
        )

    def test_m_sum_violation_is_zero(self):
        assert angular.wigner_3j(1, 1, 1, 1, 0, 0) == 0.0

    def test_triangle_violation_is_zero(self):
        assert angular.wigner_3j(1, 1, 3, 0, 0, 0) == 0.0
        assert angular.wigner_3j(0.5, 0.5, 0.5, 0.5, 0.0, -0.5) == 0.0

    def test_non_half_integer_rejected(self):
        with pytest.raises(DomainError):
            angular.wigner_3j(1.2, 1, 1, 0, 0, 0)

    def test_m_exceeding_j_rejected(self):
        with pytest.raises(DomainError):
            angular.wigner_3j(1, 1, 2, 2, 0, -2)

    def test_m_parity_mismatch_rejected(self):
        with pytest.raises(DomainError):
            angular.wigner_3j(0.5, 1, 0.5, 0.0, 0, 0.0)

    def test_orthogonality_200_random_triples(self):
        rng = random.Random(7)
        checked = 0
        while checked < 200:
            two_j1 = rng.randint(0, 12)
            two_j2 = rng.randint(0, 12)
            two_j3 = rng.randint(abs(two_j1 - two_j2), two_j1 + two_j2)
            if (two_j1 + two_j2 + two_j3) % 2 != 0:
                continue
            total = 0.0
            for two_m1 in range(-two_j1, two_j1 + 1, 2):
                for two_m2 in range(-two_j2, two_j2 + 1, 2):
                    two_m3 = -(two_m1 + two_m2)
                    if abs(two_m3) > two_j3:
                        continue
                    val = angular.wigner_3j(
                        two_j1 / 2, two_j2 / 2, two_j3 / 2,
                        two_m1 / 2, two_m2 / 2, two_m3 / 2,
                    )
                    total += (two_j3 + 1) * val * val
            assert total == pytest.approx(1.0, abs=1e-10)
            checked += 1

    def test_against_sympy_random(self):
        rng = random.Random(11)
        for _ in range(40):
            two_j1 = rng.randint(0, 16)
            two_j2 = rng.randint(0, 16)
            two_j3 = rng.randint(abs(two_j1 - two_j2), two_j1 + two_j2)
            if (two_j1 + two_j2 + two_j3) % 2 != 0:
                continue
            two_m1 = rng.randint(-two_j1, two_j1)
            if (two_m1 - two_j1) % 2 != 0:
                two_m1 += 1 if two_m1 < two_j1 else -1
            two_m2 = rng.randint(-two_j2, two_j2)
            if (two_m2 - two_j2) % 2 != 0:
                two_m2 += 1 if two_m2 < two_j2 else -1
            two_m3 = -(two_m1 + two_m2)
            if abs(two_m3) > two_j3:
                continue
            ours = angular.wigner_3j(
                two_j1 / 2, two_j2 / 2, two_j3 / 2,
                two_m1 / 2, two_m2 / 2, two_m3 / 2,
            )
            ref = float(
                sympy_3j(
                    Rational(two_j1, 2), Rational(two_j2, 2), Rational(two_j3, 2),
                    Rational(two_m1, 2), Rational(two_m2, 2), Rational(two_m3, 2),
                )
            )
            assert ours == pytest.approx(ref, abs=1e-10)

    def test_large_j_accuracy(self):
        ours = angular.wigner_3j(20, 20, 20, 4, -10, 6)
        ref = float(sympy_3j(20, 20, 20, 4, -10, 6))
        assert ours == pytest.approx(ref, abs=1e-10)


class TestReducedCk:
    def test_p_to_s(self):
        assert angular.reduced_ck(1, 1, 0) == pytest.approx(1.0, abs=1e-12)

    def test_parity_forbidden_zero(self):
        assert angular.reduced_ck(1, 1, 1) == 0.0
        assert angular.reduced_ck(2, 1, 0) == 0.0

    def test_d_to_p(self):
        assert angular.reduced_ck(2, 1, 1) == pytest.approx(math.sqrt(2.0), abs=1e-12)

    def test_half_integer_formula_vs_sympy(self):
        # independent evaluation of the same half-integer reduced element
        for j, jp in [(0.5, 0.5), (0.5, 1.5), (1.5, 0.5), (1.5, 1.5),
                      (2.5, 1.5), (1.5, 2.5)]:
            ref3j = float(
                sympy_3j(
                    Rational(int(2 * j), 2), 1, Rational(int(2 * jp), 2),
                    Rational(-1, 2), 0, Rational(1, 2),
                )
            )
            expected = (
                (-1.0) ** (j - 0.5)
                * math.sqrt((2 * j + 1) * (2 * jp + 1))
                * ref3j
            )
            assert angular.reduced_ck_half(j, 1, jp) == pytest.approx(expected, abs=1e-12)

    def test_half_integer_example_value(self):
        # <1/2 || C^1 || 3/2> = -2/sqrt(3)
        assert angular.reduced_ck_half(0.5, 1, 1.5) == pytest.approx(
            -2.0 / math.sqrt(3.0), abs=1e-12
        )


class TestWignerEckartZ:
    def test_zero_reduced_gives_zero(self):
        assert angular.wigner_eckart_z(1.5, 0.5, 0.5, 0.0) == 0.0

    def test_q0_component_m_reflection(self):
        for (j, jp) in [(1.5, 0.5), (2.5, 1.5), (1, 2)]:
            m_max = min(j, jp)
            m = m_max if m_max % 1 == 0 else 0.5
            plus = angular.wigner_eckart_z(j, m, jp, 1.3)
            minus = angular.wigner_eckart_z(j, -m, jp, 1.3)
            assert abs(plus) == pytest.approx(abs(minus), abs=1e-12)

    def test_m_out_of_range(self):
        with pytest.raises(DomainError):
            angular.wigner_eckart_z(0.5, 1.5, 1.5, 1.0)

    def test_line_strength_sum_rule(self):
        # K 4s_{1/2} -> 4p_{3/2} vs 4p_{1/2}: summing |<j m|z|j' m>|^2 over m
        # gives the line strength |<j||.||j'>|^2 / 3; the 4p_{3/2}:4p_{1/2}
        # statistical ratio for a common reduced radial element is 2:1.
        def strength(jp):
            red = angular.reduced_ck_half(jp, 1, 0.5)
            return sum(
                angular.wigner_eckart_z(jp, m, 0.5, red) ** 2
                for m in (-0.5, 0.5)
            )

        assert strength(1.5) / strength(0.5) == pytest.approx(2.0, rel=1e-12)
        # and each line strength matches |reduced|^2 * sum_m 3j^2 = red^2/3
        red = angular.reduced_ck_half(1.5, 1, 0.5)
        assert strength(1.5) == pytest.approx(red**2 / 3.0 * 2.0, rel=1e-12)


def test_z_angular_factor_s_to_p():
    # <1 0|cos(theta)|0 0> = 1/sqrt(3)
    assert angular.z_angular_factor(1, 0, 0) == pytest.approx(
        1.0 / math.sqrt(3.0), abs=1e-12
    )
