import random
from fractions import Fraction as F

import pytest

from freeconv.errors import ZeroLeadingCoefficient
from freeconv.series import (
    F_to_moments,
    TailSeries,
    moments_to_F,
    substitute_into_shifted,
)


def ts(*coeffs):
    return TailSeries([F(c) for c in coeffs])


class TestAdd:
    def test_additive_identity(self):
        assert ts(1, 1) + ts(0, 0) == ts(1, 1)

    def test_two_point_masses_add_their_transforms(self):
        # both factors contribute 1/z, the sum is 2/z
        assert ts(0, 1, 0) + ts(0, 1, 0) == ts(0, 2, 0)

    def test_additive_inverse(self):
        rng = random.Random(3)
        for _ in range(20):
            c = TailSeries([F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(6)])
            assert (c + (-c)).is_zero()

    def test_common_order_is_minimum(self):
        assert (ts(1, 2, 3) + ts(1, 1)).order == 1


class TestMul:
    def test_difference_of_squares(self):
        assert ts(1, 1, 0, 0) * ts(1, -1, 0, 0) == ts(1, 0, -1, 0)

    def test_monomials(self):
        assert ts(0, 1, 0) * ts(0, 1, 0) == ts(0, 0, 1)

    def test_reciprocal_multiplies_back_to_one(self):
        rng = random.Random(5)
        for _ in range(20):
            coeffs = [F(rng.randint(1, 9))] + [
                F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(7)
            ]
            a = TailSeries(coeffs)
            assert a * a.reciprocal() == TailSeries.constant(1, a.order)


class TestReciprocal:
    def test_geometric_series(self):
        assert ts(1, 1, 0, 0, 0).reciprocal() == ts(1, -1, 1, -1, 1)

    def test_constant(self):
        assert ts(2, 0, 0).reciprocal() == ts(F(1, 2), 0, 0)

    def test_three_term_inverse(self):
        a = ts(1, 1, 1, 0, 0, 0, 0, 0)
        b = a.reciprocal()
        assert b == ts(1, -1, 0, 1, -1, 0, 1, -1)
        assert a * b == TailSeries.constant(1, 7)

    def test_zero_constant_term_rejected(self):
        with pytest.raises(ZeroLeadingCoefficient):
            ts(0, 1).reciprocal()


class TestSubstituteIntoShifted:
    def test_zero_inner_is_identity(self):
        w = ts(0, 1, 0, 0, 0)
        assert substitute_into_shifted(w, TailSeries.zero(4)) == w

    def test_simple_pole_shifted_by_itself(self):
        # 1/(z - 1/z) = z/(z^2 - 1) = w + w^3 + w^5 + ...
        w = ts(0, 1, 0, 0, 0, 0)
        assert substitute_into_shifted(w, w) == ts(0, 1, 0, 1, 0, 1)

    def test_constant_outer_absorbs_everything(self):
        outer = TailSeries.constant(F(5, 3), 5)
        inner = ts(2, -1, 3, 0, 1, 2)
        assert substitute_into_shifted(outer, inner) == outer


class TestMomentTransforms:
    def test_point_mass(self):
        a = F(3, 2)
        f = moments_to_F([a, a**2, a**3, a**4])
        assert f == TailSeries.constant(-a, 3)
        assert F_to_moments(f) == (a, a**2, a**3, a**4)

    def test_symmetric_two_point(self):
        f = moments_to_F([0, 1, 0, 1, 0, 1])
        assert f == ts(0, -1, 0, 0, 0, 0)
        assert F_to_moments(ts(0, -1, 0, 0, 0, 0)) == (F(0), F(1), F(0), F(1), F(0), F(1))

    def test_round_trip_on_random_sequences(self):
        rng = random.Random(11)
        for _ in range(20):
            m = tuple(F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(9))
            assert F_to_moments(moments_to_F(m)) == m
            f = TailSeries([F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(8)])
            assert moments_to_F(F_to_moments(f)) == f

    def test_coefficients_are_signed_interval_sums(self):
        from freeconv.partitions import signed_interval_moment_sum

        rng = random.Random(13)
        m = [F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(8)]
        f = moments_to_F(m)
        for n in range(1, 9):
            assert f.coeffs[n - 1] == signed_interval_moment_sum(m, n)
