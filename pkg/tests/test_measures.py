import cmath
import json
import math
import random
from fractions import Fraction as F

import pytest

from freeconv.errors import (
    DomainError,
    EmptyJacobi,
    InsufficientDepth,
    InvalidParameter,
    NotAMomentSequence,
)
from freeconv.measures import (
    JacobiParams,
    MeasureRep,
    WignerTail,
    approximant_G,
    atomic_measure,
    bernoulli_symmetric,
    eval_F,
    eval_G,
    eval_K,
    jacobi_to_atoms,
    jacobi_to_moments,
    make_jacobi,
    measure_to_json,
    moments_to_jacobi,
    parse_fraction,
    parse_measure,
    point_mass,
    rational_sqrt,
    shift_jacobi,
    stieltjes_density,
    two_point,
    wigner,
)


class TestMomentsToJacobi:
    def test_point_mass(self):
        a = F(3, 2)
        j = moments_to_jacobi([a, a**2, a**3])
        assert j.alpha == (a,) and j.omega == () and j.finite

    def test_semicircle_prefix(self):
        j = moments_to_jacobi([0, 1, 0, 2, 0, 5])
        assert j.alpha == (F(0), F(0), F(0))
        assert j.omega == (F(1), F(1))
        assert not j.finite

    def test_symmetric_two_point_terminates(self):
        j = moments_to_jacobi([0, 1, 0, 1])
        assert j.alpha == (F(0), F(0)) and j.omega == (F(1),) and j.finite

    def test_rejects_non_moment_sequence(self):
        with pytest.raises(NotAMomentSequence):
            moments_to_jacobi([0, -1])


class TestJacobiToMoments:
    def test_point_mass(self):
        j = make_jacobi([F(3, 2)], [], complete=True)
        a = F(3, 2)
        assert jacobi_to_moments(j, 4) == (a, a**2, a**3, a**4)

    def test_catalan_numbers(self):
        j = make_jacobi([0, 0, 0, 0], [1, 1, 1])
        assert jacobi_to_moments(j, 7) == (F(0), F(1), F(0), F(2), F(0), F(5), F(0))

    def test_depth_guard(self):
        j = make_jacobi([0, 0], [1])
        with pytest.raises(InsufficientDepth):
            jacobi_to_moments(j, 4)  # only 2d - 1 = 3 moments are pinned

    def test_terminated_coefficients_have_all_moments(self):
        j = make_jacobi([0, 0], [1], complete=True)
        assert jacobi_to_moments(j, 6) == (F(0), F(1), F(0), F(1), F(0), F(1))

    def test_round_trip_on_random_measures(self):
        rng = random.Random(31)
        for _ in range(20):
            k = rng.randint(2, 4)
            locs = set()
            while len(locs) < k:
                locs.add(F(rng.randint(-6, 6), rng.randint(1, 3)))
            weights = [rng.randint(1, 4) for _ in range(k)]
            tot = sum(weights)
            rep = MeasureRep.from_atoms(
                [(l, F(w, tot)) for l, w in zip(sorted(locs), weights)]
            )
            m = rep.moments(9)
            j = moments_to_jacobi(m)
            assert jacobi_to_moments(j, 9) == m


class TestJacobiShapes:
    def test_zero_omega_truncates(self):
        j = make_jacobi([1, 2, 3], [4, 0], tail=None)
        assert j.alpha == (F(1), F(2)) and j.omega == (F(4),) and j.finite

    def test_wigner_zero_variance_collapses(self):
        j = make_jacobi([5], [2], tail=WignerTail(F(3), F(0)))
        assert j.finite and j.alpha == (F(5), F(3)) and j.omega == (F(2),)

    def test_negative_omega_rejected(self):
        with pytest.raises(InvalidParameter):
            make_jacobi([0, 0], [-1])

    def test_shift(self):
        j = make_jacobi([F(1), F(2)], [F(3)], complete=True)
        s = shift_jacobi(j)
        assert s.alpha == (F(2),) and s.omega == ()

    def test_shift_of_constant_tail_is_fixed_point(self):
        j = wigner(1, 2).jacobi()
        assert shift_jacobi(j) == j

    def test_shift_needs_a_level(self):
        with pytest.raises(EmptyJacobi):
            shift_jacobi(JacobiParams((), (), None, True))


class TestAtoms:
    def test_weights_validated(self):
        with pytest.raises(InvalidParameter):
            atomic_measure([(0, F(1, 2)), (1, F(1, 3))])
        with pytest.raises(InvalidParameter):
            atomic_measure([(0, F(1)), (0, F(0))])

    def test_rational_spectrum_recovered(self):
        rep = two_point(F(1, 3), 2, -1)
        j = rep.jacobi()
        atoms = jacobi_to_atoms(j)
        assert atoms is not None
        assert atoms.atoms == ((F(-1), F(2, 3)), (F(2), F(1, 3)))

    def test_irrational_spectrum_returns_none(self):
        # two symmetric atoms at +-sqrt(2): terminating coefficients but no
        # rational eigenvalues
        j = make_jacobi([0, 0], [2], complete=True)
        assert jacobi_to_atoms(j) is None


class TestEvaluation:
    def test_point_mass_at_origin(self):
        assert abs(eval_G(point_mass(0), 1j) - (-1j)) < 1e-15

    def test_pure_constant_tail_value(self):
        g = eval_G(wigner(0, 1), 2j)
        assert abs(g - 1j * (1 - math.sqrt(2))) < 1e-12

    def test_point_mass_transforms(self):
        a = F(3, 2)
        rep = point_mass(a)
        for z in (1j, 2 + 1j, -1 + 3j):
            assert abs(eval_F(rep, z) - (z - float(a))) < 1e-12
            assert abs(eval_K(rep, z) - float(a)) < 1e-12

    def test_half_plane_mappings(self):
        rng = random.Random(37)
        reps = [bernoulli_symmetric(), wigner(F(1, 2), 2), two_point(F(1, 4), -2, 1)]
        for _ in range(100):
            z = complex(rng.uniform(-4, 4), rng.uniform(0.2, 4))
            for rep in reps:
                assert eval_G(rep, z).imag < 0
                assert eval_F(rep, z).imag >= z.imag - 1e-12
                assert eval_K(rep, z).imag <= 1e-12

    def test_lower_half_plane_rejected(self):
        with pytest.raises(DomainError):
            eval_G(point_mass(0), -1j)

    def test_moment_series_agreement_at_large_argument(self):
        rep = two_point(F(1, 3), -1, 2)
        m = rep.moments(12)
        rng = random.Random(41)
        for _ in range(20):
            z = 10 * cmath.exp(1j * rng.uniform(0.2, math.pi - 0.2))
            series = 1 / z + sum(float(m[n - 1]) * z ** (-n - 1) for n in range(1, 13))
            assert abs(eval_G(rep, z) - series) < 1e-8


class TestApproximants:
    def test_level_one(self):
        j = make_jacobi([F(1, 2), 0], [F(3)], complete=True)
        n, m = approximant_G(j, 1)
        assert n == [F(1)] and m == [F(-1, 2), F(1)]

    def test_level_two_constant_tail(self):
        n, m = approximant_G(wigner(0, 1).jacobi(), 2)
        assert n == [F(0), F(1)]
        assert m == [F(-1), F(0), F(1)]

    def test_truncated_fraction_matches_prefix_moments(self):
        j = wigner(0, 1).jacobi()
        full = wigner(0, 1)
        for m in range(1, 6):
            prefix = make_jacobi(
                [j.alpha_at(k) for k in range(m)],
                [j.omega_at(k) for k in range(m - 1)],
                complete=True,
            )
            order = 2 * m - 1
            assert jacobi_to_moments(prefix, order) == full.moments(order)

    def test_approximant_series_division_reproduces_moments(self):
        from freeconv.series import TailSeries

        rep = two_point(F(1, 3), -1, 2)
        j = rep.jacobi()
        for m in (1, 2):
            num, den = approximant_G(j, m)
            order = 2 * m + 1
            # divide as series in 1/z: multiply both by z**-deg(den)
            num_w = [F(0)] * (m - len(num) + 1) + list(reversed(num))
            den_w = list(reversed(den))
            quotient = TailSeries(num_w + [F(0)] * (order - m)) * TailSeries(
                den_w + [F(0)] * (order + 1 - len(den_w))
            ).reciprocal()
            # coefficient of w**(n+1) is the n-th moment, exactly up to 2m-1
            assert quotient.coeffs[0] == 0 and quotient.coeffs[1] == 1
            want = rep.moments(2 * m - 1)
            assert quotient.coeffs[2 : 2 * m + 1] == want[: 2 * m - 1]


class TestStieltjes:
    def test_semicircle_peak(self):
        (_, f0), = stieltjes_density(wigner(0, 1), [0.0], epsilon=1e-6)
        assert abs(f0 - 1 / math.pi) < 1e-4

    def test_poisson_kernel_for_point_mass(self):
        rep = point_mass(1)
        eps = 1e-3
        for x in (0.0, 0.5, 2.0):
            (_, f), = stieltjes_density(rep, [x], epsilon=eps)
            want = eps / (math.pi * ((x - 1) ** 2 + eps**2))
            assert abs(f - want) < 1e-9

    def test_vanishes_off_support(self):
        for rep in (wigner(0, 1), bernoulli_symmetric()):
            for x, f in stieltjes_density(rep, [-10.0, 10.0], epsilon=1e-6):
                assert f < 1e-3


class TestConstructors:
    def test_two_point_recursion_coefficients(self):
        p, l1, l2 = F(1, 2), F(1), F(-1)
        j = two_point(p, l1, l2).jacobi()
        assert j.alpha == (F(0), F(0)) and j.omega == (F(1),)

    def test_two_point_mean_and_variance(self):
        p, l1, l2 = F(1, 3), F(2), F(-1)
        q = 1 - p
        j = two_point(p, l1, l2).jacobi()
        assert j.alpha[0] == l1 * p + l2 * q
        assert j.omega[0] == p * q * (l1 - l2) ** 2
        assert j.alpha[1] == l1 * q + l2 * p

    def test_degenerate_two_point_collapses(self):
        rep = two_point(F(1, 2), 3, 3)
        assert rep.atoms().atoms == ((F(3), F(1)),)

    def test_invalid_weight(self):
        with pytest.raises(InvalidParameter):
            two_point(0, 1, 2)
        with pytest.raises(InvalidParameter):
            two_point(1, 1, 2)

    def test_wigner_moments(self):
        assert wigner(0, 1).moments(8) == (
            F(0), F(1), F(0), F(2), F(0), F(5), F(0), F(14),
        )

    def test_zero_variance_collapses_to_point(self):
        assert wigner(2, 0).moments(3) == (F(2), F(4), F(8))

    def test_rational_sqrt(self):
        assert rational_sqrt(F(9, 4)) == F(3, 2)
        assert rational_sqrt(F(2)) is None


class TestJson:
    def test_fraction_parsing(self):
        assert parse_fraction("3/4") == F(3, 4)
        assert parse_fraction(5) == F(5)
        with pytest.raises(InvalidParameter):
            parse_fraction(0.5)
        with pytest.raises(InvalidParameter):
            parse_fraction("x")

    def test_three_measure_kinds(self):
        m = parse_measure({"type": "moments", "m": ["0", "1"]})
        assert m.moments(2) == (F(0), F(1))
        j = parse_measure(
            {"type": "jacobi", "alpha": ["0"], "omega": [], "tail": {"kind": "wigner", "a": "0", "b": "1"}}
        )
        assert j.moments(4) == (F(0), F(1), F(0), F(2))
        a = parse_measure({"type": "atoms", "atoms": [["1", "1/2"], ["-1", "1/2"]]})
        assert a.moments(2) == (F(0), F(1))

    def test_unknown_type_rejected(self):
        with pytest.raises(InvalidParameter):
            parse_measure({"type": "density"})

    def test_emission_is_idempotent_through_parser(self):
        rep = two_point(F(1, 3), -1, 2)
        blob = json.dumps(measure_to_json(rep, 6))
        reparsed = parse_measure(json.loads(blob))
        assert json.dumps(measure_to_json(reparsed, 6)) == blob

    def test_emission_carries_atoms_when_rational(self):
        obj = measure_to_json(two_point(F(1, 3), -1, 2), 6)
        assert obj["atoms"] == [["-1", "1/3"], ["2", "2/3"]]
