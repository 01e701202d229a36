import random
from fractions import Fraction as F

import pytest

from freeconv import convolve, opmodel
from freeconv.errors import DepthExceeded, InsufficientDepth
from freeconv.measures import (
    MeasureRep,
    bernoulli_symmetric,
    make_jacobi,
    point_mass,
    wigner,
)


def small_model(seed=0, dim=4, depth=8):
    # complete=True: the d-dimensional factor realizes the terminated
    # measure exactly, so every moment of it is available for comparisons
    rng = random.Random(seed)
    alpha = [F(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(dim)]
    omega = [F(rng.randint(1, 2)) ** 2 for _ in range(dim - 1)]
    beta = [F(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(dim)]
    gamma = [F(rng.randint(1, 2)) ** 2 for _ in range(dim - 1)]
    jmu = make_jacobi(alpha, omega, complete=True)
    jnu = make_jacobi(beta, gamma, complete=True)
    return opmodel.FreeProductModel(jmu, jnu, factor_dim=dim, depth_cap=depth)


class TestWordBasis:
    def test_two_dimensional_factors_give_zigzag_words(self):
        basis = opmodel.WordBasis.build(2, 2, 6)
        # one empty word plus two alternating words per length
        assert len(basis) == 1 + 2 * 6
        assert basis.words[0] == ()
        assert basis.words[1] == ((1, 1),)
        assert basis.words[2] == ((2, 1),)

    def test_ordering_is_length_then_lexicographic(self):
        basis = opmodel.WordBasis.build(3, 3, 2)
        lengths = [len(w) for w in basis.words]
        assert lengths == sorted(lengths)
        level1 = [w for w in basis.words if len(w) == 1]
        assert level1 == sorted(level1)

    def test_weight_cap_prunes_heavy_letters(self):
        full = opmodel.WordBasis.build(8, 8, 2, weight_cap=14)
        capped = opmodel.WordBasis.build(8, 8, 2, weight_cap=3)
        assert len(capped) < len(full)
        assert all(sum(k for _, k in w) <= 3 for w in capped.words)

    def test_level_slabs_partition_words(self):
        basis = opmodel.WordBasis.build(3, 3, 4)
        for factor in (1, 2):
            seen: set[int] = set()
            for n in range(1, basis.depth_cap + 2):
                slab = basis.level_indices(factor, n)
                assert not (slab & seen)
                seen |= slab
            assert seen == set(range(len(basis)))


class TestJacobiOperator:
    def test_point_mass_is_one_by_one(self):
        op = opmodel.jacobi_operator(point_mass(F(5, 2)).jacobi(), 1)
        assert op.entries == {(0, 0): F(5, 2)}

    def test_symmetric_two_point_is_flip(self):
        op = opmodel.jacobi_operator(bernoulli_symmetric().jacobi(), 2)
        assert op.entries == {(0, 1): F(1), (1, 0): F(1)}

    def test_constant_tail_moments(self):
        op = opmodel.jacobi_operator(wigner(0, 1).jacobi(), 8)
        vac = {0: F(1)}
        cur = vac
        moments = []
        for _ in range(15):
            cur = op.apply(cur)
            moments.append(opmodel.vec_dot(cur, vac))
        assert tuple(moments) == wigner(0, 1).moments(15)

    def test_irrational_entries_drop_to_floats(self):
        op = opmodel.jacobi_operator(make_jacobi([0, 0], [2], complete=True), 2)
        assert not op.exact
        assert abs(op.entries[(0, 1)] - 2**0.5) < 1e-12

    def test_depth_guard(self):
        with pytest.raises(InsufficientDepth):
            opmodel.jacobi_operator(make_jacobi([0, 0], [1]), 4)


class TestFreeProductRep:
    def test_identity_lifts_to_identity(self):
        basis = opmodel.WordBasis.build(3, 3, 3)
        eye = opmodel.ModelOperator(3, {(i, i): F(1) for i in range(3)})
        lifted = opmodel.free_product_rep(eye, 1, basis)
        assert lifted.entries == {(i, i): F(1) for i in range(len(basis))}

    def test_representation_is_symmetric(self):
        model = small_model()
        assert model.x1.is_symmetric()
        assert model.x2.is_symmetric()

    def test_vacuum_moments_are_free_convolution(self):
        model = small_model(seed=1)
        mu = MeasureRep.from_jacobi(model.mu_jacobi)
        nu = MeasureRep.from_jacobi(model.nu_jacobi)
        order = model.certified_vacuum_order()
        loc = convolve.free(mu, nu, order).moments(order)
        got = model.state_moments(model.total(), order)
        assert tuple(got) == loc

    def test_centered_alternating_products_vanish(self):
        model = small_model(seed=2)
        mu_m = MeasureRep.from_jacobi(model.mu_jacobi).moments(6)
        nu_m = MeasureRep.from_jacobi(model.nu_jacobi).moments(6)
        for powers in [(1, 1), (2, 1), (1, 2), (1, 1, 1), (1, 1, 1, 1)]:
            vec = model.vacuum()
            for i, p in enumerate(reversed(powers)):
                pos = len(powers) - 1 - i
                op = model.x1 if pos % 2 == 0 else model.x2
                mean = (mu_m if pos % 2 == 0 else nu_m)[p - 1]
                cur = vec
                for _ in range(p):
                    cur = op.apply(cur)
                vec = {k: cur.get(k, 0) - mean * vec.get(k, 0) for k in set(cur) | set(vec)}
            assert opmodel.vec_dot(vec, model.vacuum()) == 0


class TestReplicas:
    def test_sum_reassembles_representation(self):
        model = small_model(seed=3)
        for factor, lam in ((1, model.x1), (2, model.x2)):
            acc = opmodel.ModelOperator(len(model.basis), {})
            for n in range(1, model.depth_cap + 2):
                acc = acc + model.replica(factor, n)
            assert acc.equals(lam)

    def test_distant_replicas_annihilate(self):
        model = small_model(seed=4)
        for n, m in [(1, 3), (2, 4), (1, 4)]:
            assert not (model.replica(1, n) @ model.replica(1, m)).entries

    def test_first_replica_acts_like_factor(self):
        model = small_model(seed=5)
        mu = MeasureRep.from_jacobi(model.mu_jacobi)
        got = model.state_moments(model.replica(1, 1), 7)
        assert tuple(got) == mu.moments(7)

    def test_level_guard(self):
        model = small_model()
        with pytest.raises(DepthExceeded):
            model.replica(1, model.depth_cap + 2)


class TestBranches:
    def test_recursion_peels_one_replica(self):
        model = small_model(seed=6)
        for j, k in [(1, 1), (2, 1), (1, 2)]:
            lhs = model.branch(j, k)
            rhs = model.replica(j, k) + model.branch(3 - j, k + 1)
            assert lhs.equals(rhs)

    def test_branches_sum_to_total(self):
        model = small_model(seed=7)
        assert (model.branch(1) + model.branch(2)).equals(model.total())

    def test_vacuum_branch_moments_are_subordinate_halves(self):
        model = small_model(seed=8)
        mu = MeasureRep.from_jacobi(model.mu_jacobi)
        nu = MeasureRep.from_jacobi(model.nu_jacobi)
        order = 6
        assert tuple(model.state_moments(model.branch(1), order)) == convolve.sfree(
            mu, nu, order
        ).moments(order)
        assert tuple(model.state_moments(model.branch(2), order)) == convolve.sfree(
            nu, mu, order
        ).moments(order)

    def test_branch_law_persists_at_deeper_states(self):
        model = small_model(seed=9)
        mu = MeasureRep.from_jacobi(model.mu_jacobi)
        nu = MeasureRep.from_jacobi(model.nu_jacobi)
        eta = model.word_vector(((2, 1),))
        got = model.state_moments(model.branch(1, 2), 5, vec=eta)
        assert tuple(got) == convolve.sfree(mu, nu, 5).moments(5)

    def test_branches_boolean_independent(self):
        model = small_model(seed=10)
        b1, b2 = model.branch(1), model.branch(2)
        vac = model.vacuum()

        def phi(ops):
            cur = vac
            for op in reversed(ops):
                cur = op.apply(cur)
            return opmodel.vec_dot(cur, vac)

        for k1, k2, k3 in [(1, 1, 1), (2, 1, 1), (1, 2, 2)]:
            lhs = phi([b1] * k1 + [b2] * k2 + [b1] * k3)
            rhs = phi([b1] * k1) * phi([b2] * k2) * phi([b1] * k3)
            assert lhs == rhs

    def test_first_replica_with_rest_is_monotone_pair(self):
        model = small_model(seed=11)
        x = model.replica(1, 1)
        z = model.total() - x
        vac = model.vacuum()

        def phi(ops):
            cur = vac
            for op in reversed(ops):
                cur = op.apply(cur)
            return opmodel.vec_dot(cur, vac)

        for p1, q, p2 in [(1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 3, 2)]:
            assert phi([x] * p1 + [z] * q + [x] * p2) == phi([z] * q) * phi(
                [x] * (p1 + p2)
            )
            assert phi([x] * p1 + [z] * q) == phi([z] * q) * phi([x] * p1)


class TestOrthogonalityCheck:
    def test_replica_branch_pair_is_clean(self):
        model = small_model(seed=12)
        rep = opmodel.orthogonality_check(
            model.replica(1, 1),
            model.branch(2, 2),
            model.vacuum(),
            model.word_vector(((1, 1),)),
            3,
        )
        assert rep.ok, rep.violations[:3]

    def test_generic_free_pair_fails(self):
        model = small_model(seed=13)
        rep = opmodel.orthogonality_check(
            model.x1, model.x2, model.vacuum(), model.word_vector(((1, 1),)), 3
        )
        assert not rep.ok
        assert rep.violations
