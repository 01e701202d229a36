"""Deterministic verification suites behind the `verify` CLI command.

Each check returns a named pass/fail result; suites are pure functions of
their seed, so reruns are reproducible.  Exact checks compare rationals
for equality; the few analytic checks carry explicit tolerances.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import convolve, graphs, opmodel, partitions
from .measures import (
    JacobiParams,
    MeasureRep,
    approximant_G,
    bernoulli_symmetric,
    eval_F,
    eval_G,
    eval_K,
    make_jacobi,
    point_mass,
    stieltjes_density,
    two_point,
    wigner,
)
from .polys import poly_eq, poly_mul, poly_sub
from .series import TailSeries, moments_to_F


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _check(results: list, name: str, ok: bool, detail: str = "") -> None:
    results.append(CheckResult(name, bool(ok), detail))


# ---------------------------------------------------------------------------
# Random inputs
# ---------------------------------------------------------------------------

def random_atomic_rep(
    rng: random.Random, max_atoms: int = 4, spread: int = 8
) -> MeasureRep:
    k = rng.randint(2, max_atoms)
    locs: set[Fraction] = set()
    while len(locs) < k:
        locs.add(Fraction(rng.randint(-spread, spread), rng.randint(1, 3)))
    weights = [rng.randint(1, 5) for _ in range(k)]
    total = sum(weights)
    return MeasureRep.from_atoms(
        [(loc, Fraction(w, total)) for loc, w in zip(sorted(locs), weights)]
    )


def random_moment_list(rng: random.Random, n: int) -> list[Fraction]:
    return [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)]


def random_square_omega_jacobi(rng: random.Random, levels: int = 8) -> JacobiParams:
    alpha = [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(levels)]
    omega = [Fraction(rng.randint(1, 3), rng.randint(1, 2)) ** 2 for _ in range(levels - 1)]
    return make_jacobi(alpha, omega)


def random_graph(rng: random.Random, n: int) -> graphs.RootedGraph:
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < 0.6:
                edges.append((u, v))
    return graphs.rooted_graph(n, 0, edges)


def _series_shift_left(ts: TailSeries) -> TailSeries:
    """z * ts for a series with zero constant term."""
    if ts.coeffs[0] != 0:
        raise ValueError("shift-left needs a zero constant term")
    return TailSeries(ts.coeffs[1:])


# ---------------------------------------------------------------------------
# Two-periodic closed form (both factors with one-level K-transforms)
# ---------------------------------------------------------------------------

def two_periodic_G(al, om, be, ga, z: complex) -> complex:
    """Cauchy transform of the s-free convolution of the two measures with
    K-transforms al + om/z and be + ga/z, from the closed form of its
    two-periodic continued fraction; the root is fixed by Im G < 0."""
    al, om, be, ga = (float(x) for x in (al, om, be, ga))
    z = complex(z)
    P = -ga - om + (z - al) * (z - be)
    A2 = ga * om
    delta = ga * (z - al)
    r = cmath.sqrt(P * P - 4.0 * A2)
    g1 = (P + 2.0 * ga - r) / (2.0 * delta)
    g2 = (P + 2.0 * ga + r) / (2.0 * delta)
    if g1.imag < 0 and g2.imag < 0:
        return g1 if abs(g1 * z - 1) < abs(g2 * z - 1) else g2
    return g1 if g1.imag < 0 else g2


# ---------------------------------------------------------------------------
# Partition suite
# ---------------------------------------------------------------------------

def suite_partitions(n_max: int = 8, seed: int = 7) -> list[CheckResult]:
    rng = random.Random(seed)
    res: list[CheckResult] = []
    n_small = min(n_max, 8)

    ok = all(len(partitions.compositions(n)) == 2 ** (n - 1) for n in range(1, min(n_max, 12) + 1))
    _check(res, "interval-partition-count-doubles", ok)

    _check(
        res,
        "odd-refinement-small-cases",
        len(partitions.odd_refinements((3,))) == 2
        and partitions.odd_refinements((2,)) == ((2,),)
        and partitions.odd_refinements((1, 2)) == ((1, 2),),
    )

    m = random_moment_list(rng, n_small)
    ok = True
    for n in range(1, n_small + 1):
        for sigma in partitions.compositions(n):
            lhs = partitions.moment_function(m, sigma)
            rhs = sum(
                (partitions.inverse_boolean_cumulant(m, pi) for pi in partitions.coarsenings(sigma)),
                Fraction(0),
            )
            ok = ok and lhs == rhs
    _check(res, "moment-recovers-from-cumulant-coarsenings", ok)

    mu = random_moment_list(rng, 12)

    def M(i):
        return mu[i - 1]

    k = partitions.inverse_boolean_cumulant
    ok = (
        k(mu, (3,)) == M(3)
        and k(mu, (2, 3)) == M(2) * M(3) - M(5)
        and k(mu, (1, 2, 3)) == M(1) * M(2) * M(3) - M(3) * M(3) - M(1) * M(5) + M(6)
        and k(mu, (1, 1, 2, 3))
        == M(1) * M(1) * M(2) * M(3)
        - M(2) * M(2) * M(3)
        - M(1) * M(3) * M(3)
        - M(1) * M(1) * M(5)
        + M(2) * M(5)
        + M(4) * M(3)
        + M(1) * M(6)
        - M(7)
    )
    _check(res, "cumulant-closed-forms-to-four-parts", ok)

    ok = True
    for n in range(1, min(n_max, 8) + 1):
        f = moments_to_F(mu[:n])
        ok = ok and f.coeffs[n - 1] == partitions.signed_interval_moment_sum(mu, n)
    _check(res, "reciprocal-transform-coefficients-by-enumeration", ok)

    ok = True
    for n in range(1, min(n_max, 9) + 1):
        d2 = partitions.enumerate_D2(n)
        c = partitions.enumerate_C(n)
        ok = ok and len(d2) == len(c)
        images = set()
        for pi in d2:
            tau, sigma = partitions.bijection_f(pi)
            images.add((tau, sigma))
            ok = ok and partitions.bijection_f_inverse(tau, sigma) == pi
        ok = ok and images == set(c)
    _check(res, "outer-hull-fusion-bijection-roundtrip", ok)

    ok = True
    for n in range(1, min(n_max, 9) + 1):
        dp2 = partitions.enumerate_DP2(n)
        f_set = partitions.enumerate_F(n)
        ok = ok and len(dp2) == len(f_set)
        images = set()
        for pair in dp2:
            m_, sigma, j = partitions.bijection_g(pair)
            images.add((m_, sigma, j))
            ok = ok and partitions.bijection_g_inverse(m_, sigma, j, n) == pair
        ok = ok and images == set(f_set)
    _check(res, "leg-grouping-bijection-roundtrip", ok)

    ok = True
    for n in range(1, 9):
        count = len(partitions.noncrossing_partitions(n))
        catalan = math.comb(2 * n, n) // (n + 1)
        ok = ok and count == catalan
        profile_total = sum(partitions.nc_size_profiles(n).values())
        ok = ok and profile_total == catalan
    _check(res, "noncrossing-enumeration-matches-catalan", ok)

    mu_m = random_moment_list(rng, 10)
    nu_m = random_moment_list(rng, 10)
    orth = partitions.orthogonal_moment_combinatorial
    ok = (
        orth(mu_m, nu_m, (1,)) == mu_m[0]
        and orth(mu_m, nu_m, (2,)) == mu_m[1]
        and orth(mu_m, nu_m, (3,))
        == mu_m[2] + (mu_m[1] - mu_m[0] ** 2) * nu_m[0]
        and orth(mu_m, nu_m, (4,))
        == mu_m[3]
        + 2 * mu_m[2] * nu_m[0]
        + mu_m[1] * nu_m[1]
        - 2 * mu_m[1] * mu_m[0] * nu_m[0]
        - mu_m[0] ** 2 * nu_m[1]
    )
    _check(res, "orthogonal-moment-low-order-polynomials", ok)

    ok = True
    for order in range(1, 9):
        base = orth(mu_m, nu_m, (order,))
        nu_pert = list(nu_m)
        for i in range(max(order - 2, 0), len(nu_pert)):
            nu_pert[i] += Fraction(rng.randint(1, 5))
        ok = ok and orth(mu_m, nu_pert, (order,)) == base
        mu_pert = list(mu_m)
        for i in range(order, len(mu_pert)):
            mu_pert[i] += Fraction(rng.randint(1, 5))
        ok = ok and orth(mu_pert, nu_m, (order,)) == base
    _check(res, "orthogonal-moment-dependence-bounds", ok)

    lam = Fraction(rng.randint(2, 5), rng.randint(1, 3))
    ok = True
    for order in range(1, 9):
        mu_s = [mu_m[i] * lam ** (i + 1) for i in range(len(mu_m))]
        nu_s = [nu_m[i] * lam ** (i + 1) for i in range(len(nu_m))]
        ok = ok and orth(mu_s, nu_s, (order,)) == lam**order * orth(mu_m, nu_m, (order,))
    _check(res, "orthogonal-moment-dilation-homogeneity", ok)

    ok = True
    for pi in [(2, 3), (1, 4, 2), (3, 3)]:
        blockwise = Fraction(1)
        for part in pi:
            blockwise *= orth(mu_m, nu_m, (part,))
        ok = ok and orth(mu_m, nu_m, pi) == blockwise
    _check(res, "orthogonal-moment-block-multiplicativity", ok)

    return res


# ---------------------------------------------------------------------------
# Convolution suite
# ---------------------------------------------------------------------------

def _moments_equal(a: MeasureRep, b: MeasureRep, n: int) -> bool:
    return a.moments(n) == b.moments(n)


def suite_convolutions(seed: int = 7, pairs: int = 20, order: int = 10) -> list[CheckResult]:
    rng = random.Random(seed)
    res: list[CheckResult] = []

    reps = [(random_atomic_rep(rng), random_atomic_rep(rng)) for _ in range(pairs)]

    ok = True
    for mu, nu in reps:
        conv = convolve.orthogonal(mu, nu, order)
        mm, nm, cm = mu.moments(order), nu.moments(order), conv.moments(order)
        for n in range(1, order + 1):
            ok = ok and cm[n - 1] == partitions.orthogonal_moment_combinatorial(mm, nm, (n,))
    _check(res, "orthogonal-series-equals-partition-oracle", ok)

    ok = True
    for mu, nu in reps:
        free_ab = convolve.free(mu, nu, order)  # asserts route A == route B
        oracle = convolve.free_cumulant_oracle(mu, nu, order)
        ok = ok and _moments_equal(free_ab, oracle, order)
    _check(res, "free-routes-equal-cumulant-oracle", ok)

    ok = True
    for mu, nu in reps:
        lhs = convolve.monotone(mu, nu, order)
        rhs = convolve.boolean(convolve.orthogonal(mu, nu, order), nu, order)
        ok = ok and _moments_equal(lhs, rhs, order)
    _check(res, "monotone-splits-into-orthogonal-then-boolean", ok)

    ok = True
    for mu, nu in reps:
        f = convolve.free(mu, nu, order)
        b = convolve.boolean(
            convolve.sfree(mu, nu, order), convolve.sfree(nu, mu, order), order
        )
        m1 = convolve.monotone(mu, convolve.sfree(nu, mu, order), order)
        m2 = convolve.monotone(nu, convolve.sfree(mu, nu, order), order)
        ok = ok and _moments_equal(f, b, order) and _moments_equal(f, m1, order)
        ok = ok and _moments_equal(f, m2, order)
    _check(res, "free-splits-through-subordinate-halves", ok)

    ok = True
    for mu, nu in reps[:5]:
        for m in range(1, 6):
            a = convolve.orthogonal_iterated(mu, nu, m, order)
            b = convolve.orthogonal_iterated(mu, nu, m + 1, order)
            upto = min(2 * m, order)
            ok = ok and a.moments(upto) == b.moments(upto)
    _check(res, "iterated-orthogonal-moments-stabilize", ok)

    delta0 = point_mass(0)
    ok = True
    for mu, nu in reps[:10]:
        ok = ok and _moments_equal(convolve.boolean(mu, nu, order), convolve.boolean(nu, mu, order), order)
        ok = ok and _moments_equal(convolve.free(mu, nu, order), convolve.free(nu, mu, order), order)
        for op in (convolve.boolean, convolve.monotone, convolve.orthogonal, convolve.free):
            ok = ok and _moments_equal(op(mu, delta0, order), mu, order)
        ok = ok and _moments_equal(convolve.monotone(delta0, mu, order), mu, order)
        ok = ok and _moments_equal(convolve.free(delta0, mu, order), mu, order)
    _check(res, "identity-and-commutativity-laws", ok)

    bern = bernoulli_symmetric()
    d1 = point_mass(1)
    noncomm = not _moments_equal(
        convolve.orthogonal(d1, bern, 4), convolve.orthogonal(bern, d1, 4), 4
    )
    a = convolve.orthogonal(convolve.orthogonal(bern, bern, 6), bern, 6)
    b = convolve.orthogonal(bern, convolve.orthogonal(bern, bern, 6), 6)
    nonassoc = a.moments(6) != b.moments(6)
    sf_noncomm = not _moments_equal(
        convolve.sfree(d1, bern, 4), convolve.sfree(bern, d1, 4), 4
    )
    sa = convolve.sfree(convolve.sfree(bern, bern, 6), bern, 6)
    sb = convolve.sfree(bern, convolve.sfree(bern, bern, 6), 6)
    sf_nonassoc = sa.moments(6) != sb.moments(6)
    _check(
        res,
        "orthogonal-and-subordinate-halves-break-symmetry-laws",
        noncomm and nonassoc and sf_noncomm and sf_nonassoc,
    )

    ok = True
    for mu, nu in reps[:10]:
        conv = convolve.orthogonal(mu, nu, order)
        ok = ok and conv.moments(2) == mu.moments(2)
    _check(res, "orthogonal-keeps-first-two-moments-of-left-factor", ok)

    a_val = Fraction(3, 2)
    da = point_mass(a_val)
    ok = True
    for _, nu in reps[:5]:
        ok = ok and _moments_equal(convolve.orthogonal(da, nu, order), da, order)
        ok = ok and _moments_equal(convolve.sfree(da, nu, order), da, order)
        ok = ok and _moments_equal(
            convolve.sfree(nu, da, order), convolve.orthogonal(nu, da, order), order
        )
    _check(res, "point-mass-absorbs-on-the-left", ok)

    # recursion-coefficient reproductions of the worked examples
    ok = True
    mu = random_atomic_rep(rng, max_atoms=4)
    jm = mu.jacobi()
    shifted = convolve.orthogonal(mu, da, order).jacobi()
    ok = ok and shifted.alpha == (jm.alpha[0],) + tuple(x + a_val for x in jm.alpha[1:])
    ok = ok and shifted.omega == jm.omega

    p, l1, l2 = Fraction(1, 3), Fraction(2), Fraction(-1)
    q = 1 - p
    tp = two_point(p, l1, l2)
    nu = random_atomic_rep(rng, max_atoms=3)
    jn = nu.jacobi()
    jr = convolve.orthogonal(tp, nu, order).jacobi()
    ok = ok and jr.alpha[0] == l1 * p + l2 * q
    ok = ok and jr.alpha[1] == jn.alpha[0] + l1 * q + l2 * p
    ok = ok and jr.omega[0] == p * q * (l1 - l2) ** 2
    ok = ok and jr.alpha[2:] == jn.alpha[1:]
    ok = ok and jr.omega[1:] == jn.omega

    aw, bw = Fraction(1, 2), Fraction(2)
    w_rep = wigner(aw, bw)
    js = convolve.sfree(w_rep, w_rep, order).jacobi()
    ok = ok and js.alpha == (aw, 2 * aw, 2 * aw, 2 * aw, 2 * aw)
    ok = ok and js.omega == (bw, 2 * bw, 2 * bw, 2 * bw)
    jf = convolve.free(w_rep, w_rep, order).jacobi()
    ok = ok and jf.alpha == (2 * aw,) * 5 and jf.omega == (2 * bw,) * 4

    jshift = convolve.free(mu, da, order).jacobi()
    ok = ok and jshift.alpha == tuple(x + a_val for x in jm.alpha)
    ok = ok and jshift.omega == jm.omega
    ok = ok and _moments_equal(
        convolve.free(mu, da, order), convolve.free(da, mu, order), order
    )
    _check(res, "worked-recursion-coefficient-examples", ok)

    # m-fold chains reassemble the K approximants
    ok = True
    jw = wigner(0, 1).jacobi()
    for m in range(1, 6):
        chain = convolve.jacobi_chain_decomposition(jw, m)
        order_m = max(2 * m - 1, 1)
        acc = chain[-1]
        for link in reversed(chain[:-1]):
            acc = convolve.orthogonal(link, acc, order_m)
        ok = ok and acc.moments(order_m) == wigner(0, 1).moments(order_m)
        num, den = convolve.chain_k_rational(jw, m)
        n_pol, m_pol = approximant_G(jw, m + 1)
        # K-approximant equals z - reciprocal of the G-approximant
        lhs = poly_mul(poly_sub(poly_mul([Fraction(0), Fraction(1)], n_pol), m_pol), den)
        ok = ok and poly_eq(lhs, poly_mul(num, n_pol))
    _check(res, "chain-links-rebuild-truncated-transforms", ok)

    ok = True
    for m in range(2, 7):
        n_pol, m_pol = approximant_G(jw, m)
        knum, kden = convolve.chain_k_rational(jw, m - 1)
        # (z - K_{m-1}) * N_m == M_m * den
        f_num = poly_sub(poly_mul([Fraction(0), Fraction(1)], kden), knum)
        ok = ok and poly_eq(poly_mul(f_num, n_pol), poly_mul(m_pol, kden))
    _check(res, "approximant-reciprocal-identity", ok)

    # sampled-point properties of the transforms
    rng_pts = random.Random(seed + 1)
    pts = [complex(rng_pts.uniform(-4, 4), rng_pts.uniform(0.3, 4)) for _ in range(100)]
    w01 = wigner(0, 1)
    tp_m = two_point(Fraction(1, 3), -1, 2)
    ok = True
    for z in pts:
        for rep in (w01, tp_m, bern):
            g = eval_G(rep, z)
            f = eval_F(rep, z)
            k = eval_K(rep, z)
            ok = ok and g.imag < 0 and f.imag >= z.imag - 1e-12 and k.imag <= 1e-12
    _check(res, "transform-half-plane-mapping", ok)

    ok = True
    for z in pts:
        fn = eval_F(tp_m, z)
        val = eval_F(w01, fn) - fn + z
        ok = ok and val.imag >= z.imag - 1e-10
    _check(res, "orthogonal-transform-expands-imaginary-part", ok)

    ok = True
    rng_g = random.Random(seed + 2)
    for _ in range(30):
        z = complex(rng_g.uniform(-3, 3), rng_g.uniform(0.5, 3))
        g = eval_G(w01, z)
        want = (z - cmath.sqrt(z - 2) * cmath.sqrt(z + 2)) / 2
        ok = ok and abs(g - want) < 1e-12
        k = eval_K(w01, z)
        ok = ok and abs(k - (1 * g + 0)) < 1e-12
    aw2, bw2 = Fraction(1, 2), Fraction(3)
    wrep2 = wigner(aw2, bw2)
    for _ in range(10):
        z = complex(rng_g.uniform(-3, 3), rng_g.uniform(0.5, 3))
        ok = ok and abs(eval_K(wrep2, z) - (float(bw2) * eval_G(wrep2, z) + float(aw2))) < 1e-11
    _check(res, "constant-tail-transform-closed-form", ok)

    ok = True
    for rep in (tp_m, bern, w01):  # supports inside [-2, 2], so the tail is tiny
        m12 = rep.moments(12)
        for _ in range(10):
            z = 10 * cmath.exp(1j * rng_g.uniform(0.15, math.pi - 0.15))
            series_val = sum(float(m12[n - 1]) * z ** (-n - 1) for n in range(1, 13)) + 1 / z
            ok = ok and abs(eval_G(rep, z) - series_val) < 1e-8
    _check(res, "fraction-evaluation-matches-moment-series", ok)

    # shifted-coefficient link between the orthogonal and monotone forms
    ok = True
    for mu, nu in reps[:5]:
        jm = mu.jacobi()
        if jm.levels < 2:
            continue
        mu_s = MeasureRep.from_jacobi(jm.shift())
        k_orth = convolve.k_series(convolve.orthogonal(mu, nu, order), order)
        k_mono = convolve.k_series(convolve.monotone(mu_s, nu, order), order)
        c = k_orth - TailSeries.constant(jm.alpha[0], k_orth.order)
        lhs = _series_shift_left(c) - (c * k_mono).truncate(order - 2)
        ok = ok and lhs == TailSeries.constant(jm.omega[0], lhs.order)
    _check(res, "orthogonal-shifts-into-monotone-recursion", ok)

    # subordination iteration
    cfg = convolve.SubordinationEvalConfig()
    ok = True
    w02 = wigner(0, 2)
    for im in (1.0, 2.0, 3.0):
        z = complex(0.3, im)
        u, v = convolve.subordination_eval(w01, w01, z, cfg)
        ok = ok and abs(u - v) < 10 * cfg.tol
        ok = ok and abs((z - 2 * u) - eval_F(w02, z)) < 1e-9
    for _ in range(5):
        mu = random_atomic_rep(rng, spread=2)
        nu = random_atomic_rep(rng, spread=2)
        z = complex(0.7, 3.0)
        u, v = convolve.subordination_eval(mu, nu, z, cfg)
        f1, f2 = z - v, z - u
        lhs = eval_F(mu, f1)
        ok = ok and abs(lhs - eval_F(nu, f2)) < 10 * cfg.tol
        ok = ok and abs(lhs - (f1 + f2 - z)) < 10 * cfg.tol
    _check(res, "subordination-fixed-point-system", ok)

    ok = True
    for mu, nu in [(bern, tp_m), (w01, bern), (tp_m, w01)]:
        conv = convolve.free(mu, nu, order)
        ks = convolve.k_series(conv, order)
        for _ in range(5):
            z = 20 * cmath.exp(1j * rng_g.uniform(0.2, math.pi - 0.2))
            u, v = convolve.subordination_eval(mu, nu, z, cfg)
            pointwise = eval_F(mu, z - v)
            series_val = z - sum(float(c) * z ** (-i) for i, c in enumerate(ks.coeffs))
            ok = ok and abs(pointwise - series_val) < 1e-6
    _check(res, "pointwise-subordination-matches-series", ok)

    # two-periodic fraction: pattern, closed form, density
    al, om, be, ga = Fraction(1, 2), Fraction(2), Fraction(-1, 3), Fraction(1)
    mu2 = MeasureRep.from_jacobi(make_jacobi((al, 0), (om,), complete=True))
    nu2 = MeasureRep.from_jacobi(make_jacobi((be, 0), (ga,), complete=True))
    js = convolve.sfree(mu2, nu2, order).jacobi()
    ok = js.alpha == (al, be, al, be, al) and js.omega == (om, ga, om, ga)
    _check(res, "subordinate-half-gives-two-periodic-coefficients", ok)

    rng_p = random.Random(seed + 3)
    ok = True
    for _ in range(100):
        z = complex(rng_p.uniform(-4, 4), rng_p.uniform(2, 6))
        g = 0j
        for k in range(400, 0, -1):
            a_k, w_k = (al, om) if (k - 1) % 2 == 0 else (be, ga)
            g = 1.0 / (z - float(a_k) - float(w_k) * g)
        ok = ok and abs(g - two_periodic_G(al, om, be, ga, z)) < 1e-9
    _check(res, "two-periodic-closed-form-matches-fraction", ok)

    ok = True
    eps = 1e-6
    alf, omf, bef, gaf = (float(x) for x in (al, om, be, ga))
    a2 = gaf * omf
    disc_out = (alf - bef) ** 2 + 4 * (gaf + omf + 2 * math.sqrt(a2))
    disc_in = (alf - bef) ** 2 + 4 * (gaf + omf - 2 * math.sqrt(a2))
    right_out = ((alf + bef) + math.sqrt(disc_out)) / 2
    right_in = ((alf + bef) + math.sqrt(disc_in)) / 2
    lo = right_in + 0.08 * (right_out - right_in)
    hi = right_out - 0.08 * (right_out - right_in)
    for i in range(60):
        x = lo + (hi - lo) * i / 59
        gg = two_periodic_G(al, om, be, ga, complex(x, eps))
        dens = -gg.imag / math.pi
        P = -gaf - omf + (x - alf) * (x - bef)
        f = math.sqrt(max(4 * a2 - P * P, 0.0)) / (2 * math.pi * gaf * (x - alf))
        ok = ok and abs(dens - f) < 1e-3
    _check(res, "two-periodic-density-on-stable-band", ok)

    ok = True
    grid = [-3 + 6 * i / 600 for i in range(601)]
    for x, dens in stieltjes_density(w01, grid, epsilon=1e-6):
        f = math.sqrt(max(4 - x * x, 0.0)) / (2 * math.pi)
        ok = ok and abs(dens - f) <= 1e-3
    for x, dens in stieltjes_density(mu2, [-10.0, 10.0], epsilon=1e-6):
        ok = ok and dens <= 1e-3
    _check(res, "semicircle-density-recovered-by-inversion", ok)

    return res


# ---------------------------------------------------------------------------
# Operator-model suite
# ---------------------------------------------------------------------------

def _phi(op_words: Sequence[opmodel.ModelOperator], vec: dict) -> Fraction:
    cur = vec
    for op in reversed(op_words):
        cur = op.apply(cur)
    return opmodel.vec_dot(cur, vec) / opmodel.vec_dot(vec, vec)


def suite_opmodel(seed: int = 7) -> list[CheckResult]:
    rng = random.Random(seed)
    res: list[CheckResult] = []

    jmu = random_square_omega_jacobi(rng)
    jnu = random_square_omega_jacobi(rng)
    mu = MeasureRep.from_jacobi(jmu)
    nu = MeasureRep.from_jacobi(jnu)
    model = opmodel.FreeProductModel(jmu, jnu, factor_dim=8, depth_cap=10)

    a1 = model.factors[0]
    ok = a1.is_symmetric() and model.x1.is_symmetric() and model.x2.is_symmetric()
    vac_factor = {0: Fraction(1)}
    cur = vac_factor
    factor_moments = []
    for _ in range(15):
        cur = a1.apply(cur)
        factor_moments.append(opmodel.vec_dot(cur, vac_factor))
    ok = ok and tuple(factor_moments) == mu.moments(15)
    _check(res, "tridiagonal-factor-reproduces-moments", ok)

    total = model.total()
    free_m = convolve.free(mu, nu, 10).moments(10)
    got = model.state_moments(total, model.certified_vacuum_order())
    _check(res, "vacuum-moments-match-free-convolution", tuple(got) == free_m)

    irr = make_jacobi([0, 0], [Fraction(2)])  # irrational off-diagonal
    model_f = opmodel.FreeProductModel(irr, irr, factor_dim=2, depth_cap=10)
    got_f = model_f.state_moments(model_f.total(), 10)
    want_f = convolve.free(
        MeasureRep.from_jacobi(make_jacobi([0, 0], [Fraction(2)], complete=True)),
        MeasureRep.from_jacobi(make_jacobi([0, 0], [Fraction(2)], complete=True)),
        10,
    ).moments(10)
    ok = all(abs(g - float(w)) <= 1e-9 for g, w in zip(got_f, want_f))
    _check(res, "float-fallback-within-tolerance", ok)

    ok = True
    for factor, lam in ((1, model.x1), (2, model.x2)):
        total_rep = opmodel.ModelOperator(len(model.basis), {}, exact=model.exact)
        for n in range(1, model.depth_cap + 2):
            total_rep = total_rep + model.replica(factor, n)
        ok = ok and total_rep.equals(lam)
    _check(res, "replica-sum-reassembles-representation", ok)

    ok = True
    for n, m in [(1, 3), (2, 4), (1, 4), (3, 6)]:
        prod = model.replica(1, n) @ model.replica(1, m)
        ok = ok and not prod.entries
    _check(res, "distant-replicas-annihilate", ok)

    first = model.replica(1, 1)
    got = model.state_moments(first, 10)
    _check(res, "first-replica-acts-like-factor", tuple(got) == mu.moments(10))

    b1 = model.branch(1)
    b2 = model.branch(2)
    sf12 = convolve.sfree(mu, nu, 8).moments(8)
    sf21 = convolve.sfree(nu, mu, 8).moments(8)
    ok = tuple(model.state_moments(b1, 8)) == sf12
    ok = ok and tuple(model.state_moments(b2, 8)) == sf21
    _check(res, "branch-moments-give-subordinate-half", ok)

    ok = True
    for j, k in [(1, 1), (2, 1), (1, 2), (2, 3)]:
        lhs = model.branch(j, k)
        rhs = model.replica(j, k) + model.branch(3 - j, k + 1)
        ok = ok and lhs.equals(rhs)
    _check(res, "branch-recursion-peels-one-replica", ok)

    _check(res, "branches-sum-to-total", (b1 + b2).equals(total))

    ok = True
    for k1, k2, k3 in [(1, 1, 1), (2, 1, 1), (1, 2, 1), (2, 2, 2)]:
        lhs = _phi([b1] * k1 + [b2] * k2 + [b1] * k3, model.vacuum())
        rhs = (
            _phi([b1] * k1, model.vacuum())
            * _phi([b2] * k2, model.vacuum())
            * _phi([b1] * k3, model.vacuum())
        )
        ok = ok and lhs == rhs
        lhs2 = _phi([b2] * k1 + [b1] * k2, model.vacuum())
        rhs2 = _phi([b2] * k1, model.vacuum()) * _phi([b1] * k2, model.vacuum())
        ok = ok and lhs2 == rhs2
    _check(res, "branches-are-boolean-independent-in-vacuum", ok)

    x = model.replica(1, 1)
    zrest = total - x
    ok = True
    for pattern in [(1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2), (2, 2, 2), (1, 3, 2)]:
        p1, q1, p2 = pattern
        lhs = _phi([x] * p1 + [zrest] * q1 + [x] * p2, model.vacuum())
        rhs = _phi([zrest] * q1, model.vacuum()) * _phi([x] * (p1 + p2), model.vacuum())
        ok = ok and lhs == rhs
        lhs_end = _phi([x] * p1 + [zrest] * q1, model.vacuum())
        rhs_end = _phi([zrest] * q1, model.vacuum()) * _phi([x] * p1, model.vacuum())
        ok = ok and lhs_end == rhs_end
    _check(res, "first-replica-and-rest-are-monotone-independent", ok)

    ok = True
    mu_m = mu.moments(6)
    nu_m = nu.moments(6)
    for powers in [(1, 1), (1, 2), (2, 1), (1, 1, 1), (2, 1, 1), (1, 1, 1, 1)]:
        vec = model.vacuum()
        for i, p in enumerate(reversed(powers)):
            idx = (len(powers) - 1 - i) % 2
            op = model.x1 if idx == 0 else model.x2
            mean = (mu_m if idx == 0 else nu_m)[p - 1]
            cur = vec
            for _ in range(p):
                cur = op.apply(cur)
            vec = {k: cur.get(k, 0) - mean * vec.get(k, 0) for k in set(cur) | set(vec)}
        val = opmodel.vec_dot(vec, model.vacuum())
        ok = ok and val == 0
    _check(res, "centered-alternating-products-vanish-in-vacuum", ok)

    eta1 = model.word_vector(((1, 1),))
    rep_check = opmodel.orthogonality_check(
        model.replica(1, 1), model.branch(2, 2), model.vacuum(), eta1, 3
    )
    ok = rep_check.ok
    eta2 = model.word_vector(((2, 1),))
    rep_check = opmodel.orthogonality_check(
        model.replica(2, 1), model.branch(1, 2), model.vacuum(), eta2, 3
    )
    ok = ok and rep_check.ok
    for _ in range(3):
        vec = {}
        for k in range(1, 4):
            idx = model.basis.index.get(((1, k),))
            if idx is not None:
                vec[idx] = Fraction(rng.randint(1, 5))
        rep_check = opmodel.orthogonality_check(
            model.replica(1, 1), model.branch(2, 2), model.vacuum(), vec, 3
        )
        ok = ok and rep_check.ok
    xi2 = model.word_vector(((2, 1),))
    eta_l2 = model.word_vector(((1, 1), (2, 1)))
    rep_check = opmodel.orthogonality_check(
        model.replica(1, 2), model.branch(2, 3), xi2, eta_l2, 3
    )
    ok = ok and rep_check.ok
    _check(res, "replica-branch-pairs-pass-orthogonality", ok)

    neg = opmodel.orthogonality_check(model.x1, model.x2, model.vacuum(), eta1, 3)
    _check(res, "generic-free-pair-fails-orthogonality", not neg.ok,
           f"{len(neg.violations)} violating monomials")

    ok = True
    eta_k1 = model.word_vector(((2, 1),))
    got = model.state_moments(model.branch(1, 2), 6, vec=eta_k1)
    ok = ok and tuple(got) == convolve.sfree(mu, nu, 6).moments(6)
    zeta_k1 = model.word_vector(((1, 1),))
    got = model.state_moments(model.branch(2, 2), 6, vec=zeta_k1)
    ok = ok and tuple(got) == convolve.sfree(nu, mu, 6).moments(6)
    _check(res, "higher-branches-keep-subordinate-law-at-deeper-states", ok)

    # graph dictionary
    p2 = graphs.path_graph(2)
    ball = graphs.free_product_ball(p2, p2, 6)
    got = graphs.root_spectral_moments(ball, 6)
    _check(res, "two-point-free-ball-gives-arcsine", got == (0, 2, 0, 6, 0, 20))

    branch_g = graphs.free_product_branch(p2, p2, 8, factor=1)
    got = graphs.root_spectral_moments(branch_g, 6)
    want = convolve.sfree(bernoulli_symmetric(), bernoulli_symmetric(), 6).moments(6)
    _check(res, "two-point-branch-gives-subordinate-half", got == want)

    ok = True
    for _ in range(5):
        g1 = random_graph(rng, rng.randint(2, 4))
        g2 = random_graph(rng, rng.randint(2, 4))
        r1 = graphs.root_distribution(g1, 8)
        r2 = graphs.root_distribution(g2, 8)
        ok = ok and graphs.root_spectral_moments(graphs.graph_star(g1, g2), 8) == convolve.boolean(r1, r2, 8).moments(8)
        ok = ok and graphs.root_spectral_moments(graphs.graph_comb(g1, g2), 8) == convolve.monotone(r1, r2, 8).moments(8)
        ok = ok and graphs.root_spectral_moments(graphs.graph_orthogonal(g1, g2), 8) == convolve.orthogonal(r1, r2, 8).moments(8)
        ball = graphs.free_product_ball(g1, g2, 4)
        ok = ok and graphs.root_spectral_moments(ball, 8) == convolve.free(r1, r2, 8).moments(8)
        br = graphs.free_product_branch(g1, g2, 4, factor=1)
        ok = ok and graphs.root_spectral_moments(br, 8) == convolve.sfree(r1, r2, 8).moments(8)
    _check(res, "graph-products-realize-the-five-convolutions", ok)

    g1 = graphs.path_graph(3)
    g2 = graphs.path_graph(2)
    n1, n2 = g1.n, g2.n
    size = n1 * n2

    def pid(u, v):
        return u * n2 + v

    a1_entries: dict = {}
    for u, v in g1.edges:
        a1_entries[(pid(u, g2.root), pid(v, g2.root))] = 1
        a1_entries[(pid(v, g2.root), pid(u, g2.root))] = 1
    a2_entries: dict = {}
    for u in range(n1):
        if u == g1.root:
            continue
        for x, y in g2.edges:
            a2_entries[(pid(u, x), pid(u, y))] = 1
            a2_entries[(pid(u, y), pid(u, x))] = 1
    a_first = opmodel.ModelOperator(size, a1_entries, "A1xP", exact=True)
    a_second = opmodel.ModelOperator(size, a2_entries, "PxA2", exact=True)
    xi = {pid(g1.root, g2.root): Fraction(1)}
    v0 = next(v for v in range(n1) if v != g1.root)
    eta = {pid(v0, g2.root): Fraction(1)}
    rep_check = opmodel.orthogonality_check(a_first, a_second, xi, eta, 3)
    _check(res, "tensor-pair-of-graphs-passes-orthogonality", rep_check.ok)

    return res


SUITES: dict[str, Callable[..., list[CheckResult]]] = {
    "partitions": lambda n_max, seed: suite_partitions(n_max=n_max, seed=seed),
    "convolutions": lambda n_max, seed: suite_convolutions(seed=seed),
    "opmodel": lambda n_max, seed: suite_opmodel(seed=seed),
}


def run_suites(which: str, n_max: int = 8, seed: int = 7) -> list[CheckResult]:
    names = ["partitions", "convolutions", "opmodel"] if which == "all" else [which]
    out: list[CheckResult] = []
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}")
        out.extend(SUITES[name](n_max, seed))
    return out
