"""The five convolutions, computed exactly at moment level.

Everything reduces to K-transform series (K = z - F as a series in 1/z):

* boolean:    K adds.
* orthogonal: K of the left factor composed with z minus K of the right.
* monotone:   right K plus the orthogonal K (F-composition, regrouped).
* s-free:     the stabilized limit of alternating orthogonal convolutions;
              at order N a fixed iteration count already gives every moment
              exactly, so no convergence heuristics are involved.
* free:       two independent decompositions, monotone-after-s-free and
              boolean-of-the-two-s-free-halves, always both computed and
              compared; a third cross-check goes through non-crossing
              cumulants in :func:`free_cumulant_oracle`.

Pointwise evaluation of the subordination transforms lives in
:func:`subordination_eval`; it is the only place here that iterates
numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InsufficientDepth, InvalidParameter, NoConvergence, RouteMismatch
from .measures import (
    JacobiParams,
    MeasureRep,
    eval_K,
    make_jacobi,
)
from .partitions import free_cumulants_from_moments, moments_from_free_cumulants
from .polys import poly_mul, poly_scale, poly_sub, poly_add
from .series import F_to_moments, TailSeries, moments_to_F, substitute_into_shifted


@dataclass(frozen=True)
class ConvolutionRequest:
    """A single convolution job, as the CLI hands it over."""

    mu: MeasureRep
    nu: MeasureRep
    op: str
    order: int
    iterations: Optional[int] = None


@dataclass(frozen=True)
class SubordinationEvalConfig:
    tol: float = 1e-12
    max_iter: int = 10_000

    def __post_init__(self):
        if self.tol <= 0:
            raise InvalidParameter("tolerance must be > 0")
        if self.max_iter < 1:
            raise InvalidParameter("max_iter must be >= 1")


# ---------------------------------------------------------------------------
# K-series plumbing
# ---------------------------------------------------------------------------

def k_series(rep: MeasureRep, order: int) -> TailSeries:
    """K-transform of the measure as a series of order N-1 (N moments)."""
    if order < 1:
        raise InvalidParameter("order must be >= 1")
    return -moments_to_F(rep.moments(order))


def measure_from_k(ks: TailSeries) -> MeasureRep:
    """Measure with the given K-series; recursion coefficients are attached
    eagerly when the moments pass the positivity check."""
    rep = MeasureRep.from_moments(F_to_moments(-ks))
    rep.jacobi_or_none()
    return rep


# ---------------------------------------------------------------------------
# The five convolutions
# ---------------------------------------------------------------------------

def boolean(mu: MeasureRep, nu: MeasureRep, order: int) -> MeasureRep:
    return measure_from_k(k_series(mu, order) + k_series(nu, order))


def orthogonal(mu: MeasureRep, nu: MeasureRep, order: int) -> MeasureRep:
    return measure_from_k(
        substitute_into_shifted(k_series(mu, order), k_series(nu, order))
    )


def monotone(mu: MeasureRep, nu: MeasureRep, order: int) -> MeasureRep:
    kn = k_series(nu, order)
    return measure_from_k(kn + substitute_into_shifted(k_series(mu, order), kn))


def orthogonal_iterated(mu: MeasureRep, nu: MeasureRep, m: int, order: int) -> MeasureRep:
    """m-fold alternating orthogonal convolution (m = 1 is the plain one)."""
    if m < 1:
        raise InvalidParameter("iteration count must be >= 1")
    k_mu = k_series(mu, order)
    k_nu = k_series(nu, order)
    chain = [k_mu if i % 2 == 0 else k_nu for i in range(m + 1)]
    acc = chain[-1]
    for ks in reversed(chain[:-1]):
        acc = substitute_into_shifted(ks, acc)
    return measure_from_k(acc)


def sfree_iterations(order: int) -> int:
    """Iteration count that pins every moment up to `order` exactly."""
    return -(-order // 2) + 1


def sfree(mu: MeasureRep, nu: MeasureRep, order: int) -> MeasureRep:
    return orthogonal_iterated(mu, nu, sfree_iterations(order), order)


def free(mu: MeasureRep, nu: MeasureRep, order: int) -> MeasureRep:
    """Free additive convolution via both decompositions.

    Route A composes the left measure's F with the s-free half subordinate
    to it; route B adds the K-transforms of the two s-free halves.  They
    are equal identically, so a mismatch can only mean a bug; both are
    always computed and compared before returning route A.
    """
    sf_nu_mu = sfree(nu, mu, order)
    sf_mu_nu = sfree(mu, nu, order)
    route_a = monotone(mu, sf_nu_mu, order)
    route_b = boolean(sf_mu_nu, sf_nu_mu, order)
    ma, mb = route_a.moments(order), route_b.moments(order)
    if ma != mb:
        raise RouteMismatch(
            f"free-convolution routes disagree: {list(map(str, ma))} vs {list(map(str, mb))}"
        )
    return route_a


def free_cumulant_oracle(mu: MeasureRep, nu: MeasureRep, order: int) -> MeasureRep:
    """Independent check route: additive cumulants over non-crossing partitions."""
    if order > 12:
        raise InvalidParameter("cumulant oracle capped at order 12")
    km = free_cumulants_from_moments(mu.moments(order), order)
    kn = free_cumulants_from_moments(nu.moments(order), order)
    total = tuple(a + b for a, b in zip(km, kn))
    rep = MeasureRep.from_moments(moments_from_free_cumulants(total, order))
    rep.jacobi_or_none()
    return rep


_OPS = {
    "boolean": boolean,
    "monotone": monotone,
    "orthogonal": orthogonal,
    "sfree": sfree,
    "free": free,
}


def convolve_request(req: ConvolutionRequest) -> MeasureRep:
    if req.op == "orthogonal-iter":
        if req.iterations is None:
            raise InvalidParameter("orthogonal-iter needs an iteration count")
        return orthogonal_iterated(req.mu, req.nu, req.iterations, req.order)
    try:
        fn = _OPS[req.op]
    except KeyError:
        raise InvalidParameter(f"unknown convolution {req.op!r}") from None
    return fn(req.mu, req.nu, req.order)


# ---------------------------------------------------------------------------
# Pointwise subordination
# ---------------------------------------------------------------------------

def subordination_eval(
    mu: MeasureRep,
    nu: MeasureRep,
    z: complex,
    cfg: Optional[SubordinationEvalConfig] = None,
    depth: int = 64,
) -> tuple[complex, complex]:
    """Limits (u, v) of the coupled alternating K-iteration at z.

    u converges to the K-transform of the s-free half subordinate to mu and
    v to the one subordinate to nu, so z - v and z - u are the subordination
    functions of the free convolution at z.
    """
    if cfg is None:
        cfg = SubordinationEvalConfig()
    u = eval_K(mu, z, depth)
    v = eval_K(nu, z, depth)
    for _ in range(cfg.max_iter):
        u_next = eval_K(mu, z - v, depth)
        v_next = eval_K(nu, z - u, depth)
        gap = max(abs(u_next - u), abs(v_next - v))
        u, v = u_next, v_next
        if gap < cfg.tol:
            return u, v
    raise NoConvergence(
        f"no convergence within {cfg.max_iter} iterations (gap {gap:.3e})",
        last=(u, v),
        gap=gap,
    )


# ---------------------------------------------------------------------------
# Chain decomposition of a recursion prefix
# ---------------------------------------------------------------------------

def jacobi_chain_decomposition(j: JacobiParams, m: int) -> list[MeasureRep]:
    """Two-atom measures whose nested orthogonal convolution has, as its
    K-transform, exactly the m-level approximant of the input's K.

    The first link carries alpha0 + omega0/(z - alpha1); link n >= 2 carries
    omega[n-1]/(z - alpha[n]).
    """
    if m < 1:
        raise InvalidParameter("chain length must be >= 1")
    try:
        alphas = [j.alpha_at(k) for k in range(m + 1)]
        omegas = [j.omega_at(k) for k in range(m)]
    except InsufficientDepth:
        raise InsufficientDepth(f"chain of length {m} needs {m + 1} levels") from None
    out = [
        MeasureRep.from_jacobi(
            make_jacobi((alphas[0], alphas[1]), (omegas[0],), complete=True)
        )
    ]
    for n in range(2, m + 1):
        out.append(
            MeasureRep.from_jacobi(
                make_jacobi((Fraction(0), alphas[n]), (omegas[n - 1],), complete=True)
            )
        )
    return out


def chain_k_rational(j: JacobiParams, m: int) -> tuple[list[Fraction], list[Fraction]]:
    """K-transform of the chain as an exact rational function (num, den)."""
    if m < 1:
        raise InvalidParameter("chain length must be >= 1")
    alphas = [j.alpha_at(k) for k in range(m + 1)]
    omegas = [j.omega_at(k) for k in range(m)]
    # innermost link: omega[m-1]/(z - alpha[m]); for m = 1 handled below
    num: list[Fraction] = [omegas[m - 1]]
    den: list[Fraction] = [-alphas[m], Fraction(1)]
    for n in range(m - 1, 0, -1):
        # omega[n-1]/(z - alpha[n] - previous)
        new_den = poly_sub(poly_mul([-alphas[n], Fraction(1)], den), num)
        num = poly_scale(den, omegas[n - 1])
        den = new_den
    # outer link adds alpha0 and uses the value built above as the nested part:
    # K = alpha0 + num/den  (for m = 1 the loop is empty and num/den is
    # omega0/(z - alpha1) already)
    num = poly_add(poly_scale(den, alphas[0]), num)
    return num, den
