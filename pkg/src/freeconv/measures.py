"""Measure representations, exact conversions, and analytic evaluation.

A measure enters as exact moments, as three-term recursion coefficients
(diagonal ``alpha``, squared off-diagonal ``omega``, optionally continued
by a constant tail), or as finitely many weighted atoms.  Conversions
between the three are exact rational arithmetic; the continued-fraction
evaluators at complex points are the only floating-point code here.

Conventions for recursion coefficients:

* ``tail=None`` means plain truncation: the coefficients are a known
  prefix of some measure, so exact moments stop at order 2d-1 for d
  diagonal entries.  If an omega is zero the fraction terminates and the
  measure is finitely supported; the parameters are then complete and
  every moment is exact (``finite=True``).
* ``tail=WignerTail(a, b)`` continues both sequences with the constants
  a and b, so every moment is exact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    DomainError,
    EmptyJacobi,
    InsufficientDepth,
    InvalidParameter,
    NotAMomentSequence,
    NumericalSingularity,
    OrderExceeded,
)
from .polys import poly_mul, poly_scale, poly_sub, poly_trim


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise InvalidParameter("floats are not accepted where exact rationals are required")
    return Fraction(x)


# ---------------------------------------------------------------------------
# Value types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MomentSequence:
    """Exact moments m1..mN (m0 = 1 implied)."""

    m: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.m)


def moment_sequence(values: Iterable) -> MomentSequence:
    return MomentSequence(tuple(_frac(v) for v in values))


@dataclass(frozen=True)
class WignerTail:
    """Constant continuation of both recursion sequences."""

    a: Fraction
    b: Fraction


@dataclass(frozen=True)
class JacobiParams:
    """Recursion coefficients: diagonal alpha, squared off-diagonal omega."""

    alpha: tuple[Fraction, ...]
    omega: tuple[Fraction, ...]
    tail: Optional[WignerTail] = None
    finite: bool = False

    @property
    def levels(self) -> int:
        return len(self.alpha)

    def alpha_at(self, n: int) -> Fraction:
        if n < len(self.alpha):
            return self.alpha[n]
        if self.tail is not None:
            return self.tail.a
        if self.finite:
            return Fraction(0)
        raise InsufficientDepth(f"diagonal entry {n} is beyond the known prefix")

    def omega_at(self, n: int) -> Fraction:
        if n < len(self.omega):
            return self.omega[n]
        if self.tail is not None:
            return self.tail.b
        if self.finite:
            return Fraction(0)
        raise InsufficientDepth(f"off-diagonal entry {n} is beyond the known prefix")

    @property
    def moment_cap(self) -> Optional[int]:
        """Largest exactly-known moment order, or None when unlimited."""
        if self.finite or self.tail is not None:
            return None
        return 2 * len(self.alpha) - 1

    def shift(self) -> "JacobiParams":
        """Drop the leading diagonal and off-diagonal entries."""
        if not self.alpha:
            if self.tail is not None:
                return self
            raise EmptyJacobi("no levels left to shift")
        return make_jacobi(
            self.alpha[1:], self.omega[1:], tail=self.tail, complete=self.finite
        )


def make_jacobi(
    alpha: Iterable,
    omega: Iterable,
    tail: Optional[WignerTail] = None,
    *,
    complete: bool = False,
) -> JacobiParams:
    """Validate and normalize recursion coefficients.

    A zero omega terminates the fraction: later entries are dropped and the
    result is marked finite.  ``complete=True`` asserts the given prefix is
    the whole measure (finitely supported) even with all omegas positive.
    """
    a = tuple(_frac(x) for x in alpha)
    w = tuple(_frac(x) for x in omega)
    if any(x < 0 for x in w):
        raise InvalidParameter("squared off-diagonal entries must be >= 0")
    if tail is not None:
        tail = WignerTail(_frac(tail.a), _frac(tail.b))
        if tail.b < 0:
            raise InvalidParameter("tail variance must be >= 0")
        if tail.b == 0:
            # constant-zero continuation terminates the fraction
            cut = len(w)
            a = a + (tail.a,) * max(0, cut + 1 - len(a))
            return make_jacobi(a[: cut + 1], w[:cut], None, complete=True)
    for m, x in enumerate(w):
        if x == 0:
            need = m + 1
            if len(a) < need:
                if tail is None:
                    raise InvalidParameter("omega terminates beyond the given diagonal")
                a = a + (tail.a,) * (need - len(a))
            return JacobiParams(a[:need], w[:m], None, True)
    if tail is not None:
        return JacobiParams(a, w, tail, False)
    if len(w) != max(len(a) - 1, 0):
        raise InvalidParameter(
            f"expected {max(len(a) - 1, 0)} off-diagonal entries for {len(a)} diagonal ones"
        )
    if not a:
        # no data at all: the zero measure convention, a point mass at 0
        return JacobiParams((Fraction(0),), (), None, True)
    return JacobiParams(a, w, None, complete)


@dataclass(frozen=True)
class AtomicMeasure:
    """Finitely many atoms (location, weight), weights positive and summing to 1."""

    atoms: tuple[tuple[Fraction, Fraction], ...]

    def moment(self, n: int) -> Fraction:
        return sum((wt * loc**n for loc, wt in self.atoms), Fraction(0))

    def moments(self, n: int) -> tuple[Fraction, ...]:
        out = []
        powers = {loc: Fraction(1) for loc, _ in self.atoms}
        for _ in range(n):
            total = Fraction(0)
            for loc, wt in self.atoms:
                powers[loc] *= loc
                total += wt * powers[loc]
            out.append(total)
        return tuple(out)


def atomic_measure(pairs: Iterable) -> AtomicMeasure:
    atoms = tuple(sorted(((_frac(l), _frac(w)) for l, w in pairs), key=lambda p: p[0]))
    if not atoms:
        raise InvalidParameter("need at least one atom")
    if any(w <= 0 for _, w in atoms):
        raise InvalidParameter("atom weights must be positive")
    if sum(w for _, w in atoms) != 1:
        raise InvalidParameter("atom weights must sum to 1")
    if len({l for l, _ in atoms}) != len(atoms):
        raise InvalidParameter("atom locations must be distinct")
    return AtomicMeasure(atoms)


# ---------------------------------------------------------------------------
# Conversions
# ---------------------------------------------------------------------------

def moments_to_jacobi(moments: Sequence) -> JacobiParams:
    """Recursion coefficients from exact moments.

    Runs the orthogonal-polynomial recursion with the moment inner product,
    entirely over rationals.  A vanishing squared norm means the underlying
    measure is finitely supported (returned finite); a negative one means
    the input is not a moment sequence.
    """
    m = [Fraction(1)] + [_frac(x) for x in moments]
    N = len(moments)

    def inner(p: Sequence[Fraction], q: Sequence[Fraction]) -> Fraction:
        prod = poly_mul(p, q)
        return sum((c * m[i] for i, c in enumerate(prod)), Fraction(0))

    alpha: list[Fraction] = []
    omega: list[Fraction] = []
    p_prev: Optional[list[Fraction]] = None
    p_cur: list[Fraction] = [Fraction(1)]
    s_cur = Fraction(1)
    finite = False
    while 2 * len(alpha) + 1 <= N:
        k = len(alpha)
        xp = [Fraction(0)] + list(p_cur)
        alpha.append(inner(xp, p_cur) / s_cur)
        p_next = poly_sub(xp, poly_scale(p_cur, alpha[-1]))
        if p_prev is not None:
            p_next = poly_sub(p_next, poly_scale(p_prev, omega[-1]))
        if 2 * k + 2 > N:
            break
        s_next = inner(p_next, p_next)
        if s_next < 0:
            raise NotAMomentSequence(f"negative squared norm at level {k + 1}")
        if s_next == 0:
            finite = True
            break
        if 2 * k + 3 > N:
            # the norm was computable (termination check) but no further
            # diagonal entry is, so the off-diagonal entry stays unknown
            break
        omega.append(s_next / s_cur)
        p_prev, p_cur = p_cur, poly_trim(p_next)
        s_cur = s_next
    return JacobiParams(tuple(alpha), tuple(omega), None, finite)


def jacobi_to_moments(j: JacobiParams, n: int) -> tuple[Fraction, ...]:
    """First n moments from recursion coefficients, via the weighted-walk
    transfer recursion (exact)."""
    if n < 0:
        raise InvalidParameter("n must be >= 0")
    if j.moment_cap is not None and n > j.moment_cap:
        raise InsufficientDepth(
            f"only {j.moment_cap} exact moments from {j.levels} levels"
        )
    levels = n // 2 + 1
    alphas = [j.alpha_at(k) for k in range(levels)]
    omegas = [j.omega_at(k) for k in range(max(levels - 1, 0))]
    v = [Fraction(0)] * (levels + 1)
    v[0] = Fraction(1)
    out = []
    for _ in range(n):
        nxt = [Fraction(0)] * (levels + 1)
        for l in range(levels):
            if v[l] == 0:
                continue
            nxt[l] += alphas[l] * v[l]
            if l + 1 <= levels:
                nxt[l + 1] += v[l]
        for l in range(1, levels):
            if v[l]:
                nxt[l - 1] += omegas[l - 1] * v[l]
        v = nxt
        out.append(v[0])
    return tuple(out)


def _int_sqrt(n: int) -> Optional[int]:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def rational_sqrt(x: Fraction) -> Optional[Fraction]:
    """Exact square root of a rational, or None if irrational."""
    p = _int_sqrt(x.numerator)
    q = _int_sqrt(x.denominator)
    if p is None or q is None:
        return None
    return Fraction(p, q)


def _rational_roots(p: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """All roots of p if they are rational (found by deflation), else None."""
    coeffs = poly_trim(p)
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    roots: list[Fraction] = []
    while len(ints) > 1:
        g = 0
        for c in ints:
            g = math.gcd(g, c)
        if g > 1:
            ints = [c // g for c in ints]
        lead, const = ints[-1], ints[0]
        root: Optional[Fraction] = None
        if const == 0:
            root = Fraction(0)
        else:
            for pn in _divisors(abs(const)):
                for qn in _divisors(abs(lead)):
                    for cand in (Fraction(pn, qn), Fraction(-pn, qn)):
                        acc = Fraction(0)
                        for c in reversed(ints):
                            acc = acc * cand + c
                        if acc == 0:
                            root = cand
                            break
                    if root is not None:
                        break
                if root is not None:
                    break
            if root is None:
                return None
        roots.append(root)
        # synthetic division by (x - root): q[d-1] = c[d], q[i-1] = c[i] + root*q[i]
        q = [Fraction(0)] * (len(ints) - 1)
        q[-1] = Fraction(ints[-1])
        for i in range(len(ints) - 2, 0, -1):
            q[i - 1] = Fraction(ints[i]) + root * q[i]
        lcm2 = 1
        for c in q:
            lcm2 = lcm2 * c.denominator // math.gcd(lcm2, c.denominator)
        ints = [int(c * lcm2) for c in q]
    return roots


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _solve_linear(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Exact Gaussian elimination for the small systems used here."""
    n = len(rhs)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise InvalidParameter("singular system")
        a[col], a[pivot] = a[pivot], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def jacobi_to_atoms(j: JacobiParams) -> Optional[AtomicMeasure]:
    """Recover the atoms of a terminated fraction when the spectrum is rational."""
    if not j.finite:
        return None
    d = j.levels
    # monic orthogonal polynomials; the top one vanishes exactly on the atoms
    p_prev: Optional[list[Fraction]] = None
    p_cur: list[Fraction] = [Fraction(1)]
    for k in range(d):
        nxt = poly_sub([Fraction(0)] + p_cur, poly_scale(p_cur, j.alpha[k]))
        if p_prev is not None:
            nxt = poly_sub(nxt, poly_scale(p_prev, j.omega[k - 1]))
        p_prev, p_cur = p_cur, poly_trim(nxt)
    roots = _rational_roots(p_cur)
    if roots is None or len(set(roots)) != d:
        return None
    roots = sorted(roots)
    mom = jacobi_to_moments(j, d - 1) if d > 1 else ()
    rhs = [Fraction(1)] + list(mom)
    vander = [[loc**k for loc in roots] for k in range(d)]
    weights = _solve_linear(vander, rhs)
    if any(w <= 0 for w in weights):
        return None
    return atomic_measure(zip(roots, weights))


# ---------------------------------------------------------------------------
# Unified carrier
# ---------------------------------------------------------------------------

class MeasureRep:
    """A measure under one or more representations, with cached conversions.

    All representations present agree on every moment they can produce; the
    caches are write-once, so instances are safe to share.
    """

    def __init__(
        self,
        *,
        moments: Optional[Sequence[Fraction]] = None,
        jacobi: Optional[JacobiParams] = None,
        atoms: Optional[AtomicMeasure] = None,
    ):
        if moments is None and jacobi is None and atoms is None:
            raise InvalidParameter("empty measure representation")
        self._moments: list[Fraction] = [(_frac(x)) for x in moments] if moments else []
        self._moment_source_cap = len(self._moments) if moments is not None else None
        self._jacobi = jacobi
        self._jacobi_attempted = jacobi is not None
        self._atoms = atoms
        self._atoms_attempted = atoms is not None

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_moments(cls, values: Iterable) -> "MeasureRep":
        return cls(moments=[_frac(v) for v in values])

    @classmethod
    def from_jacobi(cls, j: JacobiParams) -> "MeasureRep":
        return cls(jacobi=j)

    @classmethod
    def from_atoms(cls, pairs) -> "MeasureRep":
        am = pairs if isinstance(pairs, AtomicMeasure) else atomic_measure(pairs)
        return cls(atoms=am)

    # -- moments -----------------------------------------------------------

    @property
    def max_exact_order(self) -> Optional[int]:
        """Largest exactly computable moment order (None = unlimited)."""
        if self._atoms is not None:
            return None
        if self._jacobi is not None:
            return self._jacobi.moment_cap
        return self._moment_source_cap

    def moments(self, n: int) -> tuple[Fraction, ...]:
        if n <= len(self._moments):
            return tuple(self._moments[:n])
        if self._atoms is not None:
            self._moments = list(self._atoms.moments(n))
        elif self._jacobi is not None:
            self._moments = list(jacobi_to_moments(self._jacobi, n))
        else:
            raise OrderExceeded(
                f"only {len(self._moments)} moments available, {n} requested"
            )
        return tuple(self._moments[:n])

    def moment_sequence(self, n: int) -> MomentSequence:
        return MomentSequence(self.moments(n))

    # -- conversions -------------------------------------------------------

    def jacobi(self) -> JacobiParams:
        if self._jacobi is None:
            if self._atoms is not None:
                j = moments_to_jacobi(self._atoms.moments(2 * len(self._atoms.atoms)))
            else:
                j = moments_to_jacobi(tuple(self._moments))
            self._jacobi = j
            self._jacobi_attempted = True
        return self._jacobi

    def jacobi_or_none(self) -> Optional[JacobiParams]:
        try:
            return self.jacobi()
        except NotAMomentSequence:
            return None

    def atoms(self) -> Optional[AtomicMeasure]:
        if not self._atoms_attempted:
            self._atoms_attempted = True
            j = self.jacobi_or_none()
            if j is not None and j.finite:
                self._atoms = jacobi_to_atoms(j)
        return self._atoms


# ---------------------------------------------------------------------------
# Analytic layer
# ---------------------------------------------------------------------------

def wigner_transform(a, b, z: complex) -> complex:
    """Cauchy transform of the constant-coefficient tail measure at z.

    Branch chosen so the value decays like 1/z at infinity and has negative
    imaginary part on the upper half-plane; the two principal square roots
    of z - a -/+ 2*sqrt(b) realize exactly that on all of C+.  Written as
    2/(u + s) rather than (u - s)/(2b) to avoid cancellation at large |z|.
    """
    a = float(a)
    b = float(b)
    u = complex(z) - a
    if b == 0:
        return 1.0 / u
    sb = 2.0 * math.sqrt(b)
    s = cmath.sqrt(u - sb) * cmath.sqrt(u + sb)
    return 2.0 / (u + s)


def _as_jacobi(rep) -> JacobiParams:
    if isinstance(rep, JacobiParams):
        return rep
    if isinstance(rep, MeasureRep):
        return rep.jacobi()
    raise InvalidParameter(f"cannot evaluate {type(rep).__name__}")


def eval_G(rep, z: complex, depth: int = 64) -> complex:
    """Bottom-up continued-fraction value of the Cauchy transform at z."""
    z = complex(z)
    if z.imag <= 0:
        raise DomainError("evaluation requires Im z > 0")
    j = _as_jacobi(rep)
    explicit = min(depth, j.levels)
    g: Optional[complex] = None
    if j.tail is not None and depth >= j.levels:
        g = wigner_transform(j.tail.a, j.tail.b, z)
    for k in range(explicit - 1, -1, -1):
        a = float(j.alpha_at(k))
        if g is None:
            g = 1.0 / (z - a)
        else:
            g = 1.0 / (z - a - float(j.omega_at(k)) * g)
    if g is None:
        g = 1.0 / z
    return g


def eval_F(rep, z: complex, depth: int = 64) -> complex:
    g = eval_G(rep, z, depth)
    if abs(g) < 1e-250:
        raise NumericalSingularity("Cauchy transform too close to zero to invert")
    return 1.0 / g


def eval_K(rep, z: complex, depth: int = 64) -> complex:
    return complex(z) - eval_F(rep, z, depth)


def approximant_G(j: JacobiParams, m: int) -> tuple[list[Fraction], list[Fraction]]:
    """Numerator and denominator polynomials of the m-level approximant.

    Both satisfy Y[k+1] = (z - alpha[k])*Y[k] - omega[k-1]*Y[k-1] with
    starts N0 = 0, N1 = 1 and M0 = 1, M1 = z - alpha0.
    """
    if m < 1:
        raise InvalidParameter("approximant level must be >= 1")
    n_prev, n_cur = [Fraction(0)], [Fraction(1)]
    m_prev, m_cur = [Fraction(1)], [-j.alpha_at(0), Fraction(1)]
    for k in range(1, m):
        factor = [-j.alpha_at(k), Fraction(1)]
        w = j.omega_at(k - 1)
        n_prev, n_cur = n_cur, poly_sub(poly_mul(factor, n_cur), poly_scale(n_prev, w))
        m_prev, m_cur = m_cur, poly_sub(poly_mul(factor, m_cur), poly_scale(m_prev, w))
    return n_cur, m_cur


def stieltjes_density(
    rep, grid: Sequence[float], epsilon: float = 1e-6, depth: int = 64
) -> list[tuple[float, float]]:
    """Smoothed density -Im G(x + i*epsilon) / pi on the grid."""
    if epsilon <= 0:
        raise InvalidParameter("epsilon must be > 0")
    out = []
    for x in grid:
        g = eval_G(rep, complex(x, epsilon), depth)
        out.append((float(x), -g.imag / math.pi))
    return out


def shift_jacobi(j: JacobiParams) -> JacobiParams:
    return j.shift()


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def point_mass(a) -> MeasureRep:
    return MeasureRep.from_atoms([(a, 1)])


def two_point(p, loc1, loc2) -> MeasureRep:
    p = _frac(p)
    loc1, loc2 = _frac(loc1), _frac(loc2)
    if not 0 < p < 1:
        raise InvalidParameter("weight must lie strictly between 0 and 1")
    if loc1 == loc2:
        return point_mass(loc1)
    return MeasureRep.from_atoms([(loc1, p), (loc2, 1 - p)])


def wigner(a, b) -> MeasureRep:
    b = _frac(b)
    if b < 0:
        raise InvalidParameter("variance must be >= 0")
    if b == 0:
        return point_mass(a)
    return MeasureRep.from_jacobi(make_jacobi((), (), WignerTail(_frac(a), b)))


def bernoulli_symmetric() -> MeasureRep:
    return two_point(Fraction(1, 2), 1, -1)


# ---------------------------------------------------------------------------
# JSON measure format
# ---------------------------------------------------------------------------

def fraction_to_str(x: Fraction) -> str:
    return str(x)


def parse_fraction(value) -> Fraction:
    if isinstance(value, bool):
        raise InvalidParameter("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidParameter(f"bad rational literal {value!r}") from exc
    raise InvalidParameter(f"rationals must be ints or 'p/q' strings, got {value!r}")


def parse_measure(obj: dict) -> MeasureRep:
    """Parse the tagged measure object; unknown auxiliary keys are ignored."""
    if not isinstance(obj, dict) or "type" not in obj:
        raise InvalidParameter("measure object needs a 'type' field")
    kind = obj["type"]
    if kind == "moments":
        return MeasureRep.from_moments([parse_fraction(v) for v in obj.get("m", [])])
    if kind == "jacobi":
        alpha = [parse_fraction(v) for v in obj.get("alpha", [])]
        omega = [parse_fraction(v) for v in obj.get("omega", [])]
        tail_obj = obj.get("tail", {"kind": "truncate"})
        if tail_obj.get("kind") == "wigner":
            tail = WignerTail(parse_fraction(tail_obj["a"]), parse_fraction(tail_obj["b"]))
        elif tail_obj.get("kind") == "truncate":
            tail = None
        else:
            raise InvalidParameter(f"unknown tail kind {tail_obj.get('kind')!r}")
        return MeasureRep.from_jacobi(make_jacobi(alpha, omega, tail))
    if kind == "atoms":
        return MeasureRep.from_atoms(
            [(parse_fraction(l), parse_fraction(w)) for l, w in obj.get("atoms", [])]
        )
    raise InvalidParameter(f"unknown measure type {kind!r}")


def measure_to_json(rep: MeasureRep, order: int) -> dict:
    """Canonical emission: moments at the given order plus derived views.

    The derived recursion coefficients and atoms are recomputed from the
    emitted moments so that parse -> emit is idempotent byte for byte.
    """
    m = rep.moments(order)
    out: dict = {"type": "moments", "m": [fraction_to_str(x) for x in m]}
    try:
        j = moments_to_jacobi(m)
    except NotAMomentSequence:
        j = None
    if j is not None:
        out["jacobi"] = {
            "alpha": [fraction_to_str(x) for x in j.alpha],
            "omega": [fraction_to_str(x) for x in j.omega],
            "tail": {"kind": "truncate"},
        }
        if j.finite:
            atoms = jacobi_to_atoms(j)
            if atoms is not None:
                out["atoms"] = [
                    [fraction_to_str(l), fraction_to_str(w)] for l, w in atoms.atoms
                ]
    return out
