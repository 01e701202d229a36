"""Truncated operator model on the two-factor word space.

The state space is spanned by the empty word plus alternating words of
letters (factor, basis_index); a letter with factor i and index k stands
for the k-th excited basis vector of factor i.  Factor operators act by
prepending, replacing or contracting the first letter, which is the
free-product representation restricted to the truncated basis; images
that would leave the basis are dropped, and the certified-order rules
below say how far moments are still exact.

Certified orders are deliberately conservative: an operator assembled at
depth cap D has exact vacuum moments up to order D, and exact moments up
to order D - k in a state supported at word length k.

Entries are exact rationals whenever every squared off-diagonal entry of
both factors has a rational square root; otherwise both factors drop to
floats and comparisons carry a 1e-9 tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .errors import DepthExceeded, InsufficientDepth, InvalidParameter
from .measures import JacobiParams, MeasureRep, rational_sqrt

Word = tuple[tuple[int, int], ...]

FLOAT_TOL = 1e-9

_BASIS_SIZE_LIMIT = 200_000


# ---------------------------------------------------------------------------
# Word basis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WordBasis:
    """Alternating words of bounded length and bounded index sum.

    Ordering is length-lexicographic with the factor index breaking ties,
    so matrices are reproducible across runs.  The index-sum cap (default:
    the depth cap) bounds the basis without touching any word reachable
    within the certified orders, since one operator application raises the
    total index by at most one.
    """

    words: tuple[Word, ...]
    dims: tuple[int, int]
    depth_cap: int
    weight_cap: int
    index: Mapping[Word, int] = field(compare=False, repr=False)

    @classmethod
    def build(
        cls, d1: int, d2: int, depth_cap: int, weight_cap: Optional[int] = None
    ) -> "WordBasis":
        if d1 < 1 or d2 < 1:
            raise InvalidParameter("factor dimensions must be >= 1")
        if depth_cap < 1:
            raise InvalidParameter("depth cap must be >= 1")
        if weight_cap is None:
            weight_cap = depth_cap
        dims = (d1, d2)
        words: list[Word] = [()]

        def grow(prefix: Word, weight: int):
            if len(prefix) == depth_cap:
                return
            for factor in (1, 2):
                if prefix and prefix[0][0] == factor:
                    continue
                for k in range(1, dims[factor - 1]):
                    if weight + k > weight_cap:
                        break
                    word = ((factor, k),) + prefix
                    words.append(word)
                    grow(word, weight + k)

        grow((), 0)
        if len(words) > _BASIS_SIZE_LIMIT:
            raise InvalidParameter(
                f"basis would have {len(words)} words; lower the caps"
            )
        words.sort(key=lambda w: (len(w), w))
        index = {w: i for i, w in enumerate(words)}
        return cls(tuple(words), dims, depth_cap, weight_cap, index)

    def __len__(self) -> int:
        return len(self.words)

    def level_indices(self, factor: int, n: int) -> frozenset[int]:
        """Indices of the n-th invariant slab for the given factor: words of
        length n-1 not starting with the factor, plus words of length n
        starting with it."""
        if n < 1:
            raise InvalidParameter("level must be >= 1")
        keep = set()
        for i, w in enumerate(self.words):
            if len(w) == n - 1 and (not w or w[0][0] != factor):
                keep.add(i)
            elif len(w) == n and w and w[0][0] == factor:
                keep.add(i)
        return frozenset(keep)


# ---------------------------------------------------------------------------
# Sparse symmetric operators
# ---------------------------------------------------------------------------

class ModelOperator:
    """Sparse matrix on an indexed basis, exact or float entries."""

    __slots__ = ("size", "entries", "label", "exact")

    def __init__(self, size: int, entries: dict, label: str = "", exact: bool = True):
        self.size = size
        self.entries = {k: v for k, v in entries.items() if v != 0}
        self.label = label
        self.exact = exact

    def __add__(self, other: "ModelOperator") -> "ModelOperator":
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return ModelOperator(self.size, out, f"{self.label}+{other.label}",
                             self.exact and other.exact)

    def __sub__(self, other: "ModelOperator") -> "ModelOperator":
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) - v
        return ModelOperator(self.size, out, f"{self.label}-{other.label}",
                             self.exact and other.exact)

    def __matmul__(self, other: "ModelOperator") -> "ModelOperator":
        cols: dict[int, list] = {}
        for (r, c), v in self.entries.items():
            cols.setdefault(c, []).append((r, v))
        out: dict = {}
        for (r, c), v in other.entries.items():
            for rr, vv in cols.get(r, ()):
                key = (rr, c)
                out[key] = out.get(key, 0) + vv * v
        return ModelOperator(self.size, out, f"{self.label}@{other.label}",
                             self.exact and other.exact)

    def scaled(self, s) -> "ModelOperator":
        return ModelOperator(self.size, {k: v * s for k, v in self.entries.items()},
                             self.label, self.exact)

    def apply(self, vec: dict) -> dict:
        cols: dict[int, list] = {}
        for (r, c), v in self.entries.items():
            cols.setdefault(c, []).append((r, v))
        out: dict = {}
        for c, x in vec.items():
            for r, v in cols.get(c, ()):
                out[r] = out.get(r, 0) + v * x
        return {k: v for k, v in out.items() if v != 0}

    def compress(self, keep: frozenset[int], label: str = "") -> "ModelOperator":
        out = {k: v for k, v in self.entries.items() if k[0] in keep and k[1] in keep}
        return ModelOperator(self.size, out, label or f"P·{self.label}·P", self.exact)

    def is_symmetric(self, tol: float = FLOAT_TOL) -> bool:
        for (r, c), v in self.entries.items():
            w = self.entries.get((c, r), 0)
            if self.exact:
                if w != v:
                    return False
            elif abs(w - v) > tol:
                return False
        return True

    def equals(self, other: "ModelOperator", tol: float = FLOAT_TOL) -> bool:
        keys = set(self.entries) | set(other.entries)
        for k in keys:
            a = self.entries.get(k, 0)
            b = other.entries.get(k, 0)
            if self.exact and other.exact:
                if a != b:
                    return False
            elif abs(a - b) > tol:
                return False
        return True

    def nnz(self) -> int:
        return len(self.entries)


def vec_dot(u: dict, v: dict):
    if len(u) > len(v):
        u, v = v, u
    total = 0
    for k, x in u.items():
        y = v.get(k)
        if y is not None:
            total += x * y
    return total


# ---------------------------------------------------------------------------
# Factor operators and the free-product representation
# ---------------------------------------------------------------------------

def jacobi_operator(j: JacobiParams, d: int) -> ModelOperator:
    """Tridiagonal realization of a measure on its first d basis vectors.

    Vacuum moments of powers reproduce the measure's moments up to order
    2d - 1.  Entries are exact when every off-diagonal square root is
    rational, else the whole matrix is built in floats.
    """
    if d < 1:
        raise InvalidParameter("dimension must be >= 1")
    try:
        alphas = [j.alpha_at(k) for k in range(d)]
        omegas = [j.omega_at(k) for k in range(d - 1)]
    except InsufficientDepth:
        raise InsufficientDepth(f"{d}-dimensional realization needs {d} levels") from None
    roots = [rational_sqrt(w) for w in omegas]
    exact = all(r is not None for r in roots)
    entries: dict = {}
    if exact:
        for k, a in enumerate(alphas):
            if a:
                entries[(k, k)] = a
        for k, r in enumerate(roots):
            if r:
                entries[(k, k + 1)] = r
                entries[(k + 1, k)] = r
    else:
        import math

        for k, a in enumerate(alphas):
            if a:
                entries[(k, k)] = float(a)
        for k, w in enumerate(omegas):
            if w:
                r = math.sqrt(float(w))
                entries[(k, k + 1)] = r
                entries[(k + 1, k)] = r
    return ModelOperator(d, entries, label="factor", exact=exact)


def free_product_rep(a: ModelOperator, factor: int, basis: WordBasis) -> ModelOperator:
    """Action of a factor operator on the word basis.

    On a word starting with the same factor the operator mixes that first
    letter (and contracts it away through its vacuum component); on any
    other word it acts through the factor's vacuum vector, prepending a
    letter.  Images outside the basis are dropped.
    """
    if factor not in (1, 2):
        raise InvalidParameter("factor must be 1 or 2")
    d = basis.dims[factor - 1]
    if a.size != d:
        raise InvalidParameter(f"factor operator must be {d}-dimensional")
    cols: dict[int, list] = {}
    for (r, c), v in a.entries.items():
        cols.setdefault(c, []).append((r, v))
    entries: dict = {}
    for ci, w in enumerate(basis.words):
        if w and w[0][0] == factor:
            b = w[0][1]
            rest = w[1:]
        else:
            b = 0
            rest = w
        for r, v in cols.get(b, ()):
            if r == 0:
                target = w if b == 0 else rest
            else:
                target = ((factor, r),) + rest
            ri = basis.index.get(target)
            if ri is None:
                continue
            key = (ri, ci)
            entries[key] = entries.get(key, 0) + v
    return ModelOperator(len(basis), entries, label=f"X{factor}", exact=a.exact)


def _to_jacobi(measure) -> JacobiParams:
    if isinstance(measure, JacobiParams):
        return measure
    if isinstance(measure, MeasureRep):
        return measure.jacobi()
    raise InvalidParameter(f"cannot realize {type(measure).__name__}")


class FreeProductModel:
    """Both factor operators represented on one truncated word space."""

    def __init__(
        self,
        mu,
        nu,
        factor_dim: int,
        depth_cap: int,
        weight_cap: Optional[int] = None,
    ):
        self.mu_jacobi = _to_jacobi(mu)
        self.nu_jacobi = _to_jacobi(nu)
        a1 = jacobi_operator(self.mu_jacobi, factor_dim)
        a2 = jacobi_operator(self.nu_jacobi, factor_dim)
        if not (a1.exact and a2.exact):
            a1 = _as_float(a1)
            a2 = _as_float(a2)
        self.exact = a1.exact and a2.exact
        self.factors = (a1, a2)
        self.basis = WordBasis.build(factor_dim, factor_dim, depth_cap, weight_cap)
        self.x1 = free_product_rep(a1, 1, self.basis)
        self.x2 = free_product_rep(a2, 2, self.basis)
        self._replicas: dict[tuple[int, int], ModelOperator] = {}

    @property
    def depth_cap(self) -> int:
        return self.basis.depth_cap

    def lam(self, factor: int) -> ModelOperator:
        return self.x1 if factor == 1 else self.x2

    def total(self) -> ModelOperator:
        return self.x1 + self.x2

    def replica(self, factor: int, n: int) -> ModelOperator:
        """Compression of the factor's representation to its n-th slab."""
        if n < 1 or n > self.depth_cap + 1:
            raise DepthExceeded(f"replica level {n} outside 1..{self.depth_cap + 1}")
        key = (factor, n)
        if key not in self._replicas:
            keep = self.basis.level_indices(factor, n)
            self._replicas[key] = self.lam(factor).compress(keep, f"X{factor}({n})")
        return self._replicas[key]

    def branch(self, factor: int, k: int = 1) -> ModelOperator:
        """Alternating sum of replicas from level k on: the truncated branch."""
        if k < 1:
            raise InvalidParameter("branch level must be >= 1")
        if k > self.depth_cap + 1:
            raise DepthExceeded(f"branch level {k} outside the truncated space")
        other = 3 - factor
        out = ModelOperator(len(self.basis), {}, f"B{factor}({k})", self.exact)
        n = k
        while n <= self.depth_cap + 1:
            out = out + self.replica(factor, n)
            n += 2
        n = k + 1
        while n <= self.depth_cap + 1:
            out = out + self.replica(other, n)
            n += 2
        out.label = f"B{factor}({k})"
        return out

    def one(self):
        return Fraction(1) if self.exact else 1.0

    def vacuum(self) -> dict:
        return {0: self.one()}

    def word_vector(self, word: Word) -> dict:
        idx = self.basis.index.get(tuple(word))
        if idx is None:
            raise InvalidParameter(f"word {word} not in the basis")
        return {idx: self.one()}

    def state_moments(self, op: ModelOperator, n_max: int, vec: Optional[dict] = None):
        """<op^n v, v>/<v, v> for n = 1..n_max."""
        if vec is None:
            vec = self.vacuum()
        norm = vec_dot(vec, vec)
        out = []
        cur = vec
        for _ in range(n_max):
            cur = op.apply(cur)
            out.append(vec_dot(cur, vec) / norm)
        return out

    def certified_vacuum_order(self) -> int:
        return self.depth_cap

    def certified_state_order(self, level: int) -> int:
        return self.depth_cap - level


def _as_float(a: ModelOperator) -> ModelOperator:
    return ModelOperator(
        a.size, {k: float(v) for k, v in a.entries.items()}, a.label, exact=False
    )


# ---------------------------------------------------------------------------
# Orthogonality report
# ---------------------------------------------------------------------------

@dataclass
class OrthogonalityReport:
    ok: bool
    checked: int
    violations: list[str]
    tol: Optional[float]


def orthogonality_check(
    a: ModelOperator,
    b: ModelOperator,
    xi: dict,
    eta: dict,
    n_max: int,
    tol: Optional[float] = None,
) -> OrthogonalityReport:
    """Exhaustive two-state orthogonality test over bounded monomials.

    Condition (i): the first state kills every product of one power of `a`
    and one power of `b`, in either order.  Condition (ii): with powers of
    `a` on both sides of a power of `b` and arbitrary monomials w1, w2 in
    a, b outside, the first-state expectation factors through the second
    state's value on the middle power.  Violations are reported, not
    raised.
    """
    exact = a.exact and b.exact
    if tol is None:
        tol = 0.0 if exact else FLOAT_TOL

    def close(x, y) -> bool:
        if exact:
            return x == y
        return abs(x - y) <= tol

    ops = {"a": a, "b": b}
    n_xi = vec_dot(xi, xi)
    n_eta = vec_dot(eta, eta)

    words: list[tuple[str, ...]] = [()]
    frontier: list[tuple[str, ...]] = [()]
    for _ in range(n_max):
        nxt = []
        for w in frontier:
            for letter in ("a", "b"):
                nxt.append(w + (letter,))
        words.extend(nxt)
        frontier = nxt

    def apply_word(word: tuple[str, ...], vec: dict) -> dict:
        for letter in reversed(word):
            vec = ops[letter].apply(vec)
        return vec

    # suffix[w] = w applied to xi; operators are symmetric so the same cache,
    # applied to the reversed left word, gives the bra side.
    suffix = {w: apply_word(w, xi) for w in words}
    lefts = {w: apply_word(tuple(reversed(w)), xi) for w in words}

    a_pow: list[dict] = [xi]
    for _ in range(2 * n_max):
        a_pow.append(a.apply(a_pow[-1]))

    psi_b: list = [1]
    cur = eta
    for _ in range(n_max):
        cur = b.apply(cur)
        psi_b.append(vec_dot(cur, eta) / n_eta)

    violations: list[str] = []
    checked = 0

    # condition (i)
    for p in range(1, n_max + 1):
        for q in range(1, n_max + 1):
            vec = apply_word(("a",) * p + ("b",) * q, xi)
            val = vec_dot(vec, xi) / n_xi
            checked += 1
            if not close(val, 0):
                violations.append(f"phi(a^{p} b^{q}) = {val}")
            vec = apply_word(("b",) * q + ("a",) * p, xi)
            val = vec_dot(vec, xi) / n_xi
            checked += 1
            if not close(val, 0):
                violations.append(f"phi(b^{q} a^{p}) = {val}")

    # condition (ii)
    for w2 in words:
        base = suffix[w2]
        for q in range(1, n_max + 1):
            v_q = apply_word(("a",) * q, base)
            phi_a2w2 = vec_dot(v_q, xi) / n_xi
            for s in range(1, n_max + 1):
                v_s = apply_word(("b",) * s, v_q)
                for p in range(1, n_max + 1):
                    v_p = apply_word(("a",) * p, v_s)
                    v_plain = a_pow[p + q] if w2 == () else apply_word(("a",) * (p + q), base)
                    for w1 in words:
                        bra = lefts[w1]
                        lhs = vec_dot(v_p, bra) / n_xi
                        phi_w1a1 = vec_dot(a_pow[p], bra) / n_xi
                        rhs = psi_b[s] * (
                            vec_dot(v_plain, bra) / n_xi - phi_w1a1 * phi_a2w2
                        )
                        checked += 1
                        if not close(lhs, rhs):
                            violations.append(
                                "phi(w1 a^%d b^%d a^%d w2) mismatch at w1=%s w2=%s: %s vs %s"
                                % (p, s, q, "".join(w1) or "1", "".join(w2) or "1", lhs, rhs)
                            )
    return OrthogonalityReport(not violations, checked, violations, None if exact else tol)
