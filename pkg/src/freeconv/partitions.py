"""Partition combinatorics behind the convolution identities.

Interval partitions of {1..n} are stored as compositions (tuples of part
sizes), which is what every formula here actually consumes.  On top of
that sit the depth-2 non-crossing "bridge" partitions, the two bijections
that index them, and the combinatorial formula that computes moments of
the orthogonal convolution without touching series at all -- the
independent oracle for :mod:`freeconv.convolve`.

Enumerations grow like 2**(n-1) or the Catalan numbers, so everything is
guarded at small n; oracle use never needs more.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import EvenBlockCount, InvalidParameter, OrderExceeded

Composition = tuple[int, ...]
Block = tuple[int, ...]

MAX_ENUM_N = 12


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _check_n(n: int, limit: int = MAX_ENUM_N) -> None:
    if n < 1:
        raise InvalidParameter(f"n must be >= 1, got {n}")
    if n > limit:
        raise InvalidParameter(f"enumeration capped at n <= {limit}, got {n}")


# ---------------------------------------------------------------------------
# Interval partitions as compositions
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def compositions(n: int) -> tuple[Composition, ...]:
    """All 2**(n-1) compositions of n, ordered by their cut bitmask."""
    _check_n(n, limit=16)
    out = []
    for mask in range(1 << (n - 1)):
        parts = []
        size = 1
        for pos in range(n - 1):
            if mask & (1 << pos):
                parts.append(size)
                size = 1
            else:
                size += 1
        parts.append(size)
        out.append(tuple(parts))
    return tuple(out)


def enumerate_interval(n: int) -> tuple[Composition, ...]:
    """Interval partitions of {1..n}, as compositions."""
    return compositions(n)


@lru_cache(maxsize=None)
def odd_compositions(n: int) -> tuple[Composition, ...]:
    return tuple(c for c in compositions(n) if len(c) % 2 == 1)


def odd_refinements_structured(pi: Composition) -> tuple[tuple[Composition, ...], ...]:
    """Per-part refinements of pi where every part splits into an odd count."""
    return tuple(product(*(odd_compositions(part) for part in pi)))


def odd_refinements(pi: Composition) -> tuple[Composition, ...]:
    """Refinements of pi splitting each part into an odd number of parts."""
    out = []
    for choice in odd_refinements_structured(pi):
        flat: list[int] = []
        for parts in choice:
            flat.extend(parts)
        out.append(tuple(flat))
    return tuple(out)


def alternating_split(c: Composition) -> tuple[Composition, Composition]:
    """Parts at odd positions and parts at even positions (1-based)."""
    if len(c) % 2 == 0:
        raise EvenBlockCount(f"alternating split needs an odd part count, got {len(c)}")
    return tuple(c[0::2]), tuple(c[1::2])


def coarsenings(pi: Composition) -> tuple[Composition, ...]:
    """All compositions obtained from pi by merging adjacent parts."""
    r = len(pi)
    out = []
    for mask in range(1 << (r - 1)):
        parts = []
        acc = pi[0]
        for pos in range(r - 1):
            if mask & (1 << pos):
                acc += pi[pos + 1]
            else:
                parts.append(acc)
                acc = pi[pos + 1]
        parts.append(acc)
        out.append(tuple(parts))
    return tuple(out)


def moment_function(moments: Sequence[Fraction], pi: Composition) -> Fraction:
    """Product of moments over the parts of pi."""
    out = Fraction(1)
    for part in pi:
        if part > len(moments):
            raise OrderExceeded(f"moment of order {part} not available")
        out *= _frac(moments[part - 1])
    return out


def inverse_boolean_cumulant(moments: Sequence[Fraction], pi: Composition) -> Fraction:
    """Alternating sum of the moment function over coarsenings of pi."""
    total = Fraction(0)
    r = len(pi)
    for sigma in coarsenings(pi):
        sign = -1 if (r - len(sigma)) % 2 else 1
        total += sign * moment_function(moments, sigma)
    return total


def signed_interval_moment_sum(moments: Sequence[Fraction], n: int) -> Fraction:
    """Sum over all compositions of n of (-1)**parts times the moment product.

    Brute-force value of the coefficient of z**(-n+1) in F(z) - z; used as
    the oracle for :func:`freeconv.series.moments_to_F`.
    """
    total = Fraction(0)
    for pi in compositions(n):
        sign = -1 if len(pi) % 2 else 1
        total += sign * moment_function(moments, pi)
    return total


def orthogonal_moment_combinatorial(
    mu: Sequence[Fraction], nu: Sequence[Fraction], pi: Composition
) -> Fraction:
    """Moment of the orthogonal convolution on pi, by partition enumeration.

    Sums over refinements that split each part of pi into an odd number of
    subparts; within each part the odd-position subparts feed the inverse
    boolean cumulants of mu and the even-position subparts feed plain
    moments of nu, with sign (-1)**(#odd-position parts - #parts of pi).
    """
    total = Fraction(0)
    for choice in odd_refinements_structured(pi):
        sign_exp = 0
        kfac = Fraction(1)
        mfac = Fraction(1)
        for parts in choice:
            odd_parts, even_parts = alternating_split(parts)
            sign_exp += len(odd_parts) - 1
            kfac *= inverse_boolean_cumulant(mu, odd_parts)
            for p in even_parts:
                if p > len(nu):
                    raise OrderExceeded(f"moment of order {p} not available")
                mfac *= _frac(nu[p - 1])
        total += (-1 if sign_exp % 2 else 1) * kfac * mfac
    return total


# ---------------------------------------------------------------------------
# Non-crossing partitions
# ---------------------------------------------------------------------------

def is_noncrossing(blocks: Iterable[Block]) -> bool:
    """No i < k < j < l with i,j and k,l in different blocks."""
    blocks = [tuple(sorted(b)) for b in blocks]
    for a, b in combinations(blocks, 2):
        for i, j in combinations(a, 2):
            if any(i < k < j for k in b) and any(k < i or k > j for k in b):
                return False
    return True


def block_depth(blocks: Sequence[Block], which: int) -> int:
    """One plus the number of blocks whose hull strictly contains the block."""
    lo, hi = min(blocks[which]), max(blocks[which])
    outer = 0
    for j, other in enumerate(blocks):
        if j != which and min(other) < lo and max(other) > hi:
            outer += 1
    return outer + 1


@dataclass(frozen=True)
class NCPartition:
    """Non-crossing partition of {1..n}, blocks sorted by their minimum."""

    blocks: tuple[Block, ...]

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def depth(self) -> int:
        return max(block_depth(self.blocks, i) for i in range(len(self.blocks)))


def nc_partition(blocks: Iterable[Iterable[int]]) -> NCPartition:
    norm = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))
    seen = [x for b in norm for x in b]
    n = len(seen)
    if sorted(seen) != list(range(1, n + 1)):
        raise InvalidParameter("blocks must partition {1..n}")
    if not is_noncrossing(norm):
        raise InvalidParameter("blocks cross")
    return NCPartition(norm)


@lru_cache(maxsize=None)
def noncrossing_partitions(n: int) -> tuple[tuple[Block, ...], ...]:
    """All non-crossing partitions of {1..n}, blocks sorted by minimum."""
    _check_n(n)

    def rec(elements: tuple[int, ...]) -> tuple[tuple[Block, ...], ...]:
        if not elements:
            return ((),)
        first, rest = elements[0], elements[1:]
        out = []
        for k in range(len(rest) + 1):
            for chosen in combinations(rest, k):
                block = (first,) + chosen
                # the gaps between consecutive block elements partition freely
                gaps = []
                bounds = block + (elements[-1] + 1,)
                for a, b in zip(bounds, bounds[1:]):
                    gaps.append(tuple(x for x in rest if a < x < b))
                for parts in product(*(rec(g) for g in gaps)):
                    merged: list[Block] = [block]
                    for p in parts:
                        merged.extend(p)
                    merged.sort(key=lambda blk: blk[0])
                    out.append(tuple(merged))
        return tuple(out)

    return rec(tuple(range(1, n + 1)))


def _merge_profiles(a: dict, b: dict) -> dict:
    out: dict[tuple[int, ...], int] = {}
    for pa, ca in a.items():
        for pb, cb in b.items():
            key = tuple(sorted(pa + pb))
            out[key] = out.get(key, 0) + ca * cb
    return out


@lru_cache(maxsize=None)
def nc_size_profiles(n: int) -> dict:
    """Counts of non-crossing partitions of {1..n} by sorted block sizes.

    Computed recursively without materializing the partitions, so it stays
    cheap up to the enumeration cap.
    """
    if n == 0:
        return {(): 1}
    _check_n(n)
    out: dict[tuple[int, ...], int] = {}
    rest = tuple(range(2, n + 1))
    for k in range(len(rest) + 1):
        for chosen in combinations(rest, k):
            block = (1,) + chosen
            bounds = block + (n + 1,)
            acc = {(): 1}
            for a, b in zip(bounds, bounds[1:]):
                acc = _merge_profiles(acc, nc_size_profiles(b - a - 1))
            for profile, count in acc.items():
                key = tuple(sorted(profile + (len(block),)))
                out[key] = out.get(key, 0) + count
    return out


def free_cumulants_from_moments(moments: Sequence[Fraction], n: int) -> tuple[Fraction, ...]:
    """First n free cumulants, by inverting the sum over non-crossing partitions."""
    m = [_frac(x) for x in moments]
    if n > len(m):
        raise OrderExceeded(f"need {n} moments, have {len(m)}")
    kappa: list[Fraction] = []
    for j in range(1, n + 1):
        acc = Fraction(0)
        for profile, count in nc_size_profiles(j).items():
            if profile == (j,):
                continue
            term = Fraction(count)
            for size in profile:
                term *= kappa[size - 1]
            acc += term
        kappa.append(m[j - 1] - acc)
    return tuple(kappa)


def moments_from_free_cumulants(kappa: Sequence[Fraction], n: int) -> tuple[Fraction, ...]:
    """First n moments from free cumulants, summing over non-crossing partitions."""
    k = [_frac(x) for x in kappa]
    if n > len(k):
        raise OrderExceeded(f"need {n} cumulants, have {len(k)}")
    out = []
    for j in range(1, n + 1):
        acc = Fraction(0)
        for profile, count in nc_size_profiles(j).items():
            term = Fraction(count)
            for size in profile:
                term *= k[size - 1]
            acc += term
        out.append(acc)
    return tuple(out)


# ---------------------------------------------------------------------------
# Decomposable depth-2 partitions and their two indexings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DecomposablePartition:
    """Depth-<=2 non-crossing partition split into outer and inner blocks.

    Outer blocks have depth 1, inner blocks depth 2, and consecutive inner
    blocks are separated by at least one outer element.
    """

    outer: tuple[Block, ...]
    inner: tuple[Block, ...]
    n: int

    @property
    def blocks(self) -> tuple[Block, ...]:
        return tuple(sorted(self.outer + self.inner, key=lambda b: b[0]))

    def legs(self) -> tuple[tuple[Block, ...], ...]:
        """Maximal runs of consecutive integers within each outer block."""
        out = []
        for block in self.outer:
            runs: list[list[int]] = [[block[0]]]
            for x in block[1:]:
                if x == runs[-1][-1] + 1:
                    runs[-1].append(x)
                else:
                    runs.append([x])
            out.append(tuple(tuple(r) for r in runs))
        return tuple(out)


def decomposable_partition(
    outer: Iterable[Iterable[int]], inner: Iterable[Iterable[int]], n: int
) -> DecomposablePartition:
    outer_t = tuple(sorted((tuple(sorted(b)) for b in outer), key=lambda b: b[0]))
    inner_t = tuple(sorted((tuple(sorted(b)) for b in inner), key=lambda b: b[0]))
    if not outer_t:
        raise InvalidParameter("need at least one outer block")
    pi = DecomposablePartition(outer_t, inner_t, n)
    _validate_decomposable(pi)
    return pi


def _validate_decomposable(pi: DecomposablePartition) -> None:
    blocks = pi.blocks
    seen = [x for b in blocks for x in b]
    if sorted(seen) != list(range(1, pi.n + 1)):
        raise InvalidParameter("blocks must partition {1..n}")
    if not is_noncrossing(blocks):
        raise InvalidParameter("blocks cross")
    outer_set = set(pi.outer)
    for i, b in enumerate(blocks):
        d = block_depth(blocks, i)
        if b in outer_set and d != 1:
            raise InvalidParameter(f"outer block {b} has depth {d}")
        if b not in outer_set:
            if d != 2:
                raise InvalidParameter(f"inner block {b} has depth {d}")
            if tuple(range(b[0], b[-1] + 1)) != b:
                raise InvalidParameter(f"inner block {b} is not an interval")
    for a, b in zip(pi.inner, pi.inner[1:]):
        if b[0] == a[-1] + 1:
            raise InvalidParameter(f"inner blocks {a} and {b} are neighbors")


def enumerate_D2(n: int) -> tuple[DecomposablePartition, ...]:
    """All decomposable depth-2 partitions of {1..n}, filtered from the
    full non-crossing family (the independent route, kept separate from
    the bijection-based construction so the two can cross-check)."""
    _check_n(n, limit=10)
    out = []
    for blocks in noncrossing_partitions(n):
        depths = [block_depth(blocks, i) for i in range(len(blocks))]
        if max(depths) > 2:
            continue
        outer = tuple(b for b, d in zip(blocks, depths) if d == 1)
        inner = tuple(b for b, d in zip(blocks, depths) if d == 2)
        ok = all(b[0] > a[-1] + 1 for a, b in zip(inner, inner[1:]))
        if ok:
            out.append(DecomposablePartition(outer, inner, n))
    return tuple(out)


def bijection_f(pi: DecomposablePartition) -> tuple[Composition, Composition]:
    """Fuse each outer block with its inner blocks into one part of tau and
    record, inside each fused part, the run lengths of alternating outer
    legs and inner blocks (an odd refinement sigma of tau)."""
    tau = []
    sigma = []
    for block, legs in zip(pi.outer, pi.legs()):
        lo, hi = block[0], block[-1]
        tau.append(hi - lo + 1)
        inner_here = [b for b in pi.inner if lo < b[0] and b[-1] < hi]
        runs: list[int] = []
        pieces = sorted(list(legs) + inner_here, key=lambda b: b[0])
        for piece in pieces:
            runs.append(len(piece))
        sigma.extend(runs)
    return tuple(tau), tuple(sigma)


def bijection_f_inverse(tau: Composition, sigma: Composition) -> DecomposablePartition:
    """Rebuild the partition whose fused hulls are tau and whose alternating
    run lengths are sigma."""
    n = sum(tau)
    if sum(sigma) != n:
        raise InvalidParameter("sigma must refine tau")
    outer: list[list[int]] = []
    inner: list[Block] = []
    pos = 1
    idx = 0
    for part in tau:
        group: list[int] = []
        consumed = 0
        parity = 0
        block: list[int] = []
        while consumed < part:
            size = sigma[idx]
            idx += 1
            consumed += size
            members = list(range(pos, pos + size))
            pos += size
            if parity % 2 == 0:
                block.extend(members)
            else:
                inner.append(tuple(members))
            parity += 1
        if parity % 2 == 0:
            raise InvalidParameter("each part of tau needs an odd number of runs")
        group.extend(block)
        outer.append(group)
    return decomposable_partition(outer, inner, n)


def enumerate_C(n: int) -> tuple[tuple[Composition, Composition], ...]:
    """Pairs (tau, sigma) with sigma an odd refinement of tau."""
    out = []
    for tau in compositions(n):
        for sigma in odd_refinements(tau):
            out.append((tau, sigma))
    return tuple(out)


@dataclass(frozen=True)
class DecompositionPair:
    """A decomposable partition together with an admissible regrouping of
    its outer elements: cuts are allowed only between legs, never inside
    a run of consecutive integers."""

    pi: DecomposablePartition
    eta_outer: tuple[Block, ...]


def enumerate_DP2(n: int) -> tuple[DecompositionPair, ...]:
    _check_n(n, limit=10)
    out = []
    for pi in enumerate_D2(n):
        per_block_choices = []
        for legs in pi.legs():
            choices = []
            for grouping in compositions(len(legs)):
                blocks = []
                at = 0
                for g in grouping:
                    chunk: list[int] = []
                    for leg in legs[at : at + g]:
                        chunk.extend(leg)
                    blocks.append(tuple(chunk))
                    at += g
                choices.append(tuple(blocks))
            per_block_choices.append(choices)
        for combo in product(*per_block_choices):
            eta: list[Block] = []
            for blocks in combo:
                eta.extend(blocks)
            eta.sort(key=lambda b: b[0])
            out.append(DecompositionPair(pi, tuple(eta)))
    return tuple(out)


def bijection_g(pair: DecompositionPair) -> tuple[int, Composition, tuple[int, ...]]:
    """Triple (m, sigma, j): outer element count, sizes of the regrouped
    outer blocks, and the inner-block size following each outer element
    (the last element closes the diagram and is not counted)."""
    pi = pair.pi
    outer_elems = sorted(x for b in pi.outer for x in b)
    m = len(outer_elems)
    sigma = tuple(len(b) for b in pair.eta_outer)
    inner_start = {b[0]: len(b) for b in pi.inner}
    j = []
    for elem in outer_elems[:-1]:
        j.append(inner_start.get(elem + 1, 0))
    return m, sigma, tuple(j)


def bijection_g_inverse(
    m: int, sigma: Composition, j: Sequence[int], n: int
) -> DecompositionPair:
    """Rebuild the pair from its triple: place the outer elements with the
    prescribed gaps, regroup them by sigma, then merge groups that sit on
    the two sides of an inner block."""
    if sum(sigma) != m or len(j) != max(m - 1, 0) or m + sum(j) != n:
        raise InvalidParameter("inconsistent triple")
    positions = []
    pos = 1
    inner: list[Block] = []
    for k in range(m):
        positions.append(pos)
        pos += 1
        if k < m - 1 and j[k] > 0:
            inner.append(tuple(range(pos, pos + j[k])))
            pos += j[k]
    # regroup outer elements by sigma
    eta: list[Block] = []
    at = 0
    for size in sigma:
        eta.append(tuple(positions[at : at + size]))
        at += size
    # outer blocks: union-find over eta groups, merged across inner blocks
    parent = list(range(len(eta)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, k: int) -> None:
        parent[find(i)] = find(k)

    group_of = {}
    for gi, block in enumerate(eta):
        for x in block:
            group_of[x] = gi
    for k in range(m - 1):
        if j[k] > 0:
            union(group_of[positions[k]], group_of[positions[k + 1]])
    merged: dict[int, list[int]] = {}
    for gi, block in enumerate(eta):
        merged.setdefault(find(gi), []).extend(block)
    outer = [sorted(v) for v in merged.values()]
    pi = decomposable_partition(outer, inner, n)
    return DecompositionPair(pi, tuple(eta))


def nonneg_compositions(total: int, parts: int) -> tuple[tuple[int, ...], ...]:
    """Tuples of `parts` non-negative integers summing to `total`."""
    if parts == 0:
        return ((),) if total == 0 else ()
    out = []

    def rec(remaining: int, slots: int, acc: list[int]):
        if slots == 1:
            out.append(tuple(acc + [remaining]))
            return
        for v in range(remaining + 1):
            rec(remaining - v, slots - 1, acc + [v])

    rec(total, parts, [])
    return tuple(out)


def enumerate_F(n: int) -> tuple[tuple[int, Composition, tuple[int, ...]], ...]:
    """Triples (m, sigma, j) with sigma a composition of m and j a tuple of
    m-1 non-negative integers summing to n - m."""
    out = []
    for m in range(1, n + 1):
        for sigma in compositions(m):
            for j in nonneg_compositions(n - m, m - 1):
                out.append((m, sigma, j))
    return tuple(out)
