"""Upper probabilities as exact envelopes of finitely many probabilities.

An upper probability here is always stored as its full value table over
the 2**m subsets together with a generating family of probabilities whose
pointwise maximum the table is.  Construction validates normalization,
monotonicity, and the envelope identity, so every `UpperProb` in
circulation is coherent: its table equals the subset-wise maximum over
its own core.

The core {P : P(A) <= V(A) for all A} is a polytope; `core_vertices`
enumerates its exact vertex set, and `invariant_core_vertices` does the
same for the sub-polytope of map-invariant core members, worked in
cycle-simplex coordinates (the invariant probabilities of a finite map
are exactly the mixtures of its cycle uniforms).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import measure, polytope, space
from .measure import Prob, _as_fraction, subset_sums
from .space import SubsetMask, Transformation

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class FunctionOnSpace:
    """An exact rational-valued function on the points of the space."""

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        vals = tuple(_as_fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not 1 <= len(vals) <= space.MAX_POINTS:
            raise ValueError(f"function length must be 1..{space.MAX_POINTS}")

    @property
    def size(self) -> int:
        return len(self.values)

    def __call__(self, point: int) -> Fraction:
        return self.values[point]


def indicator(mask: SubsetMask, size: int) -> FunctionOnSpace:
    return FunctionOnSpace(tuple(ONE if mask >> w & 1 else ZERO for w in range(size)))


def compose_with_map(f: FunctionOnSpace, T: Transformation) -> FunctionOnSpace:
    """The function w -> f(T(w))."""
    if f.size != T.size:
        raise ValueError("function and map live on different spaces")
    return FunctionOnSpace(tuple(f.values[T.table[w]] for w in range(T.size)))


@dataclass(frozen=True)
class UpperProb:
    """An upper probability: the set-wise maximum of its generators.

    table[A] is the value at bitmask A.  Invariants checked on build:
    table[empty] = 0, table[omega] = 1, monotone under inclusion, and
    table = max over generators everywhere (so the generators certify
    coherence).
    """

    table: tuple[Fraction, ...]
    generators: tuple[Prob, ...]

    def __post_init__(self) -> None:
        table = tuple(_as_fraction(v) for v in self.table)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "generators", tuple(self.generators))
        n = len(table)
        if n == 0 or n & (n - 1):
            raise ValueError("table length must be a power of two")
        m = n.bit_length() - 1
        if not 1 <= m <= space.MAX_POINTS:
            raise ValueError(f"table must cover 1..{space.MAX_POINTS} points")
        if not self.generators:
            raise ValueError("an envelope needs at least one generator")
        if table[0] != 0:
            raise ValueError("value at the empty set must be 0")
        if table[-1] != 1:
            raise ValueError("value at the whole space must be 1")
        sums = []
        for gen in self.generators:
            if gen.size != m:
                raise ValueError("generator lives on a different space")
            sums.append(subset_sums(gen.mass))
        for mask in range(n):
            best = max(s[mask] for s in sums)
            if table[mask] != best:
                raise ValueError(f"table is not the generator envelope at mask {mask}")
        for mask in range(n):
            for w in range(m):
                if not mask >> w & 1 and table[mask] > table[mask | 1 << w]:
                    raise ValueError("table is not monotone under inclusion")

    @property
    def size(self) -> int:
        return len(self.table).bit_length() - 1

    def __call__(self, mask: SubsetMask) -> Fraction:
        return self.table[mask]

    @property
    def omega(self) -> SubsetMask:
        return space.full_mask(self.size)


def envelope(generators) -> UpperProb:
    """The upper probability max_i P_i(.) of a family of probabilities.

    Duplicate generators are dropped (first occurrence kept).
    """
    gens = []
    seen = set()
    for gen in generators:
        if not isinstance(gen, Prob):
            gen = Prob(tuple(gen))
        if gen.mass not in seen:
            seen.add(gen.mass)
            gens.append(gen)
    if not gens:
        raise ValueError("an envelope needs at least one generator")
    m = gens[0].size
    if any(g.size != m for g in gens):
        raise ValueError("generators live on different spaces")
    sums = [subset_sums(g.mass) for g in gens]
    table = tuple(max(s[mask] for s in sums) for mask in range(1 << m))
    return UpperProb(table, tuple(gens))


def core_contains(V: UpperProb, P: Prob) -> bool:
    """Whether P(A) <= V(A) for every subset A."""
    if P.size != V.size:
        raise ValueError("measure and capacity live on different spaces")
    sums = subset_sums(P.mass)
    return all(sums[mask] <= V.table[mask] for mask in range(len(V.table)))


@lru_cache(maxsize=512)
def core_vertices(V: UpperProb) -> tuple[Prob, ...]:
    """Exact vertex set of the core polytope, in lexicographic mass order."""
    m = V.size
    rows = []
    for mask in range(1, len(V.table) - 1):
        rhs = V.table[mask]
        if rhs >= 1:
            continue
        coeffs = tuple(ONE if mask >> w & 1 else ZERO for w in range(m))
        rows.append((coeffs, rhs))
    verts = polytope.simplex_cut_vertices(m, rows)
    return tuple(Prob(v) for v in verts)


@lru_cache(maxsize=512)
def invariant_core_vertices(V: UpperProb, T: Transformation) -> tuple[Prob, ...]:
    """Vertices of {P in core(V) : P invariant under T}.

    Worked in the simplex of mixture weights over the cycle uniforms and
    mapped back to mass vectors; empty if no core member is invariant.
    """
    if T.size != V.size:
        raise ValueError("map and capacity live on different spaces")
    uniforms = measure.ergodic_probabilities(T)
    k = len(uniforms)
    usums = [subset_sums(u.mass) for u in uniforms]
    rows = []
    for mask in range(1, len(V.table) - 1):
        rhs = V.table[mask]
        coeffs = tuple(s[mask] for s in usums)
        if rhs >= max(coeffs):
            continue
        rows.append((coeffs, rhs))
    lam_verts = polytope.simplex_cut_vertices(k, rows)
    out = []
    for lam in lam_verts:
        mass = [ZERO] * V.size
        for c, weight in enumerate(lam):
            if weight:
                for w, v in enumerate(uniforms[c].mass):
                    if v:
                        mass[w] += weight * v
        out.append(Prob(tuple(mass)))
    return tuple(sorted(out, key=lambda p: p.mass))


def choquet_integral(V: UpperProb, f: FunctionOnSpace) -> Fraction:
    """The decreasing-layer integral of f against V.

    With distinct values v_1 > ... > v_k this is
    sum_j (v_j - v_{j+1}) V({f >= v_j}) + v_k, exact in rationals; the
    signed-layer definition over the two half-lines agrees and is kept in
    the oracle module as the independent route.
    """
    if f.size != V.size:
        raise ValueError("function and capacity live on different spaces")
    levels = sorted(set(f.values), reverse=True)
    total = ZERO
    mask = 0
    for j, v in enumerate(levels):
        for w, val in enumerate(f.values):
            if val == v:
                mask |= 1 << w
        if j + 1 < len(levels):
            total += (v - levels[j + 1]) * V.table[mask]
        else:
            total += v  # V(omega) = 1
    return total


def is_invariant_capacity(V: UpperProb, T: Transformation) -> bool:
    """Whether V(preimage(T, A)) == V(A) for every subset A."""
    if T.size != V.size:
        raise ValueError("map and capacity live on different spaces")
    return all(
        V.table[space.preimage(T, mask)] == V.table[mask] for mask in range(len(V.table))
    )


def null_support(V: UpperProb) -> SubsetMask:
    """The set of points with positive singleton value.

    A set is V-null exactly when it misses this support, so "holds at
    every point of null_support" is the pointwise reading of
    "holds outside a V-null set".
    """
    out = 0
    for w in range(V.size):
        if V.table[1 << w] > 0:
            out |= 1 << w
    return out
