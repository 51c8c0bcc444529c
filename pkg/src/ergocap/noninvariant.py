"""Component structure for a probability that is not itself invariant.

Given an invertible map and any probability P, the space splits into
invariant cells of positive mass (null leftovers folded into the last
cell).  Conditioning P on a cell and averaging its pushforwards over one
period yields an ergodic invariant limit Q_j; the supremum of all
two-sided window averages of the conditioned pushforwards is an invariant
upper probability V_j.  The max of the V_j then has finite ergodic
components even though P had none of the symmetry to start with.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import capacity, fec, measure, space
from .capacity import UpperProb, envelope
from .errors import InternalVerificationError
from .fec import FECResult, NotFEC
from .measure import Prob
from .space import Partition, SubsetMask, Transformation

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class NoninvariantSystem:
    """An invertible map together with an arbitrary probability."""

    P: Prob
    T: Transformation

    def __post_init__(self) -> None:
        if self.P.size != self.T.size:
            raise ValueError("measure and map live on different spaces")
        if not space.is_invertible(self.T):
            raise ValueError("the map must be invertible")


@dataclass(frozen=True)
class IrreduciblePartition:
    """Invariant positive-mass cells with their conditioned data.

    Index j carries the cell, the conditional P_j, the period-averaged
    limit Q_j, and the window-supremum capacity V_j.
    """

    cells: Partition
    conditionals: tuple[Prob, ...]
    limits: tuple[Prob, ...]
    capacities: tuple[UpperProb, ...]

    def __post_init__(self) -> None:
        n = len(self.cells)
        if not (len(self.conditionals) == len(self.limits) == len(self.capacities) == n):
            raise ValueError("per-cell data lengths disagree")

    @property
    def n(self) -> int:
        return len(self.cells)


def invariant_value_set(P: Prob, T: Transformation) -> set[Fraction]:
    """All masses P assigns to preimage-fixed sets.

    Finite by construction here; reporting its cardinality is what makes
    the finiteness assumption checkable rather than assumed.
    """
    if P.size != T.size:
        raise ValueError("measure and map live on different spaces")
    return {P(mask) for mask in space.invariant_sets(T)}


def orbit_closure(T: Transformation, mask: SubsetMask) -> SubsetMask:
    """Union of T^{-i}(mask) over one full period: the invariant hull."""
    if not space.is_invertible(T):
        raise ValueError("orbit closure as a preimage union needs an invertible map")
    out = 0
    cur = mask
    for _ in range(space.period_lcm(T)):
        out |= cur
        cur = space.preimage(T, cur)
    return out


def q_limit(P: Prob, T: Transformation) -> Prob:
    """Average of the pushforwards of P over one period.

    The pushforward sequence of an invertible map is purely periodic, so
    this single-period mean is the exact Cesaro limit.  The result is
    invariant and matches P on every preimage-fixed set; both facts are
    re-verified.
    """
    if not space.is_invertible(T):
        raise ValueError("the map must be invertible")
    period = space.period_lcm(T)
    total = [ZERO] * P.size
    cur = P
    for _ in range(period):
        for w, v in enumerate(cur.mass):
            total[w] += v
        cur = measure.pushforward(cur, T)
    Q = Prob(tuple(v / period for v in total))
    if not measure.is_invariant(Q, T):
        raise InternalVerificationError("period average is not invariant")
    for mask in space.invariant_sets(T):
        if Q(mask) != P(mask):
            raise InternalVerificationError("period average moved mass across an invariant set")
    return Q


def v_component(P: Prob, T: Transformation) -> UpperProb:
    """Supremum of all window averages of i -> P(T^{-i}A), as an envelope.

    The sequence of pushforwards is L-periodic (L = lcm of cycle
    lengths), and a window of length qL + r averages q full periods with
    one run of length r, which is a convex combination of the period mean
    and that run's mean.  The sup over every window is therefore the max
    over the period mean and all runs of length 1..L-1 at every phase,
    a finite generator family.
    """
    if not space.is_invertible(T):
        raise ValueError("the map must be invertible")
    period = space.period_lcm(T)
    nus = [P]
    for _ in range(period - 1):
        nus.append(measure.pushforward(nus[-1], T))
    mean = [ZERO] * P.size
    for nu in nus:
        for w, v in enumerate(nu.mass):
            mean[w] += v / period
    gens = [Prob(tuple(mean))]
    for r in range(1, period):
        for s in range(period):
            run = [ZERO] * P.size
            for k in range(r):
                for w, v in enumerate(nus[(s + k) % period].mass):
                    run[w] += v / r
            gens.append(Prob(tuple(run)))
    return envelope(gens)


def irreducible_partition(P: Prob, T: Transformation) -> IrreduciblePartition:
    """Greedy split into minimal invariant cells of positive mass.

    The minimal invariant sets are the orbit components, so the cells are
    the positive-mass components in least-point order; null components
    are folded into the last cell.
    """
    if not space.is_invertible(T):
        raise ValueError("the map must be invertible")
    if P.size != T.size:
        raise ValueError("measure and map live on different spaces")
    cells = []
    leftover = 0
    for comp in space.components(T):
        if P(comp) > 0:
            cells.append(comp)
        else:
            leftover |= comp
    if leftover:
        cells[-1] |= leftover
    part = Partition(tuple(cells), P.size)
    conditionals = tuple(measure.conditional(P, cell) for cell in part)
    limits = tuple(q_limit(pj, T) for pj in conditionals)
    capacities = tuple(v_component(pj, T) for pj in conditionals)
    return IrreduciblePartition(part, conditionals, limits, capacities)


def combined_capacity(part: IrreduciblePartition) -> UpperProb:
    """max_j V_j as a single envelope over all the components' generators."""
    gens = []
    for V in part.capacities:
        gens.extend(V.generators)
    return envelope(gens)


@dataclass(frozen=True)
class ConstructionReport:
    """Outcome of the four structure checks, each by its own code path."""

    q_ergodic: tuple[bool, ...]
    v_invariant: tuple[bool, ...]
    v_fz: tuple[bool, ...]
    combined: UpperProb
    fec_ok: bool
    zero_one: bool

    @property
    def all_pass(self) -> bool:
        return (
            all(self.q_ergodic)
            and all(self.v_invariant)
            and all(self.v_fz)
            and self.fec_ok
            and self.zero_one
        )


def verify_construction(
    sys: NoninvariantSystem, part: IrreduciblePartition | None = None
) -> ConstructionReport:
    """Check the constructed data: ergodic limits, ergodic capacities,
    component structure of the max, and the zero-one property."""
    if part is None:
        part = irreducible_partition(sys.P, sys.T)
    T = sys.T
    q_ergodic = tuple(
        measure.is_invariant(Q, T)
        and measure.is_ergodic(Q, T)
        and Q(cell) == 1
        for Q, cell in zip(part.limits, part.cells)
    )
    v_invariant = tuple(capacity.is_invariant_capacity(V, T) for V in part.capacities)
    v_fz = tuple(
        inv and fec.is_fz_ergodic(V, T)
        for V, inv in zip(part.capacities, v_invariant)
    )
    combined = combined_capacity(part)
    if capacity.is_invariant_capacity(combined, T):
        fec_ok = isinstance(fec.fec_decompose(combined, T), FECResult)
        zero_one = fec.zero_one_condition(combined, T)
    else:
        fec_ok = False
        zero_one = False
    return ConstructionReport(q_ergodic, v_invariant, v_fz, combined, fec_ok, zero_one)


def noninvariant_lln(
    sys: NoninvariantSystem,
    f: capacity.FunctionOnSpace,
    part: IrreduciblePartition | None = None,
) -> bool:
    """Orbit averages hit the matching cell mean at every P-charged point."""
    from .birkhoff import birkhoff_limit

    if part is None:
        part = irreducible_partition(sys.P, sys.T)
    limit = birkhoff_limit(sys.T, f)
    means = [measure.expectation(Q, f.values) for Q in part.limits]
    for w in space.points(sys.P.support()):
        if limit.values[w] != means[part.cells.cell_index(w)]:
            return False
    return True


class IndependencePair(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    equal: bool


def noninvariant_independence(
    sys: NoninvariantSystem,
    B: SubsetMask,
    C: SubsetMask,
    part: IrreduciblePartition | None = None,
) -> IndependencePair:
    """Cesaro limit of P(B cap T^{-i}C) against sum_j Q_j(C) P(A_j cap B)."""
    from .birkhoff import cesaro_hit_limit

    if part is None:
        part = irreducible_partition(sys.P, sys.T)
    lhs = cesaro_hit_limit(sys.P, sys.T, B, C)
    rhs = sum(
        (Q(C) * sys.P(cell & B) for Q, cell in zip(part.limits, part.cells)), ZERO
    )
    return IndependencePair(lhs, rhs, lhs == rhs)
