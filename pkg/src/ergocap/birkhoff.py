"""Exact orbit averages, the multi-valued LLN, and asymptotic independence.

On a finite space every forward orbit falls into a cycle, so the limit of
the Birkhoff averages is the average of f over that terminal cycle: a
rational number computed structurally, never by float iteration.  Finite
averages appear only as convergence-trace evidence in reports.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from . import capacity, measure, space
from .capacity import FunctionOnSpace, UpperProb, choquet_integral
from .fec import FECResult
from .measure import Prob
from .space import Partition, SubsetMask, Transformation

ZERO = Fraction(0)
ONE = Fraction(1)


def birkhoff_limit(T: Transformation, f: FunctionOnSpace) -> FunctionOnSpace:
    """Pointwise limit of (1/N) sum f(T^i w): the terminal-cycle average of f."""
    if f.size != T.size:
        raise ValueError("function and map live on different spaces")
    averages = {}
    for _, pts in space.cycles(T):
        avg = sum((f.values[w] for w in pts), ZERO) / len(pts)
        for w in pts:
            averages[w] = avg
    burn = space.preperiod_bound(T)
    out = []
    for w in range(T.size):
        x = w
        for _ in range(burn):
            x = T(x)
        out.append(averages[x])
    return FunctionOnSpace(tuple(out))


def finite_average(
    T: Transformation, f: FunctionOnSpace, w: int, n: int, burn: int = 0
) -> Fraction:
    """(1/n) sum of f over the orbit segment T^burn(w), ..., T^(burn+n-1)(w).

    With burn >= preperiod_bound(T) and n a multiple of the cycle-length
    lcm this equals birkhoff_limit exactly; the plain window (burn = 0)
    only converges, it never closes the gap at points off their cycle.
    """
    if n < 1:
        raise ValueError("average needs at least one term")
    x = w
    for _ in range(burn):
        x = T(x)
    total = ZERO
    for _ in range(n):
        total += f.values[x]
        x = T(x)
    return total / n


def verify_multivalue_lln(
    V: UpperProb, T: Transformation, fec: FECResult, f: FunctionOnSpace
) -> bool:
    """Check the limit equals sum_j (int f dQ_j) 1_{A_j} at every support point."""
    if fec.partition.size != T.size or V.size != T.size:
        raise ValueError("capacity, map, and partition sizes disagree")
    limit = birkhoff_limit(T, f)
    supp = capacity.null_support(V)
    means = [measure.expectation(Q, f.values) for Q in fec.measures]
    for w in space.points(supp):
        j = fec.partition.cell_index(w)
        if limit.values[w] != means[j]:
            return False
    return True


class StepChoquet(NamedTuple):
    value: Fraction
    telescoped: Fraction


def _telescope(
    V: UpperProb, B: SubsetMask, ordered: list[tuple[Fraction, SubsetMask]]
) -> Fraction:
    total = ZERO
    prefix = 0
    prev = ZERO
    for level, cell in ordered:
        prefix |= cell
        cur = V(prefix & B)
        total += level * (cur - prev)
        prev = cur
    return total


def comonotone_step_choquet(
    V: UpperProb, B: SubsetMask, cells: Partition, levels: tuple[Fraction, ...]
) -> StepChoquet:
    """Choquet integral of sum_j levels_j 1_{A_j cap B}, two ways.

    `value` comes from the general sorted-threshold formula; `telescoped`
    is the running-union difference sum with cells pre-sorted by
    decreasing level.  The two agree whenever all levels are nonnegative.
    """
    if len(levels) != len(cells):
        raise ValueError("one level per cell required")
    g = [ZERO] * cells.size
    for level, cell in zip(levels, cells):
        for w in space.points(cell & B):
            g[w] = level
    value = choquet_integral(V, FunctionOnSpace(tuple(g)))
    ordered = sorted(zip(levels, cells.cells), key=lambda lc: lc[0], reverse=True)
    return StepChoquet(value, _telescope(V, B, ordered))


class IndependenceChoquet(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    equal: bool
    rhs_unsorted: Fraction
    order_sensitive: bool
    trace: tuple[Fraction, ...]


def asymptotic_independence_choquet(
    V: UpperProb,
    T: Transformation,
    fec: FECResult,
    B: SubsetMask,
    C: SubsetMask,
    trace_to: int = 0,
) -> IndependenceChoquet:
    """Limit of int 1_B (1_C . T^i) dV against its telescoping closed form.

    lhs integrates the exact pointwise limit 1_B * birkhoff_limit(T, 1_C).
    rhs telescopes V over running unions of cells sorted by decreasing
    Q_j(C); the index-order variant is reported as rhs_unsorted, with
    order_sensitive flagging any gap between the two.  trace, when
    requested, holds the exact finite-N integrals for N = 1..trace_to.
    """
    m = T.size
    ind_b = capacity.indicator(B, m)
    limit_c = birkhoff_limit(T, capacity.indicator(C, m))
    g = FunctionOnSpace(tuple(b * l for b, l in zip(ind_b.values, limit_c.values)))
    lhs = choquet_integral(V, g)

    levels = tuple(Q(C) for Q in fec.measures)
    rhs = comonotone_step_choquet(V, B, fec.partition, levels).telescoped
    rhs_unsorted = _telescope(V, B, list(zip(levels, fec.partition.cells)))

    trace = []
    if trace_to > 0:
        hits = [ZERO] * m
        masks = C
        for n in range(1, trace_to + 1):
            for w in space.points(masks):
                hits[w] += 1
            masks = space.preimage(T, masks)
            avg = tuple(
                (ind_b.values[w] * hits[w]) / n for w in range(m)
            )
            trace.append(choquet_integral(V, FunctionOnSpace(avg)))
    return IndependenceChoquet(lhs, rhs, lhs == rhs, rhs_unsorted, rhs != rhs_unsorted, tuple(trace))


class IndependenceCore(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    equal: bool


def cesaro_hit_limit(P: Prob, T: Transformation, B: SubsetMask, C: SubsetMask) -> Fraction:
    """Exact Cesaro limit of i -> P(B cap T^{-i} C).

    The sequence is eventually periodic (preperiod at most the longest
    approach to a cycle, period dividing the cycle-length lcm), so the
    limit is one full period's mean past the preperiod.
    """
    if P.size != T.size:
        raise ValueError("measure and map live on different spaces")
    burn = space.preperiod_bound(T)
    period = space.period_lcm(T)
    mask = C
    for _ in range(burn):
        mask = space.preimage(T, mask)
    total = ZERO
    for _ in range(period):
        total += P(B & mask)
        mask = space.preimage(T, mask)
    return total / period


def asymptotic_independence_core(
    V: UpperProb,
    T: Transformation,
    fec: FECResult,
    P: Prob,
    B: SubsetMask,
    C: SubsetMask,
) -> IndependenceCore:
    """Cesaro limit of P(B cap T^{-i}C) against sum_j Q_j(C) P(A_j cap B)."""
    if not capacity.core_contains(V, P):
        raise ValueError("P is not in the core")
    lhs = cesaro_hit_limit(P, T, B, C)
    rhs = sum(
        (Q(C) * P(cell & B) for Q, cell in zip(fec.measures, fec.partition)), ZERO
    )
    return IndependenceCore(lhs, rhs, lhs == rhs)
