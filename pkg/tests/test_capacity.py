"""Envelopes, cores, Choquet integration, and capacity invariance."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ergocap import oracle, space
from ergocap.capacity import (
    FunctionOnSpace,
    choquet_integral,
    core_contains,
    core_vertices,
    envelope,
    indicator,
    invariant_core_vertices,
    is_invariant_capacity,
    null_support,
)
from ergocap.measure import Prob
from ergocap.space import Transformation

F = Fraction


def prob(*xs) -> Prob:
    return Prob(tuple(F(x) for x in xs))


def func(*xs) -> FunctionOnSpace:
    return FunctionOnSpace(tuple(F(x) for x in xs))


@st.composite
def probs_on(draw, m):
    w = draw(st.lists(st.integers(0, 9), min_size=m, max_size=m).filter(any))
    s = sum(w)
    return Prob(tuple(F(x, s) for x in w))


@st.composite
def envelopes(draw, min_m=1, max_m=5):
    m = draw(st.integers(min_m, max_m))
    gens = draw(st.lists(probs_on(m), min_size=1, max_size=4))
    return envelope(gens)


@st.composite
def functions_on(draw, m):
    return FunctionOnSpace(
        tuple(F(draw(st.integers(-8, 8)), draw(st.integers(1, 4))) for _ in range(m))
    )


@st.composite
def envelope_function_pairs(draw, max_m=5):
    V = draw(envelopes(max_m=max_m))
    return V, draw(functions_on(V.size))


def test_envelope_pointwise_max():
    V = envelope([prob("1/2", "1/2"), prob(1, 0)])
    assert V(0b01) == 1
    assert V(0b10) == F(1, 2)


def test_envelope_of_single_probability_is_its_subset_sums():
    P = prob("1/6", "1/3", "1/2")
    V = envelope([P])
    for mask in range(8):
        assert V(mask) == P(mask)


def test_envelope_two_blocks_values(two_blocks):
    assert two_blocks(0b0011) == 1
    assert two_blocks(0b1100) == 1
    assert two_blocks(0b0001) == F(1, 2)


def test_envelope_rejects_empty_and_mixed_sizes():
    with pytest.raises(ValueError):
        envelope([])
    with pytest.raises(ValueError):
        envelope([prob(1, 0), prob(1, 0, 0)])


def test_core_contains_generators_and_interior(two_blocks, q1, q2):
    assert core_contains(two_blocks, q1)
    assert core_contains(two_blocks, q2)
    assert core_contains(two_blocks, prob("1/4", "1/4", "1/4", "1/4"))
    assert not core_contains(two_blocks, prob(1, 0, 0, 0))


def test_core_vertices_point_core():
    P = prob("1/6", "1/3", "1/2")
    assert core_vertices(envelope([P])) == (P,)


def test_core_vertices_segment_endpoints_m2():
    V = envelope([prob("1/2", "1/2"), prob(1, 0)])
    assert core_vertices(V) == (prob("1/2", "1/2"), prob(1, 0))


def test_core_vertices_two_blocks_is_a_segment(two_blocks, q1, q2):
    # the pair constraints p({0,2}) <= 1/2 etc. pin the core to the
    # segment joining the two block uniforms, so exactly two vertices
    assert core_vertices(two_blocks) == (q2, q1)


@given(envelopes(max_m=4))
def test_core_vertices_match_basis_enumeration_oracle(V):
    main = [P.mass for P in core_vertices(V)]
    assert main == oracle.oracle_core_vertices(V.table)


@given(envelopes(max_m=4))
def test_core_vertex_maxima_reproduce_the_table(V):
    verts = core_vertices(V)
    for mask in range(1 << V.size):
        assert max(P(mask) for P in verts) == V(mask)


@given(envelopes(max_m=4))
def test_table_sup_matches_lp_oracle(V):
    m = V.size
    for mask in range(1 << m):
        obj = [F(1) if mask >> w & 1 else F(0) for w in range(m)]
        assert oracle.oracle_core_sup(V.table, obj) == V(mask)


def test_invariant_core_vertices_two_blocks(two_blocks, q1, q2, swap_pairs):
    assert invariant_core_vertices(two_blocks, swap_pairs) == (q2, q1)


def test_invariant_core_vertices_single_probability(swap_pairs, q1):
    assert invariant_core_vertices(envelope([q1]), swap_pairs) == (q1,)
    moved = envelope([prob("1/3", "2/3", 0, 0)])
    assert invariant_core_vertices(moved, swap_pairs) == ()


def test_choquet_integral_of_indicators_is_the_table(two_blocks):
    for mask in range(16):
        assert choquet_integral(two_blocks, indicator(mask, 4)) == two_blocks(mask)


def test_choquet_integral_single_threshold():
    V = envelope([prob("1/2", "1/2"), prob(1, 0)])
    assert choquet_integral(V, func(1, 0)) == 1
    assert choquet_integral(V, func(0, 1)) == F(1, 2)


def test_choquet_integral_two_thresholds(two_blocks):
    assert choquet_integral(two_blocks, func(1, 1, "1/2", "1/2")) == 1


def test_choquet_integral_handles_negative_levels(two_blocks):
    got = choquet_integral(two_blocks, func(-1, -1, -1, -1))
    assert got == -1


@given(envelope_function_pairs())
def test_choquet_matches_breakpoint_oracle(pair):
    V, f = pair
    assert choquet_integral(V, f) == oracle.oracle_choquet(V.table, f.values)


@given(envelope_function_pairs())
def test_choquet_translation_and_homogeneity(pair):
    V, f = pair
    base = choquet_integral(V, f)
    shifted = FunctionOnSpace(tuple(x + 3 for x in f.values))
    assert choquet_integral(V, shifted) == base + 3
    doubled = FunctionOnSpace(tuple(2 * x for x in f.values))
    assert choquet_integral(V, doubled) == 2 * base


def test_is_invariant_capacity_examples(two_blocks, swap_pairs):
    assert is_invariant_capacity(two_blocks, swap_pairs)
    assert not is_invariant_capacity(envelope([prob("1/3", "2/3")]), Transformation((1, 0)))
    assert is_invariant_capacity(envelope([prob("1/3", "2/3")]), Transformation((0, 1)))


def test_null_support_examples(two_blocks):
    assert null_support(two_blocks) == 0b1111
    assert null_support(envelope([prob(1, 0)])) == 0b01
    assert null_support(envelope([prob("1/2", "1/2", 0, 0)])) == 0b0011


@given(envelopes())
def test_subadditivity(V):
    m = V.size
    for a in range(1 << m):
        for b in range(1 << m):
            assert V(a | b) <= V(a) + V(b)


@given(envelopes())
def test_monotone_with_pinned_ends(V):
    m = V.size
    assert V(0) == 0
    assert V(space.full_mask(m)) == 1
    for a in range(1 << m):
        for w in range(m):
            if not a >> w & 1:
                assert V(a) <= V(a | 1 << w)


@given(envelopes())
def test_positive_capacity_means_support_is_hit(V):
    S = null_support(V)
    for mask in range(1 << V.size):
        assert (V(mask) > 0) == bool(mask & S)


@given(envelope_function_pairs(), st.data())
def test_choquet_ignores_null_points(pair, data):
    # values off the support never move the integral: V(A) = V(A cap S)
    V, f = pair
    S = null_support(V)
    noise = data.draw(functions_on(V.size))
    mixed = FunctionOnSpace(
        tuple(
            f.values[w] if S >> w & 1 else noise.values[w]
            for w in range(V.size)
        )
    )
    assert choquet_integral(V, mixed) == choquet_integral(V, f)


@given(st.data())
def test_invariant_envelope_vanishes_off_the_cycles(data):
    # V({w}) = V of the iterated preimages of {w}, which empty out for
    # any point that is not on a cycle
    from random import Random

    from ergocap import generate

    seed = data.draw(st.integers(0, 10**6))
    rng = Random(seed)
    m = rng.randint(2, 6)
    T = generate.random_transformation(rng, m)
    V = generate.random_upper_prob(rng, T)
    assert is_invariant_capacity(V, T)
    cyc = space.cycle_mask(T)
    for w in range(m):
        if not cyc >> w & 1:
            assert V(1 << w) == 0
