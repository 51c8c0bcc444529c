"""The independent checkers: brute-force sets, sorted-sum Choquet,
exact simplex, basis-enumeration vertices, literal orbit averages."""

from fractions import Fraction
from random import Random

import pytest
from hypothesis import given, settings, strategies as st

from ergocap import capacity, generate
from ergocap.capacity import envelope
from ergocap.measure import Prob
from ergocap.oracle import (
    oracle_cesaro,
    oracle_choquet,
    oracle_core_sup,
    oracle_core_vertices,
    oracle_fec,
    oracle_invariant_sets,
    oracle_lp_max,
    oracle_tail_average,
    oracle_window_sup,
)

F = Fraction
ONE = F(1)


def prob(*xs) -> Prob:
    return Prob(tuple(F(x) for x in xs))


def test_invariant_sets_examples():
    assert oracle_invariant_sets((1, 0, 3, 2)) == [0, 3, 12, 15]
    assert oracle_invariant_sets((1, 2, 3, 0)) == [0, 15]
    assert oracle_invariant_sets((0, 1)) == [0, 1, 2, 3]


def test_choquet_examples(two_blocks):
    assert oracle_choquet(two_blocks.table, (ONE, ONE, F(1, 2), F(1, 2))) == 1
    for mask in range(16):
        ind = tuple(ONE if mask >> w & 1 else F(0) for w in range(4))
        assert oracle_choquet(two_blocks.table, ind) == two_blocks(mask)


def test_lp_box():
    status, value, x = oracle_lp_max(
        [ONE, ONE], [([ONE, F(0)], ONE), ([F(0), ONE], F(2))], []
    )
    assert status == "optimal"
    assert value == 3
    assert x == (1, 2)


def test_lp_infeasible():
    status, value, x = oracle_lp_max([ONE], [([ONE], F(-1))], [])
    assert status == "infeasible"
    assert value is None and x is None


def test_lp_unbounded():
    status, value, x = oracle_lp_max([ONE], [], [])
    assert status == "unbounded"


def test_lp_equality():
    status, value, x = oracle_lp_max([ONE, F(0)], [], [([ONE, ONE], ONE)])
    assert status == "optimal"
    assert value == 1
    assert x == (1, 0)


def test_core_vertices_examples(two_blocks, q1, q2):
    assert oracle_core_vertices(two_blocks.table) == [q2.mass, q1.mass]
    V = envelope([prob("1/2", "1/2"), prob(1, 0)])
    assert oracle_core_vertices(V.table) == [(F(1, 2), F(1, 2)), (1, 0)]
    single = envelope([prob("1/4", "1/4", "1/4", "1/4")])
    assert oracle_core_vertices(single.table) == [(F(1, 4),) * 4]


@given(st.integers(0, 10**6))
@settings(max_examples=25)
def test_core_vertices_match_main_path(seed):
    rng = Random(seed)
    m = rng.randint(2, 4)
    V = envelope([generate.random_prob(rng, m) for _ in range(rng.randint(1, 3))])
    got = oracle_core_vertices(V.table)
    assert got == [v.mass for v in capacity.core_vertices(V)]


@given(st.integers(0, 10**6))
@settings(max_examples=25)
def test_core_sup_recovers_the_table(seed):
    rng = Random(seed)
    m = rng.randint(2, 4)
    V = envelope([generate.random_prob(rng, m) for _ in range(rng.randint(1, 3))])
    for a in range(1, 1 << m):
        obj = [ONE if a >> w & 1 else F(0) for w in range(m)]
        assert oracle_core_sup(V.table, obj) == V(a)


def test_core_sup_infeasible_slice(two_blocks):
    eq = [([ONE, F(0), F(0), F(0)], ONE)]
    assert oracle_core_sup(two_blocks.table, [ONE] * 4, eq) is None


def test_fec_two_blocks(two_blocks):
    valid, witness = oracle_fec(two_blocks.table, (1, 0, 3, 2))
    assert valid == ((0b0011, 0b1100),)
    assert witness is None


def test_fec_single_cell():
    V = envelope([prob("1/4", "1/4", "1/4", "1/4")])
    valid, witness = oracle_fec(V.table, (1, 2, 3, 0))
    assert valid == ((0b1111,),)
    assert witness is None


def test_fec_rejects_tilted(tilted):
    valid, witness = oracle_fec(tilted.table, (1, 0, 3, 2))
    assert valid == ()
    assert witness == 0b1100


def test_fec_null_component_folds_either_way():
    # the massless fixed point 4 may ride with either block, so both
    # partitions pass; the greedy path settles on the first of them
    q1 = prob("1/2", "1/2", 0, 0, 0)
    q2 = prob(0, 0, "1/2", "1/2", 0)
    V = envelope([q1, q2])
    valid, witness = oracle_fec(V.table, (1, 0, 3, 2, 4))
    assert valid == ((0b00011, 0b11100), (0b10011, 0b01100))
    assert witness is None


def test_cesaro_examples():
    out = oracle_cesaro((F(1, 3), F(2, 3)), (1, 0), 0b01, 4)
    assert out == [F(1, 3), F(1, 2), F(4, 9), F(1, 2)]
    out = oracle_cesaro((ONE, F(0), F(0), F(0)), (1, 2, 3, 0), 0b0001, 8)
    assert out[3] == F(1, 4)
    assert out[7] == F(1, 4)


def test_tail_average_examples():
    p = (F(1, 3), F(2, 3))
    assert oracle_tail_average(p, (1, 0), 0b01, 0, 2) == F(1, 2)
    assert oracle_tail_average(p, (1, 0), 0b01, 1, 1) == F(2, 3)
    with pytest.raises(ValueError):
        oracle_tail_average(p, (1, 0), 0b01, 0, 0)


def test_window_sup_examples():
    p = (F(1, 3), F(2, 3))
    assert oracle_window_sup(p, (1, 0), 0b01, 8, 17) == F(2, 3)
    assert oracle_window_sup(p, (1, 0), 0b11, 8, 17) == 1
    with pytest.raises(ValueError):
        oracle_window_sup((ONE, F(0)), (0, 0), 0b01, 2, 3)


@given(st.integers(0, 10**6))
@settings(max_examples=25)
def test_core_sup_agrees_with_vertex_max(seed):
    rng = Random(seed)
    m = rng.randint(2, 4)
    V = envelope([generate.random_prob(rng, m) for _ in range(rng.randint(1, 3))])
    obj = [F(rng.randint(-4, 4)) for _ in range(m)]
    best = max(
        sum((c * x for c, x in zip(obj, v)), F(0)) for v in oracle_core_vertices(V.table)
    )
    assert oracle_core_sup(V.table, obj) == best
