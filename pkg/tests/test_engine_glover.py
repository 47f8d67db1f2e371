from __future__ import annotations

import numpy as np
import pytest

from fouropt.engine_glover import (
    BridgeKind,
    best_move_glover,
    best_move_r10,
    best_move_r16,
    best_move_r25,
    bridge_cost,
    build_tables,
    cost_c,
    cost_d,
    rotated_costs,
)
from fouropt.io_cli.bench import run_benchmark
from fouropt.model import CostMatrix
from fouropt.oracle import best_move_brute
from fouropt.schemes import Selection, enumerate_complete_selections, gain, scheme_by_id

SIX = CostMatrix.from_array(
    [
        [0, 3, 8, 2, 7, 4],
        [3, 0, 5, 9, 1, 6],
        [8, 5, 0, 4, 6, 2],
        [2, 9, 4, 0, 3, 8],
        [7, 1, 6, 3, 0, 5],
        [4, 6, 2, 8, 5, 0],
    ]
)

ENGINES = {25: best_move_r25, 16: best_move_r16, 10: best_move_r10}


def test_cost_d_and_cost_c_by_hand():
    # c(0,1) + c(2,3) - c(0,3) - c(1,2)
    assert cost_d(0, 2, SIX) == 3 + 4 - 2 - 5
    # c(1,2) + c(4,5) - c(1,4) - c(2,5)
    assert cost_c(1, 4, SIX) == 5 + 5 - 1 - 2


def test_bridge_costs_uniform_and_transposed():
    uniform = CostMatrix.uniform(6)
    assert cost_d(0, 2, uniform) == 0 and cost_c(1, 4, uniform) == 0
    transposed = CostMatrix.from_array(SIX.array.T)
    assert cost_d(1, 3, transposed) == cost_d(1, 3, SIX)


def test_cost_sum_identity():
    c = SIX.cost
    for a in range(4):
        for b in range(a + 2, 5):
            expected = 2 * c(a, a + 1) + 2 * c(b, b + 1) - c(a, b + 1) - c(a + 1, b) - c(a, b) - c(a + 1, b + 1)
            assert cost_c(a, b, SIX) + cost_d(a, b, SIX) == expected


def test_rotated_costs():
    rot = rotated_costs(SIX)
    for x in range(6):
        for y in range(6):
            assert rot.cost(x, y) == SIX.cost((x - 1) % 6, (y - 1) % 6)


@pytest.mark.parametrize("variant", list(BridgeKind))
@pytest.mark.parametrize("n", [8, 11, 14])
def test_table_semantics(n, variant, random_matrix):
    costs = random_matrix(n, n)
    t = build_tables(costs, variant)
    for j in range(n - 1):
        for i in range(j):
            want = max(bridge_cost(variant, a, j, costs) for a in range(i + 1))
            assert t.A[i, j] == want
            assert bridge_cost(variant, int(t.bestA[i, j]), j, costs) == want
            assert t.bestA[i, j] <= i
    for i in range(2, n):
        for j in range(i + 4, n):
            want = max(
                bridge_cost(variant, a, b, costs)
                for a in range(i - 1)
                for b in range(i + 2, j - 1)
            )
            assert t.B[i, j] == want
            a, b = (int(v) for v in t.bestB[i, j])
            assert a <= i - 2 and i + 2 <= b <= j - 2
            assert bridge_cost(variant, a, b, costs) == want


def test_table_monotonicity(random_matrix):
    t = build_tables(random_matrix(12, 1), BridgeKind.CROSSED)
    A, B = t.A, t.B
    for j in range(12):
        col = A[:j, j]
        assert np.all(np.diff(col[np.isfinite(col)]) >= 0)
    for i in range(12):
        row = B[i, :][np.isfinite(B[i, :])]
        assert np.all(np.diff(row) >= 0)


def test_base_case(random_matrix):
    t = build_tables(random_matrix(13, 2), BridgeKind.PARALLEL)
    for i in range(2, 9):
        assert t.B[i, i + 4] == t.A[i - 2, i + 2]


def test_b_entry_n10():
    rng = np.random.default_rng(10)
    upper = np.triu(rng.integers(1, 50, size=(10, 10)), k=1)
    costs = CostMatrix.from_array(upper + upper.T)
    t = build_tables(costs, BridgeKind.PARALLEL)
    want = max(cost_d(a, b, costs) for a in range(3) for b in (6, 7))
    assert t.B[4, 9] == want


def test_uniform_tables_are_zero():
    t = build_tables(CostMatrix.uniform(10), BridgeKind.CROSSED)
    assert np.all(t.A[np.isfinite(t.A)] == 0)
    assert np.all(t.B[np.isfinite(t.B)] == 0)
    assert best_move_glover(CostMatrix.uniform(10)).best is None
    assert best_move_r25(CostMatrix.uniform(10), improving_only=True).best is None


def test_scheme_identities_n12(random_matrix):
    costs = random_matrix(12, 0)
    r25, r16, r10 = (scheme_by_id(k) for k in (25, 16, 10))
    for s in enumerate_complete_selections(12):
        i1, i2, i3, i4 = s
        if i4 > 10:
            continue
        assert cost_d(i1, i3, costs) + cost_d(i2, i4, costs) == gain(r25, s, costs)
        assert cost_d(i1, i3, costs) + cost_c(i2, i4, costs) == gain(r16, s, costs)
        assert cost_c(i1, i3, costs) + cost_d(i2, i4, costs) == gain(r10, s, costs)


def test_n8_picks_better_of_two(random_matrix):
    costs = random_matrix(8, 3)
    r25 = scheme_by_id(25)
    candidates = {s: gain(r25, s, costs) for s in (Selection(0, 2, 4, 6), Selection(1, 3, 5, 7))}
    best = best_move_r25(costs).best
    assert best.gain == max(candidates.values())
    assert candidates[best.selection] == best.gain


def test_wrap_selection_is_found():
    # só a seleção (1, 4, 7, 11) com i4 = n-1 melhora em r25
    n = 12
    arr = np.full((n, n), 10)
    s = Selection(1, 4, 7, 11)
    r25 = scheme_by_id(25)
    for t in r25.templates:
        u = (s.as_tuple()[t.first.slot - 1] + t.first.offset) % n
        v = (s.as_tuple()[t.second.slot - 1] + t.second.offset) % n
        arr[u, v] = arr[v, u] = 1
    costs = CostMatrix.from_array(arr)
    want = best_move_brute(costs, [r25]).best
    got = best_move_r25(costs).best
    assert got.gain == want.gain > 0
    assert got.selection.i4 == n - 1


@pytest.mark.parametrize("n", [8, 9, 10, 12, 16, 20, 25])
def test_oracle_equivalence(n, random_matrix):
    for seed in range(10):
        costs = random_matrix(n, 200 + seed)
        for k, engine in ENGINES.items():
            want = best_move_brute(costs, [scheme_by_id(k)], improving_only=False).best
            got = engine(costs).best
            assert got.gain == want.gain, f"r{k} n={n} seed={200 + seed}"
            assert gain(got.scheme, got.selection, costs) == got.gain
        restricted = best_move_brute(costs, [scheme_by_id(k) for k in ENGINES], improving_only=False).best
        combined = best_move_glover(costs, improving_only=False).best
        assert combined.gain == restricted.gain
        assert combined.gain <= best_move_brute(costs, improving_only=False).best.gain


@pytest.mark.slow
def test_wall_clock_is_quadratic():
    _, slopes = run_benchmark("glover", [100, 200, 400, 800], seed=0, repeats=3)
    assert 1.6 <= slopes["seconds"] <= 2.4
