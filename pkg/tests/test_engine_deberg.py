from __future__ import annotations

import numpy as np
import pytest

from fouropt.engine_deberg import (
    RangePattern,
    best_completion,
    best_move_deberg,
    completion_tables,
    decomposed_gain,
    pairing_plan,
)
from fouropt.io_cli.bench import run_benchmark
from fouropt.model import CostMatrix
from fouropt.oracle import best_move_brute
from fouropt.schemes import (
    Selection,
    enumerate_complete_selections,
    enumerate_pure_schemes,
    gain,
    scheme_by_id,
)


def _connects(t, x, y):
    return t.slots == frozenset((x, y))


def test_pairing_examples():
    r3 = pairing_plan(scheme_by_id(3))
    assert r3.a_slots == (1, 3) and r3.b_slots == (2, 4)
    assert r3.range_pattern == RangePattern.INTERLEAVED
    r1 = pairing_plan(scheme_by_id(1))
    assert r1.a_slots == (1, 4) and r1.range_pattern == RangePattern.NESTED
    # e1 e e3 compartilham a aresta {i1, i3+1}: r25 não admite A = {1, 3}
    r25 = pairing_plan(scheme_by_id(25))
    assert r25.a_slots == (1, 4) and r25.range_pattern == RangePattern.NESTED


def test_every_scheme_has_independent_pairing():
    for r in enumerate_pure_schemes():
        plan = pairing_plan(r)
        templates = r.templates
        assert not any(_connects(t, *plan.a_slots) for t in templates)
        assert not any(_connects(t, *plan.b_slots) for t in templates)
        assigned = [t for b in plan.b_slots for t in plan.assigned(b)]
        assert sorted(map(str, assigned)) == sorted(map(str, templates))
        assert all(len(plan.assigned(b)) == 2 for b in plan.b_slots)


def test_decomposition_identity_n12(random_matrix):
    costs = random_matrix(12, 0)
    selections = list(enumerate_complete_selections(12))
    for r in enumerate_pure_schemes():
        plan = pairing_plan(r)
        for s in selections:
            assert decomposed_gain(plan, s, costs) == gain(r, s, costs)


def test_best_completion_matches_grid(random_matrix):
    costs = random_matrix(12, 0)
    plan = pairing_plan(scheme_by_id(3))
    a1, a2 = 0, 6
    base = costs.cost(a1, a1 + 1) + costs.cost(a2, a2 + 1)
    grid = {
        (b1, b2): decomposed_gain(plan, Selection(a1, b1, a2, b2), costs) - base
        for b1 in range(2, 5)
        for b2 in range(8, 11)
    }
    value, b1, b2 = best_completion(a1, a2, plan, costs)
    assert value == max(grid.values())
    assert grid[(b1, b2)] == value


def test_best_completion_uniform_is_minus_two():
    costs = CostMatrix.uniform(12)
    for r in (scheme_by_id(3), scheme_by_id(1), scheme_by_id(25)):
        plan = pairing_plan(r)
        found = 0
        for a1 in range(12):
            for a2 in range(a1 + 1, 12):
                out = best_completion(a1, a2, plan, costs)
                if out is not None:
                    found += 1
                    assert out[0] == -2
        assert found > 0


def test_completion_tables_invariants(random_matrix):
    costs = random_matrix(16, 4)
    plan = pairing_plan(scheme_by_id(1))
    tables = completion_tables(2, 12, plan, costs)
    (lo1, hi1), (lo2, hi2) = tables.ranges
    assert np.all(np.diff(tables.V1) >= 0)
    assert np.all(np.diff(tables.V2) >= 0)
    for k, arg in enumerate(tables.bestV1):
        assert lo1 <= arg <= lo1 + k
        assert tables.V1[arg - lo1] == tables.V1[k]
    assert tables.V2[-1] == tables.V2.max()


def test_empty_range_returns_none(uniform8):
    assert best_completion(0, 2, pairing_plan(scheme_by_id(3)), uniform8) is None


def test_uniform_no_improving_move(uniform8):
    assert best_move_deberg(uniform8).best is None


def test_recovered_selection_reproduces_gain(random_matrix):
    costs = random_matrix(14, 9)
    for r in enumerate_pure_schemes():
        move = best_move_deberg(costs, [r], improving_only=False).best
        assert move.scheme == r
        assert gain(r, move.selection, costs) == move.gain


@pytest.mark.parametrize("n", [8, 10, 12, 16, 20, 25])
def test_oracle_equivalence_per_scheme(n, random_matrix):
    schemes = enumerate_pure_schemes()
    for seed in range(10):
        costs = random_matrix(n, 100 + seed)
        for r in schemes:
            want = best_move_brute(costs, [r], improving_only=False).best.gain
            got = best_move_deberg(costs, [r], improving_only=False).best.gain
            assert got == want, f"r{r.id} n={n} seed={100 + seed}"
        joint = best_move_brute(costs, improving_only=False).best.gain
        assert best_move_deberg(costs, improving_only=False).best.gain == joint


def test_oracle_equivalence_n12_seed0(random_matrix):
    costs = random_matrix(12, 0)
    brute = best_move_brute(costs)
    deberg = best_move_deberg(costs)
    assert deberg.best.gain == brute.best.gain


def test_floating_costs_agree_with_oracle():
    rng = np.random.default_rng(3)
    upper = np.triu(rng.random((11, 11)), k=1)
    costs = CostMatrix.from_array(upper + upper.T)
    for r in enumerate_pure_schemes():
        want = best_move_brute(costs, [r], improving_only=False).best.gain
        got = best_move_deberg(costs, [r], improving_only=False).best.gain
        assert got == pytest.approx(want, abs=1e-9)


def test_batched_search_matches_single_pair_tables(random_matrix):
    costs = random_matrix(15, 21)
    for r in (scheme_by_id(1), scheme_by_id(3), scheme_by_id(25)):
        plan = pairing_plan(r)
        best = None
        for a1 in range(15):
            for a2 in range(a1 + 1, 15):
                out = best_completion(a1, a2, plan, costs)
                if out is None:
                    continue
                total = costs.cost(a1, (a1 + 1) % 15) + costs.cost(a2, (a2 + 1) % 15) + out[0]
                best = total if best is None else max(best, total)
        assert best_move_deberg(costs, [r], improving_only=False).best.gain == best


@pytest.mark.slow
def test_wall_clock_is_cubic():
    _, slopes = run_benchmark("deberg", [50, 100, 200, 400], seed=0, repeats=3)
    assert 2.6 <= slopes["seconds"] <= 3.4
