from __future__ import annotations

import numpy as np
import pytest

from fouropt.model import (
    CostMatrix,
    DimensionMismatch,
    InvalidCostMatrix,
    InvalidTour,
    ModIndex,
    Tour,
    ValueKind,
    mod_add,
    mod_sub,
    node_at,
    tour_length,
)


def test_tour_length_uniform(uniform8):
    assert tour_length(Tour.canonical(8), uniform8) == 8


def test_tour_length_triangle():
    costs = CostMatrix.from_array([[0, 1, 3], [1, 0, 2], [3, 2, 0]])
    assert tour_length(Tour((0, 1, 2)), costs) == 6


def test_tour_length_matches_direct_sum(random_matrix):
    costs = random_matrix(12, 0)
    expected = sum(int(costs.array[i, (i + 1) % 12]) for i in range(12))
    assert tour_length(Tour.canonical(12), costs) == expected
    assert isinstance(tour_length(Tour.canonical(12), costs), int)


def test_tour_length_rotation_and_reversal(random_matrix):
    costs = random_matrix(10, 3)
    tour = Tour((3, 7, 1, 0, 9, 2, 5, 8, 4, 6))
    base = tour_length(tour, costs)
    assert tour_length(tour.rotated(4), costs) == base
    assert tour_length(tour.reversed(), costs) == base
    assert tour.rotated(4).edges() == tour.edges()


def test_tour_length_dimension_mismatch(uniform8):
    with pytest.raises(DimensionMismatch):
        tour_length(Tour.canonical(9), uniform8)


@pytest.mark.parametrize("x,t,expected", [(7, 1, 0), (5, 4, 1), (0, 8, 0)])
def test_mod_add(x, t, expected):
    assert mod_add(ModIndex(x, 8), t).value == expected


def test_mod_sub_wraps():
    assert mod_sub(ModIndex(0, 8), 1).value == 7


def test_mod_add_sub_inverse():
    for x in range(8):
        for t in range(-9, 10):
            assert mod_sub(mod_add(ModIndex(x, 8), t), t) == ModIndex(x, 8)


def test_modindex_out_of_range():
    with pytest.raises(ValueError):
        ModIndex(8, 8)


def test_cost_matrix_rejects_asymmetric():
    with pytest.raises(InvalidCostMatrix):
        CostMatrix.from_array([[0, 1, 2], [1, 0, 3], [2, 4, 0]])


def test_cost_matrix_rejects_negative_and_small():
    with pytest.raises(InvalidCostMatrix):
        CostMatrix.from_array([[0, -1, 2], [-1, 0, 3], [2, 3, 0]])
    with pytest.raises(InvalidCostMatrix):
        CostMatrix.from_array([[0, 1], [1, 0]])


def test_cost_matrix_ignores_diagonal_and_is_read_only():
    costs = CostMatrix.from_array([[5, 1, 2], [1, 7, 3], [2, 3, 9]])
    assert np.all(np.diag(costs.array) == 0)
    with pytest.raises(ValueError):
        costs.array[0, 1] = 10


def test_value_kind_inferred():
    assert CostMatrix.uniform(4).value_kind == ValueKind.INTEGER
    floats = CostMatrix.from_array(np.full((4, 4), 0.5))
    assert floats.value_kind == ValueKind.FLOATING
    assert isinstance(tour_length(Tour.canonical(4), floats), float)


def test_relabel_follows_tour_order(random_matrix):
    costs = random_matrix(9, 1)
    order = (4, 0, 8, 2, 6, 1, 7, 3, 5)
    relabeled = costs.relabel(order)
    for p in range(9):
        for q in range(9):
            assert relabeled.cost(p, q) == costs.cost(order[p], order[q])
    assert tour_length(Tour.canonical(9), relabeled) == tour_length(Tour(order), costs)


def test_tour_rejects_non_permutation():
    with pytest.raises(InvalidTour):
        Tour((0, 1, 1, 3))


def test_node_at_wraps():
    assert node_at((1, 3, 5, 7), 4, 1, 8) == 0
    assert node_at((1, 3, 5, 7), 2, 0, 8) == 3
