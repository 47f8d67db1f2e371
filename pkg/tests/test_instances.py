from __future__ import annotations

import itertools

import numpy as np
import pytest

from fouropt.io_cli.instances import (
    InstanceError,
    InstanceSpec,
    generate_random,
    load_instance,
    parse_instance_arg,
)
from fouropt.io_cli.tsplib import emit_tsplib


def test_same_seed_same_matrix():
    spec = InstanceSpec(source="random-matrix", n=12, seed=0)
    assert np.array_equal(generate_random(spec).array, generate_random(spec).array)
    other = InstanceSpec(source="random-matrix", n=12, seed=1)
    assert not np.array_equal(generate_random(spec).array, generate_random(other).array)


def test_matrix_costs_in_range():
    costs = generate_random(InstanceSpec(source="random-matrix", n=15, max_cost=7, seed=3))
    off = costs.array[~np.eye(15, dtype=bool)]
    assert off.min() >= 1 and off.max() <= 7
    assert costs.is_integer


def test_euclidean_is_metric():
    costs = generate_random(InstanceSpec(source="random-euclidean", n=14, box=50, seed=2))
    c = costs.array
    for i, j, k in itertools.permutations(range(14), 3):
        assert c[i, k] <= c[i, j] + c[j, k]


def test_parse_instance_arg():
    spec = parse_instance_arg("euclid:20:300", seed=5)
    assert (spec.source, spec.n, spec.box, spec.seed) == ("random-euclidean", 20, 300, 5)
    spec = parse_instance_arg("matrix:12")
    assert (spec.source, spec.n, spec.max_cost) == ("random-matrix", 12, 100)
    assert parse_instance_arg("uniform:9").source == "uniform"
    assert parse_instance_arg("data/a280.tsp").path == "data/a280.tsp"


@pytest.mark.parametrize("bad", ["euclid:x", "matrix:2", "uniform:8:3", "euclid:10:1:2"])
def test_parse_instance_arg_rejects(bad):
    with pytest.raises(InstanceError):
        parse_instance_arg(bad)


def test_spec_validation():
    with pytest.raises(ValueError):
        InstanceSpec(source="tsplib")
    with pytest.raises(ValueError):
        InstanceSpec(source="random-matrix")


def test_load_tsplib_file(tmp_path):
    costs = generate_random(InstanceSpec(source="random-matrix", n=9, seed=4))
    path = tmp_path / "nine.tsp"
    path.write_text(emit_tsplib(costs, name="nine"), encoding="utf-8")
    name, loaded = load_instance(parse_instance_arg(str(path)))
    assert name == "nine"
    assert np.array_equal(loaded.array, costs.array)
