"""
Medição de tempo e de contagem de avaliações por tamanho, com inclinação log-log.
"""

from __future__ import annotations

import logging
import time
from typing import Dict, Sequence, Tuple

import numpy as np
import pandas as pd

from ..config import ORACLE_MAX_N
from ..driver import EngineChoice, find_best_move
from .instances import InstanceSpec, generate_random

logger = logging.getLogger("fouropt.io_cli.bench")


def loglog_slope(sizes: Sequence[float], values: Sequence[float]) -> float:
    x = np.log(np.asarray(sizes, dtype=np.float64))
    y = np.log(np.maximum(np.asarray(values, dtype=np.float64), 1e-12))
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def run_benchmark(
    engine: EngineChoice | str,
    sizes: Sequence[int],
    seed: int = 0,
    repeats: int = 1,
) -> Tuple[pd.DataFrame, Dict[str, float]]:
    """Tempo por tamanho (mediana de ``repeats`` buscas) e avaliações do motor."""
    engine = EngineChoice(engine)
    if engine == EngineChoice.BRUTE and max(sizes) > ORACLE_MAX_N:
        raise ValueError(f"brute limitado a n <= {ORACLE_MAX_N}")
    if repeats < 1:
        raise ValueError(f"repeats precisa ser >= 1: {repeats}")

    rows = []
    for n in sizes:
        costs = generate_random(InstanceSpec(source="random-euclidean", n=n, seed=seed))
        times = []
        for _ in range(repeats):
            started = time.perf_counter()
            result = find_best_move(costs, engine, improving_only=False)
            times.append(time.perf_counter() - started)
        elapsed = float(np.median(times))
        rows.append({"n": n, "seconds": elapsed, "evaluated": result.evaluated})
        logger.info("bench_size engine=%s n=%s seconds=%.4f evaluated=%s", engine.value, n, elapsed, result.evaluated)

    table = pd.DataFrame(rows)
    slopes: Dict[str, float] = {}
    if len(table) >= 2:
        slopes = {
            "seconds": loglog_slope(table["n"], table["seconds"]),
            "evaluated": loglog_slope(table["n"], table["evaluated"]),
        }
    return table, slopes
