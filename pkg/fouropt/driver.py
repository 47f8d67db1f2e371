"""
Busca local best-improving na vizinhança 4-OPT verdadeira.

A cada iteração as posições do tour atual viram rótulos 0..n-1 (os motores
sempre enxergam o tour canônico), o motor devolve o melhor movimento
melhorante e ele é aplicado sobre as posições do tour atual.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from .config import FLOAT_EPS, MIN_SEARCH_N
from .engine_deberg import best_move_deberg
from .engine_glover import GLOVER_SCHEME_IDS, best_move_glover
from .model import Cost, CostMatrix, DimensionMismatch, Tour, tour_length
from .oracle import SearchResult, best_move_brute, pick_best
from .schemes import apply_move, enumerate_pure_schemes

logger = logging.getLogger("fouropt.driver")


class EngineChoice(str, Enum):
    BRUTE = "brute"
    DEBERG = "deberg"
    GLOVER = "glover"
    # glover para r10/r16/r25 e de Berg para os outros 22
    HYBRID = "hybrid"


@dataclass
class RunStats:
    engine: str
    initial_length: Cost
    final_length: Cost = 0
    iterations: int = 0
    gains: List[Cost] = field(default_factory=list)
    search_seconds: List[float] = field(default_factory=list)
    history: List[Tuple[int, Tuple[int, int, int, int]]] = field(default_factory=list)


def find_best_move(costs: CostMatrix, engine: EngineChoice | str, improving_only: bool = True) -> SearchResult:
    engine = EngineChoice(engine)
    if engine == EngineChoice.BRUTE:
        return best_move_brute(costs, improving_only=improving_only)
    if engine == EngineChoice.DEBERG:
        return best_move_deberg(costs, improving_only=improving_only)
    if engine == EngineChoice.GLOVER:
        return best_move_glover(costs, improving_only=improving_only)

    others = [r for r in enumerate_pure_schemes() if r.id not in GLOVER_SCHEME_IDS]
    quad = best_move_glover(costs, improving_only=improving_only)
    cubic = best_move_deberg(costs, schemes=others, improving_only=improving_only)
    return SearchResult(
        best=pick_best([quad.best, cubic.best]),
        evaluated=quad.evaluated + cubic.evaluated,
        engine=EngineChoice.HYBRID.value,
    )


def random_tour(n: int, seed: int) -> Tour:
    rng = np.random.default_rng(seed)
    return Tour(tuple(int(v) for v in rng.permutation(n)))


def local_search(
    tour: Tour,
    costs: CostMatrix,
    engine: EngineChoice | str = EngineChoice.DEBERG,
    max_iters: Optional[int] = None,
) -> Tuple[Tour, RunStats]:
    if tour.n != costs.n:
        raise DimensionMismatch(f"tour com n={tour.n} e matriz com n={costs.n}")
    engine = EngineChoice(engine)
    current = tour
    length = tour_length(current, costs)
    stats = RunStats(engine=engine.value, initial_length=length, final_length=length)
    if costs.n < MIN_SEARCH_N:
        logger.info("local_search_skipped n=%s (mínimo %s)", costs.n, MIN_SEARCH_N)
        return current, stats

    # custos reais: para quando o ganho some diante do comprimento inicial
    threshold = 0 if costs.is_integer else FLOAT_EPS * abs(float(length))

    while max_iters is None or stats.iterations < max_iters:
        # O(n²) por iteração: a matriz reetiquetada é materializada
        relabeled = costs.relabel(current.order)
        started = time.perf_counter()
        result = find_best_move(relabeled, engine, improving_only=True)
        stats.search_seconds.append(time.perf_counter() - started)

        move = result.best
        if move is None or move.gain <= threshold:
            break

        current = apply_move(current, move.scheme, move.selection)
        new_length = tour_length(current, costs)
        if costs.is_integer and new_length != length - move.gain:
            raise RuntimeError(
                f"ganho inconsistente: r{move.scheme.id} {move.selection.as_tuple()} "
                f"gain={move.gain} antes={length} depois={new_length}"
            )
        length = new_length
        stats.iterations += 1
        stats.gains.append(move.gain)
        stats.history.append((move.scheme.id, move.selection.as_tuple()))
        logger.info(
            "local_search_step iter=%s scheme=r%s gain=%s length=%s evaluated=%s",
            stats.iterations, move.scheme.id, move.gain, length, result.evaluated,
        )

    stats.final_length = length
    logger.info(
        "local_search_done engine=%s iterations=%s initial=%s final=%s",
        engine.value, stats.iterations, stats.initial_length, stats.final_length,
    )
    return current, stats
