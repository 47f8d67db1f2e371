"""
Busca Θ(n²) de Glover para os esquemas r10, r16 e r25.

Esses esquemas são a composição de duas "pontes": uma nos cortes (i1, i3) e
outra em (i2, i4). Cada ponte é paralela (cost_d) ou cruzada (cost_c):

    r25 = paralela(i1, i3) + paralela(i2, i4)
    r16 = paralela(i1, i3) + cruzada(i2, i4)
    r10 = cruzada(i1, i3)  + paralela(i2, i4)

As tabelas usam sucessor não modular (a + 1). Seleções com i4 = n-1 ficam
fora do domínio; uma segunda execução sobre os rótulos deslocados de um
(c'(x, y) = c(x-1, y-1)) com i1 fixo em 0 cobre exatamente esses casos.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Optional, Tuple

import numpy as np

from .config import MIN_SEARCH_N
from .model import Cost, CostMatrix
from .oracle import SearchResult, finalize, move_key
from .schemes import Move, Scheme, Selection, scheme_by_id

logger = logging.getLogger("fouropt.engine_glover")


class BridgeKind(str, Enum):
    PARALLEL = "parallel"
    CROSSED = "crossed"


GLOVER_SCHEME_IDS: Tuple[int, ...] = (10, 16, 25)

# id -> (ponte externa (i2, i4), ponte interna (i1, i3) guardada em A/B)
_BRIDGES: Dict[int, Tuple[BridgeKind, BridgeKind]] = {
    25: (BridgeKind.PARALLEL, BridgeKind.PARALLEL),
    16: (BridgeKind.CROSSED, BridgeKind.PARALLEL),
    10: (BridgeKind.PARALLEL, BridgeKind.CROSSED),
}

# rho r10 = r16, rho r16 = r10, rho r25 = r25
_ROTATED_ID: Dict[int, int] = {25: 25, 16: 10, 10: 16}


def cost_d(a: int, b: int, costs: CostMatrix) -> Cost:
    c = costs.array
    return costs.scalar(c[a, a + 1] + c[b, b + 1] - c[a, b + 1] - c[a + 1, b])


def cost_c(a: int, b: int, costs: CostMatrix) -> Cost:
    c = costs.array
    return costs.scalar(c[a, a + 1] + c[b, b + 1] - c[a, b] - c[a + 1, b + 1])


def bridge_cost(kind: BridgeKind, a: int, b: int, costs: CostMatrix) -> Cost:
    return cost_d(a, b, costs) if kind == BridgeKind.PARALLEL else cost_c(a, b, costs)


def _bridge_costs(costs: CostMatrix, kind: BridgeKind) -> np.ndarray:
    """Matriz n x n de custos de ponte; -inf fora de a, b <= n-2."""
    n = costs.n
    c = costs.array.astype(np.float64)
    a = np.arange(n - 1)
    edge = c[a, a + 1]
    base = edge[:, None] + edge[None, :]
    if kind == BridgeKind.PARALLEL:
        values = base - c[: n - 1, 1:] - c[1:, : n - 1]
    else:
        values = base - c[: n - 1, : n - 1] - c[1:, 1:]
    out = np.full((n, n), -np.inf)
    out[: n - 1, : n - 1] = values
    return out


def rotated_costs(costs: CostMatrix) -> CostMatrix:
    """c'(x, y) = c(x-1, y-1): o nó x vira o nó x+1."""
    arr = np.roll(costs.array, 1, axis=(0, 1))
    return CostMatrix.from_array(arr, value_kind=costs.value_kind)


@dataclass(frozen=True)
class GloverTables:
    A: np.ndarray
    bestA: np.ndarray
    B: np.ndarray
    bestB: np.ndarray  # (n, n, 2): (a, b) ou (-1, -1)
    variant: BridgeKind
    evaluated: int


def _running_argmax_rows(values: np.ndarray, champion: np.ndarray) -> np.ndarray:
    """Índice de linha do campeão do máximo acumulado (empate mantém o anterior)."""
    n = values.shape[0]
    previous = np.vstack([np.full((1, values.shape[1]), -np.inf), champion[:-1]])
    rows = np.broadcast_to(np.arange(n)[:, None], values.shape)
    return np.maximum.accumulate(np.where(values > previous, rows, -1), axis=0)


def build_tables(costs: CostMatrix, variant: BridgeKind, pin_first: bool = False) -> GloverTables:
    """
    A[i, j] = max_{a <= i} ponte(a, j);  B[i, j] = max_{a <= i-2, i+2 <= b <= j-2} ponte(a, b).

    Com pin_first=True o primeiro corte fica fixo em a = 0.
    """
    n = costs.n
    bridge = _bridge_costs(costs, variant)
    if pin_first:
        bridge[1:, :] = -np.inf
    I = np.arange(n)[:, None]
    J = np.arange(n)[None, :]

    A = np.maximum.accumulate(bridge, axis=0)
    bestA = _running_argmax_rows(bridge, A)
    upper = I < J
    A = np.where(upper, A, -np.inf)
    bestA = np.where(upper & np.isfinite(A), bestA, -1)

    # S[i, j] = A[i-2, j-2] para j >= i+4
    S = np.full((n, n), -np.inf)
    S[2:, 2:] = A[:-2, :-2]
    S = np.where(J - I >= 4, S, -np.inf)
    B = np.maximum.accumulate(S, axis=1)
    previous = np.hstack([np.full((n, 1), -np.inf), B[:, :-1]])
    cols = np.broadcast_to(J, (n, n))
    last_j = np.maximum.accumulate(np.where(S > previous, cols, -1), axis=1)

    valid = last_j >= 0
    ia = np.where(valid, I - 2, 0)
    jb = np.where(valid, last_j - 2, 0)
    bestB = np.stack(
        [np.where(valid, bestA[ia, jb], -1), np.where(valid, last_j - 2, -1)],
        axis=-1,
    )
    evaluated = int(np.isfinite(A).sum() + np.isfinite(B).sum())
    return GloverTables(A=A, bestA=bestA, B=B, bestB=bestB, variant=variant, evaluated=evaluated)


def _single_run(costs: CostMatrix, scheme_id: int, pin_first: bool) -> Tuple[Optional[Tuple[float, Selection]], int]:
    outer, inner = _BRIDGES[scheme_id]
    tables = build_tables(costs, inner, pin_first=pin_first)
    n = costs.n
    # i4 <= n-2 já vem do -inf na última coluna das pontes
    opt = _bridge_costs(costs, outer) + tables.B
    evaluated = tables.evaluated + int(np.isfinite(opt).sum())
    if not np.isfinite(opt).any():
        return None, evaluated
    flat = int(np.argmax(opt))
    i2, i4 = divmod(flat, n)
    i1, i3 = (int(v) for v in tables.bestB[i2, i4])
    return (float(opt[i2, i4]), Selection(i1, i2, i3, i4)), evaluated


def best_move_for(scheme_id: int, costs: CostMatrix, improving_only: bool = False) -> SearchResult:
    if scheme_id not in _BRIDGES:
        raise ValueError(f"esquema r{scheme_id} fora do escopo do método quadrático")
    n = costs.n
    if n < MIN_SEARCH_N:
        return SearchResult(best=None, evaluated=0, engine="glover")
    scheme = scheme_by_id(scheme_id)

    direct, evaluated = _single_run(costs, scheme_id, pin_first=False)
    shifted, count = _single_run(rotated_costs(costs), _ROTATED_ID[scheme_id], pin_first=True)
    evaluated += count

    moves = []
    if direct is not None:
        moves.append(Move(scheme, direct[1], costs.scalar(direct[0])))
    if shifted is not None:
        back = Selection(*sorted((i - 1) % n for i in shifted[1]))
        moves.append(Move(scheme, back, costs.scalar(shifted[0])))
    best = min(moves, key=move_key) if moves else None
    return finalize(best, evaluated, "glover", improving_only)


def best_move_r25(costs: CostMatrix, improving_only: bool = False) -> SearchResult:
    return best_move_for(25, costs, improving_only)


def best_move_r16(costs: CostMatrix, improving_only: bool = False) -> SearchResult:
    return best_move_for(16, costs, improving_only)


def best_move_r10(costs: CostMatrix, improving_only: bool = False) -> SearchResult:
    return best_move_for(10, costs, improving_only)


def best_move_glover(
    costs: CostMatrix,
    improving_only: bool = True,
    schemes: Optional[Iterable[Scheme]] = None,
) -> SearchResult:
    ids = GLOVER_SCHEME_IDS if schemes is None else tuple(sorted({r.id for r in schemes}))
    unsupported = [k for k in ids if k not in _BRIDGES]
    if unsupported:
        raise ValueError(f"esquemas fora do escopo do método quadrático: {unsupported}")

    best: Optional[Move] = None
    evaluated = 0
    for k in ids:
        result = best_move_for(k, costs, improving_only=False)
        evaluated += result.evaluated
        if result.best is not None and (best is None or result.best.gain > best.gain):
            best = result.best
    logger.debug("glover_search n=%s schemes=%s evaluated=%s", costs.n, list(ids), evaluated)
    return finalize(best, evaluated, "glover", improving_only)
