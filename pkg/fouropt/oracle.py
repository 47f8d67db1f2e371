"""
Oráculo exaustivo Θ(n⁴): avalia todo par (esquema, seleção completa).

É a referência contra a qual as duas programações dinâmicas são verificadas.
Desempate entre movimentos de mesmo ganho: menor id de esquema, depois a
seleção lexicograficamente menor.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .config import MIN_SEARCH_N, ORACLE_MAX_N
from .model import CostMatrix
from .schemes import (
    Move,
    Scheme,
    Selection,
    enumerate_complete_selections,
    enumerate_pure_schemes,
    inserted_edge_templates,
    selection_array,
)

logger = logging.getLogger("fouropt.oracle")

__all__ = [
    "SearchResult",
    "best_move_brute",
    "enumerate_complete_selections",
    "move_key",
    "pick_best",
    "resolve_schemes",
]


@dataclass(frozen=True)
class SearchResult:
    best: Optional[Move]
    evaluated: int
    engine: str = "brute"


def move_key(m: Move) -> Tuple:
    """Chave de ordenação: menor é melhor (ganho maior, id menor, seleção menor)."""
    return (-m.gain, m.scheme.id, m.selection.as_tuple())


def pick_best(moves: Iterable[Optional[Move]]) -> Optional[Move]:
    candidates = [m for m in moves if m is not None]
    if not candidates:
        return None
    return min(candidates, key=move_key)


def resolve_schemes(schemes: Optional[Iterable[Scheme]]) -> Sequence[Scheme]:
    if schemes is None:
        return enumerate_pure_schemes()
    chosen = sorted(set(schemes), key=lambda r: r.id)
    if not chosen:
        raise ValueError("conjunto de esquemas vazio")
    return chosen


def finalize(best: Optional[Move], evaluated: int, engine: str, improving_only: bool) -> SearchResult:
    if improving_only and best is not None and best.gain <= 0:
        best = None
    return SearchResult(best=best, evaluated=evaluated, engine=engine)


def best_move_brute(
    costs: CostMatrix,
    schemes: Optional[Iterable[Scheme]] = None,
    improving_only: bool = True,
) -> SearchResult:
    chosen = resolve_schemes(schemes)
    n = costs.n
    if n < MIN_SEARCH_N:
        return SearchResult(best=None, evaluated=0)
    if n > ORACLE_MAX_N:
        raise ValueError(f"oráculo limitado a n <= {ORACLE_MAX_N} (FOUROPT_ORACLE_MAX_N), recebido n={n}")

    sel = selection_array(n)
    c = costs.array
    removed = c[sel, (sel + 1) % n].sum(axis=1)

    best: Optional[Move] = None
    for r in chosen:
        inserted = np.zeros_like(removed)
        for t in inserted_edge_templates(r):
            u = (sel[:, t.first.slot - 1] + t.first.offset) % n
            v = (sel[:, t.second.slot - 1] + t.second.offset) % n
            inserted = inserted + c[u, v]
        gains = removed - inserted
        # argmax devolve a primeira ocorrência: seleção lexicograficamente menor
        k = int(np.argmax(gains))
        cand = Move(scheme=r, selection=Selection(*sel[k]), gain=costs.scalar(gains[k]))
        if best is None or cand.gain > best.gain:
            best = cand

    evaluated = len(chosen) * int(sel.shape[0])
    logger.debug("brute_search n=%s schemes=%s evaluated=%s", n, len(chosen), evaluated)
    return finalize(best, evaluated, "brute", improving_only)
