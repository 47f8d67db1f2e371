"""
Busca do melhor movimento em Θ(n³) por esquema, por decomposição em pares de cortes.

Para cada esquema os quatro cortes são divididos em dois pares independentes
(nenhuma aresta inserida liga os dois cortes do mesmo par). O par A = {a1, a2}
é enumerado; o par B = {b1, b2} é completado por uma DP linear:

    V1[j] = max(V1[j-1], c~1(j))
    V2[j] = max(V2[j-1], c~2(j) + V1[min(j-2, max1)])

onde c~b(j) é o custo da aresta removida em j menos as duas arestas inseridas
que tocam b (a outra ponta de cada uma está em A, já fixado).

O slot 1 está sempre em A. O parceiro é o slot 3 (intercalado: b1 entre os
nós de A, b2 depois), o 4 (aninhado: b1 e b2 entre os nós de A) ou o 2
(final: b1 e b2 depois dos nós de A), nessa ordem de preferência.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from .config import MIN_SEARCH_N
from .model import Cost, CostMatrix
from .oracle import SearchResult, finalize, resolve_schemes
from .schemes import (
    EdgeTemplate,
    Move,
    Scheme,
    Selection,
    inserted_edge_templates,
)

logger = logging.getLogger("fouropt.engine_deberg")

# Células (linhas x colunas) por lote da DP; limita a memória de cada lote
_CHUNK_CELLS = 1 << 18


# -----------------------------
# Erros tipados
# -----------------------------
class PairingError(RuntimeError):
    """Nenhum par independente encontrado (indica erro na derivação dos esquemas)."""


class RangePattern(str, Enum):
    INTERLEAVED = "interleaved"
    NESTED = "nested"
    TRAILING = "trailing"


_PARTNERS: Tuple[Tuple[int, RangePattern], ...] = (
    (3, RangePattern.INTERLEAVED),
    (4, RangePattern.NESTED),
    (2, RangePattern.TRAILING),
)


@dataclass(frozen=True)
class BTerm:
    """Aresta inserida vista do slot b: offset em b e a ponta fixada em A."""

    b_offset: int
    other_slot: int
    other_offset: int


@dataclass(frozen=True)
class PairingPlan:
    scheme_id: int
    a_slots: Tuple[int, int]
    b_slots: Tuple[int, int]
    edge_assignment: Tuple[Tuple[int, Tuple[EdgeTemplate, EdgeTemplate]], ...]
    range_pattern: RangePattern

    def assigned(self, b_slot: int) -> Tuple[EdgeTemplate, EdgeTemplate]:
        return dict(self.edge_assignment)[b_slot]

    def terms(self, b_slot: int) -> Tuple[BTerm, ...]:
        out = []
        for t in self.assigned(b_slot):
            mine, other = t.endpoint_at(b_slot), t.other_endpoint(b_slot)
            out.append(BTerm(b_offset=mine.offset, other_slot=other.slot, other_offset=other.offset))
        return tuple(out)


def _independent(templates: Iterable[EdgeTemplate], x: int, y: int) -> bool:
    return not any(t.slots == frozenset((x, y)) for t in templates)


def pairing_plan(r: Scheme) -> PairingPlan:
    templates = inserted_edge_templates(r)
    for partner, pattern in _PARTNERS:
        a_slots = (1, partner)
        b_slots = tuple(s for s in (2, 3, 4) if s != partner)
        if not (_independent(templates, *a_slots) and _independent(templates, *b_slots)):
            continue
        assignment: Dict[int, List[EdgeTemplate]] = {b: [] for b in b_slots}
        for t in sorted(templates, key=lambda e: (e.first, e.second)):
            touched = [b for b in b_slots if b in t.slots]
            if len(touched) != 1:
                raise PairingError(f"aresta {t} toca {len(touched)} slots de B (esquema r{r.id})")
            assignment[touched[0]].append(t)
        if any(len(v) != 2 for v in assignment.values()):
            raise PairingError(f"atribuição desbalanceada para r{r.id}: {assignment}")
        return PairingPlan(
            scheme_id=r.id,
            a_slots=a_slots,
            b_slots=b_slots,  # type: ignore[arg-type]
            edge_assignment=tuple((b, tuple(v)) for b, v in assignment.items()),  # type: ignore[misc]
            range_pattern=pattern,
        )
    raise PairingError(f"esquema r{r.id} sem par independente")


# -----------------------------
# Intervalos por padrão
# -----------------------------
def _last_free(p, n: int):
    # com o slot 1 na posição 0 o último corte não pode ser n-1 (aresta {n-1, 0})
    if isinstance(p, np.ndarray):
        return np.where(p == 0, n - 2, n - 1)
    return n - 2 if p == 0 else n - 1


def partner_positions(pattern: RangePattern, p: int, n: int) -> np.ndarray:
    last = _last_free(p, n)
    if pattern == RangePattern.INTERLEAVED:
        lo, hi = p + 4, last - 2
    elif pattern == RangePattern.NESTED:
        lo, hi = p + 6, last
    else:
        lo, hi = p + 2, last - 4
    return np.arange(lo, hi + 1, dtype=np.int64)


def _pair_rows(pattern: RangePattern, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Todos os pares A = (a1, a2) válidos, ordenados por a1 e depois a2."""
    ps, qs = [], []
    for p in range(n):
        q = partner_positions(pattern, p, n)
        ps.append(np.full(q.size, p, dtype=np.int64))
        qs.append(q)
    return np.concatenate(ps), np.concatenate(qs)


def _b_ranges(pattern: RangePattern, p, q, n: int):
    """((min1, max1), (min2, max2)) com p, q escalares ou colunas (m, 1)."""
    last = _last_free(p, n)
    if pattern == RangePattern.INTERLEAVED:
        return (p + 2, q - 2), (q + 2, last)
    if pattern == RangePattern.NESTED:
        return (p + 2, q - 4), (p + 4, q - 2)
    return (q + 2, last - 2), (q + 4, last)


def _assemble(pattern: RangePattern, p: int, q: int, b1: int, b2: int) -> Selection:
    if pattern == RangePattern.INTERLEAVED:
        return Selection(p, b1, q, b2)
    if pattern == RangePattern.NESTED:
        return Selection(p, b1, b2, q)
    return Selection(p, q, b1, b2)


# -----------------------------
# DP de completamento
# -----------------------------
@dataclass(frozen=True)
class CompletionTables:
    V1: np.ndarray
    bestV1: np.ndarray
    V2: np.ndarray
    bestV2: np.ndarray
    ranges: Tuple[Tuple[int, int], Tuple[int, int]]
    evaluated: int


def _completion_values(plan: PairingPlan, b_slot: int, p: np.ndarray, q: np.ndarray, j: np.ndarray, costs: CostMatrix) -> np.ndarray:
    """c~b(j) para cada linha (a1 = p, a2 = q) e cada coluna j; shape (m, w)."""
    n = costs.n
    c = costs.array
    vals = c[j % n, (j + 1) % n].astype(np.float64)
    for term in plan.terms(b_slot):
        anchor = p if term.other_slot == 1 else q
        other = (anchor + term.other_offset) % n
        vals = vals - c[(j + term.b_offset) % n, other]
    return np.broadcast_to(vals, (q.shape[0], j.shape[-1]))


def _running_max(values: np.ndarray, offset: int = 0) -> Tuple[np.ndarray, np.ndarray]:
    """Máximo acumulado por linha e a posição (coluna + offset) do campeão; -1 antes do primeiro valor."""
    m, w = values.shape
    best = np.maximum.accumulate(values, axis=1)
    previous = np.concatenate([np.full((m, 1), -np.inf), best[:, :-1]], axis=1)
    # empate mantém o campeão anterior
    improved = values > previous
    cols = np.broadcast_to(np.arange(w) + offset, (m, w))
    arg = np.maximum.accumulate(np.where(improved, cols, -1), axis=1)
    return best, arg


@dataclass(frozen=True)
class _Batch:
    """Tabelas de um lote de linhas; a coluna k corresponde à posição start + k."""

    V1: np.ndarray
    best1: np.ndarray
    V2: np.ndarray
    best2: np.ndarray
    start: int
    hi1: np.ndarray
    hi2: np.ndarray
    evaluated: int


def _completion_batch(plan: PairingPlan, p: np.ndarray, q: np.ndarray, costs: CostMatrix) -> _Batch:
    n = costs.n
    P = p[:, None]
    Q = q[:, None]
    (lo1, hi1), (lo2, hi2) = _b_ranges(plan.range_pattern, P, Q, n)
    # nenhuma faixa de b começa antes de min1
    start = int(np.min(lo1))
    J = np.arange(start, n, dtype=np.int64)[None, :]
    w = J.shape[1]
    b1, b2 = plan.b_slots

    ok1 = (J >= lo1) & (J <= hi1)
    ok2 = (J >= lo2) & (J <= hi2)

    c1 = np.where(ok1, _completion_values(plan, b1, P, Q, J, costs), -np.inf)
    V1, best1 = _running_max(c1, start)

    k = np.clip(np.minimum(J - 2, hi1) - start, 0, w - 1)
    coupled = np.take_along_axis(V1, k, axis=1)
    c2 = np.where(ok2, _completion_values(plan, b2, P, Q, J, costs) + coupled, -np.inf)
    V2, best2 = _running_max(c2, start)

    return _Batch(
        V1=V1,
        best1=best1,
        V2=V2,
        best2=best2,
        start=start,
        hi1=np.broadcast_to(hi1, (p.size, 1)).reshape(p.size),
        hi2=np.broadcast_to(hi2, (p.size, 1)).reshape(p.size),
        evaluated=int(ok1.sum() + ok2.sum()),
    )


def completion_tables(a1: int, a2: int, plan: PairingPlan, costs: CostMatrix) -> Optional[CompletionTables]:
    """Tabelas V1/V2 de um único par (a1, a2), restritas aos intervalos de b."""
    n = costs.n
    allowed = partner_positions(plan.range_pattern, a1, n)
    if allowed.size == 0 or not (allowed[0] <= a2 <= allowed[-1]):
        return None
    (lo1, hi1), (lo2, hi2) = _b_ranges(plan.range_pattern, a1, a2, n)
    batch = _completion_batch(plan, np.array([a1], dtype=np.int64), np.array([a2], dtype=np.int64), costs)
    s = batch.start
    return CompletionTables(
        V1=batch.V1[0, lo1 - s: hi1 - s + 1],
        bestV1=batch.best1[0, lo1 - s: hi1 - s + 1],
        V2=batch.V2[0, lo2 - s: hi2 - s + 1],
        bestV2=batch.best2[0, lo2 - s: hi2 - s + 1],
        ranges=((lo1, hi1), (lo2, hi2)),
        evaluated=batch.evaluated,
    )


def best_completion(a1: int, a2: int, plan: PairingPlan, costs: CostMatrix) -> Optional[Tuple[Cost, int, int]]:
    """(contribuição c~1(b1) + c~2(b2), b1, b2) ótimos para o par A dado."""
    tables = completion_tables(a1, a2, plan, costs)
    if tables is None:
        return None
    (lo1, hi1), _ = tables.ranges
    b2 = int(tables.bestV2[-1])
    b1 = int(tables.bestV1[min(b2 - 2, hi1) - lo1])
    return costs.scalar(tables.V2[-1]), b1, b2


def decomposed_gain(plan: PairingPlan, s: Selection, costs: CostMatrix) -> Cost:
    """c(a1, a1+1) + c(a2, a2+1) + c~1(b1) + c~2(b2) para uma seleção completa."""
    n = costs.n
    c = costs.array
    cuts = s.as_tuple()
    total = 0
    for a in plan.a_slots:
        i = cuts[a - 1]
        total += c[i, (i + 1) % n]
    for b in plan.b_slots:
        j = cuts[b - 1]
        total += c[j, (j + 1) % n]
        for term in plan.terms(b):
            total -= c[(j + term.b_offset) % n, (cuts[term.other_slot - 1] + term.other_offset) % n]
    return costs.scalar(total)


# -----------------------------
# Busca
# -----------------------------
def _best_for_scheme(r: Scheme, costs: CostMatrix) -> Tuple[Optional[Move], int]:
    plan = pairing_plan(r)
    n = costs.n
    c = costs.array
    all_p, all_q = _pair_rows(plan.range_pattern, n)
    step = max(1, _CHUNK_CELLS // n)
    champion: Optional[Tuple[float, int, int, int, int]] = None
    evaluated = 0
    # linhas em ordem (a1, a2): o primeiro máximo é o menor par
    for lo in range(0, all_p.size, step):
        p = all_p[lo: lo + step]
        q = all_q[lo: lo + step]
        batch = _completion_batch(plan, p, q, costs)
        evaluated += batch.evaluated
        rows = np.arange(q.size)
        totals = c[p, (p + 1) % n] + c[q, (q + 1) % n] + batch.V2[rows, batch.hi2 - batch.start]
        k = int(np.argmax(totals))
        if champion is not None and not totals[k] > champion[0]:
            continue
        b2 = int(batch.best2[k, batch.hi2[k] - batch.start])
        b1 = int(batch.best1[k, min(b2 - 2, int(batch.hi1[k])) - batch.start])
        champion = (float(totals[k]), int(p[k]), int(q[k]), b1, b2)

    if champion is None:
        return None, evaluated
    value, p1, q_best, b1, b2 = champion
    move = Move(scheme=r, selection=_assemble(plan.range_pattern, p1, q_best, b1, b2), gain=costs.scalar(value))
    return move, evaluated


def best_move_deberg(
    costs: CostMatrix,
    schemes: Optional[Iterable[Scheme]] = None,
    improving_only: bool = True,
) -> SearchResult:
    chosen = resolve_schemes(schemes)
    if costs.n < MIN_SEARCH_N:
        return SearchResult(best=None, evaluated=0, engine="deberg")

    best: Optional[Move] = None
    evaluated = 0
    for r in chosen:
        move, count = _best_for_scheme(r, costs)
        evaluated += count
        if move is not None and (best is None or move.gain > best.gain):
            best = move

    logger.debug("deberg_search n=%s schemes=%s evaluated=%s", costs.n, len(chosen), evaluated)
    return finalize(best, evaluated, "deberg", improving_only)
