"""
Os 25 esquemas puros de reinserção do 4-OPT verdadeiro.

Um esquema é uma permutação com sinal de {2, 3, 4}: depois do segmento 1
(percorrido para frente), visita os segmentos na ordem dada, cada um para
frente (+) ou ao contrário (-). As arestas inseridas saem da remontagem dos
segmentos e são descritas por rótulos (slot, primed): o slot s sem linha é o
nó i_s e com linha é o nó i_s + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import comb
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Tuple

import numpy as np

from .config import MIN_SEARCH_N
from .model import Cost, CostMatrix, Tour

SignedPerm = Tuple[int, int, int]


# -----------------------------
# Erros tipados
# -----------------------------
class SchemeError(ValueError):
    """Esquema impuro, desconhecido ou conjunto de arestas sem esquema correspondente."""


class IncompleteSelection(SchemeError):
    """Seleção fora de ordem, fora do tour ou removendo arestas consecutivas."""


# -----------------------------
# Rótulos e arestas
# -----------------------------
class Label(NamedTuple):
    slot: int
    primed: bool

    @property
    def offset(self) -> int:
        return 1 if self.primed else 0

    def __str__(self) -> str:
        return f"{self.slot}'" if self.primed else str(self.slot)


ALL_LABELS: Tuple[Label, ...] = tuple(Label(s, p) for s in (1, 2, 3, 4) for p in (False, True))


@dataclass(frozen=True)
class EdgeTemplate:
    first: Label
    second: Label

    @classmethod
    def join(cls, x: Label, y: Label) -> "EdgeTemplate":
        a, b = sorted((Label(*x), Label(*y)))
        return cls(a, b)

    @property
    def slots(self) -> FrozenSet[int]:
        return frozenset((self.first.slot, self.second.slot))

    @property
    def is_removed_edge(self) -> bool:
        # (s, 0)-(s, 1) é exatamente a aresta removida no corte s
        return self.first.slot == self.second.slot

    def endpoint_at(self, slot: int) -> Label:
        if self.first.slot == slot:
            return self.first
        if self.second.slot == slot:
            return self.second
        raise KeyError(slot)

    def other_endpoint(self, slot: int) -> Label:
        return self.second if self.first.slot == slot else self.first

    def __str__(self) -> str:
        return f"{self.first}-{self.second}"


# -----------------------------
# Esquemas
# -----------------------------
@dataclass(frozen=True)
class Scheme:
    id: int
    signed_perm: SignedPerm

    @property
    def templates(self) -> FrozenSet[EdgeTemplate]:
        return inserted_edge_templates(self)

    def __str__(self) -> str:
        return "<" + ",".join(f"{e:+d}" for e in self.signed_perm) + ">"


# Numeração r1..r25 congelada (usada em testes, relatórios e catálogo)
_CATALOG: Tuple[SignedPerm, ...] = (
    (-2, -3, -4), (-2, +3, -4),
    (-2, -4, +3), (-2, +4, -3), (-2, +4, +3),
    (-3, +2, -4), (+3, -2, -4), (+3, +2, -4),
    (-3, -4, -2), (-3, -4, +2), (-3, +4, -2), (-3, +4, +2), (+3, -4, -2), (+3, -4, +2),
    (-4, -2, -3), (+4, -2, -3), (-4, -2, +3), (+4, -2, +3), (-4, +2, -3), (+4, +2, -3),
    (-4, +3, -2), (-4, +3, +2), (+4, -3, +2), (+4, +3, -2), (+4, +3, +2),
)

# Extremos de cada segmento: o segmento s vai de (s-1)' até s (o 1 fecha o ciclo em 4')
_SEGMENT_FIRST: Dict[int, Label] = {
    1: Label(4, True), 2: Label(1, True), 3: Label(2, True), 4: Label(3, True),
}
_SEGMENT_LAST: Dict[int, Label] = {s: Label(s, False) for s in (1, 2, 3, 4)}


def _check_signed_perm(signed_perm: Iterable[int]) -> SignedPerm:
    perm = tuple(int(e) for e in signed_perm)
    if len(perm) != 3 or sorted(abs(e) for e in perm) != [2, 3, 4]:
        raise SchemeError(f"permutação com sinal inválida: {perm}")
    return perm  # type: ignore[return-value]


def _reassembly_edges(signed_perm: SignedPerm) -> List[EdgeTemplate]:
    """Arestas emitidas ao percorrer seg1 e depois os segmentos na ordem/sentido dados."""
    edges: List[EdgeTemplate] = []
    end = _SEGMENT_LAST[1]
    for e in signed_perm:
        s = abs(e)
        if e > 0:
            entry, end_next = _SEGMENT_FIRST[s], _SEGMENT_LAST[s]
        else:
            entry, end_next = _SEGMENT_LAST[s], _SEGMENT_FIRST[s]
        edges.append(EdgeTemplate.join(end, entry))
        end = end_next
    edges.append(EdgeTemplate.join(end, _SEGMENT_FIRST[1]))
    return edges


def is_pure(signed_perm: Iterable[int]) -> bool:
    perm = _check_signed_perm(signed_perm)
    return not any(t.is_removed_edge for t in _reassembly_edges(perm))


def all_signed_perms() -> List[SignedPerm]:
    return [
        tuple(sign * v for sign, v in zip(signs, perm))  # type: ignore[misc]
        for perm in permutations((2, 3, 4))
        for signs in product((-1, 1), repeat=3)
    ]


@lru_cache(maxsize=None)
def _pure_schemes() -> Tuple[Scheme, ...]:
    pure = {p for p in all_signed_perms() if is_pure(p)}
    if pure != set(_CATALOG):
        raise SchemeError(
            f"catálogo inconsistente com a remontagem: faltando={sorted(pure - set(_CATALOG))} "
            f"sobrando={sorted(set(_CATALOG) - pure)}"
        )
    return tuple(Scheme(id=k, signed_perm=p) for k, p in enumerate(_CATALOG, start=1))


def enumerate_pure_schemes() -> List[Scheme]:
    """Os 25 esquemas puros, na ordem r1..r25."""
    return list(_pure_schemes())


def scheme_by_id(k: int) -> Scheme:
    schemes = _pure_schemes()
    if not (1 <= k <= len(schemes)):
        raise SchemeError(f"id de esquema desconhecido: {k}")
    return schemes[k - 1]


@lru_cache(maxsize=None)
def _templates_of(signed_perm: SignedPerm) -> FrozenSet[EdgeTemplate]:
    edges = _reassembly_edges(signed_perm)
    if any(t.is_removed_edge for t in edges):
        raise SchemeError(f"esquema impuro: {signed_perm}")
    return frozenset(edges)


def inserted_edge_templates(r: Scheme) -> FrozenSet[EdgeTemplate]:
    return _templates_of(_check_signed_perm(r.signed_perm))


@lru_cache(maxsize=None)
def _schemes_by_edge_set() -> Dict[FrozenSet[EdgeTemplate], Scheme]:
    return {inserted_edge_templates(r): r for r in _pure_schemes()}


def scheme_from_edge_set(templates: Iterable[EdgeTemplate]) -> Scheme:
    key = frozenset(templates)
    try:
        return _schemes_by_edge_set()[key]
    except KeyError:
        raise SchemeError(f"conjunto de reinserção sem esquema puro: {sorted(map(str, key))}")


# -----------------------------
# Seleções
# -----------------------------
@dataclass(frozen=True, order=True)
class Selection:
    """Quatro cortes i1 < i2 < i3 < i4 em posições do tour (remove {i, i+1})."""

    i1: int
    i2: int
    i3: int
    i4: int

    def __post_init__(self) -> None:
        cuts = tuple(int(v) for v in (self.i1, self.i2, self.i3, self.i4))
        for name, v in zip(("i1", "i2", "i3", "i4"), cuts):
            object.__setattr__(self, name, v)
        if not (0 <= cuts[0] < cuts[1] < cuts[2] < cuts[3]):
            raise IncompleteSelection(f"cortes precisam ser crescentes e >= 0: {cuts}")

    def __iter__(self) -> Iterator[int]:
        return iter((self.i1, self.i2, self.i3, self.i4))

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.i1, self.i2, self.i3, self.i4)


def is_complete_selection(s: Selection, n: int) -> bool:
    i1, i2, i3, i4 = s
    if i4 > n - 1:
        return False
    return i2 - i1 >= 2 and i3 - i2 >= 2 and i4 - i3 >= 2 and not (i1 == 0 and i4 == n - 1)


def _require_complete(s: Selection, n: int) -> None:
    if not is_complete_selection(s, n):
        raise IncompleteSelection(f"seleção incompleta para n={n}: {s.as_tuple()}")


def selection_count(n: int) -> int:
    """Quantidade de seleções completas: n * C(n-5, 3) / 4."""
    if n < MIN_SEARCH_N:
        return 0
    return n * comb(n - 5, 3) // 4


def enumerate_complete_selections(n: int) -> Iterator[Selection]:
    """Todas as seleções completas, em ordem lexicográfica."""
    if n < MIN_SEARCH_N:
        return
    for i1 in range(n):
        for i2 in range(i1 + 2, n):
            for i3 in range(i2 + 2, n):
                for i4 in range(i3 + 2, n):
                    if i1 == 0 and i4 == n - 1:
                        continue
                    yield Selection(i1, i2, i3, i4)


@lru_cache(maxsize=8)
def selection_array(n: int) -> np.ndarray:
    """As seleções completas como matriz (m, 4), mesma ordem do gerador."""
    rows = [s.as_tuple() for s in enumerate_complete_selections(n)]
    arr = np.array(rows, dtype=np.int64).reshape(len(rows), 4)
    arr.setflags(write=False)
    return arr


def removed_edges(s: Selection, n: int) -> FrozenSet[FrozenSet[int]]:
    return frozenset(frozenset((i, (i + 1) % n)) for i in s)


def instantiate(templates: Iterable[EdgeTemplate], s: Selection, n: int) -> FrozenSet[FrozenSet[int]]:
    """Arestas concretas (pares de nós do tour canônico) de um conjunto de rótulos."""
    cuts = s.as_tuple()
    out = set()
    for t in templates:
        u = (cuts[t.first.slot - 1] + t.first.offset) % n
        v = (cuts[t.second.slot - 1] + t.second.offset) % n
        out.add(frozenset((u, v)))
    return frozenset(out)


# -----------------------------
# Movimentos
# -----------------------------
@dataclass(frozen=True)
class Move:
    scheme: Scheme
    selection: Selection
    gain: Cost


def gain(r: Scheme, s: Selection, costs: CostMatrix) -> Cost:
    """c(R) - c(I) sobre o tour canônico 0 -> 1 -> ... -> n-1 -> 0."""
    n = costs.n
    _require_complete(s, n)
    c = costs.array
    cuts = s.as_tuple()
    removed = sum(c[i, (i + 1) % n] for i in cuts)
    inserted = 0
    for t in inserted_edge_templates(r):
        u = (cuts[t.first.slot - 1] + t.first.offset) % n
        v = (cuts[t.second.slot - 1] + t.second.offset) % n
        inserted += c[u, v]
    return costs.scalar(removed - inserted)


def apply_move(tour: Tour, r: Scheme, s: Selection) -> Tour:
    """
    Aplica o movimento (r, s), com s em posições do tour (não em nós).

    O segmento 1 vai da posição i4+1 até i1 (passando pelo fim do tour); os
    demais são remontados na ordem e sentido de r.
    """
    n = tour.n
    _require_complete(s, n)
    order = tour.order
    i1, i2, i3, i4 = s
    seg1_len = (i1 - i4 - 1) % n + 1
    segments = {
        1: [order[(i4 + 1 + k) % n] for k in range(seg1_len)],
        2: list(order[i1 + 1: i2 + 1]),
        3: list(order[i2 + 1: i3 + 1]),
        4: list(order[i3 + 1: i4 + 1]),
    }
    new_order = list(segments[1])
    for e in _check_signed_perm(r.signed_perm):
        part = segments[abs(e)]
        new_order.extend(part if e > 0 else reversed(part))
    return Tour(tuple(new_order))
