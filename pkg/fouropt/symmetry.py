"""
Grupo octogonal (8 simetrias do quadrado) agindo sobre os rótulos das
seleções e, por consequência, sobre os 25 esquemas.

rho gira os slots (1 -> 2 -> 3 -> 4 -> 1) mantendo as linhas; psi troca os
slots 1 <-> 3 (2 e 4 fixos) e troca rótulo com e sem linha. Um elemento
(reflect, rot) representa psi^reflect o rho^rot, com rho aplicado primeiro.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, List, Sequence, Tuple

import pandas as pd

from .schemes import (
    ALL_LABELS,
    EdgeTemplate,
    Label,
    Scheme,
    SchemeError,
    Selection,
    enumerate_pure_schemes,
    inserted_edge_templates,
    scheme_from_edge_set,
)

logger = logging.getLogger("fouropt.symmetry")

# Mapas de slot dos geradores (dados mutáveis de propósito: testes de mutação)
_ROTATE: Dict[int, int] = {1: 2, 2: 3, 3: 4, 4: 1}
_REFLECT: Dict[int, int] = {1: 3, 2: 2, 3: 1, 4: 4}


@dataclass(frozen=True, order=True)
class GroupElement:
    reflect: bool
    rot: int

    def __post_init__(self) -> None:
        if not (0 <= self.rot <= 3):
            raise ValueError(f"rotação fora de 0..3: {self.rot}")

    def apply(self, label: Label) -> Label:
        return apply_label_map(self, label)

    def compose(self, other: "GroupElement") -> "GroupElement":
        """self o other (other aplicado primeiro)."""
        return compose(self, other)

    def inverse(self) -> "GroupElement":
        for h in group_elements():
            if compose(self, h) == IDENTITY:
                return h
        raise ValueError(f"elemento sem inverso: {self}")

    def __str__(self) -> str:
        rot = {0: "", 1: "rho"}.get(self.rot, f"rho^{self.rot}")
        if self.reflect:
            return ("psi " + rot).strip()
        return rot or "id"


IDENTITY = GroupElement(False, 0)
RHO = GroupElement(False, 1)
PSI = GroupElement(True, 0)


def group_elements() -> List[GroupElement]:
    return [GroupElement(f, k) for f in (False, True) for k in range(4)]


def apply_label_map(g: GroupElement, label: Label) -> Label:
    slot, primed = label
    for _ in range(g.rot):
        slot = _ROTATE[slot]
    if g.reflect:
        slot = _REFLECT[slot]
        primed = not primed
    return Label(slot, primed)


def _label_map(g: GroupElement) -> Tuple[Label, ...]:
    return tuple(apply_label_map(g, lab) for lab in ALL_LABELS)


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    target = tuple(apply_label_map(g, apply_label_map(h, lab)) for lab in ALL_LABELS)
    for e in group_elements():
        if _label_map(e) == target:
            return e
    raise ValueError(f"composição fora do grupo: {g} o {h}")


def act_on_scheme(g: GroupElement, r: Scheme) -> Scheme:
    mapped = (
        EdgeTemplate.join(apply_label_map(g, t.first), apply_label_map(g, t.second))
        for t in inserted_edge_templates(r)
    )
    return scheme_from_edge_set(mapped)


def stabilizer(r: Scheme) -> List[GroupElement]:
    return [g for g in group_elements() if act_on_scheme(g, r) == r]


# -----------------------------
# Órbitas
# -----------------------------
@dataclass(frozen=True)
class Orbit:
    representative: Scheme
    members: FrozenSet[Scheme]

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def member_ids(self) -> List[int]:
        return sorted(r.id for r in self.members)


def orbit_of(r: Scheme) -> Orbit:
    members = frozenset(act_on_scheme(g, r) for g in group_elements())
    return Orbit(representative=min(members, key=lambda m: m.id), members=members)


def compute_orbit_partition() -> List[Orbit]:
    """Fecho das órbitas, ordenadas pelo id do representante (sem cache)."""
    seen = set()
    orbits: List[Orbit] = []
    for r in enumerate_pure_schemes():
        if r in seen:
            continue
        orbit = orbit_of(r)
        seen |= orbit.members
        orbits.append(orbit)
    logger.debug("orbit_partition sizes=%s", [o.size for o in orbits])
    return orbits


@lru_cache(maxsize=1)
def _cached_partition() -> Tuple[Orbit, ...]:
    return tuple(compute_orbit_partition())


def orbit_partition() -> List[Orbit]:
    return list(_cached_partition())


def reset_orbit_cache() -> None:
    _cached_partition.cache_clear()


def orbit_id(r: Scheme) -> int:
    for k, orbit in enumerate(orbit_partition(), start=1):
        if r in orbit.members:
            return k
    raise SchemeError(f"esquema fora de todas as órbitas: {r.id}")


# -----------------------------
# Transporte de seleções
# -----------------------------
NodeMap = Callable[[int], int]


def _rotate_step(s: Selection, n: int) -> Tuple[Selection, NodeMap]:
    # novo rótulo = antigo - t: o corte i4 passa a ser o primeiro
    t = s.i3 + 1
    moved = Selection(*sorted((i - t) % n for i in s))
    return moved, lambda u: (u + t) % n


def _reflect_step(s: Selection, n: int) -> Tuple[Selection, NodeMap]:
    # percorre o tour ao contrário a partir de i4; o corte i vira t - i - 1
    t = s.i4
    moved = Selection(*sorted((t - i - 1) % n for i in s))
    return moved, lambda u: (t - u) % n


def transport(g: GroupElement, s: Selection, n: int) -> Tuple[Selection, Tuple[int, ...]]:
    """
    Reetiqueta o tour canônico de modo que o movimento (r, s) vire (g r, s').

    Devolve s' e o mapa nó_novo -> nó_antigo; com c'(u, v) = c(mapa[u], mapa[v])
    vale gain(act_on_scheme(g, r), s', c') == gain(r, s, c).
    """
    steps = [_rotate_step] * g.rot + ([_reflect_step] if g.reflect else [])
    mapping: Sequence[int] = list(range(n))
    current = s
    for step in steps:
        current, step_map = step(current, n)
        mapping = [mapping[step_map(u)] for u in range(n)]
    return current, tuple(mapping)


# -----------------------------
# Tabelas para CLI / documentação
# -----------------------------
def scheme_catalog() -> pd.DataFrame:
    orbits = orbit_partition()
    rows = []
    for r in enumerate_pure_schemes():
        k = orbit_id(r)
        rep = orbits[k - 1].representative
        rows.append(
            {
                "id": r.id,
                "scheme": str(r),
                "orbit": k,
                "representative": rep.id == r.id,
                "inserted_edges": " ".join(sorted(str(t) for t in inserted_edge_templates(r))),
            }
        )
    return pd.DataFrame(rows)


def orbit_table() -> pd.DataFrame:
    rows = [
        {
            "orbit": k,
            "size": o.size,
            "representative": o.representative.id,
            "members": ",".join(str(i) for i in o.member_ids),
        }
        for k, o in enumerate(orbit_partition(), start=1)
    ]
    return pd.DataFrame(rows)
