"""
Tipos centrais: matriz de custos simétrica, tour e aritmética modular de posições.

Todos os tipos são imutáveis depois de construídos; uma "modificação" sempre
gera um valor novo.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Sequence, Tuple, Union

import numpy as np

from .config import MIN_STORAGE_N

Cost = Union[int, float]


# -----------------------------
# Erros tipados
# -----------------------------
class DimensionMismatch(ValueError):
    """Tour e matriz de custos com quantidades de nós diferentes."""


class InvalidCostMatrix(ValueError):
    """Matriz não quadrada, assimétrica, negativa ou pequena demais."""


class InvalidTour(ValueError):
    """Ordem de visita que não é uma permutação de 0..n-1."""


# -----------------------------
# Aritmética modular
# -----------------------------
@dataclass(frozen=True)
class ModIndex:
    value: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"módulo inválido: {self.n}")
        if not (0 <= self.value < self.n):
            raise ValueError(f"índice fora de [0, {self.n - 1}]: {self.value}")

    def __int__(self) -> int:
        return self.value


def mod_add(x: ModIndex, t: int) -> ModIndex:
    return ModIndex((x.value + t) % x.n, x.n)


def mod_sub(x: ModIndex, t: int) -> ModIndex:
    return ModIndex((x.value - t) % x.n, x.n)


# -----------------------------
# Matriz de custos
# -----------------------------
class ValueKind(str, Enum):
    INTEGER = "integer"
    FLOATING = "floating"


@dataclass(frozen=True, eq=False)
class CostMatrix:
    """
    Matriz densa n x n de custos simétricos e não negativos.

    Use `CostMatrix.from_array` para construir: ele valida, zera a diagonal
    (nunca consultada) e guarda uma cópia somente-leitura.
    """

    array: np.ndarray
    value_kind: ValueKind

    @classmethod
    def from_array(cls, data, value_kind: ValueKind | str | None = None) -> "CostMatrix":
        arr = np.array(data)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidCostMatrix(f"matriz precisa ser quadrada, recebido shape={arr.shape}")
        n = arr.shape[0]
        if n < MIN_STORAGE_N:
            raise InvalidCostMatrix(f"matriz pequena demais: n={n} (mínimo {MIN_STORAGE_N})")

        if value_kind is None:
            kind = ValueKind.INTEGER if arr.dtype.kind in "iub" else ValueKind.FLOATING
        else:
            kind = ValueKind(value_kind)

        if kind == ValueKind.INTEGER:
            if arr.dtype.kind == "f":
                if not np.all(np.isfinite(arr)) or not np.array_equal(arr, np.round(arr)):
                    raise InvalidCostMatrix("value_kind=integer com custos não inteiros")
            arr = arr.astype(np.int64)
        else:
            arr = arr.astype(np.float64)
            if not np.all(np.isfinite(arr)):
                raise InvalidCostMatrix("custos não finitos")

        arr = arr.copy()
        np.fill_diagonal(arr, 0)
        if not np.array_equal(arr, arr.T):
            raise InvalidCostMatrix("matriz assimétrica")
        if np.any(arr < 0):
            raise InvalidCostMatrix("custos negativos")

        arr.setflags(write=False)
        return cls(array=arr, value_kind=kind)

    @classmethod
    def uniform(cls, n: int, value: int = 1) -> "CostMatrix":
        return cls.from_array(np.full((n, n), value, dtype=np.int64))

    @property
    def n(self) -> int:
        return int(self.array.shape[0])

    @property
    def is_integer(self) -> bool:
        return self.value_kind == ValueKind.INTEGER

    def cost(self, u: int, v: int) -> Cost:
        return self.scalar(self.array[u, v])

    def scalar(self, x) -> Cost:
        """Converte um escalar numpy (ou float de uma DP) para int/float conforme o tipo."""
        if self.is_integer:
            return int(round(float(x))) if isinstance(x, (float, np.floating)) else int(x)
        return float(x)

    def relabel(self, order: Sequence[int]) -> "CostMatrix":
        """c'(p, q) = c(order[p], order[q]): posições do tour viram rótulos de nó."""
        idx = np.asarray(order, dtype=np.int64)
        if idx.shape != (self.n,):
            raise DimensionMismatch(f"relabel com {idx.shape[0]} posições para n={self.n}")
        arr = self.array[np.ix_(idx, idx)]
        arr.setflags(write=False)
        return CostMatrix(array=arr, value_kind=self.value_kind)


# -----------------------------
# Tour
# -----------------------------
@dataclass(frozen=True)
class Tour:
    order: Tuple[int, ...]

    def __post_init__(self) -> None:
        order = tuple(int(v) for v in self.order)
        object.__setattr__(self, "order", order)
        if len(order) < MIN_STORAGE_N:
            raise InvalidTour(f"tour com menos de {MIN_STORAGE_N} nós: {len(order)}")
        if sorted(order) != list(range(len(order))):
            raise InvalidTour(f"ordem não é permutação de 0..{len(order) - 1}")

    @classmethod
    def canonical(cls, n: int) -> "Tour":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.order)

    def edges(self) -> FrozenSet[FrozenSet[int]]:
        o = self.order
        return frozenset(frozenset((o[i], o[(i + 1) % self.n])) for i in range(self.n))

    def rotated(self, k: int) -> "Tour":
        k %= self.n
        return Tour(self.order[k:] + self.order[:k])

    def reversed(self) -> "Tour":
        return Tour(tuple(reversed(self.order)))


def tour_length(tour: Tour, costs: CostMatrix) -> Cost:
    if tour.n != costs.n:
        raise DimensionMismatch(f"tour com n={tour.n} e matriz com n={costs.n}")
    order = np.asarray(tour.order, dtype=np.int64)
    return costs.scalar(costs.array[order, np.roll(order, -1)].sum())


def node_at(cuts: Sequence[int], slot: int, offset: int, n: int) -> int:
    """Nó do tour canônico referenciado pelo rótulo (slot, offset) de uma seleção."""
    return (cuts[slot - 1] + offset) % n
