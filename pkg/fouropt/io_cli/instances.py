"""
Instâncias: arquivo TSPLIB ou geradores aleatórios com seed.

Toda aleatoriedade vem de numpy.random.default_rng(seed) (PCG64). Sintaxe
aceita pela CLI: ``euclid:N[:BOX]``, ``matrix:N[:MAX]``, ``uniform:N`` ou o
caminho de um arquivo TSPLIB.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import MIN_STORAGE_N
from ..model import CostMatrix
from .tsplib import parse_tsplib_instance

logger = logging.getLogger("fouropt.io_cli.instances")

Source = Literal["tsplib", "random-euclidean", "random-matrix", "uniform"]


class InstanceError(ValueError):
    """Especificação de instância inválida."""


class InstanceSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    source: Source
    name: str = ""
    n: Optional[int] = Field(default=None, ge=MIN_STORAGE_N)
    path: Optional[str] = None
    box: int = Field(default=1000, ge=1)
    max_cost: int = Field(default=100, ge=1)
    seed: int = 0

    @model_validator(mode="after")
    def _check_source_fields(self) -> "InstanceSpec":
        if self.source == "tsplib" and not self.path:
            raise ValueError("source=tsplib exige path")
        if self.source != "tsplib" and self.n is None:
            raise ValueError(f"source={self.source} exige n")
        return self

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        if self.source == "tsplib":
            return Path(self.path or "").stem
        return f"{self.source}-n{self.n}-s{self.seed}"


def _int_field(raw: str, what: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise InstanceError(f"{what} inválido: {raw!r}")


def parse_instance_arg(text: str, seed: int = 0) -> InstanceSpec:
    parts = text.split(":")
    kind = parts[0].lower()
    if kind in ("euclid", "matrix", "uniform") and len(parts) >= 2:
        if len(parts) > 3 or (kind == "uniform" and len(parts) > 2):
            raise InstanceError(f"instância aleatória malformada: {text!r}")
        n = _int_field(parts[1], "n")
        extra = {}
        if len(parts) == 3:
            key = "box" if kind == "euclid" else "max_cost"
            extra[key] = _int_field(parts[2], key)
        source = {"euclid": "random-euclidean", "matrix": "random-matrix", "uniform": "uniform"}[kind]
        try:
            return InstanceSpec(source=source, n=n, seed=seed, **extra)
        except ValueError as e:
            raise InstanceError(str(e)) from e
    return InstanceSpec(source="tsplib", path=text)


def generate_random(spec: InstanceSpec) -> CostMatrix:
    n = spec.n
    if n is None:
        raise InstanceError(f"instância {spec.source} sem n")
    if spec.source == "uniform":
        return CostMatrix.uniform(n)

    rng = np.random.default_rng(spec.seed)
    if spec.source == "random-euclidean":
        points = rng.integers(0, spec.box + 1, size=(n, 2))
        diff = points[:, None, :] - points[None, :, :]
        # teto da distância: mantém a desigualdade triangular
        matrix = np.ceil(np.sqrt((diff ** 2).sum(axis=-1))).astype(np.int64)
    elif spec.source == "random-matrix":
        values = rng.integers(1, spec.max_cost + 1, size=(n, n))
        upper = np.triu(values, k=1)
        matrix = upper + upper.T
    else:
        raise InstanceError(f"fonte não aleatória: {spec.source}")

    logger.debug("instance_generated source=%s n=%s seed=%s", spec.source, n, spec.seed)
    return CostMatrix.from_array(matrix)


def load_instance(spec: InstanceSpec) -> Tuple[str, CostMatrix]:
    if spec.source == "tsplib":
        text = Path(spec.path or "").read_text(encoding="utf-8")
        inst = parse_tsplib_instance(text)
        return (spec.name or inst.name or spec.label), inst.costs
    return spec.label, generate_random(spec)
