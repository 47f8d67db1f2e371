"""
Leitura e escrita do subconjunto simétrico do formato TSPLIB.

Suportado: TYPE TSP; EDGE_WEIGHT_TYPE EUC_2D, CEIL_2D ou EXPLICIT; para
EXPLICIT, EDGE_WEIGHT_FORMAT FULL_MATRIX, UPPER_ROW ou LOWER_DIAG_ROW.
NODE_COORD_TYPE só TWOD_COORDS, com ids de nó exatamente 1..n.
Qualquer outra coisa vira erro explícito (nunca um parse silencioso).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List

import numpy as np

from ..model import CostMatrix, InvalidCostMatrix

logger = logging.getLogger("fouropt.io_cli.tsplib")


# -----------------------------
# Erros tipados
# -----------------------------
class TsplibError(ValueError):
    """Base dos erros de leitura TSPLIB."""


class TsplibUnsupported(TsplibError):
    """Palavra-chave ou valor fora do subconjunto suportado."""

    def __init__(self, keyword: str, value: str = ""):
        self.keyword = keyword
        self.value = value
        detail = f"{keyword}: {value}" if value else keyword
        super().__init__(f"recurso TSPLIB não suportado: {detail}")


class TsplibInvalid(TsplibError):
    """Arquivo malformado ou dados assimétricos."""


_HEADER_KEYS = {
    "NAME", "TYPE", "COMMENT", "DIMENSION", "EDGE_WEIGHT_TYPE", "EDGE_WEIGHT_FORMAT",
    "DISPLAY_DATA_TYPE", "NODE_COORD_TYPE",
}
_SECTIONS = {"NODE_COORD_SECTION", "EDGE_WEIGHT_SECTION", "DISPLAY_DATA_SECTION"}
_WEIGHT_TYPES = {"EUC_2D", "CEIL_2D", "EXPLICIT"}
_WEIGHT_FORMATS = {"FULL_MATRIX", "UPPER_ROW", "LOWER_DIAG_ROW"}


@dataclass(frozen=True)
class TsplibInstance:
    name: str
    costs: CostMatrix


def _is_number(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def _split_header(line: str):
    if ":" in line:
        key, _, value = line.partition(":")
    else:
        key, _, value = line.partition(" ")
    return key.strip().upper(), value.strip()


def _euclidean(coords: np.ndarray, kind: str) -> np.ndarray:
    diff = coords[:, None, :] - coords[None, :, :]
    dist = np.sqrt((diff ** 2).sum(axis=-1))
    if kind == "EUC_2D":
        # nint do TSPLIB: (int)(d + 0.5)
        return np.floor(dist + 0.5).astype(np.int64)
    return np.ceil(dist).astype(np.int64)


def _explicit(values: List[float], fmt: str, n: int) -> np.ndarray:
    expected = {
        "FULL_MATRIX": n * n,
        "UPPER_ROW": n * (n - 1) // 2,
        "LOWER_DIAG_ROW": n * (n + 1) // 2,
    }[fmt]
    if len(values) != expected:
        raise TsplibInvalid(f"{fmt} com {len(values)} pesos, esperado {expected} para DIMENSION={n}")

    data = np.asarray(values, dtype=np.float64)
    if fmt == "FULL_MATRIX":
        mat = data.reshape(n, n)
    else:
        mat = np.zeros((n, n))
        if fmt == "UPPER_ROW":
            rows, cols = np.triu_indices(n, k=1)
        else:
            rows, cols = np.tril_indices(n, k=0)
        mat[rows, cols] = data
        mat = mat + mat.T - np.diag(np.diag(mat))

    if np.array_equal(mat, np.round(mat)):
        return mat.astype(np.int64)
    return mat


def parse_tsplib_instance(text: str) -> TsplibInstance:
    header: Dict[str, str] = {}
    coords: List[List[float]] = []
    weights: List[float] = []
    section = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        first = line.split()[0]
        if _is_number(first):
            if section is None:
                raise TsplibInvalid(f"linha {lineno}: dado numérico fora de seção")
            numbers = [float(tok) for tok in line.split()]
            if section == "NODE_COORD_SECTION":
                if len(numbers) != 3:
                    raise TsplibInvalid(f"linha {lineno}: coordenada deve ter 'id x y'")
                coords.append(numbers)
            elif section == "EDGE_WEIGHT_SECTION":
                weights.extend(numbers)
            continue

        word = first.rstrip(":").upper()
        if word == "EOF":
            break
        if word in _SECTIONS:
            section = word
            continue
        key, value = _split_header(line)
        if key not in _HEADER_KEYS:
            raise TsplibUnsupported(key)
        header[key] = value
        section = None

    if header.get("TYPE", "TSP").upper() != "TSP":
        raise TsplibUnsupported("TYPE", header["TYPE"])
    if "DIMENSION" not in header:
        raise TsplibInvalid("DIMENSION ausente")
    try:
        n = int(header["DIMENSION"])
    except ValueError:
        raise TsplibInvalid(f"DIMENSION inválida: {header['DIMENSION']!r}")

    kind = header.get("EDGE_WEIGHT_TYPE", "").upper()
    if kind not in _WEIGHT_TYPES:
        raise TsplibUnsupported("EDGE_WEIGHT_TYPE", kind)
    coord_type = header.get("NODE_COORD_TYPE", "TWOD_COORDS").upper()
    if coord_type != "TWOD_COORDS":
        raise TsplibUnsupported("NODE_COORD_TYPE", coord_type)

    if kind == "EXPLICIT":
        fmt = header.get("EDGE_WEIGHT_FORMAT", "").upper()
        if fmt not in _WEIGHT_FORMATS:
            raise TsplibUnsupported("EDGE_WEIGHT_FORMAT", fmt)
        matrix = _explicit(weights, fmt, n)
    else:
        if len(coords) != n:
            raise TsplibInvalid(f"{len(coords)} coordenadas para DIMENSION={n}")
        ids = sorted(row[0] for row in coords)
        if ids != [float(k) for k in range(1, n + 1)]:
            raise TsplibInvalid(f"ids de NODE_COORD_SECTION precisam ser exatamente 1..{n}")
        ordered = sorted(coords, key=lambda row: row[0])
        matrix = _euclidean(np.asarray([row[1:] for row in ordered]), kind)

    try:
        costs = CostMatrix.from_array(matrix)
    except InvalidCostMatrix as e:
        raise TsplibInvalid(str(e)) from e

    name = header.get("NAME", "")
    logger.debug("tsplib_parsed name=%s n=%s type=%s", name, n, kind)
    return TsplibInstance(name=name, costs=costs)


def parse_tsplib(text: str) -> CostMatrix:
    return parse_tsplib_instance(text).costs


def emit_tsplib(costs: CostMatrix, name: str = "fouropt") -> str:
    lines = [
        f"NAME : {name}",
        "TYPE : TSP",
        f"DIMENSION : {costs.n}",
        "EDGE_WEIGHT_TYPE : EXPLICIT",
        "EDGE_WEIGHT_FORMAT : FULL_MATRIX",
        "EDGE_WEIGHT_SECTION",
    ]
    for row in costs.array:
        lines.append(" ".join(str(costs.scalar(v)) for v in row))
    lines.append("EOF")
    return "\n".join(lines) + "\n"
