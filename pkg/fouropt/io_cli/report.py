"""
Relatório de execução: um objeto JSON por linha, com campo de schema versionado.
"""

from __future__ import annotations

from typing import List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from .. import __version__
from ..config import REPORT_SCHEMA
from ..driver import RunStats
from ..model import Tour

Number = Union[int, float]


class MoveRecord(BaseModel):
    scheme_id: int
    selection: List[int]
    gain: Number


class RunReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(default=REPORT_SCHEMA, alias="schema")
    fouropt_version: str = __version__
    instance: str
    n: int
    engine: str
    seed: Optional[int] = None
    initial_length: Number
    final_length: Number
    iterations: int
    gains: List[Number] = Field(default_factory=list)
    search_seconds: List[float] = Field(default_factory=list)
    moves: List[MoveRecord] = Field(default_factory=list)
    final_tour: List[int] = Field(default_factory=list)


def build_report(instance: str, tour: Tour, stats: RunStats, seed: Optional[int] = None) -> RunReport:
    return RunReport(
        instance=instance,
        n=tour.n,
        engine=stats.engine,
        seed=seed,
        initial_length=stats.initial_length,
        final_length=stats.final_length,
        iterations=stats.iterations,
        gains=list(stats.gains),
        search_seconds=list(stats.search_seconds),
        moves=[
            MoveRecord(scheme_id=sid, selection=list(sel), gain=g)
            for (sid, sel), g in zip(stats.history, stats.gains)
        ],
        final_tour=list(tour.order),
    )


def emit_report(report: RunReport) -> str:
    return report.model_dump_json(by_alias=True) + "\n"


def parse_report(line: str) -> RunReport:
    return RunReport.model_validate_json(line)


def parse_reports(text: str) -> List[RunReport]:
    return [parse_report(line) for line in text.splitlines() if line.strip()]
