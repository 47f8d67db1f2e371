"""
Linha de comando: schemes, orbits, solve, verify, bench.

Códigos de saída: 0 ok, 1 divergência na verificação, 2 erro de entrada.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

import pandas as pd

from .. import __version__
from ..config import DEFAULT_SEED, LOG_LEVEL
from ..driver import EngineChoice, local_search, random_tour
from ..model import Tour
from ..symmetry import orbit_table, scheme_catalog
from .bench import run_benchmark
from .instances import load_instance, parse_instance_arg
from .report import build_report, emit_report
from .verify import run_verification

logger = logging.getLogger("fouropt.cli")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2


def _print_table(df: pd.DataFrame, fmt: str) -> None:
    if fmt == "json":
        print(df.to_json(orient="records"))
    else:
        print(df.to_string(index=False))


def cmd_schemes(args: argparse.Namespace) -> int:
    _print_table(scheme_catalog(), args.format)
    return EXIT_OK


def cmd_orbits(args: argparse.Namespace) -> int:
    _print_table(orbit_table(), args.format)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    seed = DEFAULT_SEED if args.seed is None else args.seed
    spec = parse_instance_arg(args.instance, seed=seed)
    name, costs = load_instance(spec)

    start = random_tour(costs.n, seed) if args.start == "random" else Tour.canonical(costs.n)
    tour, stats = local_search(start, costs, engine=args.engine, max_iters=args.max_iters)
    line = emit_report(build_report(name, tour, stats, seed=seed))

    if args.out:
        with Path(args.out).open("a", encoding="utf-8") as fh:
            fh.write(line)
        print("report_path=", args.out)
    else:
        sys.stdout.write(line)
    print("iterations=", stats.iterations, file=sys.stderr)
    print("final_length=", stats.final_length, file=sys.stderr)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    outcome = run_verification(args.n, args.seeds, max_cost=args.max_cost)
    if not outcome.rows.empty:
        summary = outcome.rows.groupby("engine").agg(checks=("ok", "size"), ok=("ok", "sum")).reset_index()
        print(summary.to_string(index=False))
    for msg in outcome.failures:
        print("FAIL", msg)
    print("verify_ok=", outcome.ok)
    return EXIT_OK if outcome.ok else EXIT_MISMATCH


def _parse_sizes(raw: str) -> List[int]:
    try:
        sizes = [int(tok) for tok in raw.split(",") if tok.strip()]
    except ValueError:
        raise ValueError(f"--sizes inválido: {raw!r}")
    if len(sizes) < 1 or min(sizes) < 8:
        raise ValueError(f"--sizes precisa de tamanhos >= 8: {raw!r}")
    return sizes


def cmd_bench(args: argparse.Namespace) -> int:
    seed = DEFAULT_SEED if args.seed is None else args.seed
    table, slopes = run_benchmark(args.engine, _parse_sizes(args.sizes), seed=seed, repeats=args.repeats)
    print(table.to_string(index=False))
    for key, value in slopes.items():
        print(f"slope_{key}= {value:.3f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fouropt", description="Movimentos 4-OPT verdadeiros para o TSP simétrico")
    ap.add_argument("--version", action="version", version=f"fouropt {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schemes", help="catálogo dos 25 esquemas puros")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_schemes)

    p = sub.add_parser("orbits", help="as 7 órbitas sob o grupo octogonal")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_orbits)

    engines = [e.value for e in EngineChoice]

    p = sub.add_parser("solve", help="busca local best-improving")
    p.add_argument("--instance", required=True, help="arquivo TSPLIB, euclid:N[:BOX], matrix:N[:MAX] ou uniform:N")
    p.add_argument("--engine", choices=engines, default=EngineChoice.DEBERG.value)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-iters", type=int, default=None)
    p.add_argument("--start", choices=("identity", "random"), default="identity")
    p.add_argument("--out", default=None, help="arquivo JSON lines (acrescenta uma linha)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="equivalência dos motores com o oráculo")
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--max-cost", type=int, default=100)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="tempo e avaliações por tamanho")
    p.add_argument("--engine", choices=engines, default=EngineChoice.DEBERG.value)
    p.add_argument("--sizes", default="50,100,200")
    p.add_argument("--repeats", type=int, default=1, help="mediana do tempo sobre N repetições")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=LOG_LEVEL)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        # TsplibError, InstanceError e ValidationError do pydantic são ValueError
        logger.warning("input_error command=%s detail=%s", args.command, e)
        print(f"erro: {e}", file=sys.stderr)
        return EXIT_INPUT
