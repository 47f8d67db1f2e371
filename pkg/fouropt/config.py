import os

from dotenv import load_dotenv

# .env opcional (não sobrescreve variáveis já exportadas)
load_dotenv()


def _get_optional_env(name: str, default: str = "") -> str:
    val = os.environ.get(name)
    if val is None:
        return default
    return str(val).strip()


def _get_int_env(name: str, default: int) -> int:
    raw = _get_optional_env(name, "")
    if raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise RuntimeError(f"{name} inválida (esperado inteiro): {raw!r}")


def _get_float_env(name: str, default: float) -> float:
    raw = _get_optional_env(name, "")
    if raw == "":
        return default
    try:
        return float(raw)
    except ValueError:
        raise RuntimeError(f"{name} inválida (esperado número): {raw!r}")


# -----------------------------
# Logging
# -----------------------------
LOG_LEVEL = _get_optional_env("LOG_LEVEL", "INFO").upper() or "INFO"

# -----------------------------
# Busca / ferramentas
# -----------------------------
# Seed usada pela CLI quando --seed não é informado
DEFAULT_SEED = _get_int_env("FOUROPT_DEFAULT_SEED", 0)

# O oráculo é Θ(n⁴) e materializa todas as seleções: limite de segurança
ORACLE_MAX_N = _get_int_env("FOUROPT_ORACLE_MAX_N", 80)

# Tolerância relativa para custos em ponto flutuante (parada da busca local)
FLOAT_EPS = _get_float_env("FOUROPT_FLOAT_EPS", 1e-9)

# -----------------------------
# Constantes do domínio (não configuráveis)
# -----------------------------
# 4 segmentos com pelo menos uma aresta cada => n >= 8
MIN_SEARCH_N = 8
MIN_STORAGE_N = 3

REPORT_SCHEMA = "fouropt.run_report.v1"

# -----------------------------
# Sanity checks
# -----------------------------
if LOG_LEVEL not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
    raise RuntimeError(f"LOG_LEVEL inválido: {LOG_LEVEL!r}")

if ORACLE_MAX_N < MIN_SEARCH_N:
    raise RuntimeError(f"FOUROPT_ORACLE_MAX_N fora do intervalo: {ORACLE_MAX_N} (mínimo {MIN_SEARCH_N})")

if not (0.0 <= FLOAT_EPS < 1.0):
    raise RuntimeError(f"FOUROPT_FLOAT_EPS fora do intervalo [0, 1): {FLOAT_EPS}")
