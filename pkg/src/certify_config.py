"""Certifier settings. Reads os.environ, after loading .env once; existing environment
values win. Every accessor falls back loudly, never silently."""

from __future__ import annotations

import logging
import os

logger = logging.getLogger(__name__)

FALLBACK_MAX_VERIFY_TYPES = 1 << 22
FALLBACK_MAX_RAY_DIM = 20
FALLBACK_MAX_ELIMINATION_M = 6
FALLBACK_SAMPLE_MAX_COEFF = 3
FALLBACK_LOG_LEVEL = "WARNING"

# Fourier-Motzkin on m = 7 (21 unknowns, 63 splits) does not finish in practice.
HARD_MAX_ELIMINATION_M = 6

_LOG_LEVELS = frozenset({"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"})

_dotenv_loaded = False


def _ensure_dotenv() -> None:
    """Load .env into os.environ once."""
    global _dotenv_loaded
    if _dotenv_loaded:
        return
    _dotenv_loaded = True
    try:
        from dotenv import load_dotenv

        load_dotenv(override=False)
    except Exception:
        logger.debug("python-dotenv unavailable; relying on os.environ only")


def _raw(name: str) -> str | None:
    _ensure_dotenv()
    value = os.environ.get(name)
    if value is not None and value.strip():
        return value.strip()
    return None


def _positive_int(name: str, fallback: int) -> int:
    value = _raw(name)
    if value is None:
        return fallback
    try:
        parsed = int(value)
    except ValueError:
        logger.warning("%s=%r is not an integer; using %d", name, value, fallback)
        return fallback
    if parsed < 1:
        logger.warning("%s=%r must be at least 1; using %d", name, value, fallback)
        return fallback
    return parsed


def max_verify_types() -> int:
    """Split types the verifier may enumerate before it refuses."""
    return _positive_int("SYMFNEF_MAX_VERIFY_TYPES", FALLBACK_MAX_VERIFY_TYPES)


def max_ray_dim() -> int:
    limit = _positive_int("SYMFNEF_MAX_RAY_DIM", FALLBACK_MAX_RAY_DIM)
    if limit > FALLBACK_MAX_RAY_DIM:
        logger.warning(
            "SYMFNEF_MAX_RAY_DIM=%d lifts the ray-enumeration guard above %d; "
            "double description may run for a very long time",
            limit,
            FALLBACK_MAX_RAY_DIM,
        )
    return limit


def max_elimination_m() -> int:
    limit = _positive_int("SYMFNEF_MAX_ELIMINATION_M", FALLBACK_MAX_ELIMINATION_M)
    if limit > HARD_MAX_ELIMINATION_M:
        logger.warning(
            "SYMFNEF_MAX_ELIMINATION_M=%d is above the hard limit; using %d",
            limit,
            HARD_MAX_ELIMINATION_M,
        )
        return HARD_MAX_ELIMINATION_M
    return limit


def sample_max_coeff() -> int:
    """Largest ray multiplier for sample_fnef. 0 is rejected: every sample would be zero."""
    return _positive_int("SYMFNEF_SAMPLE_MAX_COEFF", FALLBACK_SAMPLE_MAX_COEFF)


def log_level() -> str:
    value = (_raw("SYMFNEF_LOG_LEVEL") or FALLBACK_LOG_LEVEL).upper()
    if value in _LOG_LEVELS:
        return value
    logger.warning("SYMFNEF_LOG_LEVEL=%r is not recognized; using %s", value, FALLBACK_LOG_LEVEL)
    return FALLBACK_LOG_LEVEL
