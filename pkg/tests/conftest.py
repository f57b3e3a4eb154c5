# tests/conftest.py — shared pytest fixtures
from fractions import Fraction

import pytest


@pytest.fixture(autouse=True)
def _isolate_environment(monkeypatch):
    """Keep a developer's .env and SYMFNEF_* exports out of the test run.

    certify_config loads .env at most once per process; marking it loaded and
    clearing the variables makes every accessor start from its fallback.
    """
    from src import certify_config

    monkeypatch.setattr(certify_config, "_dotenv_loaded", True)
    for name in (
        "SYMFNEF_MAX_VERIFY_TYPES",
        "SYMFNEF_MAX_RAY_DIM",
        "SYMFNEF_MAX_ELIMINATION_M",
        "SYMFNEF_SAMPLE_MAX_COEFF",
        "SYMFNEF_LOG_LEVEL",
    ):
        monkeypatch.delenv(name, raising=False)
    yield


@pytest.fixture
def divisor_6_ok():
    from src.divisor_model import SymmetricDivisor

    return SymmetricDivisor(n=6, coeffs=(Fraction(1), Fraction(3)))


@pytest.fixture
def divisor_6_bad():
    from src.divisor_model import SymmetricDivisor

    return SymmetricDivisor(n=6, coeffs=(Fraction(1), Fraction(4)))


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: certifies every extremal ray at large n; excluded from the default run"
    )
