"""
Pytest configuration and shared fixtures for kpverify tests.

This module provides:
- Test markers configuration
- Shared configuration fixtures
- Small series tables used across modules
"""

import pytest


# ==================== Pytest Configuration ====================

def pytest_configure(config):
    """Register custom markers."""
    config.addinivalue_line("markers", "unit: Fast, isolated unit tests")
    config.addinivalue_line("markers", "integration: Whole-suite runs at small caps")
    config.addinivalue_line("markers", "slow: Long-running tests")


# ==================== Configuration Fixtures ====================

@pytest.fixture
def minimal_config():
    """
    Provide the smallest configuration every suite accepts.

    One eigenvalue, depth 3 and a single worker so runs are sequential.
    """
    from kpverify.config import Config

    return Config(matrix_dim=1, eigenvalues=["1"], depth=3, s_cap=2, max_workers=1)


@pytest.fixture
def two_by_two_config():
    """Configuration with two distinct eigenvalues."""
    from kpverify.config import Config

    return Config(matrix_dim=2, eigenvalues=["1", "3/2"], depth=2, s_cap=2, max_workers=2)


@pytest.fixture
def clean_env(monkeypatch):
    """Remove every KPVERIFY_* variable so defaults are predictable."""
    import os

    for key in list(os.environ):
        if key.startswith("KPVERIFY_"):
            monkeypatch.delenv(key, raising=False)
    return monkeypatch


# ==================== Series Fixtures ====================

@pytest.fixture
def x_table():
    from kpverify.core.ring import VarTable

    return VarTable.of(x=2)


@pytest.fixture
def st_table():
    """s and the Weierstrass parameter t, both capped at 6."""
    from kpverify.core.ring import VarTable

    return VarTable.of(s=6, t=6)
