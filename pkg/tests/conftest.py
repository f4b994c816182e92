"""Shared, cached objects; the expensive tables are computed once per run."""

from __future__ import annotations

import functools

import pytest
from hypothesis import HealthCheck, settings

from arrhomotopy.pipeline import Options, Session
from arrhomotopy.registry import parse_input

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def session(key: str, p_max: int | None = None) -> Session:
    return Session(parse_input(key), key, Options(p_max=p_max))


@pytest.fixture(scope="session")
def get_session():
    return session


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
