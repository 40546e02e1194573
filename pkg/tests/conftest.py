"""Shared fixtures: config shortcuts, cached channel draws, acceptance report."""

import pytest

from irswpsn.channel import synth_channels
from irswpsn.config import SystemConfig


def pytest_configure(config):
    config._acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line per criterion; echoed in the run summary."""

    def record(num, ok, detail):
        line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}"
        request.config._acceptance_lines.append(line)
        print(line)
        return ok

    return record


@pytest.fixture(scope="session")
def default_cfg():
    return SystemConfig()


@pytest.fixture(scope="session")
def linear_cfg():
    # sensors pay no circuit power, closed-form allocation applies
    return SystemConfig(p_c_sensor=0.0)


@pytest.fixture(scope="session")
def channels_for():
    """Memoized channel factory; SystemConfig is hashable (frozen, scalars)."""
    cache = {}

    def get(cfg, seed):
        key = (cfg, seed)
        if key not in cache:
            cache[key] = synth_channels(cfg, seed)
        return cache[key]

    return get
