from __future__ import annotations

import pytest

from conjfields.sampling import SamplePlan, sample_slg

_CRITERIA: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def plan() -> SamplePlan:
    return SamplePlan(seed=42, count=10, height_bound=5)


@pytest.fixture(scope="session")
def sl2(plan):
    return sample_slg(plan, 2)


@pytest.fixture(scope="session")
def sl3(plan):
    return sample_slg(plan, 3)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and item.module.__name__.endswith("test_acceptance"):
        label = item.function.__doc__.strip().splitlines()[0] if item.function.__doc__ else item.name
        _CRITERIA.append((label, "PASS" if rep.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, verdict in _CRITERIA:
        terminalreporter.write_line(f"{verdict}  {label}")
