import functools

import pytest

from smoothfano.sfp import classify


@functools.lru_cache(maxsize=None)
def classified(d):
    """(polytopes, stats) of a sequential run, shared across tests."""
    out = []
    stats = classify(d, out.append)
    return tuple(out), stats


@pytest.fixture(scope="session")
def polytopes():
    return lambda d: classified(d)[0]


@pytest.fixture(scope="session")
def run_stats():
    return lambda d: classified(d)[1]


def pytest_addoption(parser):
    parser.addoption("--extended", action="store_true", default=False,
                     help="run the long classification runs in dimensions 6 and 7")


def pytest_configure(config):
    config.addinivalue_line("markers", "extended: long-running classification (needs --extended)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--extended"):
        return
    skip = pytest.mark.skip(reason="extended tier; run with --extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


_criteria: dict = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.outcome != "passed":
        number = int(name.split("_")[2])
        _criteria.setdefault(number, {})[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        cases = _criteria[number]
        outcomes = set(cases.values())
        if "failed" in outcomes:
            verdict = "FAIL"
        elif outcomes == {"passed"}:
            verdict = "PASS"
        elif outcomes == {"skipped"}:
            verdict = "SKIP"
        else:
            verdict = "PARTIAL (passed cases pass, some skipped)"
        detail = ", ".join(f"{n.split('_', 3)[3]}: {o}" for n, o in cases.items())
        terminalreporter.write_line(f"criterion {number:2d}: {verdict}  [{detail}]")
