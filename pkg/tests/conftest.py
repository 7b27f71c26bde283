import functools

import pytest
from hypothesis import HealthCheck, settings

from umbrella_hopf.hopf import QuotientHopf
from umbrella_hopf.umbrella import build_umbrella, umbrella_hopf_data

settings.register_profile("repo", deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@functools.lru_cache(maxsize=None)
def umbrella_hopf(r, s):
    """Verified QuotientHopf for UM(r, 2s), shared across the session."""
    p = build_umbrella(r, s)
    return QuotientHopf(p, umbrella_hopf_data(p))


@pytest.fixture(scope="session")
def um22():
    return umbrella_hopf(2, 1)


@pytest.fixture(scope="session")
def um44():
    return umbrella_hopf(4, 2)


# -- acceptance summary ------------------------------------------------------

_acceptance = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    entry = _acceptance.setdefault(number, {"title": title, "ok": True, "ran": False})
    if call.when == "call":
        entry["ran"] = True
        if call.excinfo is not None:
            entry["ok"] = False
    elif call.excinfo is not None:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_acceptance):
        e = _acceptance[number]
        verdict = "PASS" if e["ok"] and e["ran"] else "FAIL"
        tr.write_line(f"criterion {number:>2}: {verdict}  {e['title']}")
