import re
from collections import OrderedDict

import pytest

from ellnb.cli import bundled_example
from ellnb.enb import params_computation
from ellnb.errors import ParameterSearchExhausted

SEARCH_QS = (5, 7, 11, 13, 17)
SEARCH_NS = range(3, 9)


def example_params(i):
    data = bundled_example(f"example{i}")
    return params_computation(data["q"], data["n"], data)


@pytest.fixture(scope="session")
def ex1():
    return example_params(1)


@pytest.fixture(scope="session")
def ex2():
    return example_params(2)


@pytest.fixture(scope="session")
def ex3():
    return example_params(3)


@pytest.fixture(scope="session")
def searched():
    """Parameter sets from the canonical search, keyed by (q, n)."""
    out = {}
    for q in SEARCH_QS:
        for n in SEARCH_NS:
            try:
                out[(q, n)] = params_computation(q, n)
            except ParameterSearchExhausted:
                pass
    return out


# one summary line per acceptance criterion, built from test_acNN_* outcomes
_acceptance = OrderedDict()


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    m = re.search(r"test_acceptance\.py::test_ac(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    crit = int(m.group(1))
    _acceptance.setdefault(crit, []).append((m.group(2), report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(_acceptance):
        checks = _acceptance[crit]
        failed = [name for name, outcome in checks if outcome != "passed"]
        status = "PASS" if not failed else "FAIL"
        detail = f"{len(checks) - len(failed)}/{len(checks)} checks"
        if failed:
            detail += "; failing: " + ", ".join(failed)
        tr.write_line(f"criterion {crit}: {status} ({detail})")
