import pytest

from qcluster.liegen import a2_seed, sl3_seed

CRITERIA = {
    1: "SL3 end-to-end mutation and classical exchange relation",
    2: "SL3 triangular basis equals localized cluster monomials; four axioms",
    3: "injective-reachability search (SL3 and quantum A2)",
    4: "tropical transformation matches the degree oracle; cocycle identity",
    5: "admissibility implies compatibility on SL3, k = 1",
    6: "property suites (involution, compatibility, bar-invariance, division, KL, stability)",
    7: "dual canonical statement; mechanism certified by criteria 2-5",
}

NOT_REPRODUCIBLE = {7}

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n = mark.args[0]
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        ok = rep.passed
        prev = _results.get(n, True)
        _results[n] = prev and ok


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        if n not in _results:
            continue
        status = "PASS" if _results[n] else "FAIL"
        if n in NOT_REPRODUCIBLE:
            status = f"NOT REPRODUCIBLE (substitute check {status})"
        terminalreporter.write_line(f"criterion {n}: {status}  {CRITERIA[n]}")


@pytest.fixture(scope="session")
def sl3():
    return sl3_seed()


@pytest.fixture(scope="session")
def a2():
    return a2_seed()
