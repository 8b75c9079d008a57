import pytest

from zitterlab.poset import Chain, causal_poset


def lightcone_frame(events, half=3, lo=-8, hi=8):
    """Observers P at x = -half and Q at x = +half plus extra events.

    ``events`` maps ids to ``(t, x)``; observers get one event per tick
    ``lo..hi`` of the light-cone coordinate they track (P: u = t + x,
    Q: w = t - x), valued by that coordinate.
    """
    coords = {}
    for j in range(lo, hi + 1):
        coords[f"p{j}"] = (j, j + 2 * half)
        coords[f"q{j}"] = (j + 2 * half, j)
    for eid, (t, x) in events.items():
        coords[eid] = (t + x, t - x)
    poset = causal_poset(coords)
    ticks = range(lo, hi + 1)
    chain_p = Chain(poset, [f"p{j}" for j in ticks], list(ticks), name="P")
    chain_q = Chain(poset, [f"q{j}" for j in ticks], list(ticks), name="Q")
    return poset, chain_p, chain_q


@pytest.fixture
def frame():
    return lightcone_frame


# -- acceptance summary -------------------------------------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, {"title": title, "passed": True, "ran": False, "notes": []})
    if report.when == "call" or report.failed:
        entry["ran"] = True
        entry["passed"] = entry["passed"] and report.passed
    if report.when == "call":
        entry["notes"].extend(v for k, v in item.user_properties if k == "measured")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "PASS" if entry["ran"] and entry["passed"] else "FAIL"
        notes = "; ".join(entry["notes"])
        terminalreporter.write_line(f"{status} criterion {number:>2}: {entry['title']}" + (f" ({notes})" if notes else ""))
