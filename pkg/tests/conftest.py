"""Shared pytest wiring: per-criterion PASS/FAIL lines for the acceptance
suite, printed once the run finishes."""

import re

CRITERIA = {
    1: "worked example end-to-end (l=5, q=11, z=3)",
    2: "unequal zeta pair at l=5, q=11, z=2",
    3: "point-count identity sweep, l in {3,5,7}, q <= 100",
    4: "product form for l=3, q <= 100, all z",
    5: "product form for l=5, q in {11,31,41}",
    6: "l=3 elliptic suite, q <= 50",
    7: "quadratic-extension relation, q in {11,31}",
    8: "Jacobian split for l=5",
    9: "Dickson calculus, power relations, l=7 evidence",
    10: "definition equivalence for 2F1",
    11: "trace-identity oracles (Koike/Ono)",
    12: "property suites",
}

_results: dict[int, bool] = {}
_PATTERN = re.compile(r"test_criterion_(\d+)")


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    match = _PATTERN.search(report.nodeid)
    if not match:
        return
    num = int(match.group(1))
    passed = report.outcome == "passed"
    _results[num] = _results.get(num, True) and passed


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_results):
        verdict = "PASS" if _results[num] else "FAIL"
        label = CRITERIA.get(num, "")
        terminalreporter.write_line(f"criterion {num:2d}: {verdict} - {label}")
