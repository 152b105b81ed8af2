import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_ACCEPTANCE: dict[int, tuple[str, str]] = {}
_TITLES: dict[int, str] = {}


def _criterion(nodeid: str) -> int | None:
    name = nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" in nodeid and name.startswith("test_criterion_"):
        return int(name.split("_")[2])
    return None


def pytest_collection_modifyitems(items):
    for item in items:
        k = _criterion(item.nodeid)
        if k is not None:
            doc = (item.function.__doc__ or "").strip().splitlines()
            _TITLES[k] = doc[0] if doc else ""


def pytest_runtest_logreport(report):
    k = _criterion(report.nodeid)
    if k is None:
        return
    if report.when == "call" or report.failed:
        _ACCEPTANCE[k] = ("PASS" if report.passed else "FAIL", _TITLES.get(k, ""))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_ACCEPTANCE):
        status, title = _ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {status}  {title}")
