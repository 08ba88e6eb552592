"""Shared pytest wiring: acceptance criteria get a pass/fail summary."""

_acceptance_docs: dict[str, str] = {}
_acceptance_results: dict[str, str] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        if "test_acceptance" in item.nodeid:
            doc = (item.function.__doc__ or item.name)
            _acceptance_docs[item.nodeid] = doc.strip().splitlines()[0]


def pytest_runtest_logreport(report):
    if report.nodeid in _acceptance_docs and report.when == "call":
        _acceptance_results[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_docs:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for nodeid, doc in _acceptance_docs.items():
        outcome = _acceptance_results.get(nodeid, "not run")
        tag = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{tag}  {doc}")
