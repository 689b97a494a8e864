import os

import pytest

# criterion number -> (status, detail); filled by the acceptance tests
ACCEPTANCE: dict[int, tuple[str, str]] = {}

DEEP = os.environ.get("SPINLOCAL_DEEP") == "1"


def pytest_collection_modifyitems(config, items):
    if DEEP:
        return
    skip = pytest.mark.skip(reason="set SPINLOCAL_DEEP=1 to run")
    for item in items:
        if "deep" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {status}  {detail}")
