import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import strategies  # noqa: E402


def pytest_collection_modifyitems(items):
    # the acceptance summary reads the property-suite results, so it runs last
    items.sort(key=lambda item: "test_acceptance" in item.nodeid)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_properties_" in report.nodeid:
        strategies.PROPERTY_SECONDS[report.nodeid.split("::")[-1]] = report.duration
