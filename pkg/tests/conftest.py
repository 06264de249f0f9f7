import os
import tempfile

import pytest

# Keep the multiplicity cache out of the working tree; set before any test
# touches alcove.rootdata.
_CACHE = tempfile.mkdtemp(prefix="alcove-test-cache-")
os.environ["ALCOVE_CACHE"] = _CACHE

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(number, title): acceptance criterion checked by this test"
    )


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    number = title = None
    for name, args in getattr(report, "user_properties", []):
        if name == "criterion":
            number, title = args
    if number is not None:
        # a criterion spread over several tests passes only if all of them do
        previous = _criteria.get(number, (title, "PASS"))[1]
        outcome = "PASS" if report.passed and previous == "PASS" else "FAIL"
        if hasattr(report, "wasxfail"):
            title = f"{title} [known false: {report.wasxfail}]"
        _criteria[number] = (title, outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, outcome = _criteria[number]
        terminalreporter.write_line(f"{outcome} criterion {number:>2}: {title}")


@pytest.fixture(autouse=True)
def _record_criterion(request):
    marker = request.node.get_closest_marker("criterion")
    if marker is not None:
        request.node.user_properties.append(("criterion", tuple(marker.args)))
    yield


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    """A fresh, private multiplicity cache directory."""
    from alcove import rootdata

    path = tmp_path / "cache"
    monkeypatch.setenv("ALCOVE_CACHE", str(path))
    monkeypatch.setattr(rootdata, "_memory_cache", {})
    yield path
