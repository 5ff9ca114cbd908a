import os
import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", derandomize=False, deadline=None, max_examples=500)
settings.load_profile(os.environ.get("BFRAME_HYPOTHESIS_PROFILE", "default"))


import pytest  # noqa: E402

_CRITERIA: dict[int, dict] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    num, title = marker.args
    entry = _CRITERIA.setdefault(num, {"title": title, "ok": True, "notes": [], "seconds": 0.0})
    entry["seconds"] += rep.duration
    if rep.failed or hasattr(rep, "wasxfail"):
        entry["ok"] = False
        note = getattr(rep, "wasxfail", "") or item.name
        entry["notes"].append(note)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        e = _CRITERIA[num]
        mark = "PASS" if e["ok"] else "FAIL"
        extra = f"  [{'; '.join(e['notes'])}]" if e["notes"] else ""
        tr.write_line(f"{mark}  criterion {num:2d}  {e['title']}  ({e['seconds']:.2f}s){extra}")
    passed = sum(e["ok"] for e in _CRITERIA.values())
    tr.write_line(f"{passed}/{len(_CRITERIA)} criteria pass")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")
