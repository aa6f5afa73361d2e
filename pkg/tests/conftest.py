import pytest

from spdc_oam import CrystalParams, CrystalType

KWIAT_K_BAR = 14.38
KWIAT_N = -0.068


def pytest_configure(config):
    config._acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(label, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        request.config._acceptance_lines.append(f"[{status}] {label} {detail}".rstrip())
        return ok

    return record


def kwiat(l_c=500.0, **kw):
    return CrystalParams(CrystalType.TYPE_II, l_c, KWIAT_K_BAR, KWIAT_N, **kw)


def type_one(l_c=500.0, **kw):
    return CrystalParams(CrystalType.TYPE_I, l_c, KWIAT_K_BAR, **kw)


@pytest.fixture
def kwiat_crystal():
    return kwiat()
