from __future__ import annotations

import pytest

from tone import catalog
from tone import growth as gr

_ACCEPTANCE: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(num): acceptance criterion number")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None or call.when != "call":
        return
    num = marker.args[0]
    passed = call.excinfo is None
    _ACCEPTANCE[num] = _ACCEPTANCE.get(num, True) and passed


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if _ACCEPTANCE[num] else 'FAIL'}")


@pytest.fixture(scope="session")
def tg_h2():
    return catalog.build("totally-geodesic", n=2, m=3, kappa=-1.0)


@pytest.fixture(scope="session")
def tg_flat():
    return catalog.build("totally-geodesic", n=2, m=3, kappa=0.0)


@pytest.fixture(scope="session")
def ecat():
    return catalog.build("euclidean-catenoid")


@pytest.fixture(scope="session")
def hcat():
    return catalog.build("catenoid-h3", a=1.0)


@pytest.fixture(scope="session")
def warped():
    return catalog.build("warped-surface", epsilon=0.1)


@pytest.fixture(scope="session")
def hcat_profile(hcat):
    return gr.compute_growth_profile(hcat, 30.0, 600)


@pytest.fixture(scope="session")
def ecat_profile(ecat):
    return gr.compute_growth_profile(ecat, 50.0, 500)
