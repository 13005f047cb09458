import pytest
from hypothesis import HealthCheck, settings

from curvecx.surface import SurfaceSig, standard_triangulation

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def torus():
    return standard_triangulation(SurfaceSig(1, 1))


@pytest.fixture(scope="session")
def sphere5():
    return standard_triangulation(SurfaceSig(0, 5))


@pytest.fixture(scope="session")
def torus2():
    return standard_triangulation(SurfaceSig(1, 2))


_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def criterion(request, capsys):
    """Report one PASS/FAIL line for an acceptance criterion."""

    def report(k: int, ok: bool, detail: str) -> bool:
        line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"
        request.config.stash[_LINES].append((k, line))
        with capsys.disabled():
            print("\n" + line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
