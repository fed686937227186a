import pytest
from hypothesis import HealthCheck, settings

from grasslab import gallery
from grasslab.linspace import complete_space
from grasslab.projspace import build_pg

settings.register_profile("grasslab", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("grasslab")


@pytest.fixture(scope="session")
def pg22():
    return build_pg(2, 2)


@pytest.fixture(scope="session")
def pg32():
    return build_pg(3, 2)


@pytest.fixture(scope="session")
def pg42():
    return build_pg(4, 2)


@pytest.fixture(scope="session")
def pg23():
    return build_pg(2, 3)


@pytest.fixture(scope="session")
def punctured():
    return gallery.punctured_space(2)[1]


@pytest.fixture(scope="session")
def kreuzer():
    return gallery.kreuzer_plane_space(2)


@pytest.fixture(scope="session")
def k5():
    return complete_space(5)


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
        terminalreporter.write_line(line)
