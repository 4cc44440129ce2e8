import pytest
from hypothesis import settings

from osp_lickorish.cyclotomic import make_context

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture(params=[3, 5, 7], ids=lambda n: f"N{n}")
def ctx(request):
    return make_context(request.param)


@pytest.fixture
def ctx3():
    return make_context(3)


@pytest.fixture
def ctx5():
    return make_context(5)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
