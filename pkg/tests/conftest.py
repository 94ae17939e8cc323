import pytest
from hypothesis import settings

from sl2char.padic import FieldContext

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def ctx5():
    return FieldContext(5, 12)


@pytest.fixture(scope="session")
def ctx7():
    return FieldContext(7, 12)


@pytest.fixture(scope="session", params=[5, 7])
def ctx(request):
    return FieldContext(request.param, 12)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
