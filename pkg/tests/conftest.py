from decimal import Decimal

import pytest

from lebesgue.cover import construct
from lebesgue.scalar import PrecisionContext, radians

ACCEPTANCE: dict = {}


@pytest.fixture(scope="session")
def ctx50():
    return PrecisionContext(50)


@pytest.fixture(scope="session")
def report13(ctx50):
    return construct(radians(Decimal("1.3"), ctx50), ctx50)


@pytest.fixture(scope="session")
def report13_30():
    ctx = PrecisionContext(30)
    return construct(radians(Decimal("1.3"), ctx), ctx)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {text}")
