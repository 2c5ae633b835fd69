from __future__ import annotations

import pytest

from pdpmkit.verify import q1_boundary_check
from pdpmkit.wiring import g6


@pytest.fixture(scope="session")
def g6_build():
    return g6()


@pytest.fixture(scope="session")
def q1_report():
    return q1_boundary_check()
