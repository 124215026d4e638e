import pytest
from hypothesis import settings

from r2k.algebra import Algebra
from r2k.gamma import GammaEmbedding

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def alg():
    return Algebra(GammaEmbedding.rational(1))


@pytest.fixture(scope="session")
def alg_half():
    return Algebra(GammaEmbedding.rational("1/2"))


@pytest.fixture(scope="session")
def alg2():
    return Algebra(GammaEmbedding.generic(2))


# acceptance criteria report one line each at the end of the run
CRITERIA = {}


@pytest.fixture
def criterion():
    def record(n, ok, detail=""):
        CRITERIA[n] = (bool(ok), detail)
        print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n]
        tr.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
