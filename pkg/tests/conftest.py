import pytest

from modtv import builtins


@pytest.fixture(scope="session")
def fib():
    return builtins.fibonacci_backend()


@pytest.fixture(scope="session")
def ising():
    return builtins.ising_backend()


@pytest.fixture(scope="session")
def vec_z2():
    return builtins.vec_z2_backend()


@pytest.fixture(scope="session")
def vec_s3():
    return builtins.vec_s3_backend()


ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, secs, limit, label = ACCEPTANCE[n]
        bound = f" (limit {limit:g}s)" if limit else ""
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {label}  {secs:.2f}s{bound}")
