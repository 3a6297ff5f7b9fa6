import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from boostdecay import masspec

np.seterr(all="warn", under="ignore")

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("fast", deadline=None, max_examples=10)
settings.load_profile("default")


@pytest.fixture
def bw():
    return masspec.breit_wigner(1.0, 1.0)


@pytest.fixture
def bw_trunc():
    return masspec.truncated_breit_wigner(1.0, 0.1, 0.0)


@pytest.fixture
def gauss():
    return masspec.gaussian(1.0, 0.1)


# --- acceptance summary -------------------------------------------------------

_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; returns the verdict so tests can assert on it."""
    def record(number, label, ok, detail):
        line = f"criterion {number:>2} {label}: {'PASS' if ok else 'FAIL'} ({detail})"
        request.config.stash[_ACCEPTANCE].append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
