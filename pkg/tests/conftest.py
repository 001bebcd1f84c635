import numpy as np
import pytest

from growthwarn import RateLaw, TimeSeries, bundled_greece_path, load_series

# Published fitted constants (billions of 2005 USD, years).
DESC = RateLaw(a=1.553e-1, b=-9.112e-4)
ASC = RateLaw(a=-6.424e-2, b=4.839e-4)

ACCEPTANCE_RESULTS = []


@pytest.fixture(scope="session")
def greece():
    return load_series(bundled_greece_path(), name="Greece")


def make_series(years, values, name="synthetic", unit="u"):
    return TimeSeries(name, unit, np.asarray(years, float), np.asarray(values, float))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
