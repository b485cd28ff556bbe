import os

import pytest

# Worker processes for the Monte Carlo suites; the experiment grids are
# bit-deterministic in this value, it only affects wall time.
WORKERS = max(os.cpu_count() or 1, 1)


@pytest.fixture(scope="session")
def workers():
    return WORKERS
