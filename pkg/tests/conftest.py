import os
import tempfile

# Must be set before workbench.core.config is imported anywhere.
_db_dir = tempfile.mkdtemp(prefix="workbench-tests-")
os.environ.setdefault("DATABASE_URL", f"sqlite:///{os.path.join(_db_dir, 'runs.db')}")
os.environ.pop("WORKBENCH_SEED", None)

import pytest  # noqa: E402

from workbench.core.rng import Rng  # noqa: E402


@pytest.fixture
def rng() -> Rng:
    return Rng(20240601)
