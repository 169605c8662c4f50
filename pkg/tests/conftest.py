import shutil
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixture_copy(tmp_path):
    """Copy named fixture directories into one fresh source root."""

    def make(*names, drop=()):
        root = tmp_path / "src"
        root.mkdir(exist_ok=True)
        for name in names:
            shutil.copytree(FIXTURES / name, root, dirs_exist_ok=True)
        for rel in drop:
            (root / rel).unlink()
        return root

    return make
