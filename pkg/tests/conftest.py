import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # graphs/oracles helpers

import graphs  # noqa: E402

REPO_ROOT = Path(__file__).resolve().parents[1]


def dataset_path(name: str) -> Path | None:
    """Locate a benchmark dataset file, or None when it is not on disk."""
    root = os.environ.get("NETMEDIAN_DATA", str(REPO_ROOT / "datasets"))
    candidate = Path(root) / f"{name}.txt"
    return candidate if candidate.exists() else None


def dataset_or_skip(name: str) -> Path:
    path = dataset_path(name)
    if path is None:
        pytest.skip(
            f"dataset {name!r} not present under NETMEDIAN_DATA "
            f"(see src/netmedian/data/registry.txt for the source URL)"
        )
    return path


@pytest.fixture
def path3():
    return graphs.path(3)


@pytest.fixture
def star5():
    """K_{1,4}: hub 0, leaves 1..4."""
    return graphs.star(4)


@pytest.fixture
def triangle():
    return graphs.complete(3)


@pytest.fixture
def k4():
    return graphs.complete(4)


@pytest.fixture
def cycle6():
    return graphs.cycle(6)


@pytest.fixture
def petersen():
    return graphs.petersen()
