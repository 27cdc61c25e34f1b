import json
from pathlib import Path

import pytest

from jordanpers.io import module_from_json, slices_from_json

DATA = Path(__file__).resolve().parents[1] / "src" / "jordanpers" / "data"


def load_fixture(name):
    obj = json.loads((DATA / name).read_text())
    M = module_from_json(obj)
    S = slices_from_json(M.poset, obj["slices"]) if "slices" in obj else None
    return M, S


@pytest.fixture
def worked_example():
    return load_fixture("worked_example_grid.json")


@pytest.fixture
def finer_pair_grid():
    (X, S), (Y, _) = load_fixture("finer_X_grid.json"), load_fixture("finer_Y_grid.json")
    return X, Y, S


@pytest.fixture
def finer_pair_zigzag():
    return load_fixture("finer_X_zigzag.json")[0], load_fixture("finer_Y_zigzag.json")[0]
