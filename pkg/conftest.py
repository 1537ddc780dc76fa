import json

import numpy as np
import pytest

from GQ.algebra.core import dump_algebra
from GQ.algebra.named import heisenberg, so3


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def so3_algebra():
    return so3()


@pytest.fixture
def dh1():
    return heisenberg(1)


@pytest.fixture
def algebra_file(tmp_path):
    """Write an algebra (or raw text) to a JSON file and return its path."""

    def write(content, name="algebra.json"):
        path = tmp_path / name
        if isinstance(content, str):
            path.write_text(content, encoding="utf-8")
        elif isinstance(content, dict):
            path.write_text(json.dumps(content), encoding="utf-8")
        else:
            path.write_text(dump_algebra(content), encoding="utf-8")
        return str(path)

    return write
