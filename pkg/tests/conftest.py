import os
import random
import tempfile
from pathlib import Path
from typing import Generator

import pytest

from src import config, hopfact
from src.exactfield import CycloElem


@pytest.fixture
def temp_output_dir(monkeypatch) -> Generator[Path, None, None]:
    with tempfile.TemporaryDirectory() as tmpdir:
        tmp_path = Path(tmpdir)
        outputs_dir = tmp_path / "outputs"
        reports_dir = outputs_dir / "reports"
        outputs_dir.mkdir()
        reports_dir.mkdir()

        monkeypatch.setattr(config, "OUTPUTS_DIR", str(outputs_dir))
        monkeypatch.setattr(config, "REPORTS_DIR", str(reports_dir))
        monkeypatch.delenv(config.GITHUB_SHA_ENV, raising=False)

        yield tmp_path


@pytest.fixture
def rng() -> random.Random:
    return random.Random(config.DEFAULT_SEED)


@pytest.fixture
def zeta3() -> CycloElem:
    return CycloElem.zeta(3)


@pytest.fixture
def plane_action() -> hopfact.LinearAction:
    """family (1) on k_mu[u, v], n = m = 3"""
    return hopfact.make_action("qplane", 3)


@pytest.fixture
def weyl_action() -> hopfact.LinearAction:
    return hopfact.make_action("weyl", 3)


heavy = pytest.mark.skipif(
    os.getenv(config.HEAVY_ENV_VAR) != "1",
    reason=f"set {config.HEAVY_ENV_VAR}=1 to run rank >= {config.HEAVY_MIN_RANK} computations",
)
