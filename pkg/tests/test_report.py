import os
import time
from datetime import datetime, timezone

import pytest

from src import config, report


def _sample(**overrides):
    kwargs = dict(
        command="classify",
        inputs={"target": "qplane", "n": 2, "m": 2},
        results={"families": 2},
        expected={"families": 2},
        verdict="MATCH",
        started=time.perf_counter(),
    )
    kwargs.update(overrides)
    return report.build_report(**kwargs)


def test_report_keys(temp_output_dir):
    r = _sample()
    assert set(r) == {"schema_version", "command", "inputs", "results", "expected", "verdict", "timing"}
    assert r["schema_version"] == config.SCHEMA_VERSION
    assert set(r["timing"]) == {"generated_at_utc", "elapsed_seconds"}
    assert r["timing"]["elapsed_seconds"] >= 0


def test_missing_expected_becomes_empty(temp_output_dir):
    assert _sample(expected=None, verdict="EXPLORE")["expected"] == {}


def test_unknown_verdict_is_rejected(temp_output_dir):
    with pytest.raises(ValueError):
        _sample(verdict="MAYBE")


def test_commit_is_recorded(temp_output_dir, monkeypatch):
    monkeypatch.setenv(config.GITHUB_SHA_ENV, "abc123")
    assert _sample()["code_commit"] == "abc123"


def test_stable_part_ignores_timing(temp_output_dir, mocker):
    first = _sample()
    mocker.patch("src.report._utc_now", return_value=datetime(2030, 1, 1, tzinfo=timezone.utc))
    second = _sample()
    assert first["timing"] != second["timing"]
    assert report.stable_part(first) == report.stable_part(second)
    assert "timing" not in report.stable_part(first)


def test_default_report_path(temp_output_dir):
    path = report.default_report_path("classify", {"target": "qplane", "n": 2, "m": 2, "k": None})
    assert path == os.path.join(config.REPORTS_DIR, "classify_targetqplane_n2_m2.json")
    assert path.startswith(str(temp_output_dir))


def test_save_and_load(temp_output_dir):
    r = _sample()
    path = os.path.join(config.REPORTS_DIR, "nested", "r.json")
    report.save_report(path, r)
    assert report.load_report(path) == r
