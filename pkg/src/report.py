from __future__ import annotations

import json
import os
import time
from datetime import datetime, timezone
from typing import Any, Dict, Mapping, Optional

from . import config

VERDICTS = ("MATCH", "MISMATCH", "EXPLORE", "PASS", "FAIL")


def _canonical_json(obj: Dict[str, Any]) -> str:
    # print(f"canonicalizing JSON for keys: {sorted(obj.keys())}")
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _utc_now() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)


def build_report(
    command: str,
    inputs: Mapping[str, Any],
    results: Mapping[str, Any],
    expected: Optional[Mapping[str, Any]],
    verdict: str,
    started: float,
) -> Dict[str, Any]:
    """One job's report; everything outside "timing" depends on the inputs only."""
    if verdict not in VERDICTS:
        raise ValueError(f"unknown verdict {verdict!r}")
    report: Dict[str, Any] = {
        "schema_version": config.SCHEMA_VERSION,
        "command": command,
        "inputs": dict(inputs),
        "results": dict(results),
        "expected": dict(expected or {}),
        "verdict": verdict,
        "timing": {
            "generated_at_utc": _utc_now().isoformat(),
            "elapsed_seconds": round(time.perf_counter() - started, 3),
        },
    }
    commit = os.getenv(config.GITHUB_SHA_ENV, "")
    if commit:
        report["code_commit"] = commit
    return report


def stable_part(report: Mapping[str, Any]) -> str:
    """Canonical text of a report without its timing block."""
    return _canonical_json({k: v for k, v in report.items() if k != "timing"})


def default_report_path(command: str, inputs: Mapping[str, Any]) -> str:
    tags = [command] + [f"{k}{inputs[k]}" for k in ("target", "n", "m", "k", "algebra") if inputs.get(k) is not None]
    return os.path.join(config.REPORTS_DIR, "_".join(str(t) for t in tags) + ".json")


def save_report(path: str, report: Mapping[str, Any]) -> None:
    # print(f"saving report to {path}")
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(report, f, indent=2, sort_keys=True)


def load_report(path: str) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)
