from __future__ import annotations

import argparse
import glob
import json
import os
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Dict, List

import pandas as pd


def _ensure_dir(path: str) -> None:
    os.makedirs(path, exist_ok=True)


def _load_reports(reports_dir: str) -> pd.DataFrame:
    rows: List[Dict[str, object]] = []
    for path in sorted(glob.glob(os.path.join(reports_dir, "*.json"))):
        try:
            with open(path, "r", encoding="utf-8") as f:
                rep = json.load(f)
        except (OSError, json.JSONDecodeError):
            continue
        if not isinstance(rep, dict) or "command" not in rep:
            continue
        timing = rep.get("timing") or {}
        rows.append(
            {
                "file": os.path.basename(path),
                "command": rep["command"],
                "verdict": rep.get("verdict"),
                "elapsed_seconds": timing.get("elapsed_seconds"),
                "generated_at_utc": timing.get("generated_at_utc"),
                "schema_version": rep.get("schema_version"),
            }
        )
    df = pd.DataFrame(rows, columns=["file", "command", "verdict", "elapsed_seconds", "generated_at_utc", "schema_version"])
    df["elapsed_seconds"] = pd.to_numeric(df["elapsed_seconds"], errors="coerce")
    return df


def _matplotlib() -> "tuple[object, object]":
    # defer imp mpl so running without the extra dep fails with a clean message
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt  # type: ignore

    return plt, plt.style


def _savefig(fig, path: str) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=160)


@dataclass(frozen=True)
class SummaryConfig:
    reports_dir: str
    docs_dir: str
    plot: bool


def summarize(df: pd.DataFrame) -> Dict[str, object]:
    by_command: Dict[str, object] = {}
    for command, group in df.groupby("command"):
        by_command[str(command)] = {
            "runs": int(len(group)),
            "verdicts": {str(k): int(v) for k, v in group["verdict"].value_counts().sort_index().items()},
            "elapsed_total_seconds": round(float(group["elapsed_seconds"].sum()), 3),
            "elapsed_max_seconds": round(float(group["elapsed_seconds"].max()), 3),
        }
    return by_command


def generate_summary(cfg: SummaryConfig) -> Dict[str, object]:
    if not os.path.isdir(cfg.reports_dir):
        raise FileNotFoundError(f"reports directory not found: {cfg.reports_dir}")
    _ensure_dir(cfg.docs_dir)
    df = _load_reports(cfg.reports_dir)

    stats = {
        "generated_at_utc": datetime.now(timezone.utc).replace(microsecond=0).isoformat(),
        "reports_dir": cfg.reports_dir,
        "reports": int(len(df)),
        "commands": summarize(df) if len(df) else {},
        "failing": sorted(df.loc[df["verdict"].isin(["MISMATCH", "FAIL"]), "file"].tolist()),
    }

    if cfg.plot and len(df):
        plt, _ = _matplotlib()
        totals = df.groupby("command")["elapsed_seconds"].sum().sort_values()
        fig = plt.figure(figsize=(7.2, 4.0))
        ax = fig.add_subplot(1, 1, 1)
        ax.barh(totals.index.astype(str), totals.values, color="#334155")
        ax.set_title("total runtime by command")
        ax.set_xlabel("seconds")
        _savefig(fig, os.path.join(cfg.docs_dir, "runtime_by_command.png"))
        plt.close(fig)

    summary_path = os.path.join(cfg.docs_dir, "run_summary.json")
    with open(summary_path, "w", encoding="utf-8") as f:
        json.dump(stats, f, indent=2, sort_keys=True)
    return stats


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description="Summarize saved reports from outputs/reports into docs/")
    p.add_argument("--reports", default=os.path.join("outputs", "reports"))
    p.add_argument("--docs", default="docs")
    p.add_argument("--no-plot", action="store_true", help="Skip the matplotlib chart")
    args = p.parse_args(argv)

    cfg = SummaryConfig(reports_dir=args.reports, docs_dir=args.docs, plot=not args.no_plot)
    stats = generate_summary(cfg)
    print(f"wrote stats -> {os.path.join(cfg.docs_dir, 'run_summary.json')}")
    print(f"reports={stats['reports']} failing={len(stats['failing'])}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
