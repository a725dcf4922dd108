"""Render a verification report to delimited summaries and overview figures.

Consumes the JSON written by the verify campaign and produces, in an output
directory: per-tag verdict counts as CSV, the violated rows as CSV, and two
PNG overviews (verdicts by tag, outcomes by invariant). File contents are
deterministic for a given report.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

VERDICT_ORDER = ("confirmed", "violated", "not_applicable", "budget_skipped")

_VERDICT_COLOR = {
    "confirmed": "#2a9d3f",
    "violated": "#d62b2b",
    "not_applicable": "#b5b5b5",
    "budget_skipped": "#e8a13c",
}


def load_report(path) -> dict:
    with open(path, encoding="ascii") as fh:
        return json.load(fh)


def _cell(value) -> str:
    """Flatten a formula/oracle value for a CSV cell."""
    if value is None:
        return ""
    if isinstance(value, dict):
        return "inf" if value.get("inf") else value["fin"]
    return str(value)


def _tag_order(doc) -> list[str]:
    return list(doc["summary"]["per_tag"])


def _invariant_order(doc) -> list[str]:
    seen: list[str] = []
    for row in doc["reports"]:
        if row["invariant"] not in seen:
            seen.append(row["invariant"])
    return seen


def write_summary_csv(doc, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["tag", *VERDICT_ORDER])
        for tag in _tag_order(doc):
            counts = doc["summary"]["per_tag"][tag]
            writer.writerow([tag, *(counts[v] for v in VERDICT_ORDER)])


def write_findings_csv(doc, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["tag", "graph6", "invariant", "policy", "case", "formula", "oracle"]
        )
        for row in doc["reports"]:
            if row["verdict"] != "violated":
                continue
            writer.writerow(
                [
                    row["tag"],
                    row["graph6"],
                    row["invariant"],
                    row["policy"],
                    row["case"] or "",
                    _cell(row["formula"]),
                    _cell(row["oracle"]),
                ]
            )


def render_verdicts_by_tag(doc, path) -> None:
    tags = _tag_order(doc)
    per_tag = doc["summary"]["per_tag"]
    fig, ax = plt.subplots(figsize=(9, 0.35 * max(len(tags), 4) + 1.2))
    left = [0] * len(tags)
    for verdict in VERDICT_ORDER:
        widths = [per_tag[t][verdict] for t in tags]
        ax.barh(
            tags, widths, left=left, label=verdict, color=_VERDICT_COLOR[verdict]
        )
        left = [a + b for a, b in zip(left, widths)]
    ax.invert_yaxis()
    ax.set_xlabel("report rows")
    ax.set_title("verdicts by tag")
    ax.legend(loc="lower right", fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_outcomes_by_invariant(doc, path) -> None:
    invs = _invariant_order(doc)
    counts = {inv: {v: 0 for v in VERDICT_ORDER} for inv in invs}
    for row in doc["reports"]:
        counts[row["invariant"]][row["verdict"]] += 1
    fig, ax = plt.subplots(figsize=(9, 0.35 * max(len(invs), 4) + 1.2))
    left = [0] * len(invs)
    for verdict in VERDICT_ORDER:
        widths = [counts[inv][verdict] for inv in invs]
        ax.barh(
            invs, widths, left=left, label=verdict, color=_VERDICT_COLOR[verdict]
        )
        left = [a + b for a, b in zip(left, widths)]
    ax.invert_yaxis()
    ax.set_xlabel("report rows")
    ax.set_title("outcomes by invariant")
    ax.legend(loc="lower right", fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_report(report_path, out_dir) -> list[Path]:
    """Write all summaries and figures; returns the paths written."""
    doc = load_report(report_path)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = [
        out / "summary.csv",
        out / "findings.csv",
        out / "verdicts_by_tag.png",
        out / "outcomes_by_invariant.png",
    ]
    write_summary_csv(doc, written[0])
    write_findings_csv(doc, written[1])
    render_verdicts_by_tag(doc, written[2])
    render_outcomes_by_invariant(doc, written[3])
    return written
