"""Dataset ingestion, answer scoring, benchmark execution, and report emission."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

from .answers import RULES, answers_match, extract_answer
from .errors import DuplicateIdError, EmptyCorpusError, IoError, SchemaError, StageFailureError
from .metrics import DEFAULT_BINS, CorpusSummary, aggregate_stats
from .pipeline import (
    EXECUTABLE_OUTCOMES,
    PipelineConfig,
    RunRecord,
    run_flare,
    save_record,
)

OPTION_LABELS = ("A", "B", "C", "D", "E")


@dataclass(frozen=True)
class DatasetItem:
    id: str
    question: str
    gold: str
    answer_type: str  # numeric | multiple_choice | boolean | free_text
    options: tuple = ()


def load_dataset(path: str | Path, format: str = "jsonl") -> list[DatasetItem]:
    """Ordered items from a UTF-8 JSONL file, one object per line."""
    if format != "jsonl":
        raise ValueError(f"unsupported dataset format {format!r}")
    items: list[DatasetItem] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, 1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as err:
                raise SchemaError(f"invalid JSON: {err}", line_no)
            for field in ("id", "question", "gold", "answer_type"):
                if field not in row or row[field] in (None, ""):
                    raise SchemaError(f"missing field {field!r}", line_no)
            if row["answer_type"] not in RULES:
                raise SchemaError(f"unknown answer_type {row['answer_type']!r}", line_no)
            options = tuple(row.get("options", ()))
            if row["answer_type"] == "multiple_choice" and row["gold"].strip().upper() not in OPTION_LABELS:
                raise SchemaError(f"multiple_choice gold must be one of {OPTION_LABELS}", line_no)
            if row["id"] in seen:
                raise DuplicateIdError(f"duplicate id {row['id']!r} at line {line_no}")
            seen.add(row["id"])
            items.append(DatasetItem(row["id"], row["question"], str(row["gold"]), row["answer_type"], options))
    return items


def score_answer(predicted: str, item: DatasetItem) -> bool:
    """Total scoring: any text maps to correct or incorrect, never an exception."""
    try:
        value = extract_answer(predicted or "", item.answer_type)
        return answers_match(value, item.gold, item.answer_type)
    except Exception:
        return False


@dataclass(frozen=True)
class BenchmarkReport:
    accuracy: float  # percent
    executable_code_pct: float
    executable_accuracy: float
    total: int
    correct_count: int
    executable_count: int
    summary: CorpusSummary
    items: tuple  # ({"id", "correct", "executable", "faithfulness", "record"}, ...)

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "executable_code_pct": self.executable_code_pct,
            "executable_accuracy": self.executable_accuracy,
            "total": self.total,
            "correct_count": self.correct_count,
            "executable_count": self.executable_count,
            "summary": self.summary.to_dict(),
            "items": list(self.items),
        }


def _run_item(item: DatasetItem, cfg: PipelineConfig, backend, templates, fewshots, out_dir) -> RunRecord:
    item_cfg = cfg if cfg.answer_rule == item.answer_type else replace(cfg, answer_rule=item.answer_type)
    try:
        record = run_flare(item.question, item.gold, item_cfg, backend, templates, fewshots, item.id, out_dir=None)
    except StageFailureError as err:
        record = err.record
    record.correct = score_answer(record.answer_text or "", item)
    record.answer_value = extract_answer(record.answer_text or "", item.answer_type)
    if out_dir is not None:
        save_record(record, out_dir)
    return record


def build_report(records: list[RunRecord], bins: tuple = DEFAULT_BINS) -> BenchmarkReport:
    if not records:
        raise EmptyCorpusError("no records to report on")
    records = sorted(records, key=lambda r: r.run_id)
    total = len(records)
    correct = sum(1 for r in records if r.correct)
    executable = [r for r in records if r.execution_outcome in EXECUTABLE_OUTCOMES]
    executable_correct = sum(1 for r in executable if r.correct)
    summary = aggregate_stats(records, bins)
    items = tuple(
        {
            "id": r.run_id,
            "correct": bool(r.correct),
            "executable": r.execution_outcome in EXECUTABLE_OUTCOMES,
            "faithfulness": r.faithfulness.value if r.faithfulness else None,
            "record": f"runs/{r.run_id}.json" if r.mode == "full" else f"runs/{r.run_id}__{r.mode}.json",
        }
        for r in records
    )
    return BenchmarkReport(
        accuracy=100.0 * correct / total,
        executable_code_pct=100.0 * len(executable) / total,
        executable_accuracy=100.0 * executable_correct / max(len(executable), 1),
        total=total,
        correct_count=correct,
        executable_count=len(executable),
        summary=summary,
        items=items,
    )


def run_benchmark(
    items: list[DatasetItem],
    cfg: PipelineConfig,
    backend,
    templates=None,
    fewshots=None,
    out_dir: str | Path | None = None,
    bins: tuple = DEFAULT_BINS,
) -> BenchmarkReport:
    """Run every item through the pipeline and aggregate.

    Per-item failures are recorded, never fatal. Records are sorted by item
    id before aggregation so parallel execution stays deterministic.
    """
    if not items:
        raise EmptyCorpusError("no dataset items")
    if cfg.parallelism > 1:
        with ThreadPoolExecutor(max_workers=cfg.parallelism) as pool:
            records = list(pool.map(lambda it: _run_item(it, cfg, backend, templates, fewshots, out_dir), items))
    else:
        records = [_run_item(it, cfg, backend, templates, fewshots, out_dir) for it in items]
    return build_report(records, bins)


def _fmt(value: float | None) -> str:
    return "-" if value is None else f"{value:.2f}"


def render_markdown(report: BenchmarkReport) -> str:
    """Plain-text tables mirroring the correct/incorrect group layout with a delta row."""
    s = report.summary
    lines = [
        "# Benchmark report",
        "",
        f"- items: {report.total}",
        f"- accuracy: {report.accuracy:.2f}%",
        f"- executable code: {report.executable_code_pct:.2f}%",
        f"- accuracy on executable: {report.executable_accuracy:.2f}%",
        "",
        "## Search statistics by answer correctness",
        "",
        "| Group | N | #Paths | #Hops/p | #Fails/p | TotHops | TotFails |",
        "|---|---|---|---|---|---|---|",
    ]
    for label in ("correct", "incorrect"):
        m = s.group_means[label]
        lines.append(
            f"| {label.title()} | {s.group_sizes[label]} | {_fmt(m['num_paths'])} | {_fmt(m['hops_per_path'])} "
            f"| {_fmt(m['fails_per_path'])} | {_fmt(m['total_hops'])} | {_fmt(m['total_fails'])} |"
        )
    lines += [
        "",
        "## Signature overlap by answer correctness",
        "",
        "| Group | UEF (%) | OR (%) | UR (%) |",
        "|---|---|---|---|",
    ]
    for label in ("correct", "incorrect"):
        m = s.group_means[label]
        lines.append(f"| {label.title()} | {_fmt(m['uef_pct'])} | {_fmt(m['or_pct'])} | {_fmt(m['ur_pct'])} |")
    d = s.delta
    lines.append(f"| Δ | {d['uef_pct']:+.2f} | {d['or_pct']:+.2f} | {d['ur_pct']:+.2f} |")
    lines += [
        "",
        "## Accuracy by faithfulness bin",
        "",
        "| Bin | Runs | Accuracy |",
        "|---|---|---|",
    ]
    for row in s.bins:
        acc = "-" if row["accuracy"] is None else f"{100.0 * row['accuracy']:.2f}%"
        lines.append(f"| [{row['low']:.1f}, {row['high']:.1f}] | {row['count']} | {acc} |")
    return "\n".join(lines) + "\n"


def render_csv(report: BenchmarkReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["id", "correct", "executable", "faithfulness", "record"])
    for row in report.items:
        faith = "" if row["faithfulness"] is None else f"{row['faithfulness']:.6f}"
        writer.writerow([row["id"], str(row["correct"]).lower(), str(row["executable"]).lower(), faith, row["record"]])
    return buffer.getvalue()


def emit_report(report: BenchmarkReport, out_dir: str | Path, formats: tuple = ("json", "csv", "md")) -> list[Path]:
    """Write report files; byte-deterministic for equal reports."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as err:
        raise IoError(str(err), str(out))
    written: list[Path] = []
    renderers = {
        "json": lambda: json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n",
        "csv": lambda: render_csv(report),
        "md": lambda: render_markdown(report),
    }
    for fmt in formats:
        if fmt not in renderers:
            raise ValueError(f"unknown report format {fmt!r}")
        path = out / f"report.{fmt}"
        try:
            path.write_text(renderers[fmt](), encoding="utf-8")
        except OSError as err:
            raise IoError(str(err), str(path))
        written.append(path)
    return written
