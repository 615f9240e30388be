"""Command-line front door: run single questions, execute programs, diff
traces, run benchmarks, and render reports.

Exit statuses: 0 success, 1 internal error, 2 usage or configuration error,
3 runtime error from exec, 4 budget exceeded from exec.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .errors import FlareError, StageFailureError
from .harness import build_report, emit_report, load_dataset, run_benchmark
from .llm import FewShotSet, HttpBackend, load_fixtures, load_templates
from .metrics import rouge_lsum, inconsistency_report
from .parser import parse_program, parse_term_text
from .pipeline import MODES, PipelineConfig, load_record, run_flare
from .signature import KnowledgeSignature, extract_code_signature
from .solver import Outcome, SolveBudget, format_trace, solve, trace_events_jsonl
from .terms import extract_query_goal
from .trace_analysis import classify_emergent_facts, extract_search_signature, parse_trace_text

API_KEY_VAR = "FLARE_API_KEY"

_TRACE_LINE = re.compile(r"^\s*\d+\s*:\s*(Start|Call|Exit|Fail|Redo)\b|^\s*\[Path\s+\d+\]", re.MULTILINE)


@dataclass
class CommandPlan:
    verb: str
    args: argparse.Namespace
    config: dict


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flare", description=__doc__)
    parser.add_argument("--config", help="TOML configuration file")
    parser.add_argument("--verbose", action="store_true", help="show tracebacks on errors")
    sub = parser.add_subparsers(dest="verb", required=True)

    run = sub.add_parser("run", help="run one question through the pipeline")
    run.add_argument("question")
    run.add_argument("--gold")
    run.add_argument("--mode", choices=MODES, default=None)
    run.add_argument("--run-id", default="run")
    run.add_argument("--replay", help="replay fixture directory instead of a live backend")
    run.add_argument("--capture", help="capture live completions into this fixture directory")
    run.add_argument("--out", help="output directory for the run record")
    run.add_argument("--self-refine", type=int, default=None)
    run.add_argument("--answer-rule", choices=("numeric", "multiple_choice", "boolean", "free_text"), default=None)
    run.add_argument("--fewshots", help="JSON file with few-shot exemplars")

    ex = sub.add_parser("exec", help="execute a program and print its trace")
    ex.add_argument("program", help="program file")
    ex.add_argument("--goal", help="goal term (default: the program's driver)")
    ex.add_argument("--all", action="store_true", help="explore past the first solution")
    ex.add_argument("--max-steps", type=int, default=None)
    ex.add_argument("--max-depth", type=int, default=None)
    ex.add_argument("--max-solutions", type=int, default=None)
    ex.add_argument("--permissive", action="store_true", help="unknown predicates fail instead of erroring")
    ex.add_argument("--no-occurs-check", action="store_true")
    ex.add_argument("--jsonl", help="also write the event stream to this file")

    diff = sub.add_parser("trace-diff", help="score a candidate trace/program against a reference")
    diff.add_argument("reference", help="program or trace file")
    diff.add_argument("candidate", help="program or trace file")

    bench = sub.add_parser("bench", help="run a JSONL dataset through the pipeline")
    bench.add_argument("dataset")
    bench.add_argument("--mode", choices=MODES, default=None)
    bench.add_argument("--replay")
    bench.add_argument("--capture")
    bench.add_argument("--out")
    bench.add_argument("--self-refine", type=int, default=None)
    bench.add_argument("--parallelism", type=int, default=None)
    bench.add_argument("--fewshots")

    rep = sub.add_parser("report", help="re-render report files from saved run records")
    rep.add_argument("--runs", required=True, help="directory containing runs/*.json")
    rep.add_argument("--out", required=True)
    rep.add_argument("--formats", default="json,csv,md")
    return parser


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, "rb") as handle:
        return tomllib.load(handle)


def parse_args(argv: list[str]) -> CommandPlan:
    """Validated plan or SystemExit(2) with a usage message."""
    args = _build_parser().parse_args(argv)
    try:
        config = _load_config(args.config)
    except (OSError, tomllib.TOMLDecodeError) as err:
        raise SystemExit(f"flare: cannot load config: {err}") from err
    return CommandPlan(args.verb, args, config)


def _budget(config: dict, args: argparse.Namespace) -> SolveBudget:
    section = config.get("budget", {})
    return SolveBudget(
        max_steps=getattr(args, "max_steps", None) or section.get("max_steps", 10_000),
        max_depth=getattr(args, "max_depth", None) or section.get("max_depth", 256),
        max_solutions=getattr(args, "max_solutions", None) or section.get("max_solutions", 16),
    )


def _pipeline_config(config: dict, args: argparse.Namespace) -> PipelineConfig:
    section = config.get("pipeline", {})
    backend_cfg = config.get("backend", {})
    return PipelineConfig(
        mode=getattr(args, "mode", None) or section.get("mode", "full"),
        self_refine_max=(
            args.self_refine if getattr(args, "self_refine", None) is not None
            else section.get("self_refine_max", 0)
        ),
        budget=_budget(config, args),
        answer_rule=getattr(args, "answer_rule", None) or section.get("answer_rule", "numeric"),
        temperature=backend_cfg.get("temperature", 0.0),
        max_tokens=backend_cfg.get("max_tokens", 2048),
        seed=backend_cfg.get("seed", 0),
        retries=backend_cfg.get("retries", 2),
        capture_dir=getattr(args, "capture", None),
        parallelism=(
            args.parallelism if getattr(args, "parallelism", None) is not None
            else section.get("parallelism", 1)
        ),
    )


def _backend(config: dict, args: argparse.Namespace):
    if getattr(args, "replay", None):
        return load_fixtures(args.replay)
    section = config.get("backend", {})
    if section.get("url") and section.get("model"):
        return HttpBackend(
            url=section["url"],
            model=section["model"],
            api_key=os.environ.get(API_KEY_VAR),
            timeout=section.get("timeout", 60.0),
            requests_per_second=section.get("requests_per_second", 0.0),
        )
    raise FlareError("no backend: pass --replay DIR or configure [backend] url and model")


def _templates_and_fewshots(config: dict, args: argparse.Namespace):
    section = config.get("pipeline", {})
    templates = load_templates(section.get("template_dir"))
    fewshots_path = getattr(args, "fewshots", None) or section.get("fewshots")
    fewshots = FewShotSet.from_json(fewshots_path) if fewshots_path else None
    return templates, fewshots


def _cmd_run(plan: CommandPlan) -> int:
    args = plan.args
    cfg = _pipeline_config(plan.config, args)
    backend = _backend(plan.config, args)
    templates, fewshots = _templates_and_fewshots(plan.config, args)
    try:
        record = run_flare(args.question, args.gold, cfg, backend, templates, fewshots, args.run_id, out_dir=args.out)
    except StageFailureError as err:
        print(f"stage failure: {err}", file=sys.stderr)
        return 1
    print(json.dumps(record.to_dict(), sort_keys=True, indent=2))
    return 0


def _cmd_exec(plan: CommandPlan) -> int:
    args = plan.args
    source = Path(args.program).read_text(encoding="utf-8")
    program = parse_program(source)
    for line_no, text in program.skipped:
        print(f"skipped unparseable line {line_no}: {text}", file=sys.stderr)
    goal = parse_term_text(args.goal) if args.goal else extract_query_goal(program)
    trace = solve(
        program,
        goal,
        _budget(plan.config, args),
        mode="all" if args.all else "first",
        occurs_check=not args.no_occurs_check,
        unknown="fail" if args.permissive else "error",
    )
    print(format_trace(trace))
    if args.jsonl:
        Path(args.jsonl).write_text(trace_events_jsonl(trace) + "\n", encoding="utf-8")
    if trace.outcome == Outcome.RUNTIME_ERROR:
        print(f"runtime error: {trace.error}", file=sys.stderr)
        return 3
    if trace.outcome == Outcome.BUDGET_EXCEEDED:
        print("budget exceeded", file=sys.stderr)
        return 4
    return 0


def _load_diff_input(path: str) -> tuple[str, KnowledgeSignature, object | None]:
    """Returns (trace text, signature, parsed trace or None) for a program or trace file."""
    text = Path(path).read_text(encoding="utf-8")
    if _TRACE_LINE.search(text):
        trace = parse_trace_text(text)
        return text, extract_search_signature(trace), trace
    program = parse_program(text)
    executed = solve(program, extract_query_goal(program))
    return format_trace(executed), extract_code_signature(program), None


def _cmd_trace_diff(plan: CommandPlan) -> int:
    args = plan.args
    ref_text, ref_sig, _ = _load_diff_input(args.reference)
    cand_text, cand_sig, cand_trace = _load_diff_input(args.candidate)
    score = rouge_lsum(cand_text, ref_text)
    emergent = set()
    if cand_trace is not None:
        emergent, _ = classify_emergent_facts(ref_sig, cand_trace)
    report = inconsistency_report(ref_sig, cand_sig, emergent)
    print(f"rouge_lsum: {score.value:.6f}")
    print(f"hallucinated_facts: {sorted(report.hallucinated_facts)}")
    print(f"hallucinated_relations: {sorted(report.hallucinated_relations)}")
    print(f"unused_facts: {sorted(report.unused_facts)}")
    print(f"unused_relations: {sorted(report.unused_relations)}")
    return 0


def _cmd_bench(plan: CommandPlan) -> int:
    args = plan.args
    cfg = _pipeline_config(plan.config, args)
    backend = _backend(plan.config, args)
    templates, fewshots = _templates_and_fewshots(plan.config, args)
    items = load_dataset(args.dataset)
    report = run_benchmark(items, cfg, backend, templates, fewshots, out_dir=args.out)
    if args.out:
        emit_report(report, args.out)
    print(f"items: {report.total}")
    print(f"accuracy: {report.accuracy:.2f}%")
    print(f"executable_code_pct: {report.executable_code_pct:.2f}%")
    print(f"executable_accuracy: {report.executable_accuracy:.2f}%")
    return 0


def _cmd_report(plan: CommandPlan) -> int:
    args = plan.args
    runs_dir = Path(args.runs) / "runs"
    if not runs_dir.is_dir():
        runs_dir = Path(args.runs)
    records = [load_record(p) for p in sorted(runs_dir.glob("*.json"))]
    report = build_report(records)
    emit_report(report, args.out, tuple(args.formats.split(",")))
    print(f"report written to {args.out}")
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "exec": _cmd_exec,
    "trace-diff": _cmd_trace_diff,
    "bench": _cmd_bench,
    "report": _cmd_report,
}


def execute_command(plan: CommandPlan) -> int:
    return _COMMANDS[plan.verb](plan)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    plan = parse_args(argv)
    try:
        return execute_command(plan)
    except FlareError as err:
        if plan.args.verbose:
            raise
        print(f"flare: {err}", file=sys.stderr)
        return 2
    except Exception as err:  # internal errors
        if plan.args.verbose:
            raise
        print(f"flare: internal error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
