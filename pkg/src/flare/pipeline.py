"""Pipeline orchestration: plan, code, search, answer, with extraction,
execution, bounded self-refinement, and ablation modes.

Execution never blocks the simulated search: a program that fails to parse
or run downgrades the record to a non-executable outcome and the run
continues, so corpus statistics can account for executability.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

from .answers import extract_answer
from .errors import FlareError, NoGoalError, ParseError, RefinementExhaustedError, StageFailureError
from .llm import FewShotSet, GenerationRequest, PromptTemplate, generate, load_templates, render_prompt
from .metrics import FaithfulnessScore, InconsistencyReport, inconsistency_report, rouge_lsum
from .parser import parse_program
from .signature import KnowledgeSignature, extract_code_signature
from .solver import Outcome, SolveBudget, format_trace, solve
from .terms import extract_query_goal
from .trace_analysis import PathStats, SimulatedTrace, classify_emergent_facts, extract_search_signature, parse_trace_text, path_statistics

MODES = ("full", "plan_only", "code_only")

NOT_EXECUTABLE = "not_executable"

# Outcomes counting as "the code executed" for Fig-3-style accounting.
EXECUTABLE_OUTCOMES = (Outcome.SUCCESS, Outcome.FAILURE, Outcome.BUDGET_EXCEEDED)
# Outcomes whose traces are complete enough to score faithfulness against.
SCORABLE_OUTCOMES = (Outcome.SUCCESS, Outcome.FAILURE)


@dataclass(frozen=True)
class PipelineConfig:
    mode: str = "full"
    self_refine_max: int = 0
    budget: SolveBudget = field(default_factory=SolveBudget)
    answer_rule: str = "numeric"
    temperature: float = 0.0
    max_tokens: int = 2048
    seed: int = 0
    retries: int = 2
    capture_dir: str | None = None
    occurs_check: bool = True
    unknown: str = "error"
    parallelism: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 0 <= self.self_refine_max <= 5:
            raise ValueError("self_refine_max must be between 0 and 5")
        if self.parallelism < 1:
            raise ValueError("parallelism must be at least 1")


@dataclass
class RunRecord:
    """Everything one question produced; serialised one JSON document per run.

    Stage timings stay in memory only: run documents must be byte-identical
    across replays.
    """

    run_id: str
    question: str
    gold: str | None = None
    mode: str = "full"
    plan_text: str | None = None
    code_text: str | None = None
    search_text: str | None = None
    answer_text: str | None = None
    answer_value: str | None = None
    correct: bool | None = None
    code_signature: KnowledgeSignature | None = None
    search_signature: KnowledgeSignature | None = None
    trace_stats: PathStats | None = None
    execution_outcome: str | None = None
    execution_error: str | None = None
    executed_trace: str | None = None
    solutions: tuple = ()
    faithfulness: FaithfulnessScore | None = None
    inconsistency: InconsistencyReport | None = None
    refinement_attempts: int = 0
    refinement_exhausted: bool = False
    stage_error: str | None = None
    timings: dict = field(default_factory=dict)

    @property
    def executable(self) -> bool:
        return self.execution_outcome in EXECUTABLE_OUTCOMES

    def to_dict(self) -> dict:
        return {
            "run_id": self.run_id,
            "question": self.question,
            "gold": self.gold,
            "mode": self.mode,
            "stages": {
                "plan": self.plan_text,
                "code": self.code_text,
                "search": self.search_text,
                "answer": self.answer_text,
            },
            "answer_value": self.answer_value,
            "correct": self.correct,
            "code_signature": self.code_signature.to_dict() if self.code_signature else None,
            "search_signature": self.search_signature.to_dict() if self.search_signature else None,
            "trace_stats": self.trace_stats.to_dict() if self.trace_stats else None,
            "execution": {
                "outcome": self.execution_outcome,
                "error": self.execution_error,
                "trace": self.executed_trace,
                "solutions": list(self.solutions),
            },
            "faithfulness": self.faithfulness.to_dict() if self.faithfulness else None,
            "inconsistency": self.inconsistency.to_dict() if self.inconsistency else None,
            "refinement_attempts": self.refinement_attempts,
            "refinement_exhausted": self.refinement_exhausted,
            "stage_error": self.stage_error,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunRecord":
        stages = data.get("stages", {})
        execution = data.get("execution", {})
        return cls(
            run_id=data["run_id"],
            question=data["question"],
            gold=data.get("gold"),
            mode=data.get("mode", "full"),
            plan_text=stages.get("plan"),
            code_text=stages.get("code"),
            search_text=stages.get("search"),
            answer_text=stages.get("answer"),
            answer_value=data.get("answer_value"),
            correct=data.get("correct"),
            code_signature=KnowledgeSignature.from_dict(data["code_signature"]) if data.get("code_signature") else None,
            search_signature=KnowledgeSignature.from_dict(data["search_signature"]) if data.get("search_signature") else None,
            trace_stats=PathStats.from_dict(data["trace_stats"]) if data.get("trace_stats") else None,
            execution_outcome=execution.get("outcome"),
            execution_error=execution.get("error"),
            executed_trace=execution.get("trace"),
            solutions=tuple(execution.get("solutions", ())),
            faithfulness=FaithfulnessScore.from_dict(data["faithfulness"]) if data.get("faithfulness") else None,
            inconsistency=InconsistencyReport.from_dict(data["inconsistency"]) if data.get("inconsistency") else None,
            refinement_attempts=data.get("refinement_attempts", 0),
            refinement_exhausted=data.get("refinement_exhausted", False),
            stage_error=data.get("stage_error"),
        )


def record_filename(record: RunRecord) -> str:
    if record.mode == "full":
        return f"{record.run_id}.json"
    return f"{record.run_id}__{record.mode}.json"


def save_record(record: RunRecord, out_dir: str | Path) -> Path:
    runs_dir = Path(out_dir) / "runs"
    runs_dir.mkdir(parents=True, exist_ok=True)
    path = runs_dir / record_filename(record)
    path.write_text(json.dumps(record.to_dict(), sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return path


def load_record(path: str | Path) -> RunRecord:
    with open(path, encoding="utf-8") as handle:
        return RunRecord.from_dict(json.load(handle))


class _Stager:
    """Renders, generates, and times one stage at a time."""

    def __init__(self, question, cfg, backend, templates, fewshots, run_id, record):
        self.question = question
        self.cfg = cfg
        self.backend = backend
        self.templates = templates
        self.fewshots = fewshots
        self.run_id = run_id
        self.record = record

    def run(self, stage: str, prior: dict, tag: str | None = None) -> str:
        start = time.perf_counter()
        try:
            prompt = render_prompt(stage, self.question, prior, self.fewshots, self.templates)
            request = GenerationRequest(
                prompt,
                stage=tag or stage,
                run_id=self.run_id,
                temperature=self.cfg.temperature,
                max_tokens=self.cfg.max_tokens,
                seed=self.cfg.seed,
            )
            return generate(request, self.backend, self.cfg.retries, capture_dir=self.cfg.capture_dir)
        finally:
            self.record.timings[tag or stage] = time.perf_counter() - start


def refine_code(
    question: str,
    plan: str,
    bad_code: str,
    error: str,
    attempt: int,
    cfg: PipelineConfig,
    backend,
    templates: dict[str, PromptTemplate] | None = None,
    fewshots: FewShotSet | None = None,
    run_id: str = "run",
) -> str:
    """Re-prompt the code stage with the parser or solver error appended."""
    if attempt >= cfg.self_refine_max:
        raise RefinementExhaustedError(f"refinement budget {cfg.self_refine_max} exhausted")
    templates = templates or load_templates()
    prompt = render_prompt("refine", question, {"plan": plan, "code": bad_code, "error": error}, fewshots, templates)
    request = GenerationRequest(
        prompt,
        stage=f"code_refine_{attempt + 1}",
        run_id=run_id,
        temperature=cfg.temperature,
        max_tokens=cfg.max_tokens,
        seed=cfg.seed,
    )
    return generate(request, backend, cfg.retries, capture_dir=cfg.capture_dir)


def _execute_code(record: RunRecord, stager: _Stager, cfg: PipelineConfig) -> None:
    """Parse and run the code stage, self-refining on parse or runtime errors."""
    code_text = record.code_text
    attempt = 0
    while True:
        error = None
        program = None
        trace = None
        try:
            program = parse_program(code_text)
            goal = extract_query_goal(program)
            trace = solve(program, goal, cfg.budget, mode="first", occurs_check=cfg.occurs_check, unknown=cfg.unknown)
            if trace.outcome == Outcome.RUNTIME_ERROR:
                error = trace.error or "runtime error"
        except (ParseError, NoGoalError) as err:
            error = str(err)
            program = None

        if error is None or attempt >= cfg.self_refine_max:
            break
        code_text = refine_code(
            record.question, record.plan_text or "", code_text, error,
            attempt, cfg, stager.backend, stager.templates, stager.fewshots, stager.run_id,
        )
        attempt += 1

    record.code_text = code_text
    record.refinement_attempts = attempt
    record.refinement_exhausted = error is not None and cfg.self_refine_max > 0 and attempt >= cfg.self_refine_max
    if program is not None:
        record.code_signature = extract_code_signature(program)
        record.execution_outcome = trace.outcome
        record.execution_error = trace.error
        record.executed_trace = format_trace(trace)
        record.solutions = trace.solutions
    else:
        record.execution_outcome = NOT_EXECUTABLE
        record.execution_error = error


def _analyse_search(record: RunRecord) -> None:
    trace: SimulatedTrace = parse_trace_text(record.search_text)
    record.search_signature = extract_search_signature(trace)
    record.trace_stats = path_statistics(trace)
    code_sig = record.code_signature or KnowledgeSignature()
    emergent, _hallucinated = classify_emergent_facts(code_sig, trace)
    record.inconsistency = inconsistency_report(code_sig, record.search_signature, emergent)


def _code_only_answer(record: RunRecord) -> str:
    if record.execution_outcome == Outcome.SUCCESS and record.solutions and record.solutions[0]:
        return " ".join(str(v) for v in record.solutions[0].values())
    outcome = record.execution_outcome or NOT_EXECUTABLE
    return outcome.replace("_", " ").title().replace(" ", "")


def run_flare(
    question: str,
    gold: str | None,
    cfg: PipelineConfig,
    backend,
    templates: dict[str, PromptTemplate] | None = None,
    fewshots: FewShotSet | None = None,
    run_id: str = "run",
    out_dir: str | Path | None = None,
) -> RunRecord:
    """One question through the staged pipeline for cfg.mode.

    A failing stage persists the partial record (when out_dir is given) and
    raises StageFailureError with the record attached.
    """
    templates = templates or load_templates()
    record = RunRecord(run_id=run_id, question=question, gold=gold, mode=cfg.mode)
    stager = _Stager(question, cfg, backend, templates, fewshots, run_id, record)

    def fail(stage: str, cause: Exception) -> StageFailureError:
        record.stage_error = f"{stage}: {cause}"
        if out_dir is not None:
            save_record(record, out_dir)
        return StageFailureError(stage, cause, record)

    try:
        record.plan_text = stager.run("plan", {})
    except FlareError as err:
        raise fail("plan", err)

    prior = {"plan": record.plan_text}
    if cfg.mode != "plan_only":
        try:
            record.code_text = stager.run("code", prior)
        except FlareError as err:
            raise fail("code", err)
        _execute_code(record, stager, cfg)
        prior["code"] = record.code_text

    if cfg.mode == "full":
        try:
            record.search_text = stager.run("search", prior)
            _analyse_search(record)
        except FlareError as err:
            raise fail("search", err)
        prior["search"] = record.search_text
        if record.execution_outcome in SCORABLE_OUTCOMES and record.executed_trace:
            record.faithfulness = rouge_lsum(record.search_text, record.executed_trace)

    if cfg.mode == "code_only":
        record.answer_text = _code_only_answer(record)
    else:
        answer_prior = dict(prior)
        if cfg.mode == "plan_only":
            answer_prior.setdefault("code", "")
            answer_prior.setdefault("search", "")
        try:
            record.answer_text = stager.run("answer", answer_prior)
        except FlareError as err:
            raise fail("answer", err)
    record.answer_value = extract_answer(record.answer_text or "", cfg.answer_rule)

    if out_dir is not None:
        save_record(record, out_dir)
    return record


def run_ablation(
    question: str,
    gold: str | None,
    base_cfg: PipelineConfig,
    modes: list[str],
    backend,
    templates: dict[str, PromptTemplate] | None = None,
    fewshots: FewShotSet | None = None,
    run_id: str = "run",
    out_dir: str | Path | None = None,
) -> list[RunRecord]:
    """One record per mode, sharing fewshots and backend; failures stay per-mode."""
    unknown = [m for m in modes if m not in MODES]
    if unknown:
        raise ValueError(f"unknown modes: {unknown}")
    records = []
    for mode in modes:
        cfg = replace(base_cfg, mode=mode)
        try:
            records.append(run_flare(question, gold, cfg, backend, templates, fewshots, run_id, out_dir))
        except StageFailureError as err:
            records.append(err.record)
    return records
