"""Formalise questions into a Prolog subset, execute or simulate the search,
and measure how faithful the simulated reasoning is to real execution."""

from .errors import FlareError
from .harness import BenchmarkReport, DatasetItem, emit_report, load_dataset, run_benchmark, score_answer
from .llm import FewShotSet, GenerationRequest, HttpBackend, PromptTemplate, ReplayBackend, generate, load_fixtures, load_templates, render_prompt
from .metrics import FaithfulnessScore, InconsistencyReport, aggregate_stats, corpus_faithfulness, inconsistency_report, lcs_length, rouge_lsum
from .parser import parse_program, parse_term_text
from .pipeline import PipelineConfig, RunRecord, refine_code, run_ablation, run_flare
from .signature import KnowledgeSignature, extract_code_signature
from .solver import ExecutionTrace, Outcome, SolveBudget, Substitution, TraceEvent, eval_arithmetic, format_trace, solve, unify
from .terms import Atom, Clause, Compound, Number, Program, Variable, extract_query_goal, render_program
from .trace_analysis import PathStats, SimulatedTrace, classify_emergent_facts, extract_search_signature, parse_trace_text, path_statistics

__version__ = "0.1.0"

__all__ = [
    "Atom", "BenchmarkReport", "Clause", "Compound", "DatasetItem", "ExecutionTrace",
    "FaithfulnessScore", "FewShotSet", "FlareError", "GenerationRequest", "HttpBackend",
    "InconsistencyReport", "KnowledgeSignature", "Number", "Outcome", "PathStats",
    "PipelineConfig", "Program", "PromptTemplate", "ReplayBackend", "RunRecord",
    "SimulatedTrace", "SolveBudget", "Substitution", "TraceEvent", "Variable",
    "aggregate_stats", "classify_emergent_facts", "corpus_faithfulness", "emit_report",
    "eval_arithmetic", "extract_code_signature", "extract_query_goal",
    "extract_search_signature", "format_trace", "generate", "inconsistency_report",
    "lcs_length", "load_dataset", "load_fixtures", "load_templates", "parse_program",
    "parse_term_text", "parse_trace_text", "path_statistics", "refine_code",
    "render_program", "render_prompt", "rouge_lsum", "run_ablation", "run_benchmark",
    "run_flare", "score_answer", "solve", "unify",
]
