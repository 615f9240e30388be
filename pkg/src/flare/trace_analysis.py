"""Parse simulated search text into paths and extract the search-side signature.

LLM-simulated traces are sloppy: goals may never close, depths are absent,
and prose can appear anywhere. Everything here works line-by-line with
regexes and tolerates noise, in the same spirit as the code-side extraction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import EmptyTraceError, ParseError, PrologRuntimeError
from .parser import parse_term_text
from .signature import KnowledgeSignature
from .solver import Substitution, eval_arithmetic
from .terms import Atom, Compound, Number, Term, indicator, is_ground, render_term

_MARKER = re.compile(r"^\s*\[Path\s+(\d+)\]\s*:?\s*$")
_HOP = re.compile(
    r"^\s*(?:[-*]\s*)?(\d+)\s*:\s*(Call|Exit|Fail|Redo)\s*:\s*(.*?)\s*(?:\|\s*(\{.*\})\s*)?$"
)
_START = re.compile(r"^\s*(?:[-*]\s*)?\d+\s*:\s*Start\b|Start of execution", re.IGNORECASE)
_RESULT = re.compile(r"'Result'\s*:\s*'([^']*)'")
_TERMINAL_VALUE = re.compile(r"^\s*(?:Answer\s*[:=]\s*(.+?)|-?\d+(?:\.\d+)?)\s*\.?\s*$", re.IGNORECASE)

_BUILTIN_FUNCTORS = {"=", "\\=", "is", "<", ">", "=<", ">=", "=:=", "=\\=", "true", "fail", "\\+"}
_ARITH_CHECKS = {"is", "=:=", "=\\=", "<", ">", "=<", ">="}


@dataclass(frozen=True)
class Hop:
    kind: str  # Call Exit Fail Redo
    goal: str
    step: int
    result: str | None = None  # recovered {'Result': ...} value


@dataclass(frozen=True)
class Path:
    id: int
    hops: tuple = ()
    noise: tuple = ()
    result: str | None = None  # "Succeeded" | "Failed"

    @property
    def fail_count(self) -> int:
        return sum(1 for h in self.hops if h.kind == "Fail")


@dataclass(frozen=True)
class SimulatedTrace:
    paths: tuple = ()
    raw: str = ""
    answers: frozenset = frozenset()


@dataclass(frozen=True)
class PathStats:
    num_paths: int = 0
    hops_per_path: float = 0.0
    fails_per_path: float = 0.0
    total_hops: int = 0
    total_fails: int = 0

    def to_dict(self) -> dict:
        return {
            "num_paths": self.num_paths,
            "hops_per_path": self.hops_per_path,
            "fails_per_path": self.fails_per_path,
            "total_hops": self.total_hops,
            "total_fails": self.total_fails,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PathStats":
        return cls(**{k: data[k] for k in ("num_paths", "hops_per_path", "fails_per_path", "total_hops", "total_fails")})


def _build_path(path_id: int, lines: list[str]) -> Path:
    hops: list[Hop] = []
    noise: list[str] = []
    result: str | None = None
    for line in lines:
        if _START.search(line) and not _HOP.match(line):
            continue
        m = _HOP.match(line)
        if m and not _START.search(line):
            annotation = m.group(4)
            value = None
            if annotation:
                rm = _RESULT.search(annotation)
                value = rm.group(1) if rm else None
            hops.append(Hop(m.group(2), m.group(3), int(m.group(1)), value))
            if value:
                result = value
        elif line.strip():
            noise.append(line)
    status = None
    if result:
        status = "Succeeded" if "Succeeded" in result else "Failed"
    return Path(path_id, tuple(hops), tuple(noise), status)


def parse_trace_text(text: str) -> SimulatedTrace:
    """Split on [Path k]: markers (none means one implicit path) and classify lines.

    Raises EmptyTraceError when no line is recognisable as trace content.
    """
    lines = text.splitlines()
    segments: list[list[str]] = [[]]
    for line in lines:
        if _MARKER.match(line):
            segments.append([])
        else:
            segments[-1].append(line)

    def recognisable(seg: list[str]) -> bool:
        return any(_HOP.match(ln) or _START.search(ln) for ln in seg)

    path_segments: list[list[str]] = []
    if recognisable(segments[0]):
        path_segments.append(segments[0])
    path_segments.extend(segments[1:])

    if not path_segments:
        raise EmptyTraceError("no recognisable trace line")

    paths = tuple(_build_path(i + 1, seg) for i, seg in enumerate(path_segments))

    answers: set[str] = set()
    for path in paths:
        for hop in path.hops:
            if hop.result:
                answers.add(hop.result)
        if path.noise:
            m = _TERMINAL_VALUE.match(path.noise[-1])
            if m:
                answers.add((m.group(1) or m.group(0)).strip().rstrip("."))
    return SimulatedTrace(paths, text, frozenset(answers))


def path_statistics(trace: SimulatedTrace) -> PathStats:
    """Hop and fail counts per path; a hop is any classified non-Start line."""
    num = len(trace.paths)
    total_hops = sum(len(p.hops) for p in trace.paths)
    total_fails = sum(p.fail_count for p in trace.paths)
    denom = max(num, 1)
    return PathStats(num, total_hops / denom, total_fails / denom, total_hops, total_fails)


def _parse_goal(text: str) -> Term | None:
    try:
        return parse_term_text(text)
    except ParseError:
        return None


def _functor_name(term: Term) -> str | None:
    if isinstance(term, Atom):
        return term.name
    if isinstance(term, Compound):
        return term.functor
    return None


def extract_search_signature(trace: SimulatedTrace) -> KnowledgeSignature:
    """Facts and relations used by the simulated search.

    Every ground goal contributes its canonical text as a fact use, except a
    zero-arity goal that visibly decomposes (its Call is immediately followed
    by another Call), which is a relation use only. Non-ground goals and
    decomposing non-builtin goals contribute functor/arity relation uses; a
    goal can count on both sides, since the trace has no clause structure to
    classify against.
    """
    facts: set[str] = set()
    relations: set[str] = set()

    for path in trace.paths:
        hops = path.hops
        rule_head_texts: set[str] = set()
        for i, hop in enumerate(hops):
            if hop.kind != "Call":
                continue
            nxt = hops[i + 1] if i + 1 < len(hops) else None
            if nxt is not None and nxt.kind == "Call":
                rule_head_texts.add(hop.goal)

        for hop in hops:
            term = _parse_goal(hop.goal)
            if term is None:
                continue
            if isinstance(term, Number):  # a bare value mention, e.g. 11 after 5+6
                facts.add(render_term(term, 999))
                continue
            name = _functor_name(term)
            if name is None:  # bare variable hop
                continue
            decomposes = hop.goal in rule_head_texts and name not in _BUILTIN_FUNCTORS
            if not is_ground(term):
                if name not in _BUILTIN_FUNCTORS:
                    relations.add(indicator(term))
                continue
            if decomposes:
                relations.add(indicator(term))
            if isinstance(term, Compound) or not decomposes:
                facts.add(render_term(term, 999))

    return KnowledgeSignature(
        facts=frozenset(facts),
        relations=frozenset(relations),
        goal=None,
        answers=trace.answers,
    )


def _is_arithmetic_fact(term: Term) -> bool:
    """Ground arithmetic/comparison goal whose operands evaluate numerically."""
    if isinstance(term, Number):
        return True
    if not isinstance(term, Compound) or len(term.args) != 2:
        return False
    if term.functor not in _ARITH_CHECKS:
        return False
    empty = Substitution()
    try:
        eval_arithmetic(term.args[0], empty)
        eval_arithmetic(term.args[1], empty)
    except PrologRuntimeError:
        return False
    return True


def classify_emergent_facts(code_sig: KnowledgeSignature, trace: SimulatedTrace) -> tuple[set, set]:
    """Partition search-side facts missing from the code into emergent vs hallucinated.

    A fact is emergent when it is a bare number or the visible result of an
    arithmetic or comparison step (5+6 giving 11); anything else the search
    invented is a hallucination.
    """
    search_facts = extract_search_signature(trace).facts
    candidates = search_facts - code_sig.facts
    emergent: set[str] = set()
    hallucinated: set[str] = set()
    for text in candidates:
        term = _parse_goal(text)
        if term is not None and _is_arithmetic_fact(term):
            emergent.add(text)
        else:
            hallucinated.add(text)
    return emergent, hallucinated
