"""Prompt rendering and text-generation backends.

The four stage prompts condition cumulatively: Code sees the Plan, Search
sees Plan and Code, Answer sees all three, and every prior stage text is
embedded verbatim. A replay backend serves stored completions by
(run id, stage) so whole pipeline runs are reproducible offline; captures of
live runs use the same directory layout and are therefore replayable.
"""

from __future__ import annotations

import hashlib
import json
import re
import threading
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import requests

from .errors import (
    BackendUnavailableError,
    ContextOverflowError,
    MalformedFixtureError,
    MissingFixtureError,
    MissingPriorError,
)

STAGES = ("plan", "code", "search", "answer")

# What each stage conditions on; rendering fails fast when a prior is absent.
_REQUIRED_PRIORS = {
    "plan": (),
    "code": ("plan",),
    "search": ("plan", "code"),
    "answer": ("plan", "code", "search"),
    "refine": ("plan", "code", "error"),
}

_PLACEHOLDER = re.compile(r"\{(examples|question|plan|code|search|error)\}")


@dataclass(frozen=True)
class PromptTemplate:
    stage: str
    body: str

    def render(self, values: dict) -> str:
        # str.format would trip over literal braces in exemplar traces, so
        # substitution is limited to the known placeholder names.
        def sub(match: re.Match) -> str:
            return values[match.group(1)]

        return _PLACEHOLDER.sub(sub, self.body)


@dataclass(frozen=True)
class Exemplar:
    question: str
    plan: str
    code: str
    search: str
    answer: str


@dataclass(frozen=True)
class FewShotSet:
    exemplars: tuple = ()

    @classmethod
    def from_json(cls, path: str | Path, expected_shots: int | None = None) -> "FewShotSet":
        with open(path, encoding="utf-8") as handle:
            rows = json.load(handle)
        exemplars = tuple(
            Exemplar(r["question"], r["plan"], r["code"], r["search"], r["answer"]) for r in rows
        )
        if expected_shots is not None and len(exemplars) != expected_shots:
            raise ValueError(f"expected {expected_shots} exemplars, found {len(exemplars)}")
        return cls(exemplars)


@dataclass(frozen=True)
class GenerationRequest:
    prompt: str
    stage: str
    run_id: str
    temperature: float = 0.0
    max_tokens: int = 2048
    seed: int = 0

    def __post_init__(self):
        if not self.prompt:
            raise ValueError("prompt must be nonempty")
        if self.max_tokens <= 0:
            raise ValueError("max_tokens must be positive")


def load_templates(directory: str | Path | None = None) -> dict[str, PromptTemplate]:
    """Stage templates from a directory of <stage>.txt files, or the packaged defaults."""
    stages = STAGES + ("refine",)
    templates: dict[str, PromptTemplate] = {}
    if directory is not None:
        for stage in stages:
            body = (Path(directory) / f"{stage}.txt").read_text(encoding="utf-8")
            templates[stage] = PromptTemplate(stage, body)
        return templates
    for stage in stages:
        body = resources.files("flare.templates").joinpath(f"{stage}.txt").read_text(encoding="utf-8")
        templates[stage] = PromptTemplate(stage, body)
    return templates


_SECTION_LABELS = {"plan": "Plan", "code": "Code", "search": "Search", "answer": "Answer"}


def _exemplar_block(exemplar: Exemplar, upto: str) -> str:
    parts = [f"Question: {exemplar.question}"]
    for stage in STAGES:
        parts.append(f"{_SECTION_LABELS[stage]}:\n{getattr(exemplar, stage)}")
        if stage == upto:
            break
    return "\n\n".join(parts)


def render_prompt(
    stage: str,
    question: str,
    prior: dict,
    fewshots: FewShotSet | None = None,
    templates: dict[str, PromptTemplate] | None = None,
) -> str:
    """Deterministic prompt text: exemplars, question, prior stages, instruction.

    prior must hold the text of every stage this stage conditions on; an
    empty string marks a stage deliberately absent (ablations) and omits its
    section without failing.
    """
    if stage not in _REQUIRED_PRIORS:
        raise ValueError(f"unknown stage {stage!r}")
    for needed in _REQUIRED_PRIORS[stage]:
        if needed not in prior:
            raise MissingPriorError(needed)

    templates = templates or load_templates()
    fewshots = fewshots or FewShotSet()
    # Exemplars show completed stages up to the one being generated; the
    # answer stage sees full exemplars.
    upto = stage if stage in STAGES else "code"
    examples = ""
    if fewshots.exemplars:
        examples = "\n\n".join(_exemplar_block(e, upto) for e in fewshots.exemplars) + "\n\n"

    values = {"examples": examples, "question": question, "error": prior.get("error", "")}
    for name in STAGES[:-1]:
        values[name] = prior.get(name, "")
    # Stages skipped by an ablation pass empty text; drop their section from
    # the template itself so real stage content is never touched.
    body = templates[stage].body
    for name in STAGES[:-1]:
        if not values[name]:
            body = body.replace(f"{_SECTION_LABELS[name]}:\n{{{name}}}\n\n", "")
    return PromptTemplate(stage, body).render(values)


class ReplayBackend:
    """Serves stored completions by (run id, stage); lookup is read-only."""

    def __init__(self, fixtures: dict[tuple[str, str], str]):
        self.fixtures = fixtures

    def complete(self, request: GenerationRequest) -> str:
        key = (request.run_id, request.stage)
        if key not in self.fixtures:
            raise MissingFixtureError(request.run_id, request.stage)
        return self.fixtures[key]


def load_fixtures(directory: str | Path) -> ReplayBackend:
    """Build a replay backend from a <dir>/<run_id>/<stage>.txt layout."""
    fixtures: dict[tuple[str, str], str] = {}
    root = Path(directory)
    for run_dir in sorted(p for p in root.iterdir() if p.is_dir()) if root.exists() else []:
        for stage_file in sorted(run_dir.glob("*.txt")):
            fixtures[(run_dir.name, stage_file.stem)] = stage_file.read_text(encoding="utf-8")
        meta = run_dir / "meta.json"
        if meta.exists():
            try:
                json.loads(meta.read_text(encoding="utf-8"))
            except json.JSONDecodeError as err:
                raise MalformedFixtureError(str(meta), str(err))
    return ReplayBackend(fixtures)


class HttpBackend:
    """Chat-completions-style endpoint; the credential comes from FLARE_API_KEY."""

    def __init__(
        self,
        url: str,
        model: str,
        api_key: str | None = None,
        timeout: float = 60.0,
        requests_per_second: float = 0.0,
    ):
        self.url = url
        self.model = model
        self.api_key = api_key
        self.timeout = timeout
        self.min_interval = 1.0 / requests_per_second if requests_per_second > 0 else 0.0
        self._lock = threading.Lock()
        self._last_request = 0.0

    def _throttle(self) -> None:
        if not self.min_interval:
            return
        with self._lock:
            wait = self._last_request + self.min_interval - time.monotonic()
            if wait > 0:
                time.sleep(wait)
            self._last_request = time.monotonic()

    def complete(self, request: GenerationRequest) -> str:
        self._throttle()
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        payload = {
            "model": self.model,
            "messages": [{"role": "user", "content": request.prompt}],
            "temperature": request.temperature,
            "max_tokens": request.max_tokens,
            "seed": request.seed,
        }
        try:
            response = requests.post(self.url, json=payload, headers=headers, timeout=self.timeout)
        except requests.RequestException as err:
            raise BackendUnavailableError(f"transport failure: {err}")
        if response.status_code == 400 and "context" in response.text.lower():
            raise ContextOverflowError(response.text[:500])
        if response.status_code >= 500:
            raise BackendUnavailableError(f"server error {response.status_code}")
        if response.status_code != 200:
            raise BackendUnavailableError(f"unexpected status {response.status_code}: {response.text[:500]}")
        try:
            data = response.json()
            return data["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError) as err:
            raise BackendUnavailableError(f"malformed response: {err}")


def generate(
    request: GenerationRequest,
    backend,
    retries: int = 2,
    backoff: float = 0.5,
    capture_dir: str | Path | None = None,
) -> str:
    """One completion with retry on transient transport failures.

    With capture_dir set, the response is written in the replay fixture
    layout so the run can be replayed byte-identically later.
    """
    attempt = 0
    while True:
        try:
            text = backend.complete(request)
            break
        except BackendUnavailableError:
            if attempt >= retries:
                raise
            time.sleep(backoff * (2 ** attempt))
            attempt += 1
    if capture_dir is not None:
        run_dir = Path(capture_dir) / request.run_id
        run_dir.mkdir(parents=True, exist_ok=True)
        (run_dir / f"{request.stage}.txt").write_text(text, encoding="utf-8")
        meta = {
            "temperature": request.temperature,
            "max_tokens": request.max_tokens,
            "seed": request.seed,
            # identifies the request this response answered
            "prompt_sha256": hashlib.sha256(request.prompt.encode("utf-8")).hexdigest(),
        }
        (run_dir / "meta.json").write_text(json.dumps(meta, sort_keys=True), encoding="utf-8")
    return text


_CLAUSE_LINE = re.compile(r"^\s*(?:%.*|[a-z'][^.]*\.\s*|.*:-.*)$")


def extract_code_block(text: str) -> str:
    """The program text inside a completion: the first fenced block, else the
    longest run of clause-shaped lines."""
    fence = re.search(r"```[ \t]*[A-Za-z0-9_+-]*[ \t]*\n(.*?)(?:```|\Z)", text, re.DOTALL)
    if fence:
        return fence.group(1)
    lines = text.splitlines()
    best: tuple[int, int] = (0, 0)  # (length, start)
    start = None
    for i, line in enumerate(lines + [""]):
        if line.strip() and _CLAUSE_LINE.match(line):
            if start is None:
                start = i
            if i - start + 1 > best[0]:
                best = (i - start + 1, start)
        elif line.strip():
            start = None
    if best[0] == 0:
        return text
    length, begin = best
    return "\n".join(lines[begin:begin + length])
