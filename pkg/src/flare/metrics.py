"""Faithfulness scoring and inconsistency accounting.

The trace similarity is summary-level ROUGE-L: per reference line, the union
of LCS matches against all candidate lines, clipped by token counts on both
sides, then an F1 over the total token counts. The exact recipe (F1, union
LCS, lowercase whitespace tokens, no stemming) is pinned here so scores are
reproducible.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import EmptyCorpusError, EmptyReferenceError

_STRIP_CHARS = ".,;:!?'\"`{}"


@dataclass(frozen=True)
class FaithfulnessScore:
    value: float
    candidate_lines: int
    reference_lines: int

    def to_dict(self) -> dict:
        return {"value": self.value, "candidate_lines": self.candidate_lines, "reference_lines": self.reference_lines}

    @classmethod
    def from_dict(cls, data: dict) -> "FaithfulnessScore":
        return cls(data["value"], data["candidate_lines"], data["reference_lines"])


def lcs_length(a: list, b: list) -> int:
    """Length of a longest common subsequence of two token lists."""
    if not a or not b:
        return 0
    previous = [0] * (len(b) + 1)
    for x in a:
        current = [0]
        for j, y in enumerate(b, 1):
            if x == y:
                current.append(previous[j - 1] + 1)
            else:
                current.append(max(previous[j], current[j - 1]))
        previous = current
    return previous[-1]


def _lcs_positions(a: list, b: list) -> set[int]:
    """Indices into a of one canonical LCS alignment with b."""
    rows = len(a)
    cols = len(b)
    dp = [[0] * (cols + 1) for _ in range(rows + 1)]
    for i in range(1, rows + 1):
        for j in range(1, cols + 1):
            if a[i - 1] == b[j - 1]:
                dp[i][j] = dp[i - 1][j - 1] + 1
            else:
                dp[i][j] = max(dp[i - 1][j], dp[i][j - 1])
    positions: set[int] = set()
    i, j = rows, cols
    while i > 0 and j > 0:
        if a[i - 1] == b[j - 1] and dp[i][j] == dp[i - 1][j - 1] + 1:
            positions.add(i - 1)
            i -= 1
            j -= 1
        elif dp[i - 1][j] >= dp[i][j - 1]:
            i -= 1
        else:
            j -= 1
    return positions


def _tokenize_line(line: str) -> list[str]:
    """Lowercased whitespace tokens with prose punctuation stripped from the
    edges; characters that occur inside goal terms (parens, operators,
    underscores) are preserved."""
    tokens = []
    for raw in line.lower().split():
        token = raw.strip(_STRIP_CHARS)
        if token:
            tokens.append(token)
    return tokens


def _tokenized_lines(text: str) -> list[list[str]]:
    lines = []
    for line in text.splitlines():
        tokens = _tokenize_line(line)
        if tokens:
            lines.append(tokens)
    return lines


def rouge_lsum(candidate: str, reference: str) -> FaithfulnessScore:
    """Summary-level ROUGE-L F1 between two line-oriented texts.

    Identical texts score exactly 1.0; token-disjoint texts exactly 0.0.
    Raises EmptyReferenceError when the reference has no tokens.
    """
    ref_lines = _tokenized_lines(reference)
    cand_lines = _tokenized_lines(candidate)
    ref_total = sum(len(l) for l in ref_lines)
    cand_total = sum(len(l) for l in cand_lines)
    if ref_total == 0:
        raise EmptyReferenceError("reference text has no tokens")
    if cand_total == 0:
        return FaithfulnessScore(0.0, len(cand_lines), len(ref_lines))

    cand_counts = Counter(t for l in cand_lines for t in l)
    ref_counts = Counter(t for l in ref_lines for t in l)
    hits = 0
    for ref in ref_lines:
        union: set[int] = set()
        for cand in cand_lines:
            union |= _lcs_positions(ref, cand)
        for pos in sorted(union):
            token = ref[pos]
            if cand_counts[token] > 0 and ref_counts[token] > 0:
                hits += 1
                cand_counts[token] -= 1
                ref_counts[token] -= 1

    recall = hits / ref_total
    precision = hits / cand_total
    value = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return FaithfulnessScore(value, len(cand_lines), len(ref_lines))


@dataclass(frozen=True)
class InconsistencyReport:
    hallucinated_facts: frozenset
    hallucinated_relations: frozenset
    unused_facts: frozenset
    unused_relations: frozenset
    emergent_facts: frozenset
    overlap_relations: frozenset
    uef_pct: float
    or_pct: float
    ur_pct: float

    def to_dict(self) -> dict:
        return {
            "hallucinated_facts": sorted(self.hallucinated_facts),
            "hallucinated_relations": sorted(self.hallucinated_relations),
            "unused_facts": sorted(self.unused_facts),
            "unused_relations": sorted(self.unused_relations),
            "emergent_facts": sorted(self.emergent_facts),
            "overlap_relations": sorted(self.overlap_relations),
            "uef_pct": self.uef_pct,
            "or_pct": self.or_pct,
            "ur_pct": self.ur_pct,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "InconsistencyReport":
        return cls(
            frozenset(data["hallucinated_facts"]),
            frozenset(data["hallucinated_relations"]),
            frozenset(data["unused_facts"]),
            frozenset(data["unused_relations"]),
            frozenset(data["emergent_facts"]),
            frozenset(data["overlap_relations"]),
            data["uef_pct"],
            data["or_pct"],
            data["ur_pct"],
        )


def inconsistency_report(code_sig, search_sig, emergent: set) -> InconsistencyReport:
    """Set algebra over the two signatures.

    Hallucinated: used in search, absent from code (emergent facts exempt).
    Unused: defined in code, never used in search. Percentages use pinned
    denominators: UEF over search facts, OR over the relation union, UR over
    code relations.
    """
    f_code, f_search = code_sig.facts, search_sig.facts
    r_code, r_search = code_sig.relations, search_sig.relations
    emergent = frozenset(emergent)
    overlap = r_code & r_search
    unused_relations = r_code - r_search
    return InconsistencyReport(
        hallucinated_facts=frozenset(f_search - f_code - emergent),
        hallucinated_relations=frozenset(r_search - r_code),
        unused_facts=frozenset(f_code - f_search),
        unused_relations=frozenset(unused_relations),
        emergent_facts=emergent,
        overlap_relations=frozenset(overlap),
        uef_pct=100.0 * len(emergent) / max(len(f_search), 1),
        or_pct=100.0 * len(overlap) / max(len(r_code | r_search), 1),
        ur_pct=100.0 * len(unused_relations) / max(len(r_code), 1),
    )


# Execution outcomes whose traces are complete enough to score against.
_SCORABLE = ("success", "failure")


def corpus_faithfulness(runs: list) -> list[tuple[str, FaithfulnessScore | None]]:
    """Per-run faithfulness; runs without a clean execution are marked None
    (not executable) and must be excluded from means."""
    results: list[tuple[str, FaithfulnessScore | None]] = []
    for run in runs:
        if run.execution_outcome not in _SCORABLE:
            results.append((run.run_id, None))
            continue
        if run.faithfulness is not None:
            results.append((run.run_id, run.faithfulness))
        elif run.executed_trace and run.search_text:
            results.append((run.run_id, rouge_lsum(run.search_text, run.executed_trace)))
        else:
            results.append((run.run_id, None))
    return results


_PATH_FIELDS = ("num_paths", "hops_per_path", "fails_per_path", "total_hops", "total_fails")
_PCT_FIELDS = ("uef_pct", "or_pct", "ur_pct")

DEFAULT_BINS = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)


@dataclass(frozen=True)
class CorpusSummary:
    group_means: dict  # {"correct": {field: mean}, "incorrect": {...}}
    group_sizes: dict  # {"correct": n, "incorrect": n}
    delta: dict  # correct minus incorrect for UEF/OR/UR
    bins: tuple  # ({"low", "high", "count", "accuracy"}, ...)

    def to_dict(self) -> dict:
        return {
            "group_means": self.group_means,
            "group_sizes": self.group_sizes,
            "delta": self.delta,
            "bins": list(self.bins),
        }


def _mean(values: list[float]) -> float:
    return sum(values) / len(values) if values else 0.0


def aggregate_stats(runs: list, bins: tuple = DEFAULT_BINS) -> CorpusSummary:
    """Correct/incorrect group means of path statistics and UEF/OR/UR, a
    Table-style delta row, and per-bin accuracy over faithfulness scores."""
    if not runs:
        raise EmptyCorpusError("no runs to aggregate")
    edges = tuple(bins)
    if len(edges) < 2 or any(b >= a for a, b in zip(edges[1:], edges)):
        raise ValueError("bin edges must be strictly increasing")
    if edges[0] != 0.0 or edges[-1] != 1.0:
        raise ValueError("bin edges must cover [0, 1]")

    groups = {"correct": [r for r in runs if r.correct], "incorrect": [r for r in runs if not r.correct]}
    group_means: dict[str, dict[str, float]] = {}
    for label, members in groups.items():
        means: dict[str, float] = {}
        stats = [m.trace_stats for m in members if m.trace_stats is not None]
        for field in _PATH_FIELDS:
            means[field] = _mean([getattr(s, field) for s in stats])
        reports = [m.inconsistency for m in members if m.inconsistency is not None]
        for field in _PCT_FIELDS:
            means[field] = _mean([getattr(r, field) for r in reports])
        group_means[label] = means

    delta = {f: group_means["correct"][f] - group_means["incorrect"][f] for f in _PCT_FIELDS}

    scored = [r for r in runs if r.faithfulness is not None]
    bin_rows = []
    for low, high in zip(edges, edges[1:]):
        last = high == edges[-1]
        members = [
            r for r in scored
            if low <= r.faithfulness.value < high or (last and r.faithfulness.value == high)
        ]
        accuracy = _mean([1.0 if r.correct else 0.0 for r in members]) if members else None
        bin_rows.append({"low": low, "high": high, "count": len(members), "accuracy": accuracy})

    return CorpusSummary(
        group_means=group_means,
        group_sizes={label: len(members) for label, members in groups.items()},
        delta=delta,
        bins=tuple(bin_rows),
    )
