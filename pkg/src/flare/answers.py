"""Final-answer extraction rules, shared by the pipeline and the scoring harness.

LLMs wrap answers in prose, so each answer type has a pinned reduction: the
last number, the first standalone option letter, the last boolean keyword,
or the trimmed text itself.
"""

from __future__ import annotations

import math
import re

_NUMBER = re.compile(r"-?\d+(?:,\d{3})*(?:\.\d+)?")
_OPTION = re.compile(r"\b([A-E])\b")
# Solver outcomes double as boolean keywords so code-only answers can be scored.
_BOOLEAN = re.compile(r"\b(yes|true|success|no|false|failure)\b", re.IGNORECASE)
_TRUE_WORDS = {"yes", "true", "success"}

RULES = ("numeric", "multiple_choice", "boolean", "free_text")


def extract_answer(text: str, rule: str) -> str | None:
    """Reduce raw answer text by rule; None when nothing matches."""
    if rule == "numeric":
        matches = _NUMBER.findall(text)
        if not matches:
            return None
        return matches[-1].replace(",", "")
    if rule == "multiple_choice":
        m = _OPTION.search(text)
        return m.group(1) if m else None
    if rule == "boolean":
        matches = _BOOLEAN.findall(text)
        if not matches:
            return None
        return "true" if matches[-1].lower() in _TRUE_WORDS else "false"
    if rule == "free_text":
        stripped = text.strip()
        return stripped or None
    raise ValueError(f"unknown answer rule {rule!r}")


def _parse_number(text: str) -> float | None:
    try:
        return float(text.replace(",", ""))
    except ValueError:
        return None


def answers_match(predicted: str | None, gold: str, rule: str) -> bool:
    """Compare an extracted answer against gold under the rule's tolerance."""
    if predicted is None:
        return False
    if rule == "numeric":
        p = _parse_number(predicted)
        g = _parse_number(gold)
        if p is None or g is None:
            return False
        if float(p).is_integer() and float(g).is_integer():
            return int(p) == int(g)
        return math.isclose(p, g, rel_tol=1e-6, abs_tol=1e-12)
    if rule == "multiple_choice":
        return predicted.strip().upper() == gold.strip().upper()
    if rule == "boolean":
        return predicted == (extract_answer(gold, "boolean") or gold.strip().lower())
    return predicted.strip().casefold() == gold.strip().casefold()
