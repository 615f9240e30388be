from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for oracle / solver_fixtures imports

REPO = Path(__file__).parent.parent
DATA = REPO / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def reiki_dir() -> Path:
    return DATA / "replay" / "reiki"


@pytest.fixture(scope="session")
def reiki_code(reiki_dir: Path) -> str:
    return (reiki_dir / "code.txt").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def reiki_search(reiki_dir: Path) -> str:
    return (reiki_dir / "search.txt").read_text(encoding="utf-8")


def build_direction_corpus(root: Path, runs: int = 20) -> Path:
    """Synthetic 20-run replay corpus where correct-labeled runs reuse all
    code relations and surface arithmetic results, while incorrect runs skip
    a relation and invent one; gives the UEF+/OR+/UR- delta pattern."""
    fixture_dir = root / "corpus20"
    for index in range(1, runs + 1):
        run_id = f"c{index:02d}"
        correct = index <= runs // 2
        a = index
        b = index + 1
        total = a + b
        run_dir = fixture_dir / run_id
        run_dir.mkdir(parents=True, exist_ok=True)
        code = (
            f"step_value(a, {a}).\n"
            f"step_value(b, {b}).\n"
            "combine(T) :- step_value(a, X), step_value(b, Y), T is X+Y.\n"
            "check(T) :- T > 0.\n"
            "query :- combine(T), check(T).\n"
            "% query.\n"
        )
        plan = (
            "Explanation:\nTwo step values must be combined and validated.\n\n"
            "Analysis:\nAdd the two values, then check the total is positive.\n\n"
            "Plan:\n- Encode both step values.\n- Sum them.\n- Validate and answer.\n"
        )
        if correct:
            search = (
                "0: Start of execution: Beginning Search\n"
                "1: Call: query\n"
                "2: Call: combine(T)\n"
                f"3: Call: step_value(a, {a})\n"
                f"4: Exit: step_value(a, {a})\n"
                f"5: Call: step_value(b, {b})\n"
                f"6: Exit: step_value(b, {b})\n"
                f"7: Exit: {total} is {a}+{b}\n"
                f"8: Exit: combine({total})\n"
                f"9: Call: check({total})\n"
                f"10: Call: {total}>0\n"
                f"11: Exit: {total}>0\n"
                f"12: Exit: check({total})\n"
                "13: Exit: query | {'Result': 'Search Succeeded'}\n"
            )
            answer = f"The combined total is {total}."
        else:
            search = (
                "0: Start of execution: Beginning Search\n"
                "1: Call: query\n"
                "2: Call: combine(T)\n"
                f"3: Call: guess_answer({total + 2})\n"
                f"4: Exit: guess_answer({total + 2})\n"
                f"5: Exit: combine({total + 2})\n"
                "6: Exit: query | {'Result': 'Search Succeeded'}\n"
            )
            answer = f"The combined total is {total + 2}."
        (run_dir / "plan.txt").write_text(plan, encoding="utf-8")
        (run_dir / "code.txt").write_text(code, encoding="utf-8")
        (run_dir / "search.txt").write_text(search, encoding="utf-8")
        (run_dir / "answer.txt").write_text(answer, encoding="utf-8")
    return fixture_dir


def direction_corpus_items(runs: int = 20) -> list[dict]:
    items = []
    for index in range(1, runs + 1):
        items.append({
            "id": f"c{index:02d}",
            "question": f"What is {index} plus {index + 1}?",
            "gold": str(2 * index + 1),
            "answer_type": "numeric",
        })
    return items


@pytest.fixture(scope="session")
def direction_corpus(tmp_path_factory) -> Path:
    return build_direction_corpus(tmp_path_factory.mktemp("fixtures"))
