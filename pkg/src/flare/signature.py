"""Knowledge signatures: the fact/relation/goal/answer sets pulled from code or search text."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NoGoalError
from .terms import Program, extract_query_goal, indicator, render_clause, render_term


@dataclass(frozen=True)
class KnowledgeSignature:
    """Facts are full canonical clause texts; relations are functor/arity identifiers.

    relation_texts keeps the canonical defining clauses per relation for
    reporting; it does not take part in equality.
    """

    facts: frozenset[str] = frozenset()
    relations: frozenset[str] = frozenset()
    goal: str | None = None
    answers: frozenset[str] = frozenset()
    relation_texts: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {
            "facts": sorted(self.facts),
            "relations": sorted(self.relations),
            "goal": self.goal,
            "answers": sorted(self.answers),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "KnowledgeSignature":
        return cls(
            facts=frozenset(data.get("facts", ())),
            relations=frozenset(data.get("relations", ())),
            goal=data.get("goal"),
            answers=frozenset(data.get("answers", ())),
        )


def extract_code_signature(program: Program) -> KnowledgeSignature:
    """Classify each clause by body emptiness.

    A predicate with any rule clause is a relation; its clauses (facts
    included) become that relation's defining texts. Predicates made solely
    of facts contribute each canonical fact text. This keeps the fact and
    relation identifier sets disjoint even when a predicate mixes both
    clause shapes.
    """
    rule_preds = {indicator(c.head) for c in program.clauses if not c.is_fact}

    facts: set[str] = set()
    relation_texts: dict[str, list[str]] = {}
    for clause in program.clauses:
        ident = indicator(clause.head)
        if ident in rule_preds:
            relation_texts.setdefault(ident, []).append(render_clause(clause))
        else:
            facts.add(render_term(clause.head, 999))

    try:
        goal = render_term(extract_query_goal(program), 999)
    except NoGoalError:
        goal = None

    return KnowledgeSignature(
        facts=frozenset(facts),
        relations=frozenset(relation_texts),
        goal=goal,
        relation_texts={k: tuple(v) for k, v in relation_texts.items()},
    )
