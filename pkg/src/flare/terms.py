"""Term, clause, and program representation for the Prolog subset, with canonical rendering.

All values are immutable after construction and safe to share between tasks.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import NoGoalError


@dataclass(frozen=True)
class Atom:
    name: str

    def __repr__(self) -> str:
        return f"Atom({self.name!r})"


@dataclass(frozen=True)
class Variable:
    name: str

    def __repr__(self) -> str:
        return f"Variable({self.name!r})"


@dataclass(frozen=True, eq=False)
class Number:
    value: int | float

    def __eq__(self, other) -> bool:
        # 2 and 2.0 are distinct terms, as in standard Prolog.
        return (
            isinstance(other, Number)
            and type(other.value) is type(self.value)
            and other.value == self.value
        )

    def __hash__(self) -> int:
        return hash((type(self.value).__name__, self.value))

    def __repr__(self) -> str:
        return f"Number({self.value!r})"


@dataclass(frozen=True)
class Compound:
    functor: str
    args: tuple

    def __post_init__(self):
        if not self.args:
            raise ValueError("Compound requires at least one argument; use Atom instead")

    def __repr__(self) -> str:
        return f"Compound({self.functor!r}, {self.args!r})"


Term = Atom | Variable | Number | Compound


@dataclass(frozen=True)
class Clause:
    """One program clause; an empty body makes it a fact, otherwise a rule.

    source_span and comment are parsing metadata and do not take part in
    structural equality.
    """

    head: Term
    body: tuple = ()
    source_span: tuple[int, int] = field(default=(0, 0), compare=False)
    comment: str | None = field(default=None, compare=False)

    @property
    def is_fact(self) -> bool:
        return not self.body


@dataclass(frozen=True)
class Program:
    """An ordered clause list; order is load-bearing for clause selection."""

    clauses: tuple = ()
    query_goal: Term | None = None
    source: str = field(default="", compare=False)
    skipped: tuple = field(default=(), compare=False)  # (line, text) regions dropped by tolerant parsing


# Standard operator table: name -> (precedence, type). Only what the subset needs.
_INFIX_OPS: dict[str, tuple[int, str]] = {
    ":-": (1200, "xfx"),
    ";": (1100, "xfy"),
    "->": (1050, "xfy"),
    ",": (1000, "xfy"),
    "=": (700, "xfx"),
    "\\=": (700, "xfx"),
    "==": (700, "xfx"),
    "\\==": (700, "xfx"),
    "is": (700, "xfx"),
    "<": (700, "xfx"),
    ">": (700, "xfx"),
    "=<": (700, "xfx"),
    ">=": (700, "xfx"),
    "=:=": (700, "xfx"),
    "=\\=": (700, "xfx"),
    "+": (500, "yfx"),
    "-": (500, "yfx"),
    "*": (400, "yfx"),
    "/": (400, "yfx"),
    "//": (400, "yfx"),
    "mod": (400, "yfx"),
}

_PREFIX_OPS: dict[str, tuple[int, str]] = {
    "\\+": (900, "fy"),
    "-": (200, "fy"),
}

_BARE_ATOM = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")
# Operator names need spaces around them when made of word characters.
_WORDY = re.compile(r"\w")


def atom_text(name: str) -> str:
    """Render an atom name, quoting when it is not a bare lowercase atom."""
    if _BARE_ATOM.match(name) or name in ("[]", "!", ";"):
        return name
    return "'" + name.replace("'", "''") + "'"


def _number_text(value: int | float) -> str:
    if isinstance(value, bool):  # guard against accidental bools
        raise TypeError("booleans are not Prolog numbers")
    if isinstance(value, int):
        return str(value)
    return repr(value)


def render_term(term: Term, max_prec: int = 1200) -> str:
    """Canonical text of a term, parenthesised against max_prec.

    Symbolic operators render without surrounding spaces (a=b, 5+6); wordy
    operators keep them (X is Y). Compound arguments separate with a bare
    comma, which is why argument positions use precedence 999.
    """
    if isinstance(term, Atom):
        return atom_text(term.name)
    if isinstance(term, Variable):
        return term.name
    if isinstance(term, Number):
        return _number_text(term.value)

    functor, args = term.functor, term.args
    if len(args) == 2 and functor in _INFIX_OPS:
        prec, kind = _INFIX_OPS[functor]
        lp = prec - 1 if kind in ("xfx", "xfy") else prec
        rp = prec - 1 if kind in ("xfx", "yfx") else prec
        sep = f" {functor} " if _WORDY.search(functor) else functor
        if functor == ",":
            sep = ","
        text = render_term(args[0], lp) + sep + render_term(args[1], rp)
        return f"({text})" if prec > max_prec else text
    if len(args) == 1 and functor in _PREFIX_OPS:
        prec, _ = _PREFIX_OPS[functor]
        space = " " if _WORDY.search(functor) else ""
        text = functor + space + render_term(args[0], prec)
        return f"({text})" if prec > max_prec else text

    rendered = ",".join(render_term(a, 999) for a in args)
    return f"{atom_text(functor)}({rendered})"


def render_clause(clause: Clause) -> str:
    if clause.is_fact:
        return render_term(clause.head, 999) + "."
    body = ", ".join(render_term(g, 999) for g in clause.body)
    return f"{render_term(clause.head, 999)} :- {body}."


def render_program(program: Program) -> str:
    """One clause per line, comments dropped; the shape parse_program inverts."""
    return "\n".join(render_clause(c) for c in program.clauses) + ("\n" if program.clauses else "")


def indicator(term: Term) -> str:
    """functor/arity identity of a callable term, e.g. query/0 or reiki_energy/1."""
    if isinstance(term, Atom):
        return f"{term.name}/0"
    if isinstance(term, Compound):
        return f"{term.functor}/{len(term.args)}"
    raise TypeError(f"not a callable term: {term!r}")


def term_variables(term: Term) -> list[str]:
    """Variable names in first-occurrence order."""
    seen: list[str] = []

    def walk(t: Term) -> None:
        if isinstance(t, Variable):
            if t.name not in seen:
                seen.append(t.name)
        elif isinstance(t, Compound):
            for a in t.args:
                walk(a)

    walk(term)
    return seen


def is_ground(term: Term) -> bool:
    if isinstance(term, Variable):
        return False
    if isinstance(term, Compound):
        return all(is_ground(a) for a in term.args)
    return True


def extract_query_goal(program: Program) -> Term:
    """The driver goal: recovered query_goal, else the last rule named query, else the final head."""
    if program.query_goal is not None:
        return program.query_goal
    for clause in reversed(program.clauses):
        if not clause.is_fact and isinstance(clause.head, Atom) and clause.head.name == "query":
            return clause.head
        if not clause.is_fact and isinstance(clause.head, Compound) and clause.head.functor == "query":
            return clause.head
    if not program.clauses:
        raise NoGoalError("empty program has no goal")
    return program.clauses[-1].head
