"""SLD resolution with DFS, chronological backtracking, and a 4-port trace.

The solver grounds the faithfulness measurements: its formatted traces are
the reference the simulated searches are scored against, so event order and
line format are part of the contract and must stay byte-stable.

The proof machine is iterative (explicit frame stack on the heap), so deep
or divergent programs hit the step/depth budget instead of the interpreter
stack.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import (
    BudgetExceededError,
    DivisionByZeroError,
    NotGroundError,
    PrologRuntimeError,
    UnknownOperatorError,
    UnknownPredicateError,
    UnsupportedConstructError,
)
from .terms import Atom, Compound, Number, Program, Term, Variable, indicator, render_term, term_variables

SUCCEEDED_ANNOTATION = "{'Result': 'Search Succeeded'}"
FAILED_ANNOTATION = "{'Result': 'Search Failed'}"

START_LINE = "0: Start of execution: Beginning Search"


class Outcome:
    SUCCESS = "success"
    FAILURE = "failure"
    BUDGET_EXCEEDED = "budget_exceeded"
    RUNTIME_ERROR = "runtime_error"


class Substitution:
    """Immutable variable bindings; extension returns a new substitution."""

    __slots__ = ("bindings",)

    def __init__(self, bindings: dict | None = None):
        self.bindings = bindings or {}

    def walk(self, term: Term) -> Term:
        while isinstance(term, Variable) and term.name in self.bindings:
            term = self.bindings[term.name]
        return term

    def resolve(self, term: Term) -> Term:
        """Deep application; the result contains only unbound variables.

        Cyclic bindings (possible only with the occurs check disabled) are
        cut at the repeated variable so rendering terminates.
        """
        return self._resolve(term, frozenset())

    def _resolve(self, term: Term, active: frozenset) -> Term:
        while isinstance(term, Variable):
            if term.name in active or term.name not in self.bindings:
                return term
            active = active | {term.name}
            term = self.bindings[term.name]
        if isinstance(term, Compound):
            return Compound(term.functor, tuple(self._resolve(a, active) for a in term.args))
        return term

    def bind(self, name: str, term: Term) -> "Substitution":
        return Substitution({**self.bindings, name: term})

    def __eq__(self, other) -> bool:
        return isinstance(other, Substitution) and self.bindings == other.bindings

    def __repr__(self) -> str:
        return f"Substitution({self.bindings!r})"


def _occurs(name: str, term: Term, subst: Substitution) -> bool:
    term = subst.walk(term)
    if isinstance(term, Variable):
        return term.name == name
    if isinstance(term, Compound):
        return any(_occurs(name, a, subst) for a in term.args)
    return False


def unify(a: Term, b: Term, subst: Substitution, occurs_check: bool = True) -> Substitution | None:
    """Most general unifier extending subst, or None; subst is never mutated."""
    a = subst.walk(a)
    b = subst.walk(b)
    if isinstance(a, Variable):
        if isinstance(b, Variable) and a.name == b.name:
            return subst
        if occurs_check and _occurs(a.name, b, subst):
            return None
        return subst.bind(a.name, b)
    if isinstance(b, Variable):
        if occurs_check and _occurs(b.name, a, subst):
            return None
        return subst.bind(b.name, a)
    if isinstance(a, Atom) and isinstance(b, Atom):
        return subst if a.name == b.name else None
    if isinstance(a, Number) and isinstance(b, Number):
        # Type-strict: 2 and 2.0 compare =:= equal but do not unify.
        return subst if a == b else None
    if isinstance(a, Compound) and isinstance(b, Compound):
        if a.functor != b.functor or len(a.args) != len(b.args):
            return None
        for x, y in zip(a.args, b.args):
            subst = unify(x, y, subst, occurs_check)
            if subst is None:
                return None
        return subst
    return None


def eval_arithmetic(expr: Term, subst: Substitution) -> int | float:
    """Evaluate a ground arithmetic expression built from +,-,*,/,//,mod and unary minus."""
    expr = subst.walk(expr)
    if isinstance(expr, Number):
        return expr.value
    if isinstance(expr, Variable):
        raise NotGroundError(f"unbound variable {expr.name} in arithmetic")
    if isinstance(expr, Atom):
        raise UnknownOperatorError(f"not an arithmetic value: {expr.name}")
    op, args = expr.functor, expr.args
    if len(args) == 1 and op == "-":
        return -eval_arithmetic(args[0], subst)
    if len(args) != 2:
        raise UnknownOperatorError(f"unknown arithmetic operator {op}/{len(args)}")
    left = eval_arithmetic(args[0], subst)
    right = eval_arithmetic(args[1], subst)
    if op == "+":
        return left + right
    if op == "-":
        return left - right
    if op == "*":
        return left * right
    if op == "/":
        if right == 0:
            raise DivisionByZeroError("division by zero")
        if isinstance(left, int) and isinstance(right, int):
            return left // right if left % right == 0 else left / right
        return left / right
    if op == "//":
        if right == 0:
            raise DivisionByZeroError("division by zero")
        return int(math.floor(left / right))
    if op == "mod":
        if right == 0:
            raise DivisionByZeroError("division by zero")
        return left % right
    raise UnknownOperatorError(f"unknown arithmetic operator {op}/2")


@dataclass(frozen=True)
class SolveBudget:
    max_steps: int = 10_000
    max_depth: int = 256
    max_solutions: int = 16

    def __post_init__(self):
        if self.max_steps <= 0 or self.max_depth <= 0 or self.max_solutions <= 0:
            raise ValueError("budget limits must be strictly positive")


@dataclass(frozen=True)
class TraceEvent:
    step: int
    kind: str  # Start Call Exit Fail Redo
    goal_text: str
    depth: int
    path_id: int
    annotation: str | None = None


@dataclass(frozen=True)
class ExecutionTrace:
    events: tuple = ()
    outcome: str = Outcome.FAILURE
    error: str | None = None
    solutions: tuple = ()  # one {var: rendered term} mapping per solution

    @property
    def succeeded(self) -> bool:
        return self.outcome == Outcome.SUCCESS


_COMPARISONS = {
    "<": lambda a, b: a < b,
    ">": lambda a, b: a > b,
    "=<": lambda a, b: a <= b,
    ">=": lambda a, b: a >= b,
    "=:=": lambda a, b: a == b,
    "=\\=": lambda a, b: a != b,
}

_REJECTED = {";/2", "!/0", "->/2"}

# Scheduler messages. A frame handler returns (frame, message, payload);
# frame None addresses the top-level collector.
_PULL, _YIELD, _DONE = "pull", "yield", "done"


class _Engine:
    def __init__(self, program: Program, budget: SolveBudget, occurs_check: bool, unknown: str):
        self.program = program
        self.budget = budget
        self.occurs_check = occurs_check
        self.unknown = unknown  # "error" or "fail"
        self.events: list[TraceEvent] = [TraceEvent(0, "Start", "", 0, 1)]
        self.path = 1
        self._fresh = 0

    def emit(self, kind: str, goal: Term, subst: Substitution, depth: int, annotation: str | None = None) -> None:
        step = len(self.events)
        if step >= self.budget.max_steps:
            raise BudgetExceededError(f"step budget {self.budget.max_steps} exhausted")
        text = render_term(subst.resolve(goal), 999)
        self.events.append(TraceEvent(step, kind, text, depth, self.path, annotation))

    def rename(self, head: Term, body: tuple) -> tuple[Term, tuple]:
        mapping: dict[str, Variable] = {}

        def fresh(term: Term) -> Term:
            if isinstance(term, Variable):
                if term.name not in mapping:
                    self._fresh += 1
                    mapping[term.name] = Variable(f"_G{self._fresh}")
                return mapping[term.name]
            if isinstance(term, Compound):
                return Compound(term.functor, tuple(fresh(a) for a in term.args))
            return term

        return fresh(head), tuple(fresh(g) for g in body)


class _SolveFrame:
    """Byrd box for one goal: Call, Exit per solution, Redo on re-entry, Fail on exhaustion."""

    __slots__ = ("engine", "goal", "subst", "depth", "root", "parent", "child", "started")

    def __init__(self, engine: _Engine, goal: Term, subst: Substitution, depth: int, parent, root: bool = False):
        self.engine = engine
        self.goal = goal
        self.subst = subst
        self.depth = depth
        self.root = root
        self.parent = parent
        self.child = None
        self.started = False

    def on_pull(self):
        if not self.started:
            self.started = True
            if self.depth > self.engine.budget.max_depth:
                raise BudgetExceededError(f"depth budget {self.engine.budget.max_depth} exhausted")
            self.engine.emit("Call", self.goal, self.subst, self.depth)
            self.child = _make_dispatch(self.engine, self.goal, self.subst, self.depth, self)
            return self.child, _PULL, None
        # Re-entered after a solution: a new attempt at this goal.
        if self.root:
            self.engine.path += 1
        self.engine.emit("Redo", self.goal, self.subst, self.depth)
        return self.child, _PULL, None

    def on_child_yield(self, solution: Substitution):
        annotation = SUCCEEDED_ANNOTATION if self.root else None
        self.engine.emit("Exit", self.goal, solution, self.depth, annotation)
        return self.parent, _YIELD, solution

    def on_child_done(self):
        self.engine.emit("Fail", self.goal, self.subst, self.depth, FAILED_ANNOTATION)
        return self.parent, _DONE, None


class _BuiltinFrame:
    """Zero-or-one-solution builtins; evaluation is deferred to the first pull."""

    __slots__ = ("engine", "compute", "parent", "fired")

    def __init__(self, engine: _Engine, compute, parent):
        self.engine = engine
        self.compute = compute  # () -> Substitution | None
        self.parent = parent
        self.fired = False

    def on_pull(self):
        if self.fired:
            return self.parent, _DONE, None
        self.fired = True
        solution = self.compute()
        if solution is None:
            return self.parent, _DONE, None
        return self.parent, _YIELD, solution


class _NegationFrame:
    """Negation as failure; the inner attempt traces one level deeper."""

    __slots__ = ("engine", "inner", "subst", "depth", "parent", "started", "answered")

    def __init__(self, engine: _Engine, inner: Term, subst: Substitution, depth: int, parent):
        self.engine = engine
        self.inner = inner
        self.subst = subst
        self.depth = depth
        self.parent = parent
        self.started = False
        self.answered = False

    def on_pull(self):
        if self.answered:
            return self.parent, _DONE, None
        if not self.started:
            self.started = True
            child = _SolveFrame(self.engine, self.inner, self.subst, self.depth + 1, self)
            return child, _PULL, None
        return self.parent, _DONE, None

    def on_child_yield(self, _solution):
        # Inner proof succeeded, so the negation fails; the inner frame is
        # simply abandoned without further events.
        self.answered = True
        return self.parent, _DONE, None

    def on_child_done(self):
        self.answered = True
        return self.parent, _YIELD, self.subst


class _UserPredFrame:
    """Top-to-bottom clause selection for a user-defined predicate."""

    __slots__ = ("engine", "goal", "subst", "depth", "parent", "clauses", "index", "child")

    def __init__(self, engine: _Engine, goal: Term, subst: Substitution, depth: int, parent, clauses: list):
        self.engine = engine
        self.goal = goal
        self.subst = subst
        self.depth = depth
        self.parent = parent
        self.clauses = clauses
        self.index = 0
        self.child = None

    def on_pull(self):
        if self.child is not None:
            return self.child, _PULL, None
        return self._advance()

    def _advance(self):
        while self.index < len(self.clauses):
            clause = self.clauses[self.index]
            self.index += 1
            head, body = self.engine.rename(clause.head, clause.body)
            bound = unify(self.goal, head, self.subst, self.engine.occurs_check)
            if bound is None:
                continue
            if not body:
                return self.parent, _YIELD, bound
            self.child = _ConjFrame(self.engine, body, bound, self.depth + 1, self)
            return self.child, _PULL, None
        return self.parent, _DONE, None

    def on_child_yield(self, solution: Substitution):
        return self.parent, _YIELD, solution

    def on_child_done(self):
        self.child = None
        return self._advance()


class _ConjFrame:
    """Left-to-right conjunction; on backtrack the deepest active goal retries first."""

    __slots__ = ("engine", "goals", "depth", "parent", "frames", "started", "first_subst")

    def __init__(self, engine: _Engine, goals: tuple, subst: Substitution, depth: int, parent):
        self.engine = engine
        self.goals = goals
        self.depth = depth
        self.parent = parent
        self.first_subst = subst
        self.frames: list[_SolveFrame] = []
        self.started = False

    def on_pull(self):
        if not self.started:
            self.started = True
            frame = _SolveFrame(self.engine, self.goals[0], self.first_subst, self.depth, self)
            self.frames.append(frame)
            return frame, _PULL, None
        return self.frames[-1], _PULL, None

    def on_child_yield(self, solution: Substitution):
        position = len(self.frames) - 1
        if position == len(self.goals) - 1:
            return self.parent, _YIELD, solution
        frame = _SolveFrame(self.engine, self.goals[position + 1], solution, self.depth, self)
        self.frames.append(frame)
        return frame, _PULL, None

    def on_child_done(self):
        self.frames.pop()
        if not self.frames:
            return self.parent, _DONE, None
        return self.frames[-1], _PULL, None


def _make_dispatch(engine: _Engine, goal: Term, subst: Substitution, depth: int, parent):
    goal = subst.walk(goal)
    if isinstance(goal, Variable):
        raise PrologRuntimeError("goal is an unbound variable")
    if isinstance(goal, Number):
        raise PrologRuntimeError(f"goal is a number: {goal.value}")

    name = goal.name if isinstance(goal, Atom) else goal.functor
    args = () if isinstance(goal, Atom) else goal.args
    key = f"{name}/{len(args)}"

    if key in _REJECTED:
        raise UnsupportedConstructError(f"unsupported construct {key}")
    if key == "true/0":
        return _BuiltinFrame(engine, lambda: subst, parent)
    if key in ("fail/0", "false/0"):
        return _BuiltinFrame(engine, lambda: None, parent)
    if key == "=/2":
        return _BuiltinFrame(engine, lambda: unify(args[0], args[1], subst, engine.occurs_check), parent)
    if key == "\\=/2":
        def not_unifiable():
            return subst if unify(args[0], args[1], subst, engine.occurs_check) is None else None
        return _BuiltinFrame(engine, not_unifiable, parent)
    if key == "is/2":
        def evaluate():
            value = eval_arithmetic(args[1], subst)
            return unify(args[0], Number(value), subst, engine.occurs_check)
        return _BuiltinFrame(engine, evaluate, parent)
    if len(args) == 2 and name in _COMPARISONS:
        def compare():
            left = eval_arithmetic(args[0], subst)
            right = eval_arithmetic(args[1], subst)
            return subst if _COMPARISONS[name](left, right) else None
        return _BuiltinFrame(engine, compare, parent)
    if key == "\\+/1":
        return _NegationFrame(engine, args[0], subst, depth, parent)

    clauses = [c for c in engine.program.clauses if indicator(c.head) == key]
    if not clauses and engine.unknown == "error":
        raise UnknownPredicateError(name, len(args))
    return _UserPredFrame(engine, goal, subst, depth, parent, clauses)


def _project(goal: Term, subst: Substitution) -> dict:
    return {name: render_term(subst.resolve(Variable(name)), 999) for name in term_variables(goal)}


def solve(
    program: Program,
    goal: Term,
    budget: SolveBudget | None = None,
    mode: str = "first",
    occurs_check: bool = True,
    unknown: str = "error",
) -> ExecutionTrace:
    """Prove goal against program with leftmost selection and source clause order.

    mode="first" stops at the first proof; mode="all" keeps exploring past
    successes up to budget.max_solutions. The budget bounds both emitted
    events and proof depth, so divergent programs terminate with a
    budget_exceeded outcome instead of looping.
    """
    if mode not in ("first", "all"):
        raise ValueError(f"unknown mode {mode!r}")
    budget = budget or SolveBudget()

    engine = _Engine(program, budget, occurs_check, unknown)
    root = _SolveFrame(engine, goal, Substitution(), 0, None, root=True)
    solutions: list[dict] = []
    error: str | None = None
    budget_hit = False

    frame, message, payload = root, _PULL, None
    try:
        while True:
            if frame is None:
                if message == _YIELD:
                    solutions.append(_project(goal, payload))
                    if mode == "first" or len(solutions) >= budget.max_solutions:
                        break
                    frame, message, payload = root, _PULL, None
                    continue
                break  # root exhausted
            if message == _PULL:
                frame, message, payload = frame.on_pull()
            elif message == _YIELD:
                frame, message, payload = frame.on_child_yield(payload)
            else:
                frame, message, payload = frame.on_child_done()
    except BudgetExceededError:
        budget_hit = True
    except PrologRuntimeError as err:
        error = str(err)
    except RecursionError:
        error = "recursion limit exceeded"

    if solutions:
        outcome = Outcome.SUCCESS
    elif error is not None:
        outcome = Outcome.RUNTIME_ERROR
    elif budget_hit:
        outcome = Outcome.BUDGET_EXCEEDED
    else:
        outcome = Outcome.FAILURE
    return ExecutionTrace(tuple(engine.events), outcome, error, tuple(solutions))


def format_trace(trace: ExecutionTrace) -> str:
    """The canonical on-disk trace text; byte-stable for identical runs."""
    lines: list[str] = []
    current_path = 1
    for event in trace.events:
        if event.kind == "Start":
            lines.append(START_LINE)
            continue
        if event.path_id != current_path:
            current_path = event.path_id
            lines.append(f"[Path {current_path}]:")
        line = f"{event.step}: {event.kind}: {event.goal_text}"
        if event.annotation:
            line += f" | {event.annotation}"
        lines.append(line)
    if not lines:
        lines.append(START_LINE)
    return "\n".join(lines)


def trace_events_jsonl(trace: ExecutionTrace) -> str:
    """One JSON object per event, for tooling that wants structure over text."""
    rows = []
    for event in trace.events:
        rows.append(json.dumps({
            "step": event.step,
            "kind": event.kind,
            "goal": event.goal_text,
            "depth": event.depth,
            "path": event.path_id,
            "annotation": event.annotation,
        }, sort_keys=True))
    return "\n".join(rows)
