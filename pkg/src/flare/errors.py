"""Exception types shared across the package."""

from __future__ import annotations


class FlareError(Exception):
    """Base class for all errors raised by this package."""


# --- parsing ---------------------------------------------------------------

class ParseError(FlareError):
    """Source text could not be parsed into a clause list."""

    def __init__(self, message: str, line: int = 0, column: int = 0, token: str = ""):
        super().__init__(message)
        self.line = line
        self.column = column
        self.token = token

    def __str__(self) -> str:
        loc = f" at line {self.line}, column {self.column}" if self.line else ""
        tok = f" near {self.token!r}" if self.token else ""
        return f"{self.args[0]}{loc}{tok}"


class NoGoalError(FlareError):
    """The program is empty, so no driver goal can be extracted."""


# --- solving ---------------------------------------------------------------

class PrologRuntimeError(FlareError):
    """Execution failed: unknown predicate, bad arithmetic, or an unsupported construct."""


class UnknownPredicateError(PrologRuntimeError):
    def __init__(self, functor: str, arity: int):
        super().__init__(f"unknown predicate {functor}/{arity}")
        self.functor = functor
        self.arity = arity


class UnsupportedConstructError(PrologRuntimeError):
    pass


class NotGroundError(PrologRuntimeError):
    """An arithmetic expression still contains unbound variables."""


class DivisionByZeroError(PrologRuntimeError):
    pass


class UnknownOperatorError(PrologRuntimeError):
    pass


class BudgetExceededError(FlareError):
    """Internal control-flow signal: the step or depth budget was hit."""


# --- trace analysis / metrics ----------------------------------------------

class EmptyTraceError(FlareError):
    """No recognisable trace line was found in the text."""


class EmptyReferenceError(FlareError):
    """The reference text has zero tokens, so ROUGE is undefined."""


class EmptyCorpusError(FlareError):
    pass


# --- gateway ----------------------------------------------------------------

class MissingPriorError(FlareError):
    """A prompt stage was rendered without a stage it conditions on."""

    def __init__(self, stage: str):
        super().__init__(f"missing prior stage: {stage}")
        self.stage = stage


class BackendUnavailableError(FlareError):
    """Transport-level failure talking to the generation backend."""


class ContextOverflowError(FlareError):
    """The backend reported that the prompt exceeds its context window."""


class MissingFixtureError(FlareError):
    def __init__(self, run_id: str, stage: str):
        super().__init__(f"no fixture for run {run_id!r}, stage {stage!r}")
        self.run_id = run_id
        self.stage = stage


class MalformedFixtureError(FlareError):
    def __init__(self, path: str, reason: str):
        super().__init__(f"malformed fixture {path}: {reason}")
        self.path = path


# --- pipeline / harness ------------------------------------------------------

class StageFailureError(FlareError):
    """A pipeline stage failed; the partial run record is attached."""

    def __init__(self, stage: str, cause: Exception, record=None):
        super().__init__(f"stage {stage} failed: {cause}")
        self.stage = stage
        self.cause = cause
        self.record = record


class RefinementExhaustedError(FlareError):
    """All self-refinement attempts produced non-executable code."""


class SchemaError(FlareError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DuplicateIdError(FlareError):
    pass


class IoError(FlareError):
    def __init__(self, message: str, path: str):
        super().__init__(f"{message}: {path}")
        self.path = path
