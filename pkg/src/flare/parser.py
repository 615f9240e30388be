"""Parser for the Prolog subset emitted by the code stage.

Accepts raw completion text: fenced code blocks are unwrapped and prose lines
around the program are skipped (skips are recorded on the Program, never
silent). Clause order is preserved exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .terms import (
    Atom,
    Clause,
    Compound,
    Number,
    Program,
    Term,
    Variable,
    _INFIX_OPS,
)

_FENCE = re.compile(r"```[ \t]*[A-Za-z0-9_+-]*[ \t]*\n(.*?)(?:```|\Z)", re.DOTALL)

# Longest match first so =:= is not read as = followed by :=.
_SYMBOLIC_OPS = [
    "=:=", "=\\=", "\\==", ":-", "->", "\\=", "==", "=<", ">=", "//", "\\+",
    "=", "<", ">", "+", "-", "*", "/", ";", "!",
]

_NUMBER = re.compile(r"\d+\.\d+(?:[eE][+-]?\d+)?|\d+[eE][+-]?\d+|\d+")
_NAME = re.compile(r"[a-z][A-Za-z0-9_]*")
_VAR = re.compile(r"[A-Z_][A-Za-z0-9_]*")
_QUOTED = re.compile(r"'(?:[^'\n]|'')*'")


@dataclass(frozen=True)
class _Token:
    kind: str  # ATOM QATOM VAR INT FLOAT OP PUNCT END ERROR EOF
    text: str
    line: int
    col: int


def _tokenize(text: str) -> tuple[list[_Token], list[tuple[int, str]]]:
    """Token list plus (line, text) comment list. Never raises; bad input
    becomes ERROR tokens so the clause loop can recover."""
    tokens: list[_Token] = []
    comments: list[tuple[int, str]] = []
    i, line, line_start = 0, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            i += 1
            line_start = i
            continue
        if ch in " \t\r":
            i += 1
            continue
        col = i - line_start + 1
        if ch == "%":
            end = text.find("\n", i)
            end = n if end == -1 else end
            comments.append((line, text[i + 1:end].strip()))
            i = end
            continue
        if ch.isdigit():
            m = _NUMBER.match(text, i)
            lexeme = m.group(0)
            kind = "INT" if lexeme.isdigit() else "FLOAT"
            tokens.append(_Token(kind, lexeme, line, col))
            i = m.end()
            continue
        if ch == "'":
            m = _QUOTED.match(text, i)
            if not m:
                tokens.append(_Token("ERROR", ch, line, col))
                i += 1
                continue
            inner = m.group(0)[1:-1].replace("''", "'")
            tokens.append(_Token("QATOM", inner, line, col))
            i = m.end()
            continue
        m = _NAME.match(text, i)
        if m:
            tokens.append(_Token("ATOM", m.group(0), line, col))
            i = m.end()
            continue
        m = _VAR.match(text, i)
        if m:
            tokens.append(_Token("VAR", m.group(0), line, col))
            i = m.end()
            continue
        if ch in "(),":
            tokens.append(_Token("PUNCT", ch, line, col))
            i += 1
            continue
        if ch == ".":
            nxt = text[i + 1] if i + 1 < n else ""
            if nxt == "" or nxt in " \t\r\n%":
                tokens.append(_Token("END", ".", line, col))
            else:
                tokens.append(_Token("ERROR", ".", line, col))
            i += 1
            continue
        for op in _SYMBOLIC_OPS:
            if text.startswith(op, i):
                tokens.append(_Token("OP", op, line, col))
                i += len(op)
                break
        else:
            tokens.append(_Token("ERROR", ch, line, col))
            i += 1
    tokens.append(_Token("EOF", "", line, n - line_start + 1))
    return tokens, comments


class _TermParser:
    """Precedence-climbing parser over a token window."""

    def __init__(self, tokens: list[_Token], pos: int, anon: list[int]):
        self.tokens = tokens
        self.pos = pos
        self.anon = anon  # shared anonymous-variable counter

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, tok: _Token | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, tok.line, tok.col, tok.text)

    def expect(self, kind: str, text: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind or tok.text != text:
            raise self.fail(f"expected {text!r}")
        return self.take()

    def term(self, max_prec: int = 1200) -> Term:
        left = self.primary(max_prec)
        left_prec = 0
        while True:
            tok = self.peek()
            name = None
            if tok.kind == "OP" and tok.text in _INFIX_OPS:
                name = tok.text
            elif tok.kind == "ATOM" and tok.text in ("is", "mod"):
                name = tok.text
            elif tok.kind == "PUNCT" and tok.text == "," and max_prec >= 1000:
                name = ","
            if name is None:
                break
            prec, kind = _INFIX_OPS[name]
            left_max = prec - 1 if kind in ("xfx", "xfy") else prec
            if prec > max_prec or left_prec > left_max:
                break
            self.take()
            right = self.term(prec if kind == "xfy" else prec - 1)
            left = Compound(name, (left, right))
            left_prec = prec
        return left

    def primary(self, max_prec: int) -> Term:
        tok = self.peek()
        if tok.kind == "INT":
            self.take()
            return Number(int(tok.text))
        if tok.kind == "FLOAT":
            self.take()
            return Number(float(tok.text))
        if tok.kind == "VAR":
            self.take()
            if tok.text == "_":
                self.anon[0] += 1
                return Variable(f"_Anon{self.anon[0]}")
            return Variable(tok.text)
        if tok.kind in ("ATOM", "QATOM"):
            self.take()
            nxt = self.peek()
            if nxt.kind == "PUNCT" and nxt.text == "(":
                return Compound(tok.text, self.arglist())
            return Atom(tok.text)
        if tok.kind == "PUNCT" and tok.text == "(":
            self.take()
            inner = self.term(1200)
            self.expect("PUNCT", ")")
            return inner
        if tok.kind == "OP":
            if tok.text == "-" and max_prec >= 200:
                self.take()
                operand = self.primary(200)
                if isinstance(operand, Number):
                    return Number(-operand.value)
                return Compound("-", (operand,))
            if tok.text == "\\+" and max_prec >= 900:
                self.take()
                return Compound("\\+", (self.term(900),))
            if tok.text == "!":
                self.take()
                return Atom("!")
        raise self.fail("expected a term")

    def arglist(self) -> tuple:
        self.expect("PUNCT", "(")
        args = [self.term(999)]
        while self.peek().kind == "PUNCT" and self.peek().text == ",":
            self.take()
            args.append(self.term(999))
        self.expect("PUNCT", ")")
        return tuple(args)


def _flatten_conj(term: Term) -> tuple:
    if isinstance(term, Compound) and term.functor == "," and len(term.args) == 2:
        return _flatten_conj(term.args[0]) + _flatten_conj(term.args[1])
    return (term,)


def _to_clause(term: Term, span: tuple[int, int], at: _Token) -> Clause:
    if isinstance(term, Compound) and term.functor == ":-" and len(term.args) == 2:
        head, body = term.args
        if isinstance(head, (Variable, Number)):
            raise ParseError("clause head must be an atom or compound", at.line, at.col, at.text)
        return Clause(head, _flatten_conj(body), span)
    if isinstance(term, (Variable, Number)):
        raise ParseError("clause head must be an atom or compound", at.line, at.col, at.text)
    return Clause(term, (), span)


def extract_program_text(text: str) -> str:
    """Unwrap the first fenced code block, if any; otherwise the text itself."""
    m = _FENCE.search(text)
    return m.group(1) if m else text


_QUERY_COMMENT = re.compile(r"^\s*(query(?:\([^)]*\))?)\s*\.?\s*$")


def _recover_query_goal(comments: list[tuple[int, str]]) -> Term | None:
    """The commented-out driver predicate, per the code-stage instruction."""
    goal: Term | None = None
    for _, comment in comments:
        m = _QUERY_COMMENT.match(comment)
        if not m:
            continue
        try:
            goal = parse_term_text(m.group(1))
        except ParseError:
            continue
    return goal


def parse_program(source: str) -> Program:
    """Parse source text (possibly with prose or fences) into a Program.

    Raises ParseError only when nothing clause-shaped can be recovered from
    non-empty input; partial recovery records the skipped regions instead.
    """
    text = extract_program_text(source)
    tokens, comments = _tokenize(text)
    anon = [0]
    clauses: list[Clause] = []
    skipped: list[tuple[int, str]] = []
    lines = text.splitlines()
    first_error: ParseError | None = None

    pos = 0
    while tokens[pos].kind != "EOF":
        start_tok = tokens[pos]
        parser = _TermParser(tokens, pos, anon)
        try:
            term = parser.term(1200)
            end_tok = parser.expect("END", ".")
            clause = _to_clause(term, (start_tok.line, end_tok.line), start_tok)
        except ParseError as err:
            if first_error is None:
                first_error = err
            bad_line = max(err.line, start_tok.line)
            for ln in range(start_tok.line, bad_line + 1):
                if 1 <= ln <= len(lines) and lines[ln - 1].strip():
                    skipped.append((ln, lines[ln - 1].strip()))
            while tokens[pos].kind != "EOF" and tokens[pos].line <= bad_line:
                pos += 1
            continue
        pos = parser.pos
        clauses.append(clause)

    if not clauses and text.strip():
        raise first_error or ParseError("no clauses found", 1, 1)

    clauses = _attach_comments(clauses, comments)
    return Program(
        clauses=tuple(clauses),
        query_goal=_recover_query_goal(comments),
        source=source,
        skipped=tuple(skipped),
    )


def _attach_comments(clauses: list[Clause], comments: list[tuple[int, str]]) -> list[Clause]:
    out = []
    for clause in clauses:
        lo, hi = clause.source_span
        trailing = [c for ln, c in comments if lo <= ln <= hi]
        if trailing:
            clause = Clause(clause.head, clause.body, clause.source_span, "; ".join(trailing))
        out.append(clause)
    return out


def parse_term_text(text: str) -> Term:
    """Parse a single term (no trailing period required)."""
    tokens, _ = _tokenize(text)
    parser = _TermParser(tokens, 0, [0])
    term = parser.term(1200)
    tok = parser.peek()
    if tok.kind == "END":
        parser.take()
        tok = parser.peek()
    if tok.kind != "EOF":
        raise parser.fail("trailing input after term", tok)
    return term
