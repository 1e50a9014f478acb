"""Tokenizer and block-structure parser for curly-brace source text.

The grammar is a permissive C-like subset: statements end at ``;``,
blocks are delimited by braces, ``if``/``else if``/``else`` chains and
``switch`` statements become condition blocks, ``for``/``while``/``do``
become loop blocks, and ``try``/``catch``/``finally`` becomes an
exception block.  Preprocessor lines and comments are kept as one token
per line so the token stream is lossless.

Loop iteration counts are resolved statically where possible.  A comment
whose trimmed text is ``@iters N`` overrides the count of the next loop;
a ``for`` header of the shape *init-to-constant / compare-to-constant /
unit step* yields a literal bound; everything else falls back to a
configurable default.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

from .errors import (
    MalformedHeaderError,
    NegativeIterationsError,
    UnbalancedBracesError,
)

# ---------------------------------------------------------------------------
# Tokens
# ---------------------------------------------------------------------------


class TokenKind(enum.Enum):
    IDENTIFIER = "identifier"
    KEYWORD = "keyword"
    PUNCTUATION = "punctuation"
    LITERAL = "literal"
    COMMENT = "comment"
    PREPROCESSOR = "preprocessor"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    line: int
    lead: str = ""  # whitespace between the previous token and this one


class TokenStream(list):
    """A ``list`` of tokens that also remembers trailing whitespace and
    any characters the tokenizer did not recognize."""

    def __init__(self, *args):
        super().__init__(*args)
        self.tail: str = ""
        self.unknown: list[tuple[str, int]] = []


KEYWORDS = frozenset({
    "if", "else", "for", "while", "do", "switch", "case", "default",
    "break", "continue", "return", "goto", "try", "catch", "finally",
    "throw", "sizeof",
    "void", "char", "short", "int", "long", "float", "double",
    "signed", "unsigned", "bool",
    "const", "static", "volatile", "register", "extern", "inline",
    "struct", "enum", "union", "typedef", "auto",
})

# Keywords that can open a declaration.
DECLARATION_STARTERS = frozenset({
    "void", "char", "short", "int", "long", "float", "double",
    "signed", "unsigned", "bool",
    "const", "static", "volatile", "register", "extern", "inline",
    "struct", "enum", "union", "typedef", "auto",
})

_PUNCT_3 = ("<<=", ">>=", "...")
_PUNCT_2 = (
    "->", "++", "--", "==", "!=", "<=", ">=", "&&", "||",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>", "::",
)
_PUNCT_1 = frozenset("+-*/%<>=!&|^~?:;,.(){}[]")

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER_RE = re.compile(
    r"(?:0[xX][0-9a-fA-F]+|\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?"
    r"|\d+(?:[eE][+-]?\d+)?)[uUlLfF]*"
)
_WHITESPACE = " \t\r\n\f\v"


def tokenize(source: str) -> TokenStream:
    """Split *source* into a lossless token stream.

    Concatenating each token's ``lead`` whitespace and ``text`` (plus the
    stream's ``tail``) reproduces the input byte for byte.  Unknown
    characters become single-character punctuation tokens and are
    recorded on the stream's ``unknown`` list.
    """
    tokens = TokenStream()
    pos = 0
    line = 1
    lead_start = 0
    at_line_start = True
    n = len(source)

    def emit(kind: TokenKind, text: str, tok_line: int) -> None:
        nonlocal lead_start, at_line_start
        tokens.append(Token(kind, text, tok_line, source[lead_start:start]))
        lead_start = pos
        at_line_start = False

    while pos < n:
        ch = source[pos]
        if ch in _WHITESPACE:
            if ch == "\n":
                line += 1
                at_line_start = True
            pos += 1
            continue
        start = pos
        if source.startswith("//", pos):
            end = source.find("\n", pos)
            pos = n if end < 0 else end
            emit(TokenKind.COMMENT, source[start:pos], line)
        elif source.startswith("/*", pos):
            close = source.find("*/", pos + 2)
            stop = n if close < 0 else close + 2
            # One comment token per physical line; blank interior lines
            # produce no token.
            while pos < stop:
                nl = source.find("\n", pos)
                chunk_end = stop if nl < 0 or nl >= stop else nl
                raw = source[pos:chunk_end]
                chunk = raw.strip(" \t\r\f\v")
                if chunk:
                    start = pos + (len(raw) - len(raw.lstrip(" \t\r\f\v")))
                    pos = start + len(chunk)
                    emit(TokenKind.COMMENT, chunk, line)
                if chunk_end < stop:
                    line += 1
                    pos = chunk_end + 1
                else:
                    pos = stop
        elif ch == "#" and at_line_start:
            end = source.find("\n", pos)
            pos = n if end < 0 else end
            emit(TokenKind.PREPROCESSOR, source[start:pos], line)
        elif ch == "_" or "a" <= ch <= "z" or "A" <= ch <= "Z":
            m = _IDENT_RE.match(source, pos)
            pos = m.end()
            text = m.group()
            kind = TokenKind.KEYWORD if text in KEYWORDS else TokenKind.IDENTIFIER
            emit(kind, text, line)
        elif "0" <= ch <= "9" or (ch == "." and pos + 1 < n and "0" <= source[pos + 1 : pos + 2] <= "9"):
            m = _NUMBER_RE.match(source, pos)
            pos = m.end()
            emit(TokenKind.LITERAL, m.group(), line)
        elif ch in "\"'":
            pos += 1
            while pos < n and source[pos] not in (ch, "\n"):
                pos += 2 if source[pos] == "\\" and pos + 1 < n and source[pos + 1] != "\n" else 1
            if pos < n and source[pos] == ch:
                pos += 1
            emit(TokenKind.LITERAL, source[start:pos], line)
        else:
            three = source[pos:pos + 3]
            two = source[pos:pos + 2]
            if three in _PUNCT_3:
                pos += 3
                emit(TokenKind.PUNCTUATION, three, line)
            elif two in _PUNCT_2:
                pos += 2
                emit(TokenKind.PUNCTUATION, two, line)
            else:
                pos += 1
                if ch not in _PUNCT_1:
                    tokens.unknown.append((ch, line))
                emit(TokenKind.PUNCTUATION, ch, line)
    tokens.tail = source[lead_start:]
    return tokens


def reconstruct(tokens: TokenStream) -> str:
    """Inverse of :func:`tokenize`."""
    return "".join(t.lead + t.text for t in tokens) + getattr(tokens, "tail", "")


# ---------------------------------------------------------------------------
# Statement classification
# ---------------------------------------------------------------------------


class StatementKind(enum.Enum):
    COMMENT = "comment"
    HEADER_INCLUDE = "header_include"
    DECLARATION = "declaration"
    INIT_TERMINATION = "init_termination"
    SIMPLE_ASSIGNMENT = "simple_assignment"
    COMPLEX_ASSIGNMENT = "complex_assignment"
    EXPRESSION = "expression"
    FUNCTION_CALL = "function_call"
    RETURN = "return"


# Call names that mark a statement as an open/close/alloc/free idiom.
DEFAULT_INIT_TERMINATION_CALLS = frozenset({
    "open", "close", "fopen", "fclose", "malloc", "calloc", "realloc", "free",
})

_OPERATORS = frozenset({
    "=", "+", "-", "*", "/", "%", "<", ">", "<=", ">=", "==", "!=",
    "&&", "||", "!", "&", "|", "^", "~", "<<", ">>",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=",
    "++", "--", "?", "->", ".",
})
_ASSIGN_OPS = frozenset({
    "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=",
})


def _call_names(tokens: list[Token]) -> list[str]:
    names = []
    for i, tok in enumerate(tokens[:-1]):
        if tok.kind is TokenKind.IDENTIFIER and tokens[i + 1].text == "(":
            names.append(tok.text)
    return names


def _is_literal_init(tokens: list[Token]) -> bool:
    # ident = [-]literal [;]
    body = [t for t in tokens if t.text != ";" and t.kind is not TokenKind.COMMENT]
    if len(body) == 4 and body[2].text == "-":
        body = body[:2] + body[3:]
    return (
        len(body) == 3
        and body[0].kind is TokenKind.IDENTIFIER
        and body[1].text == "="
        and body[2].kind is TokenKind.LITERAL
    )


def classify_statement(
    tokens: list[Token],
    init_termination_calls: frozenset[str] = DEFAULT_INIT_TERMINATION_CALLS,
) -> StatementKind:
    """Assign exactly one kind to a statement, first matching rule wins.

    Rule order: comment, preprocessor line, return, declaration (type
    keyword and no call), init/termination (assignment to a literal, or a
    single call from the open/close/alloc/free name list), function call
    (call without assignment), simple assignment (one operator, no call),
    complex assignment (two or three operators, or one call with at most
    three operators), expression (everything else).
    """
    if not tokens:
        return StatementKind.EXPRESSION
    first = tokens[0]
    if first.kind is TokenKind.COMMENT:
        return StatementKind.COMMENT
    if first.kind is TokenKind.PREPROCESSOR:
        return StatementKind.HEADER_INCLUDE
    if first.kind is TokenKind.KEYWORD and first.text == "return":
        return StatementKind.RETURN
    calls = _call_names(tokens)
    if (
        first.kind is TokenKind.KEYWORD
        and first.text in DECLARATION_STARTERS
        and not calls
    ):
        return StatementKind.DECLARATION
    if _is_literal_init(tokens) or (
        len(calls) == 1 and calls[0] in init_termination_calls
    ):
        return StatementKind.INIT_TERMINATION
    ops = sum(
        1
        for t in tokens
        if t.kind is TokenKind.PUNCTUATION and t.text in _OPERATORS
    )
    has_assign = any(
        t.kind is TokenKind.PUNCTUATION and t.text in _ASSIGN_OPS for t in tokens
    )
    if calls and not has_assign:
        return StatementKind.FUNCTION_CALL
    if not calls and ops == 1:
        return StatementKind.SIMPLE_ASSIGNMENT
    if (not calls and 2 <= ops <= 3) or (len(calls) == 1 and ops <= 3):
        return StatementKind.COMPLEX_ASSIGNMENT
    return StatementKind.EXPRESSION


# ---------------------------------------------------------------------------
# Block tree
# ---------------------------------------------------------------------------


class CountProvenance(enum.Enum):
    LITERAL_BOUND = "literal"
    PRAGMA_OVERRIDE = "pragma"
    CONFIG_DEFAULT = "default"


@dataclass(frozen=True)
class IterationCount:
    value: int
    provenance: CountProvenance
    line: int | None = None


Span = tuple[int, int]  # inclusive 1-based line range


@dataclass
class Statement:
    kind: StatementKind
    span: Span
    tokens: list[Token] = field(default_factory=list)


@dataclass
class ConditionBlock:
    branches: list[list["BlockNode"]]
    span: Span
    header_line: int = 0
    from_switch: bool = False


@dataclass
class LoopBlock:
    count: IterationCount
    body: list["BlockNode"]
    span: Span
    header_line: int = 0


@dataclass
class ExceptionBlock:
    handlers: int
    body: list["BlockNode"]
    span: Span


@dataclass
class FunctionDef:
    name: str
    body: list["BlockNode"]
    span: Span


BlockNode = Statement | ConditionBlock | LoopBlock | ExceptionBlock | FunctionDef


# ---------------------------------------------------------------------------
# Loop count resolution
# ---------------------------------------------------------------------------

_PRAGMA_RE = re.compile(r"@iters\s+(-?\d+)")


def pragma_value(comment_text: str) -> int | None:
    """Return N when a comment's trimmed text is exactly ``@iters N``."""
    text = comment_text.strip()
    if text.startswith("//"):
        text = text[2:]
    if text.startswith("/*"):
        text = text[2:]
    if text.endswith("*/"):
        text = text[:-2]
    text = text.strip(" \t*")
    m = _PRAGMA_RE.fullmatch(text)
    return int(m.group(1)) if m else None


def _signed_int(tokens: list[Token], at: int) -> tuple[int, int] | None:
    """Parse an optionally negated integer literal; return (value, next)."""
    sign = 1
    if at < len(tokens) and tokens[at].text == "-":
        sign = -1
        at += 1
    if at < len(tokens) and tokens[at].kind is TokenKind.LITERAL:
        try:
            return sign * int(tokens[at].text, 0), at + 1
        except ValueError:
            return None
    return None


def _literal_bound(header: list[Token]) -> int | None:
    """Count for an init-to-constant / compare-to-constant / unit-step
    ``for`` header, or ``None`` when the pattern does not apply."""
    parts: list[list[Token]] = [[]]
    depth = 0
    for tok in header:
        if tok.text in "([":
            depth += 1
        elif tok.text in ")]":
            depth -= 1
        if tok.text == ";" and depth == 0:
            parts.append([])
        else:
            parts[-1].append(tok)
    if len(parts) != 3:
        return None
    init, cond, step = parts
    init = [t for t in init if t.text not in DECLARATION_STARTERS]
    if len(init) < 3 or init[0].kind is not TokenKind.IDENTIFIER or init[1].text != "=":
        return None
    var = init[0].text
    got = _signed_int(init, 2)
    if got is None or got[1] != len(init):
        return None
    start = got[0]
    if len(cond) < 3 or cond[0].text != var or cond[1].text not in ("<", "<=", ">", ">=", "!="):
        return None
    got = _signed_int(cond, 2)
    if got is None or got[1] != len(cond):
        return None
    bound = got[0]
    cmp = cond[1].text
    texts = [t.text for t in step]
    if texts in ([var, "++"], ["++", var], [var, "+=", "1"], [var, "=", var, "+", "1"]):
        direction = 1
    elif texts in ([var, "--"], ["--", var], [var, "-=", "1"], [var, "=", var, "-", "1"]):
        direction = -1
    else:
        return None
    if cmp == "<" and direction == 1:
        return bound - start
    if cmp == "<=" and direction == 1:
        return bound - start + 1
    if cmp == ">" and direction == -1:
        return start - bound
    if cmp == ">=" and direction == -1:
        return start - bound + 1
    if cmp == "!=":
        return (bound - start) * direction
    return None


def resolve_loop_count(
    header: list[Token],
    pragma: int | None = None,
    *,
    default_iterations: int = 1,
    line: int | None = None,
) -> IterationCount:
    """Resolve a loop's iteration count.

    A ``@iters N`` pragma wins over a literal header bound (the pragma
    exists precisely to correct headers whose literal bound is wrong),
    the literal bound wins over the configured default.
    """
    if pragma is not None:
        if pragma < 0:
            raise NegativeIterationsError(f"pragma yields negative count {pragma}", line)
        return IterationCount(pragma, CountProvenance.PRAGMA_OVERRIDE, line)
    literal = _literal_bound(header)
    if literal is not None:
        if literal < 0:
            raise NegativeIterationsError(f"literal bound yields negative count {literal}", line)
        return IterationCount(literal, CountProvenance.LITERAL_BOUND, line)
    return IterationCount(default_iterations, CountProvenance.CONFIG_DEFAULT, line)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(
        self,
        tokens: list[Token],
        default_iterations: int,
        init_termination_calls: frozenset[str],
    ):
        self.toks = tokens
        self.i = 0
        self.default_iterations = default_iterations
        self.init_calls = init_termination_calls
        self.pending_pragma: tuple[int, int] | None = None  # (value, line)
        self.diagnostics: list[str] = []

    # -- token helpers ------------------------------------------------------

    def _peek(self) -> Token | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def _next(self) -> Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def _expect_text(self, text: str, context_line: int) -> Token:
        tok = self._peek()
        if tok is None or tok.text != text:
            raise MalformedHeaderError(f"expected '{text}'", context_line)
        return self._next()

    def _balanced_parens(self, context_line: int) -> list[Token]:
        """Consume ``( ... )`` and return the inner tokens."""
        self._expect_text("(", context_line)
        depth = 1
        inner: list[Token] = []
        while True:
            tok = self._peek()
            if tok is None:
                raise MalformedHeaderError("unterminated header", context_line)
            self._next()
            if tok.text == "(":
                depth += 1
            elif tok.text == ")":
                depth -= 1
                if depth == 0:
                    return inner
            inner.append(tok)

    def _lapse_pragma(self) -> None:
        if self.pending_pragma is not None:
            value, line = self.pending_pragma
            self.diagnostics.append(
                f"line {line}: pragma '@iters {value}' not followed by a loop; ignored"
            )
            self.pending_pragma = None

    def _take_pragma(self) -> int | None:
        if self.pending_pragma is None:
            return None
        value, _ = self.pending_pragma
        self.pending_pragma = None
        return value

    # -- grammar ------------------------------------------------------------

    def parse_top(self) -> list[BlockNode]:
        nodes: list[BlockNode] = []
        while (tok := self._peek()) is not None:
            if tok.text == "}" and tok.kind is TokenKind.PUNCTUATION:
                raise UnbalancedBracesError("unmatched '}'", tok.line)
            self._extend(nodes, self.parse_construct())
        self._lapse_pragma()
        return nodes

    @staticmethod
    def _extend(nodes: list[BlockNode], item: BlockNode | list[BlockNode] | None) -> None:
        if item is None:
            return
        if isinstance(item, list):
            nodes.extend(item)
        else:
            nodes.append(item)

    def parse_construct(self) -> BlockNode | list[BlockNode] | None:
        tok = self._peek()
        assert tok is not None
        if tok.kind is TokenKind.COMMENT:
            value = pragma_value(tok.text)
            if value is not None:
                if self.pending_pragma is not None:
                    self._lapse_pragma()
                self.pending_pragma = (value, tok.line)
                self._next()
                return None
            self._lapse_pragma()
            self._next()
            return Statement(StatementKind.COMMENT, (tok.line, tok.line), [tok])
        if tok.kind is TokenKind.PREPROCESSOR:
            self._lapse_pragma()
            self._next()
            return Statement(StatementKind.HEADER_INCLUDE, (tok.line, tok.line), [tok])
        if tok.kind is TokenKind.KEYWORD:
            if tok.text == "if":
                self._lapse_pragma()
                return self.parse_if()
            if tok.text in ("for", "while"):
                return self.parse_loop(tok.text)
            if tok.text == "do":
                return self.parse_do()
            if tok.text == "switch":
                self._lapse_pragma()
                return self.parse_switch()
            if tok.text == "try":
                self._lapse_pragma()
                return self.parse_try()
            if tok.text in ("else", "catch", "finally", "case", "default"):
                raise MalformedHeaderError(f"unexpected '{tok.text}'", tok.line)
        if tok.text == ";" and tok.kind is TokenKind.PUNCTUATION:
            self._lapse_pragma()
            self._next()
            return None
        if tok.text == "{" and tok.kind is TokenKind.PUNCTUATION:
            self._lapse_pragma()
            self._next()
            inner, _ = self.parse_until_close(tok.line)
            return inner
        self._lapse_pragma()
        return self.parse_statement_or_function()

    def parse_until_close(self, open_line: int) -> tuple[list[BlockNode], int]:
        """Parse nodes up to the matching ``}``; return (nodes, close line)."""
        nodes: list[BlockNode] = []
        while True:
            tok = self._peek()
            if tok is None:
                raise UnbalancedBracesError("unclosed '{'", open_line)
            if tok.text == "}" and tok.kind is TokenKind.PUNCTUATION:
                self._lapse_pragma()
                self._next()
                return nodes, tok.line
            self._extend(nodes, self.parse_construct())

    def parse_body(self, context_line: int) -> tuple[list[BlockNode], int]:
        """A braced block, a lone ``;``, or a single construct."""
        while True:
            tok = self._peek()
            if tok is None:
                raise MalformedHeaderError("missing body", context_line)
            if tok.kind is TokenKind.PUNCTUATION and tok.text == "{":
                self._next()
                return self.parse_until_close(tok.line)
            if tok.kind is TokenKind.PUNCTUATION and tok.text == ";":
                self._next()
                return [], tok.line
            item = self.parse_construct()
            if item is None:
                continue
            nodes = item if isinstance(item, list) else [item]
            end = max((_node_end(n) for n in nodes), default=context_line)
            return nodes, end

    def parse_statement_or_function(self) -> BlockNode | list[BlockNode]:
        start_tok = self.toks[self.i]
        j = self.i
        depth = 0
        n = len(self.toks)
        while j < n:
            text = self.toks[j].text
            if self.toks[j].kind is TokenKind.PUNCTUATION:
                if text in "([":
                    depth += 1
                elif text in ")]":
                    depth -= 1
                elif depth == 0 and text == ";":
                    j += 1
                    break
                elif depth == 0 and text in "{}":
                    break
            j += 1
        prefix = self.toks[self.i:j]
        stop = self.toks[j] if j < n else None
        if stop is not None and stop.text == "{" and stop.kind is TokenKind.PUNCTUATION:
            name = self._function_name(prefix)
            if name is not None:
                self.i = j + 1
                body, close_line = self.parse_until_close(stop.line)
                return FunctionDef(name, body, (start_tok.line, close_line))
            # Brace after a non-function prefix (struct/enum body, stray
            # block): keep the prefix as a statement and splice the block.
            nodes: list[BlockNode] = []
            if prefix:
                self.i = j
                nodes.append(self._make_statement(prefix))
            self.i = j + 1
            inner, _ = self.parse_until_close(stop.line)
            nodes.extend(inner)
            return nodes
        self.i = j
        return self._make_statement(prefix)

    @staticmethod
    def _function_name(prefix: list[Token]) -> str | None:
        if len(prefix) < 3 or prefix[-1].text != ")":
            return None
        depth = 0
        for k in range(len(prefix) - 1, -1, -1):
            text = prefix[k].text
            if text == ")":
                depth += 1
            elif text == "(":
                depth -= 1
                if depth == 0:
                    if k > 0 and prefix[k - 1].kind is TokenKind.IDENTIFIER:
                        return prefix[k - 1].text
                    return None
        return None

    def _make_statement(self, tokens: list[Token]) -> Statement:
        kind = classify_statement(tokens, self.init_calls)
        return Statement(kind, (tokens[0].line, tokens[-1].line), tokens)

    def parse_if(self) -> ConditionBlock:
        kw = self._next()
        self._balanced_parens(kw.line)
        body, end = self.parse_body(kw.line)
        branches = [body]
        while (tok := self._peek()) is not None and tok.text == "else":
            self._next()
            nxt = self._peek()
            if nxt is not None and nxt.kind is TokenKind.KEYWORD and nxt.text == "if":
                self._next()
                self._balanced_parens(nxt.line)
                body, end = self.parse_body(nxt.line)
                branches.append(body)
            else:
                body, end = self.parse_body(tok.line)
                branches.append(body)
                break
        return ConditionBlock(branches, (kw.line, end), header_line=kw.line)

    def parse_loop(self, keyword: str) -> LoopBlock:
        kw = self._next()
        pragma = self._take_pragma()
        header = self._balanced_parens(kw.line)
        body, end = self.parse_body(kw.line)
        count = resolve_loop_count(
            header if keyword == "for" else [],
            pragma,
            default_iterations=self.default_iterations,
            line=kw.line,
        )
        return LoopBlock(count, body, (kw.line, end), header_line=kw.line)

    def parse_do(self) -> LoopBlock:
        kw = self._next()
        pragma = self._take_pragma()
        body, end = self.parse_body(kw.line)
        self._expect_text("while", kw.line)
        self._balanced_parens(kw.line)
        tok = self._peek()
        if tok is not None and tok.text == ";":
            end = tok.line
            self._next()
        count = resolve_loop_count(
            [], pragma, default_iterations=self.default_iterations, line=kw.line
        )
        return LoopBlock(count, body, (kw.line, end), header_line=kw.line)

    def parse_switch(self) -> ConditionBlock:
        kw = self._next()
        self._balanced_parens(kw.line)
        open_tok = self._expect_text("{", kw.line)
        branches: list[list[BlockNode]] = []
        leading: list[BlockNode] = []
        while True:
            tok = self._peek()
            if tok is None:
                raise UnbalancedBracesError("unclosed '{'", open_tok.line)
            if tok.text == "}" and tok.kind is TokenKind.PUNCTUATION:
                self._lapse_pragma()
                self._next()
                break
            if tok.kind is TokenKind.KEYWORD and tok.text in ("case", "default"):
                self._next()
                while (lbl := self._peek()) is not None and lbl.text != ":":
                    if lbl.text in "{}":
                        raise MalformedHeaderError("unterminated case label", tok.line)
                    self._next()
                self._expect_text(":", tok.line)
                branches.append(leading)
                leading = []
                continue
            item = self.parse_construct()
            if item is None:
                continue
            target = branches[-1] if branches else None
            if target is None:
                if isinstance(item, Statement) and item.kind is StatementKind.COMMENT:
                    leading.append(item)
                    continue
                raise MalformedHeaderError("statement before first case", tok.line)
            self._extend(target, item)
        if not branches:
            raise MalformedHeaderError("switch without cases", kw.line)
        return ConditionBlock(
            branches, (kw.line, tok.line), header_line=kw.line, from_switch=True
        )

    def parse_try(self) -> ExceptionBlock:
        kw = self._next()
        open_tok = self._expect_text("{", kw.line)
        body, end = self.parse_until_close(open_tok.line)
        handlers = 0
        while (tok := self._peek()) is not None and tok.text == "catch":
            self._next()
            handlers += 1
            nxt = self._peek()
            if nxt is not None and nxt.text == "(":
                self._balanced_parens(tok.line)
            brace = self._expect_text("{", tok.line)
            part, end = self.parse_until_close(brace.line)
            body.extend(part)
        if (tok := self._peek()) is not None and tok.text == "finally":
            self._next()
            brace = self._expect_text("{", tok.line)
            part, end = self.parse_until_close(brace.line)
            body.extend(part)
        # A bare try/finally still carries one implicit handler.
        return ExceptionBlock(max(1, handlers), body, (kw.line, end))


def _node_end(node: BlockNode) -> int:
    return node.span[1]


def parse_tokens(
    tokens: list[Token],
    *,
    default_iterations: int = 1,
    init_termination_calls: frozenset[str] = DEFAULT_INIT_TERMINATION_CALLS,
) -> tuple[list[BlockNode], list[str]]:
    """Parse a token stream into a block tree plus parser diagnostics."""
    parser = _Parser(tokens, default_iterations, init_termination_calls)
    nodes = parser.parse_top()
    return nodes, parser.diagnostics


def build_block_tree(
    tokens: list[Token],
    *,
    default_iterations: int = 1,
    init_termination_calls: frozenset[str] = DEFAULT_INIT_TERMINATION_CALLS,
) -> list[BlockNode]:
    """Build the nested block tree for a token stream."""
    nodes, _ = parse_tokens(
        tokens,
        default_iterations=default_iterations,
        init_termination_calls=init_termination_calls,
    )
    return nodes


def iter_loops(nodes: list[BlockNode]):
    """Yield every loop block in the tree, depth first, in source order."""
    for node in nodes:
        if isinstance(node, LoopBlock):
            yield node
            yield from iter_loops(node.body)
        elif isinstance(node, ConditionBlock):
            for branch in node.branches:
                yield from iter_loops(branch)
        elif isinstance(node, (ExceptionBlock, FunctionDef)):
            yield from iter_loops(node.body)
