"""Lexer for the regex-over-board-moves game description dialect."""

from __future__ import annotations

from dataclasses import dataclass

_PUNCT = {
    "(": "LPAREN",
    ")": "RPAREN",
    "{": "LBRACE",
    "}": "RBRACE",
    "[": "LBRACKET",
    "]": "RBRACKET",
    "*": "STAR",
    "+": "PLUS",
    ",": "COMMA",
    ";": "SEMI",
    "=": "EQUALS",
    "$": "DOLLAR",
    "?": "QMARK",
    "!": "BANG",
}


class LexError(ValueError):
    def __init__(self, line: int, col: int, snippet: str):
        super().__init__(f"lex error at {line}:{col}: {snippet!r}")
        self.line = line
        self.col = col
        self.snippet = snippet


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int
    leading: str = ""  # whitespace/comments preceding the token


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_"


def _is_ident(ch: str) -> bool:
    return ch.isalnum() or ch == "_"


def tokenize_rbg(text: str) -> list[Token]:
    """Longest-match lexing; `->>` beats `->`; `//` comments skipped."""
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    lead_start = 0

    def advance(span: str):
        nonlocal line, col
        for ch in span:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1

    while i < n:
        ch = text[i]
        if ch.isspace():
            advance(ch)
            i += 1
            continue
        if text.startswith("//", i):
            j = text.find("\n", i)
            j = n if j < 0 else j
            advance(text[i:j])
            i = j
            continue
        leading = text[lead_start:i]
        tline, tcol = line, col
        if text.startswith("->>", i):
            tok = Token("DARROW", "->>", tline, tcol, leading)
        elif text.startswith("->", i):
            tok = Token("ARROW", "->", tline, tcol, leading)
        elif ch == "#" and i + 1 < n and _is_ident_start(text[i + 1]):
            j = i + 1
            while j < n and _is_ident(text[j]):
                j += 1
            tok = Token("HASH_IDENT", text[i:j], tline, tcol, leading)
        elif ch in _PUNCT:
            tok = Token(_PUNCT[ch], ch, tline, tcol, leading)
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tok = Token("NUMBER", text[i:j], tline, tcol, leading)
        elif _is_ident_start(ch):
            j = i
            while j < n and _is_ident(text[j]):
                j += 1
            tok = Token("IDENT", text[i:j], tline, tcol, leading)
        else:
            raise LexError(line, col, text[i : i + 10])
        tokens.append(tok)
        advance(tok.text)
        i += len(tok.text)
        lead_start = i
    tokens.append(Token("EOF", "", line, col, text[lead_start:]))
    return tokens
