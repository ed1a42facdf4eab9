"""Lexer behavior for the regex game dialect."""

import pytest

from ggs.rbg.lexer import LexError, tokenize_rbg


def kinds(text):
    return [t.kind for t in tokenize_rbg(text)[:-1]]


def test_players_line_token_count():
    toks = tokenize_rbg("#players = white(100), black(100)")
    assert len(toks) - 1 == 11  # excluding EOF
    assert kinds("#players = white(100), black(100)") == [
        "HASH_IDENT", "EQUALS", "IDENT", "LPAREN", "NUMBER", "RPAREN",
        "COMMA", "IDENT", "LPAREN", "NUMBER", "RPAREN",
    ]


def test_darrow_beats_arrow():
    assert kinds("->> -> ->>") == ["DARROW", "ARROW", "DARROW"]


def test_comments_and_whitespace_skipped():
    toks = tokenize_rbg("a // comment with -> tokens\n b")
    assert [t.text for t in toks[:-1]] == ["a", "b"]


def test_lossless_reconstruction():
    src = "// header\n#rules = ->w ( up {e} [x] )* // tail\n"
    toks = tokenize_rbg(src)
    assert "".join(t.leading + t.text for t in toks) == src


def test_positions():
    toks = tokenize_rbg("ab\n  cd")
    assert (toks[0].line, toks[0].col) == (1, 1)
    assert (toks[1].line, toks[1].col) == (2, 3)


def test_underscored_identifiers():
    assert kinds("up_right down_left") == ["IDENT", "IDENT"]


def test_lex_error_has_location():
    with pytest.raises(LexError) as err:
        tokenize_rbg("ok @bad")
    assert err.value.line == 1 and err.value.col == 4


def test_hash_requires_ident():
    with pytest.raises(LexError):
        tokenize_rbg("# 5")
