"""Macro expansion and validation for the regex game dialect."""

import pytest

from ggs.rbg import ast
from ggs.rbg.expand import (
    ArityMismatch,
    RbgValidationError,
    RecursionDetected,
    UnknownMacro,
    expand_macros,
    validate,
)
from ggs.rbg.parser import parse_rbg

from ggs.core.board import RECT_DIRECTIONS


def build(rules, extra=""):
    return parse_rbg(f"""
#players = white(100), black(100)
#pieces = e, w, b
#variables =
#board = rectangle(up,down,left,right, [e, w] [b, e])
{extra}
#rules = {rules}
""")


def test_simple_macro_substitution():
    game = expand_macros(
        build("->white step -> black", "#step = up {e} [w]")
    )
    assert game.macros == {}
    assert ast.Name("step") not in game.rules.parts


def collect(pat, predicate, out=None):
    if out is None:
        out = []
    if predicate(pat):
        out.append(pat)
    for attr in ("parts", "args"):
        for child in getattr(pat, attr, ()):
            collect(child, predicate, out)
    if hasattr(pat, "child"):
        collect(pat.child, predicate, out)
    return out


def test_parameter_substitution_in_atoms():
    game = expand_macros(
        build("->white put(w) -> black", "#put(p) = up {e} [p]")
    )
    # the SetHere atom received the argument
    assert collect(game.rules, lambda p: p == ast.SetHere("w"))


def test_direction_parameters():
    game = expand_macros(
        build("->white go(up) go(down) -> black", "#go(d) = d {e}")
    )
    names = collect(game.rules, lambda p: isinstance(p, ast.Name))
    assert ast.Name("up") in names and ast.Name("down") in names


def test_nested_macros_expand_to_fixpoint():
    game = expand_macros(
        build(
            "->white outer -> black",
            "#inner = up {e}\n#outer = inner inner",
        )
    )
    flat = game.rules
    assert "inner" not in repr(flat)


def test_unknown_macro():
    with pytest.raises(UnknownMacro):
        expand_macros(build("->white nosuch(up) -> black"))


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        expand_macros(build("->white go(up; down) -> black", "#go(d) = d"))


def test_recursion_detected():
    with pytest.raises(RecursionDetected):
        expand_macros(build("->white loop -> black", "#loop = up loop"))


def test_pattern_argument_in_atom_position_rejected():
    with pytest.raises(RbgValidationError):
        expand_macros(
            build("->white put(up {e}) -> black", "#put(p) = [p]")
        )


def validate_rules(rules, extra=""):
    game = expand_macros(build(rules, extra))
    validate(game, RECT_DIRECTIONS)


def test_validate_accepts_minimal():
    validate_rules("->white ( up {e} [w] -> black )*")


def test_validate_unknown_piece():
    with pytest.raises(RbgValidationError):
        validate_rules("->white [q] -> black")


def test_validate_unknown_player():
    with pytest.raises(RbgValidationError):
        validate_rules("->white -> nobody")


def test_validate_unknown_direction():
    with pytest.raises(UnknownMacro):
        validate_rules("->white sideways -> black")


def test_validate_bound_exceeded():
    with pytest.raises(RbgValidationError):
        validate_rules("->white [$ white=101] -> black")


def test_validate_no_switch_inside_check():
    with pytest.raises(RbgValidationError):
        validate_rules("->white {? up -> black} -> black")
    with pytest.raises(RbgValidationError):
        validate_rules("->white {! ->> } -> black")
