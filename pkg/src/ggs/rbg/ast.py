"""Pattern AST for the regex game dialect."""

from __future__ import annotations

from dataclasses import dataclass


class Pattern:
    __slots__ = ()


@dataclass(frozen=True)
class Concat(Pattern):
    parts: tuple


@dataclass(frozen=True)
class Alt(Pattern):
    parts: tuple


@dataclass(frozen=True)
class Star(Pattern):
    child: Pattern


@dataclass(frozen=True)
class Check(Pattern):
    positive: bool
    child: Pattern


@dataclass(frozen=True)
class Name(Pattern):
    """Bare identifier: a direction shift or a zero-arg macro reference."""

    name: str


@dataclass(frozen=True)
class Call(Pattern):
    name: str
    args: tuple  # each arg is a Pattern


@dataclass(frozen=True)
class Shift(Pattern):
    direction: int


@dataclass(frozen=True)
class On(Pattern):
    names: tuple  # piece symbol names (resolved to a frozenset of ids later)


@dataclass(frozen=True)
class SetHere(Pattern):
    name: str


@dataclass(frozen=True)
class AssignVars(Pattern):
    assigns: tuple  # ((name, value), ...)


@dataclass(frozen=True)
class SwitchTo(Pattern):
    name: str


@dataclass(frozen=True)
class SwitchKeep(Pattern):
    pass


@dataclass
class RbgGameDef:
    players: tuple  # ((name, bound), ...)
    piece_symbols: tuple
    extra_variables: tuple  # ((name, bound), ...)
    board_generator: str
    board_directions: tuple
    board_rows: tuple  # tuple of tuples of piece symbol names
    macros: dict  # name -> (params tuple, Pattern)
    rules: Pattern


def contains_switch(pat: Pattern) -> bool:
    if isinstance(pat, (SwitchTo, SwitchKeep)):
        return True
    if isinstance(pat, (Concat, Alt)):
        return any(contains_switch(p) for p in pat.parts)
    if isinstance(pat, Star):
        return contains_switch(pat.child)
    if isinstance(pat, Check):
        return contains_switch(pat.child)
    if isinstance(pat, Call):
        return any(contains_switch(a) for a in pat.args)
    return False


def contains_mutation(pat: Pattern) -> bool:
    if isinstance(pat, (SetHere, AssignVars)):
        return True
    if isinstance(pat, (Concat, Alt)):
        return any(contains_mutation(p) for p in pat.parts)
    if isinstance(pat, Star):
        return contains_mutation(pat.child)
    if isinstance(pat, Check):
        return contains_mutation(pat.child)
    if isinstance(pat, Call):
        return any(contains_mutation(a) for a in pat.args)
    return False
