"""Macro expansion and name resolution for the regex game dialect."""

from __future__ import annotations

from dataclasses import replace

from . import ast

MAX_DEPTH = 64


class UnknownMacro(ValueError):
    pass


class ArityMismatch(ValueError):
    pass


class RecursionDetected(ValueError):
    pass


class RbgValidationError(ValueError):
    pass


def _subst_atom(name: str, env: dict) -> str:
    """Resolve an atom position (piece/player/var name) through the env."""
    if name in env:
        arg = env[name]
        if not isinstance(arg, ast.Name):
            raise RbgValidationError(
                f"macro argument for {name!r} used in an atom position must be"
                " a bare name"
            )
        return arg.name
    return name


def _expand(pat: ast.Pattern, macros: dict, env: dict, depth: int) -> ast.Pattern:
    if depth > MAX_DEPTH:
        raise RecursionDetected("macro expansion exceeded depth 64")
    if isinstance(pat, ast.Name):
        if pat.name in env:
            return env[pat.name]
        if pat.name in macros:
            params, body = macros[pat.name]
            if params:
                raise ArityMismatch(f"macro {pat.name} expects {len(params)} args")
            return _expand(body, macros, {}, depth + 1)
        return pat
    if isinstance(pat, ast.Call):
        if pat.name not in macros:
            if pat.name in env:
                raise RbgValidationError(f"macro parameter {pat.name!r} called")
            raise UnknownMacro(pat.name)
        params, body = macros[pat.name]
        if len(params) != len(pat.args):
            raise ArityMismatch(
                f"macro {pat.name} expects {len(params)} args, got {len(pat.args)}"
            )
        args = tuple(_expand(a, macros, env, depth + 1) for a in pat.args)
        return _expand(body, macros, dict(zip(params, args)), depth + 1)
    if isinstance(pat, ast.Concat):
        return ast.Concat(tuple(_expand(p, macros, env, depth) for p in pat.parts))
    if isinstance(pat, ast.Alt):
        return ast.Alt(tuple(_expand(p, macros, env, depth) for p in pat.parts))
    if isinstance(pat, ast.Star):
        return ast.Star(_expand(pat.child, macros, env, depth))
    if isinstance(pat, ast.Check):
        return ast.Check(pat.positive, _expand(pat.child, macros, env, depth))
    if isinstance(pat, ast.On):
        return ast.On(tuple(_subst_atom(n, env) for n in pat.names))
    if isinstance(pat, ast.SetHere):
        return ast.SetHere(_subst_atom(pat.name, env))
    if isinstance(pat, ast.SwitchTo):
        return ast.SwitchTo(_subst_atom(pat.name, env))
    if isinstance(pat, ast.AssignVars):
        return ast.AssignVars(
            tuple((_subst_atom(n, env), v) for n, v in pat.assigns)
        )
    return pat


def expand_macros(game: ast.RbgGameDef) -> ast.RbgGameDef:
    """Substitute all macro calls in the rules to a fixpoint."""
    rules = _expand(game.rules, game.macros, {}, 0)
    return replace(game, rules=rules, macros={})


def validate(game: ast.RbgGameDef, direction_names: tuple) -> None:
    """Symbol and bound checks over a macro-free rules pattern."""
    pieces = set(game.piece_symbols)
    players = {name for name, _ in game.players}
    bounds = dict(game.players) | dict(game.extra_variables)

    def walk(pat: ast.Pattern, in_check: bool):
        if isinstance(pat, ast.Name):
            if pat.name not in direction_names:
                raise UnknownMacro(pat.name)
        elif isinstance(pat, ast.On):
            bad = set(pat.names) - pieces
            if bad:
                raise RbgValidationError(f"unknown pieces in test: {sorted(bad)}")
        elif isinstance(pat, ast.SetHere):
            if pat.name not in pieces:
                raise RbgValidationError(f"unknown piece {pat.name!r}")
        elif isinstance(pat, ast.SwitchTo):
            if pat.name not in players:
                raise RbgValidationError(f"unknown player {pat.name!r}")
            if in_check:
                raise RbgValidationError("switch inside a lookahead check")
        elif isinstance(pat, ast.SwitchKeep):
            if in_check:
                raise RbgValidationError("switch inside a lookahead check")
        elif isinstance(pat, ast.AssignVars):
            for name, value in pat.assigns:
                if name not in bounds:
                    raise RbgValidationError(f"unknown variable {name!r}")
                if value > bounds[name]:
                    raise RbgValidationError(
                        f"assignment {name}={value} exceeds bound {bounds[name]}"
                    )
        elif isinstance(pat, (ast.Concat, ast.Alt)):
            for p in pat.parts:
                walk(p, in_check)
        elif isinstance(pat, ast.Star):
            walk(pat.child, in_check)
        elif isinstance(pat, ast.Check):
            walk(pat.child, True)
        elif isinstance(pat, ast.Call):
            raise RbgValidationError("macro call survived expansion")

    walk(game.rules, False)
    for row in game.board_rows:
        bad = set(row) - pieces
        if bad:
            raise RbgValidationError(f"board literal uses unknown pieces {sorted(bad)}")
