"""Evaluator for compiled ludemic games."""

from __future__ import annotations

from ..core.board import BoardGraph
from ..core.model import (
    GameState,
    IllegalMove,
    Move,
    NO_VERTEX,
    apply_effects,
)
from ..core.playout import Engine
from .compile import CompiledLudemicGame


class ShootWithoutContext(RuntimeError):
    pass


# Player-relative step directions; player 1 moves up the board.
_RELATIVE_DIRS = {
    1: {"forward": "up", "forwardLeft": "up_left", "forwardRight": "up_right"},
    2: {"forward": "down", "forwardLeft": "down_right", "forwardRight": "down_left"},
}

# Line axes as (direction, opposite) pairs over the rectangle directions.
_LINE_AXES = (
    ("up", "down"),
    ("left", "right"),
    ("up_left", "down_right"),
    ("up_right", "down_left"),
)


def detect_line(
    board: BoardGraph, contents, last_to: int, piece_ids, n: int
) -> bool:
    """Run of >= n cells holding any of piece_ids through last_to."""
    if last_to == NO_VERTEX or contents[last_to] not in piece_ids:
        return False
    for fwd, back in _LINE_AXES:
        count = 1
        for name in (fwd, back):
            d = board.direction_index(name)
            table = board.neighbors[d]
            v = table[last_to]
            while v >= 0 and contents[v] in piece_ids:
                count += 1
                v = table[v]
        if count >= n:
            return True
    return False


def region_connected(
    board: BoardGraph, contents, piece_ids, side_a, side_b
) -> bool:
    """True iff a chain of the player's stones joins the two sides."""
    frontier = [v for v in side_a if contents[v] in piece_ids]
    seen = set(frontier)
    tables = board.neighbors
    while frontier:
        v = frontier.pop()
        if v in side_b:
            return True
        for table in tables:
            nv = table[v]
            if nv >= 0 and nv not in seen and contents[nv] in piece_ids:
                seen.add(nv)
                frontier.append(nv)
    return False


class LudemicEngine(Engine):
    mode = "ludemic"

    def __init__(self, game: CompiledLudemicGame):
        self.game = game
        self.board = game.board
        self.player_count = game.player_count
        self.piece_symbols = game.pieces.symbols
        self._owner = game.pieces.owner_of
        self._all_dirs = tuple(range(len(game.board.directions)))

    # -- state ----------------------------------------------------------

    def initial_state(self) -> GameState:
        contents = [0] * self.board.vertex_count
        for pid, vertices in self.game.start_placements:
            for v in vertices:
                contents[v] = pid
        return GameState(contents=contents, mover=1, variables={})

    def next_player(self, player: int) -> int:
        return player % self.player_count + 1

    # -- move generation ------------------------------------------------

    def probe(self, state: GameState):
        moves = self.sort_moves(state, self._generate(state, state.mover))
        payoffs = self._evaluate_end(state, moves)
        return moves, payoffs

    def apply(self, state: GameState, move: Move) -> GameState:
        return apply_effects(state, move)

    def apply_checked(self, state: GameState, move: Move) -> GameState:
        legal = {(m.effects, m.replay) for m in self._generate(state, state.mover)}
        if (move.effects, move.replay) not in legal:
            raise IllegalMove("move is not legal in this state")
        return self.apply(state, move)

    def _generate(self, state: GameState, mover: int) -> list[Move]:
        return self._eval_play(self.game.play_rule, state, mover)

    def _eval_play(self, rule, state: GameState, mover: int) -> list[Move]:
        head = rule[0]
        if head == "if_even_turn":
            branch = rule[1] if state.turn_number % 2 == 0 else rule[2]
            return self._eval_play(branch, state, mover)
        if head == "byPiece":
            moves = []
            contents = state.contents
            for v, pid in enumerate(contents):
                if self._owner[pid] == mover:
                    pdef = self.game.piece_defs[
                        self.game.pieces.symbols[pid].rstrip("0123456789")
                    ]
                    if pdef.move_rule is not None:
                        moves.extend(
                            self._piece_moves(
                                pdef.move_rule, pdef.replay, state, mover, v, pid
                            )
                        )
            return moves
        if head == "shoot":
            return self._shoot(rule, state, mover)
        if head == "place":
            _, base, cond = rule
            pid = self.game.piece_instance(base, mover)
            return [
                self._finish([("cell", v, pid)], False, mover)
                for v in range(self.board.vertex_count)
                if self._cond(cond, state, mover, v)
            ]
        if head == "drop":
            return self._drop(rule, state, mover)
        if head == "custodialFlip":
            return self._custodial(rule, state, mover)
        raise ValueError(f"unknown play rule {head!r}")

    def _finish(self, effects: list, replay: bool, mover: int) -> Move:
        if not replay:
            effects = effects + [("pass", self.next_player(mover))]
        return Move(tuple(effects), replay)

    def _piece_moves(self, rule, replay, state, mover, origin, pid) -> list[Move]:
        head = rule[0]
        if head == "or":
            out = []
            for part in rule[1]:
                out.extend(
                    self._piece_moves(part, replay, state, mover, origin, pid)
                )
            # distinct sub-rules may propose the same move; drop repeats
            seen, uniq = set(), []
            for m in out:
                if m.effects not in seen:
                    seen.add(m.effects)
                    uniq.append(m)
            return uniq
        moves = []
        if head == "slide":
            _, cond, dirs = rule
            dir_idxs = (
                self._all_dirs
                if dirs is None
                else tuple(self.board.direction_index(d) for d in dirs)
            )
            for d in dir_idxs:
                table = self.board.neighbors[d]
                v = table[origin]
                while v >= 0 and self._cond(cond, state, mover, v):
                    moves.append(
                        self._finish(
                            [("cell", origin, 0), ("cell", v, pid)], replay, mover
                        )
                    )
                    v = table[v]
        elif head == "step":
            _, dirs, cond = rule
            rel = _RELATIVE_DIRS[mover]
            for name in dirs:
                d = self.board.direction_index(rel.get(name, name))
                v = self.board.neighbors[d][origin]
                if v >= 0 and self._cond(cond, state, mover, v):
                    moves.append(
                        self._finish(
                            [("cell", origin, 0), ("cell", v, pid)], replay, mover
                        )
                    )
        else:
            raise ValueError(f"unknown piece move rule {head!r}")
        return moves

    def _shoot(self, rule, state, mover) -> list[Move]:
        _, cond, base, owner = rule
        if state.last_to == NO_VERTEX:
            raise ShootWithoutContext("shoot evaluated with no previous move")
        pdef = self.game.piece_defs[base]
        pid = self.game.piece_instance(base, 0 if pdef.ownership == "None" else owner)
        moves = []
        for d in self._all_dirs:
            table = self.board.neighbors[d]
            v = table[state.last_to]
            while v >= 0 and self._cond(cond, state, mover, v):
                moves.append(self._finish([("cell", v, pid)], False, mover))
                v = table[v]
        return moves

    def _drop(self, rule, state, mover) -> list[Move]:
        _, base = rule
        pid = self.game.piece_instance(base, mover)
        board = self.board
        contents = state.contents
        moves = []
        for col in range(board.cols):
            # lowest empty cell of the column
            for row in range(board.rows - 1, -1, -1):
                v = row * board.cols + col
                if contents[v] == 0:
                    moves.append(self._finish([("cell", v, pid)], False, mover))
                    break
        return moves

    def _custodial(self, rule, state, mover) -> list[Move]:
        _, base = rule
        pid = self.game.piece_instance(base, mover)
        board = self.board
        contents = state.contents
        owner = self._owner
        moves = []
        for v, cell in enumerate(contents):
            if cell != 0:
                continue
            flips = []
            for d in self._all_dirs:
                table = board.neighbors[d]
                run = []
                u = table[v]
                while u >= 0 and owner[contents[u]] not in (0, mover):
                    run.append(u)
                    u = table[u]
                if run and u >= 0 and owner[contents[u]] == mover:
                    flips.extend(run)
            if flips:
                effects = [("cell", u, pid) for u in flips]
                effects.append(("cell", v, pid))
                moves.append(self._finish(effects, False, mover))
        if not moves:
            # pass, but only when some other player could still flip
            for p in range(1, self.player_count + 1):
                if p != mover and self._custodial_exists(state, p):
                    return [self._finish([], False, mover)]
        return moves

    def _custodial_exists(self, state: GameState, player: int) -> bool:
        board = self.board
        contents = state.contents
        owner = self._owner
        for v, cell in enumerate(contents):
            if cell != 0:
                continue
            for d in self._all_dirs:
                table = board.neighbors[d]
                u = table[v]
                seen_enemy = False
                while u >= 0 and owner[contents[u]] not in (0, player):
                    seen_enemy = True
                    u = table[u]
                if seen_enemy and u >= 0 and owner[contents[u]] == player:
                    return True
        return False

    # -- conditions -----------------------------------------------------

    def _cond(self, cond, state: GameState, mover: int, vertex: int) -> bool:
        head = cond[0]
        if head == "empty":
            return state.contents[vertex] == 0
        if head == "enemy":
            o = self._owner[state.contents[vertex]]
            return o not in (0, mover)
        if head == "friend":
            return self._owner[state.contents[vertex]] == mover
        if head == "not":
            return not self._cond(cond[1], state, mover, vertex)
        if head == "or":
            return any(self._cond(c, state, mover, vertex) for c in cond[1])
        raise ValueError(f"unknown condition {head!r}")

    # -- end rules ------------------------------------------------------

    def _resolve_player(self, sel: str, mover: int) -> int:
        if sel == "mover":
            return mover
        if sel == "next":
            return self.next_player(mover)
        return (mover - 2) % self.player_count + 1  # prev

    def _player_piece_ids(self, player: int) -> frozenset:
        return frozenset(
            pid for pid, o in enumerate(self._owner) if o == player
        )

    def _evaluate_end(self, state: GameState, moves: list[Move]):
        mover = state.mover
        for cond, result in self.game.end_rules:
            head = cond[0]
            fired = False
            if head == "stalemated":
                fired = not moves
            elif head == "line":
                prev = self._resolve_player("next", mover)
                fired = detect_line(
                    self.board,
                    state.contents,
                    state.last_to,
                    self._player_piece_ids(prev),
                    cond[1],
                )
            elif head == "connected":
                player = self._resolve_player(cond[1], mover)
                sides = (
                    ("top", "bottom") if player == 1 else ("left", "right")
                )
                fired = region_connected(
                    self.board,
                    state.contents,
                    self._player_piece_ids(player),
                    self.board.sides[sides[0]],
                    self.board.sides[sides[1]],
                )
            elif head == "reached":
                player = self._resolve_player(cond[1], mover)
                goal = (
                    self.board.sides["top"]
                    if player == 1
                    else self.board.sides["bottom"]
                )
                ids = self._player_piece_ids(player)
                fired = any(state.contents[v] in ids for v in goal)
            elif head == "boardFull":
                fired = 0 not in state.contents
            elif head == "noMovesAll":
                fired = not moves and all(
                    not self._generate(state, p)
                    for p in range(1, self.player_count + 1)
                    if p != mover
                )
            if fired:
                return self._payoffs(result, state, mover)
        return None

    def _payoffs(self, result, state: GameState, mover: int) -> dict:
        players = range(1, self.player_count + 1)
        head = result[0]
        if head == "draw":
            return {p: 50 for p in players}
        if head in ("win", "loss"):
            who = self._resolve_player(result[1], mover)
            top = head == "win"
            return {
                p: (100 if (p == who) == top else 0) for p in players
            }
        # byCount: majority of on-board pieces of the named kind
        counts = {p: 0 for p in players}
        for pid in state.contents:
            o = self._owner[pid]
            base = self.piece_symbols[pid].rstrip("0123456789")
            if o and base == result[1]:
                counts[o] += 1
        best = max(counts.values())
        winners = [p for p, c in counts.items() if c == best]
        if len(winners) > 1:
            return {p: 50 for p in players}
        return {p: (100 if p == winners[0] else 0) for p in players}
