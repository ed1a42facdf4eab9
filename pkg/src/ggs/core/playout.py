"""Generic engine interface and the flat Monte Carlo playout driver."""

from __future__ import annotations

from dataclasses import dataclass

from .board import BoardGraph
from .model import GameState, Move, encode_delta, encode_effects, move_delta
from .rng import Prng

DEFAULT_MAX_PLIES = 1000


class EngineFault(RuntimeError):
    """A front-end reported a non-terminal state with no legal moves."""


class Engine:
    """Common surface both front-ends implement.

    Subclasses provide:
      board: BoardGraph
      player_count: int
      piece_symbols: sequence mapping piece id -> display symbol
      initial_state() -> GameState
      probe(state) -> (sorted legal moves, payoffs dict or None)
      apply(state, move) -> GameState
    ``probe`` computes legal moves at most once; payoffs is a mapping
    player index -> payoff in {0, 50, 100} when the state is terminal.
    """

    board: BoardGraph
    player_count: int
    piece_symbols: tuple[str, ...]

    def initial_state(self) -> GameState:
        raise NotImplementedError

    def probe(self, state: GameState):
        raise NotImplementedError

    def apply(self, state: GameState, move: Move) -> GameState:
        raise NotImplementedError

    # -- shared helpers -------------------------------------------------

    def delta_text(self, state: GameState, move: Move) -> str:
        return encode_delta(move_delta(state, move), self.board, self.piece_symbols)

    def sort_moves(self, state: GameState, moves: list[Move]) -> list[Move]:
        """Canonical order: delta encoding, then raw effect encoding."""
        board, symbols = self.board, self.piece_symbols
        return sorted(
            moves,
            key=lambda m: (
                encode_delta(move_delta(state, m), board, symbols),
                encode_effects(m, board, symbols),
            ),
        )

    def legal_moves(self, state: GameState) -> list[Move]:
        return self.probe(state)[0]

    def terminal_result(self, state: GameState):
        return self.probe(state)[1]


@dataclass
class PlayoutResult:
    move_count: int
    outcome: dict[int, int]
    truncated: bool


def run_playout(
    engine: Engine, seed: int, max_length: int = DEFAULT_MAX_PLIES
) -> PlayoutResult:
    """Play uniformly random legal moves until terminal or max_length."""
    if max_length < 1:
        raise ValueError("max_length must be positive")
    rng = Prng(seed)
    state = engine.initial_state()
    count = 0
    while count < max_length:
        moves, payoffs = engine.probe(state)
        if payoffs is not None:
            return PlayoutResult(count, payoffs, False)
        if not moves:
            raise EngineFault(
                f"no legal moves and no terminal rule fired at ply {count}"
            )
        state = engine.apply(state, moves[rng.uniform_index(len(moves))])
        count += 1
    draw = {p: 50 for p in range(1, engine.player_count + 1)}
    return PlayoutResult(count, draw, True)
