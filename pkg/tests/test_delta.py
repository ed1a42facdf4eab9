"""State delta semantics: net change, encoding, application."""

from ggs.core.board import build_rectangle_board
from ggs.core.model import (
    GameState,
    Move,
    NO_VERTEX,
    apply_effects,
    encode_delta,
    encode_effects,
    move_delta,
)

SYMBOLS = ("e", "w", "b")


def fresh_state():
    return GameState(contents=[0] * 9, mover=1, variables={"white": 0})


def test_later_write_wins_and_noops_dropped():
    s = fresh_state()
    m = Move((("cell", 4, 1), ("cell", 4, 2), ("cell", 0, 0)))
    d = move_delta(s, m)
    assert d.cell_changes == ((4, 2),)  # the write of e over e is a no-op
    assert d.next_mover == 1


def test_pass_and_var_effects():
    s = fresh_state()
    m = Move((("var", "white", 100), ("pass", 2)))
    d = move_delta(s, m)
    assert d.var_changes == (("white", 100),)
    assert d.next_mover == 2


def test_encode_delta_is_sorted_and_stable():
    board = build_rectangle_board(3, 3)
    s = fresh_state()
    m = Move((("cell", 8, 1), ("cell", 0, 2), ("pass", 2)))
    text = encode_delta(move_delta(s, m), board, SYMBOLS)
    assert text == "cell:a3=b,cell:c1=w;mover=2"


def test_encode_effects_keeps_order_and_replay():
    board = build_rectangle_board(3, 3)
    m = Move((("cell", 8, 1), ("cell", 0, 2)), replay=True)
    assert encode_effects(m, board, SYMBOLS) == "set:c1=w|set:a3=b|keep"


def test_apply_effects_tracks_destination_and_turn():
    s = fresh_state()
    m = Move((("cell", 4, 1), ("pass", 2)))
    nxt = apply_effects(s, m)
    assert nxt.contents[4] == 1
    assert nxt.mover == 2
    assert nxt.turn_number == 1
    assert nxt.last_to == 4
    # the source state is untouched
    assert s.contents[4] == 0 and s.mover == 1


def test_apply_effects_without_cell_keeps_last_to():
    s = fresh_state()
    s.last_to = 7
    nxt = apply_effects(s, Move((("pass", 2),)))
    assert nxt.last_to == 7
    assert Move((("pass", 2),)).destination() == NO_VERTEX


def test_state_key_distinguishes_full_fidelity():
    a, b = fresh_state(), fresh_state()
    assert a.key() == b.key()
    b.variables["white"] = 1
    assert a.key() != b.key()
