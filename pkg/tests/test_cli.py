"""End-to-end command-line behavior via subprocess."""

import json
import subprocess
import sys

from ggs import library


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "ggs.cli", *args],
        capture_output=True,
        text=True,
    )


def test_usage_error_exits_2():
    assert run_cli().returncode == 2
    assert run_cli("bench", "amazons", "--mode", "nosuch").returncode == 2
    assert run_cli("table").returncode == 2


def test_validate_library_files():
    for entry in library.list_games():
        for path in (entry.rbg_path, entry.lud_path):
            proc = run_cli("validate", str(path))
            assert proc.returncode == 0, proc.stderr
            assert "ok" in proc.stdout
    proc = run_cli("validate", "/nonexistent/game.rbg")
    assert proc.returncode == 1
    assert proc.stdout == ""
    assert proc.stderr


def test_validate_reports_diagnostics(tmp_path):
    bad = tmp_path / "broken.lud"
    bad.write_text("(game \"X\" (mode 2)")
    proc = run_cli("validate", str(bad))
    assert proc.returncode == 1
    assert "Unbalanced" in proc.stderr


def test_moves_lists_canonical_deltas():
    proc = run_cli("moves", "tictactoe")
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert len(lines) == 9
    assert lines == sorted(lines)
    # scripted state: play the first listed move, then count replies
    follow = run_cli("moves", "tictactoe", "--state", lines[0])
    assert follow.returncode == 0
    assert len(follow.stdout.splitlines()) == 8
    bad = run_cli("moves", "tictactoe", "--state", "cell:a1=zz;mover=9")
    assert bad.returncode == 1


def test_perft_in_both_dialects():
    for extra in ([], ["--dialect", "ludemic"], ["--mode", "compiled"]):
        proc = run_cli("perft", "tictactoe", "--depth", "2", *extra)
        assert proc.returncode == 0, proc.stderr
        assert proc.stdout.strip() == "72"


def test_bench_emits_json():
    proc = run_cli(
        "bench", "tictactoe", "--mode", "ludemic",
        "--count", "5", "--warmup", "1", "--seed", "3",
    )
    assert proc.returncode == 0, proc.stderr
    data = json.loads(proc.stdout)
    assert data["playouts"] == 5
    assert data["mode"] == "ludemic"
    assert data["seed"] == 3


def test_tokens():
    proc = run_cli("tokens", "gomoku", "--dialect", "ludemic")
    assert proc.returncode == 0
    assert int(proc.stdout) > 0


def test_xval_ok_and_stream_separation():
    proc = run_cli("xval", "tictactoe", "--depth", "1", "--walks", "3")
    assert proc.returncode == 0, proc.stderr
    report = json.loads(proc.stdout)  # machine output only on stdout
    assert report["game"] == "tictactoe"
    assert proc.stderr.strip().endswith("OK")


def test_table_single_game_csv():
    proc = run_cli(
        "table", "tictactoe", "--format", "csv",
        "--count", "3", "--warmup", "1",
    )
    assert proc.returncode == 0, proc.stderr
    lines = proc.stdout.splitlines()
    assert lines[0].startswith("game,tokensRbg")
    assert lines[1].startswith("Tic-Tac-Toe,")


def test_dump_ir():
    proc = run_cli("dump-ir", "amazons")
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0].lstrip().startswith("0:")
