from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from mpdecomp.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"

TRIANGLE = str(DATA / "triangle.mpfilt")
SUSPENSION = str(DATA / "suspension.mpfilt")
K23 = str(DATA / "k23.mpfilt")
RAW = str(DATA / "triangle.mppres")


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_decompose_json_worked_example(capsys):
    code, out, _ = run_cli(capsys, "decompose", TRIANGLE, "--dim", "0")
    assert code == 0
    payload = json.loads(out)
    assert payload["case"] == "H0"
    assert payload["perturbed"] is False
    blocks = [
        (tuple(b["row_labels"]), tuple(b["col_labels"]))
        for b in payload["blocks"]
        if not b["trivial"]
    ]
    assert sorted(blocks) == [(("0", "1"), ("3",)), (("2",), ("4", "5"))]
    assert payload["matrix"]["columns"] == [[0, 1], [2], [2]]


def test_decompose_text_golden(capsys):
    code, out, _ = run_cli(capsys, "decompose", TRIANGLE, "--dim", "0",
                           "--format", "text")
    assert code == 0
    assert out == (
        "case H0, 2 parameters, perturbed: no\n"
        "matrix 3x3, ops applied: 2\n"
        "rows:\n"
        "  [0] 0 (0,1) = 0\n"
        "  [1] 1 (1,0) = 1\n"
        "  [2] 2 (1,1) = 2 + t^(0,1)*1\n"
        "cols:\n"
        "  [0] 3 (1,1) = 3\n"
        "  [1] 4 (1,2) = 4 + t^(0,1)*3\n"
        "  [2] 5 (2,1) = 5\n"
        "entries:\n"
        "  100\n"
        "  100\n"
        "  011\n"
        "blocks:\n"
        "  0: rows=[0,1] cols=[0]\n"
        "  1: rows=[2] cols=[1,2]\n"
    )


def test_json_output_is_deterministic(capsys):
    _, first, _ = run_cli(capsys, "decompose", SUSPENSION, "--dim", "1")
    _, second, _ = run_cli(capsys, "decompose", SUSPENSION, "--dim", "1")
    assert first == second
    payload = json.loads(first)
    assert list(payload.keys()) == sorted(payload.keys())


def test_betti_json_torus_analogue(capsys):
    code, out, _ = run_cli(capsys, "betti", SUSPENSION, "--dim", "1")
    assert code == 0
    payload = json.loads(out)
    betti = [b["betti"] for b in payload["blocks"]]
    assert betti == [
        {"0": [[0, 1], [1, 0]], "1": [[1, 1]], "2": []},
        {"0": [[1, 1]], "1": [[1, 2], [2, 1]], "2": [[2, 2]]},
        {"0": [[2, 2]], "1": [], "2": []},
    ]


def test_blockcode_csv_header_and_rows(capsys):
    code, out, _ = run_cli(
        capsys, "blockcode", TRIANGLE, "--dim", "0", "--box", "0,0:3,3"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x1,x2,block_id,dim"
    assert len(lines) == 1 + 16 * 2
    # block 0 is the two-generator summand: dim 1 at (1,1)
    assert "1,1,0,1" in lines
    assert "1,1,1,1" in lines  # block 1 alive only at (1,1)
    assert "2,2,1,0" in lines
    assert "0,0,0,0" in lines


def test_check_reports_agreement(capsys):
    code, out, _ = run_cli(capsys, "check", K23, "--dim", "1")
    assert code == 0
    assert "agree" in out


def test_diagonalize_raw_presentation(capsys):
    code, out, _ = run_cli(capsys, "diagonalize", RAW, "--format", "text")
    assert code == 0
    assert "blocks:" in out
    assert "rows=[0,1] cols=[0]" in out


def test_export_pres_round_trips(tmp_path, capsys):
    out_file = tmp_path / "exported.mppres"
    code, _, _ = run_cli(
        capsys, "export-pres", SUSPENSION, "--dim", "1", "--output", str(out_file)
    )
    assert code == 0
    text = out_file.read_text()
    code2, out2, _ = run_cli(capsys, "diagonalize", str(out_file), "--format", "text")
    assert code2 == 0
    assert "rows=[3] cols=[]" in out2
    # emitted file parses back to the identical matrix
    from mpdecomp import parse_presentation

    P = parse_presentation(text)
    assert P.n_rows == 4 and P.n_cols == 3


def test_exit_code_2_on_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.mpfilt"
    bad.write_text("mpfilt 1\nparams 2\ns 0 :\n")
    code, _, err = run_cli(capsys, "decompose", str(bad))
    assert code == 2
    assert "error" in err


def test_exit_code_2_on_missing_file(capsys):
    code, _, err = run_cli(capsys, "decompose", "/nonexistent/x.mpfilt")
    assert code == 2
    assert "cannot read" in err


def test_exit_code_3_on_tied_grades(tmp_path, capsys):
    tied = tmp_path / "tied.mppres"
    tied.write_text(
        "mppres 1\nparams 2\nrows 2\nr 0 0\nr 0 0\ncols 1\nc 1 1 : 0 1\n"
    )
    code, _, err = run_cli(capsys, "diagonalize", str(tied))
    assert code == 3
    assert "tied" in err
    code2, out, _ = run_cli(capsys, "diagonalize", str(tied), "--perturb",
                            "--format", "text")
    assert code2 == 0
    assert "perturbed: yes" in out


def test_dim_flag_rejected_for_presentations(capsys):
    code, _, err = run_cli(capsys, "diagonalize", RAW, "--dim", "1")
    assert code == 2
    assert "filtration" in err


def test_bad_box_flag(capsys):
    code, _, err = run_cli(capsys, "decompose", TRIANGLE, "--box", "1,2")
    assert code == 2
    assert "--box" in err
    code2, _, err2 = run_cli(capsys, "decompose", TRIANGLE, "--box", "0,0,0:1,1,1")
    assert code2 == 2
    assert "coordinates" in err2


def test_installed_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "mpdecomp", "decompose", TRIANGLE, "--dim", "0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["case"] == "H0"
