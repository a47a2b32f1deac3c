import json
import subprocess
import sys

import pytest

from foolrank import matrix_io
from foolrank.char_p_family import CharPParams, build_circulant
from foolrank.char_zero_family import build_M
from foolrank.cli import main
from foolrank.exact_algebra import RATIONAL, ExactMatrix, FieldSpec, rank_gf
from foolrank.fooling_core import bound_report, build_inner_product_matrix, is_fooling_matrix


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def last_json(out):
    return json.loads(out.strip().splitlines()[-1])


SUITE = [
    build_M(1).matrix,
    build_M(3).matrix,
    build_circulant(CharPParams(2, 1)),
    build_circulant(CharPParams(3, 1)),
    build_inner_product_matrix(2),
    ExactMatrix(RATIONAL, [["1/2", "-3/4", 0], [5, "7/3", "-1"]]),
]


@pytest.mark.parametrize("m", SUITE)
@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_round_trip(m, fmt, tmp_path):
    path = tmp_path / f"m.{fmt}"
    matrix_io.write_matrix(m, path)
    back = matrix_io.read_matrix(path)
    assert back == m
    assert matrix_io.dumps(back, fmt) == path.read_text()
    if m.is_square and is_fooling_matrix(m):
        assert bound_report(back) == bound_report(m)


def test_file_layout():
    m = ExactMatrix(RATIONAL, [["1/2", -1]])
    obj = json.loads(matrix_io.dumps_json(m))
    assert obj == {"field": "rational", "n_rows": 1, "n_cols": 2, "entries": [["1/2", "-1"]]}
    assert matrix_io.dumps_csv(m) == "field,rational\nshape,1,2\n1/2,-1\n"
    assert matrix_io.loads("field,gf:3\nshape,1,2\n2,1\n").rows == ((2, 1),)


@pytest.mark.parametrize("text", [
    "{not json",
    '{"field": "gf:4", "n_rows": 1, "n_cols": 1, "entries": [["1"]]}',
    '{"field": "rational", "n_rows": 2, "n_cols": 1, "entries": [["1"]]}',
    '{"field": "rational", "n_rows": 1, "n_cols": 1, "entries": [[1]]}',
    '{"field": "gf:3", "n_rows": 1, "n_cols": 1, "entries": [["1/2"]]}',
    '{"field": "rational", "n_rows": 1, "n_cols": 1, "entries": [["x"]]}',
    "field,rational\n1,2\n",
])
def test_malformed(text):
    with pytest.raises(matrix_io.MatrixFormatError):
        matrix_io.loads(text)


def test_construct_charp(capsys, tmp_path):
    out = tmp_path / "c.json"
    code, stdout, _ = run(capsys, "construct", "charp", 2, 1, "--out", out)
    assert code == 0
    m = matrix_io.read_matrix(out)
    assert m.field == FieldSpec.gf(2) and m.shape == (7, 7)
    assert m == build_circulant(CharPParams(2, 1))
    code, _, _ = run(capsys, "construct", "charp", "--p", 3, "--t", 1, "--out", tmp_path / "d.csv")
    assert code == 0 and matrix_io.read_matrix(tmp_path / "d.csv").shape == (13, 13)


def test_construct_char0_stdout(capsys):
    code, stdout, _ = run(capsys, "construct", "char0", 2)
    assert code == 0
    m = matrix_io.loads(stdout)
    assert [[int(x) for x in r] for r in m.rows] == [[1, 0, 1], [-1, 1, 0], [0, 1, 1]]


def test_construct_errors(capsys):
    code, _, err = run(capsys, "construct", "charp", 4, 1)
    assert code == 1 and "4 is not prime" in err
    code, _, err = run(capsys, "construct", "char0")
    assert code == 1 and "missing" in err
    code, _, err = run(capsys, "construct", "char0", 61)
    assert code == 1 and "cap" in err


def test_size_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("FOOLRANK_SIZE_CAP", "10")
    code, _, err = run(capsys, "construct", "charp", 3, 1)
    assert code == 1 and "exceeds cap 10" in err


def test_verify(capsys, tmp_path):
    path = tmp_path / "m3.json"
    matrix_io.write_matrix(build_M(3).matrix, path)
    code, out, _ = run(capsys, "verify", path)
    rep = last_json(out)
    assert code == 0
    assert (rep["fooling"], rep["strict"], rep["n"], rep["rank"], rep["ratio"]) == (True, True, 6, 3, "2/3")

    matrix_io.write_matrix(build_circulant(CharPParams(3, 1)), path)
    code, out, _ = run(capsys, "verify", path)
    rep = last_json(out)
    assert code == 0 and (rep["fooling"], rep["n"], rep["rank"], rep["ratio"]) == (True, 13, 4, "13/16")

    matrix_io.write_matrix(ExactMatrix(RATIONAL, [[1, 1], [1, 1]]), path)
    code, out, _ = run(capsys, "verify", path)
    assert code == 2 and last_json(out)["fooling"] is False

    matrix_io.write_matrix(ExactMatrix(RATIONAL, [[1, 1]]), path)
    code, _, err = run(capsys, "verify", path)
    assert code == 1 and "not square" in err

    path.write_text("garbage")
    code, _, _ = run(capsys, "verify", path)
    assert code == 1
    code, _, _ = run(capsys, "verify", tmp_path / "missing.json")
    assert code == 1


def test_rank(capsys, tmp_path):
    path = tmp_path / "m.json"
    matrix_io.write_matrix(build_M(4).matrix, path)
    code, out, _ = run(capsys, "rank", path)
    assert code == 0 and last_json(out)["rank"] == 4


def test_rank_over_gf2(capsys, tmp_path):
    path = tmp_path / "m.json"
    m = build_M(4).matrix
    matrix_io.write_matrix(m, path)
    code, out, _ = run(capsys, "rank", path, "--field", "gf:2")
    rep = last_json(out)
    assert code == 0 and rep["field"] == "gf:2"
    assert rep["rank"] == rank_gf(m.over(FieldSpec.gf(2)))


def test_search(capsys, tmp_path):
    path, cert_path = tmp_path / "h.json", tmp_path / "cert.json"
    matrix_io.write_matrix(ExactMatrix.identity(5), path)
    code, out, _ = run(capsys, "search", path, "--out", cert_path)
    assert code == 0 and last_json(out)["size"] == 5
    cert = json.loads(cert_path.read_text())
    assert cert["cells"] == [[i, i] for i in range(5)] and cert["optimal"]

    matrix_io.write_matrix(build_M(3).matrix, path)
    code, out, _ = run(capsys, "search", path)
    assert last_json(out)["size"] == 6

    code, out, _ = run(capsys, "ip", "--m", 2, "--out", path)
    code, out, _ = run(capsys, "search", path, "--mode", "greedy")
    rep = last_json(out)
    assert code == 0 and rep["optimal"] is False and 1 <= rep["size"] <= 3
    code, out, _ = run(capsys, "search", path)
    assert last_json(out)["size"] == 3


def test_period(capsys):
    code, out, _ = run(capsys, "period", "--p", 2, "--r", 3, "--bound", 100)
    rep = last_json(out)
    assert code == 0 and rep["minimal_period"] == 7 and rep["divides_paper_period"] is True
    code, out, _ = run(capsys, "period", "--p", 2, "--r", 5, "--bound", 100)
    rep = last_json(out)
    assert 21 % rep["minimal_period"] == 0 and rep["divides_paper_period"] is True
    code, out, _ = run(capsys, "period", "--p", 2, "--r", 4, "--bound", 1000)
    rep = last_json(out)
    assert rep["minimal_period"] == 15 and "divides_paper_period" not in rep
    code, _, err = run(capsys, "period", "--p", 6, "--r", 3)
    assert code == 1


def test_tensor(capsys, tmp_path):
    src, dst = tmp_path / "m3.json", tmp_path / "t.json"
    matrix_io.write_matrix(build_M(3).matrix, src)
    code, _, _ = run(capsys, "tensor", src, "--power", 2, "--out", dst)
    assert code == 0
    code, out, _ = run(capsys, "verify", dst)
    rep = last_json(out)
    assert rep["n"] == 36 and rep["rank"] == 9

    run(capsys, "tensor", src, "-k", 1, "--out", dst)
    assert dst.read_bytes() == src.read_bytes()

    matrix_io.write_matrix(ExactMatrix.identity(2, FieldSpec.gf(5)), src)
    run(capsys, "tensor", src, "-k", 3, "--out", dst)
    assert matrix_io.read_matrix(dst) == ExactMatrix.identity(8, FieldSpec.gf(5))


def test_ip(capsys):
    code, out, _ = run(capsys, "ip", "--m", 1)
    assert code == 0 and matrix_io.loads(out).rows == ((0, 0), (0, 1))


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "foolrank", "period", "--p", "3", "--r", "4"],
                          capture_output=True, text=True, check=True)
    rep = json.loads(proc.stdout)
    assert rep["reference_period"] == 13 and 13 % rep["minimal_period"] == 0
