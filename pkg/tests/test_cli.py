import io
import json
import subprocess
import sys

import pytest

from albert_e6 import cli
from albert_e6.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, build_parser, run
from albert_e6.verify import Check


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv, "--no-timing")
    return code, json.loads(text)


def test_classify_white():
    code, doc = call_json("classify", "--q", "2", "(0,0,1|0;0;0)")
    assert code == EXIT_OK
    assert doc["schema"] == "albert-e6/1"
    assert doc["color"] == "white" and doc["delta"] == "0"


def test_classify_black_gf4():
    code, doc = call_json("classify", "--q", "4", "([0,1],1,1|0;0;0)")
    assert code == EXIT_OK
    assert doc["color"] == "black" and doc["delta"] == "[0,1]"


def test_count_white_formula():
    code, doc = call_json("count-white", "--q", "2", "--method", "formula")
    assert code == EXIT_OK and doc["white_vectors"] == 139503


def test_count_white_stratified_and_points():
    _, doc = call_json("count-white", "--q", "3", "--method", "stratified")
    assert doc["white_vectors"] == 130747526
    _, doc = call_json("count-white", "--q", "3", "--method", "points")
    assert doc["white_points"] == 65373763


def test_count_white_enumerate_out_of_budget():
    code, _ = call("count-white", "--q", "3", "--method", "enumerate")
    assert code == EXIT_USAGE


def test_order():
    _, doc = call_json("order", "--q", "4")
    assert doc["order_se6"] == 3 * doc["order_e6"]
    assert doc["stabilizer_consistent"] is True


def test_verify_commutators_exit_zero():
    code, doc = call_json("verify", "--q", "2", "--suite", "commutators", "--seed", "7")
    assert code == EXIT_OK and doc["passed"] is True


def test_reduce():
    code, doc = call_json("reduce", "--q", "3", "(1,1,1|0;0;0)")
    assert code == EXIT_OK
    assert doc["kind"] == "BlackRep" and doc["lambda"] == "1"


def test_orbit_with_word():
    _, doc = call_json("orbit", "--q", "2", "--gens", "tau")
    assert doc["orbit_size"] == 3


def test_matrix_rows():
    code, text = call("matrix", "--q", "2", "delta;delta", "--format", "csv", "--no-timing")
    lines = text.strip().splitlines()
    assert code == EXIT_OK and lines[0] == "row,entries" and len(lines) == 28
    assert lines[1] == "0," + " ".join(["1"] + ["0"] * 26)


def test_text_format():
    code, text = call("classify", "--q", "2", "(0,1,1|0;0;0)", "--format", "text", "--no-timing")
    assert code == EXIT_OK and "color=grey" in text


@pytest.mark.parametrize("argv", [
    ["classify", "--q", "2", "(0,0,1|0;0)"],
    ["classify", "--q", "6", "(0,0,1|0;0;0)"],
    ["matrix", "--q", "3", "Pu:u=e1"],
    ["matrix", "--q", "3", "Q:x=e1"],
    ["nonsense"],
    [],
])
def test_usage_errors(argv, capsys):
    assert call(*argv)[0] == EXIT_USAGE


def test_parse_error_reports_position(capsys):
    call("classify", "--q", "2", "(0,0,1|0;0)")
    err = capsys.readouterr().err
    assert "position 10" in err and "grammar" in err


def test_failing_verification_exits_one(monkeypatch):
    monkeypatch.setattr(cli, "run_suite", lambda *a, **k: [Check("forced", False)])
    code, doc = call_json("verify", "--q", "2", "--suite", "orders")
    assert code == EXIT_FAIL and doc["passed"] is False


def test_same_seed_same_bytes():
    argv = ("verify", "--q", "3", "--suite", "moufang", "--seed", "11", "--samples", "300", "--no-timing")
    assert call(*argv) == call(*argv)


@pytest.mark.slow
def test_threads_do_not_change_results():
    a = call("count-white", "--q", "2", "--method", "enumerate", "--threads", "1", "--no-timing")
    b = call("count-white", "--q", "2", "--method", "enumerate", "--threads", "4", "--no-timing")
    assert a == b
    assert json.loads(a[1])["white_vectors"] == 139503


def test_threads_from_environment(monkeypatch):
    monkeypatch.setenv("ALBERT_E6_THREADS", "3")
    assert build_parser().parse_args(["order"]).threads == 3


def test_timing_field():
    _, text = call("order", "--q", "2")
    assert "elapsed_ms" in json.loads(text)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "albert_e6", "count-white", "--q", "2", "--no-timing"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["white_vectors"] == 139503
