import csv
import io
import json
import subprocess
import sys

import pytest

from artifact.cli import fmt_float, run


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_eval_segment_l2():
    code, text = run(["eval", "--shape", "segment", "--space", "l2", "--p", "3", "--point", "0.5"])
    assert code == 0
    r = rows(text)
    assert r[0][-1] == "value"
    assert [row[-1] for row in r[1:]] == ["1.0", "0.0", "-0.5"]


def test_eval_tet_json():
    code, text = run(["eval", "--shape", "tet", "--space", "h1", "--p", "2", "--point", "0.1,0.2,0.3",
                      "--format", "json"])
    data = json.loads(text)
    assert code == 0 and len(data) == 10
    assert data[0]["grad_x"] == -1.0 and data[1]["value"] == 0.1
    assert abs(sum(d["value"] for d in data[:4]) - 1.0) < 1e-15


def test_eval_orientation_changes_signs():
    base = ["eval", "--shape", "triangle", "--space", "h1", "--p", "3", "--point", "0.3,0.2", "--format", "json"]
    _, a = run(base)
    _, b = run(base + ["--orient", "edge0=1"])
    a, b = json.loads(a), json.loads(b)
    odd = [k for k, d in enumerate(a) if d["entity"] == "edge" and d["entity_id"] == 0 and d["multi_index"] == [3]]
    assert odd and b[odd[0]]["value"] == pytest.approx(-a[odd[0]]["value"])


def test_count():
    code, text = run(["count", "--shape", "pyramid", "--space", "h1", "--p", "3"])
    assert code == 0
    assert rows(text) == [["entity", "count"], ["vertex", "5"], ["edge", "16"], ["face", "8"], ["interior", "8"],
                          ["total", "37"]]
    _, text = run(["count", "--shape", "hex", "--space", "hdiv", "--p", "1", "--q", "2", "--r", "3",
                   "--format", "json"])
    assert json.loads(text)[-1] == {"entity": "total", "count": 2 * 2 * 3 + 1 * 3 * 3 + 1 * 2 * 4}


@pytest.mark.parametrize(
    "argv,code",
    [
        (["eval", "--shape", "disk", "--space", "h1", "--p", "2", "--point", "0.1,0.1"], 2),
        (["eval", "--shape", "segment", "--space", "hdiv", "--p", "2", "--point", "0.1"], 2),
        (["eval", "--shape", "pyramid", "--space", "h1", "--p", "2", "--point", "0,0,1"], 3),
        (["eval", "--shape", "triangle", "--space", "h1", "--p", "2", "--point", "0.8,0.8"], 3),
        (["eval", "--shape", "quad", "--space", "h1", "--p", "2", "--point", "0.1"], 2),
        (["count", "--shape", "tet", "--space", "h1", "--p", "25"], 2),
    ],
)
def test_exit_codes(argv, code):
    assert run(argv)[0] == code


def test_fmt_float():
    assert fmt_float(0.0) == "0.0"
    assert fmt_float(-0.0) == "0.0"
    assert fmt_float(0.1) == "0.1"
    assert fmt_float(1e-7) == "1e-7"
    assert fmt_float(2.5e-12) == "2.5e-12"
    assert fmt_float(123456.0) == "123456.0"
    assert fmt_float(1.5e6) == "1.5e6"
    assert float(fmt_float(1 / 3)) == 1 / 3


def test_output_is_deterministic():
    argv = ["eval", "--shape", "prism", "--space", "hcurl", "--p", "2", "--q", "3", "--point", "0.2,0.3,0.4"]
    assert run(argv) == run(argv)


def test_tabulate_and_plot(tmp_path):
    out = tmp_path / "tab.csv"
    code, _ = run(["tabulate", "--shape", "triangle", "--space", "hdiv", "--p", "2", "--n", "4",
                   "--function", "0", "--output", str(out)])
    r = rows(out.read_text())
    assert code == 0 and r[0][:3] == ["x", "y", "index"] and len(r) == 1 + 10
    png = tmp_path / "f.png"
    code, text = run(["plot-data", "--shape", "quad", "--space", "h1", "--p", "2", "--n", "5", "--png", str(png)])
    assert code == 0 and png.read_bytes()[:4] == b"\x89PNG"
    assert len(rows(text)) == 1 + 25 * 6


def test_verify_reproduce_hex():
    code, text = run(["verify", "reproduce", "--shape", "hex", "--space", "hdiv", "--p", "2"])
    data = json.loads(text)
    assert code == 0 and data and all(d["pass"] for d in data)


def test_verify_sequence_and_failure_exit():
    code, text = run(["verify", "sequence", "--shape", "triangle", "--p", "2"])
    assert code == 0 and all(d["pass"] for d in json.loads(text))
    code, _ = run(["verify", "sequence", "--shape", "triangle", "--p", "2", "--tol", "1e-30"])
    assert code == 1


def test_verify_mesh_csv():
    code, text = run(["verify", "mesh", "--p", "1", "--space", "h1", "--format", "csv"])
    r = rows(text)
    assert code == 0 and "pass" in r[0]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "artifact.cli", "count", "--shape", "quad", "--space", "l2",
                           "--p", "2", "--q", "3"], capture_output=True, text=True, check=True)
    assert proc.stdout.strip().splitlines()[-1] == "total,6"
