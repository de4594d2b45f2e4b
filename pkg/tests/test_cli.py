import io
import json

import pytest

from minitwistor.cli import dumps, load_config, build_parser, run
from minitwistor.errors import ConfigError


def call(argv):
    buf = io.StringIO()
    code = run(argv, buf)
    return code, buf.getvalue()


def test_dumps_is_deterministic():
    text = dumps({"b": float("nan"), "a": [0.1, 1e-300]})
    assert json.loads(text) == {"b": None, "a": [0.1, 1e-300]}


def test_periods_command():
    code, out = call(["periods"])
    data = json.loads(out)
    assert code == 0 and data["status"] == "ok" and data["genus"] == 2
    assert max(data["reality"]["circle"] + data["reality"]["gap"]) < 1e-9


def test_config_file(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"branch_points": [-2, -1, 1, 2], "grid": 8}))
    code, out = call(["seifert", "--config", str(path)])
    data = json.loads(out)
    assert code == 0 and data["count"] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["nonsense"],
        ["periods", "--k", "3"],
        ["periods", "--grid", "1"],
    ],
)
def test_invalid_input_exits_one(argv):
    code, out = call(argv)
    assert code == 1 and json.loads(out)["status"] == "invalid_config"


def test_bad_config_file(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"branch_points": [], "colour": 1}))
    assert call(["periods", "--config", str(path)])[0] == 1
    assert call(["periods", "--config", str(tmp_path / "missing.json")])[0] == 1


def test_numerical_failure_exits_two(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"u": 0.0, "v": 1.0}))
    code, out = call(["metric", "--config", str(path)])
    assert code == 2 and json.loads(out)["error"] == "DegeneratePoint"


def test_line_and_metric():
    data = json.loads(call(["line", "--k", "2"])[1])
    assert data["kind"] == "regular" and data["k"] == 2
    data = json.loads(call(["metric"])[1])
    assert data["lorentzian"] is True


def test_export_writes_csv(tmp_path):
    out = tmp_path / "rows.csv"
    code, text = call(["export", "--grid", "4", "--out", str(out)])
    assert code == 0 and json.loads(text)["rows"] == 32
    lines = out.read_text().splitlines()
    assert lines[0].startswith("branch,s,t,phi1,phi2") and len(lines) == 33


def test_ale_command(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"ale": {"l": 2, "a": [-2, -1, 1, 2], "beta": -1.5}, "samples": 50}))
    data = json.loads(call(["ale", "--config", str(path)])[1])
    assert data["passed"] and data["c"] > 0


def test_load_config_defaults():
    conf = load_config(build_parser().parse_args(["zoll"]))
    assert conf["trials"] == 20 and conf["curve"].genus == 2
    with pytest.raises(ConfigError):
        load_config(build_parser().parse_args(["zoll", "--k", "0"]))


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "minitwistor", "periods"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["status"] == "ok"
