import json
import math
import os
import subprocess
import sys

import pytest

from dblab.cli import main, parse_complex
from dblab.examples import pw_space


def run_cli(args, stdin=None, env=None):
    e = dict(os.environ)
    if env:
        e.update(env)
    r = subprocess.run([sys.executable, "-m", "dblab.cli"] + args,
                       capture_output=True, text=True, input=stdin, env=e)
    return r.returncode, r.stdout, r.stderr


@pytest.fixture(scope="module")
def pw1_file(tmp_path_factory):
    p = tmp_path_factory.mktemp("spaces") / "pw1.json"
    p.write_text(json.dumps(pw_space(1.0).to_json()))
    return str(p)


def test_parse_complex_forms():
    assert parse_complex("0+1i") == 1j
    assert parse_complex("1.5-2i") == 1.5 - 2j
    assert parse_complex("3") == 3.0
    assert parse_complex("-2.5e-1j") == -0.25j
    assert parse_complex("i") == 1j


def test_eval_const():
    rc, out, _ = run_cli(["eval", "--f", '{"kind":"const","value":[1,0]}',
                          "--z", "5+0i"])
    doc = json.loads(out)
    assert rc == 0
    assert doc["result"]["value"] == [1.0, 0.0]
    assert doc["config"]["z"] == "5+0i"  # config echoed for provenance


def test_nabla_closed_form(pw1_file):
    rc, out, _ = run_cli(["nabla", "--space", pw1_file, "--z", "0+1i"])
    assert rc == 0
    got = json.loads(out)["result"]["value"]
    assert abs(got - math.sqrt(math.sinh(2) / (2 * math.pi))) < 1e-12


def test_phase_and_member(pw1_file):
    rc, out, _ = run_cli(["phase", "--space", pw1_file, "--t", "0.3"])
    assert rc == 0 and abs(json.loads(out)["result"]["value"] - 1.0) < 1e-9
    sinc = {"kind": "product", "children": [
        {"kind": "const", "value": [1.0 / math.pi, 0.0]}, {"kind": "sinc"}]}
    rc, out, _ = run_cli(["member", "--space", pw1_file, "--f", json.dumps(sinc)])
    assert rc == 0 and json.loads(out)["result"]["verdict"] == "in"


def test_config_on_stdin():
    cfg = json.dumps({"f": {"kind": "exp", "coeff": [0, -1]}, "z": "0+1i"})
    rc, out, _ = run_cli(["eval", "--config", "-"], stdin=cfg)
    assert rc == 0
    val = json.loads(out)["result"]["value"]
    assert abs(complex(*val) - math.e) < 1e-12


def test_exit_codes():
    rc, out, _ = run_cli(["eval", "--f", '{"kind":"nope"}', "--z", "0"])
    assert rc == 2 and json.loads(out)["error"]["kind"] == "config-error"
    rc, out, _ = run_cli(["eval", "--f",
                          '{"kind":"quotient","num":{"kind":"const","value":[1,0]},'
                          '"den":{"kind":"z"}}', "--z", "0"])
    assert rc == 1 and json.loads(out)["error"]["kind"] == "pole-hit"


def test_verify_subcommand_exit_status():
    rc, out, _ = run_cli(["verify", "A12"])
    assert rc == 0 and json.loads(out)["result"]["ok"]


def test_example_build_writes_artifact(tmp_path):
    target = tmp_path / "pw.json"
    rc, out, _ = run_cli(["example", "pw", "--a", "1", "--out", str(target)])
    assert rc == 0
    doc = json.loads(target.read_text())
    assert doc["id"] == "pw" and len(doc["members"]) == 5


def test_example_list():
    rc, out, _ = run_cli(["example", "list"])
    assert rc == 0
    assert "a38" in json.loads(out)["result"]["available"]


def test_example_build_token_and_json_alias(tmp_path):
    target = tmp_path / "pw.json"
    rc, out, _ = run_cli(["example", "build", "pw", "--a", "2",
                          "--json", str(target)])
    assert rc == 0
    assert json.loads(target.read_text())["params"]["a"] == 2.0


def test_built_instance_feeds_space_commands(tmp_path):
    # an example-instance artifact is accepted wherever a space is expected
    target = tmp_path / "pw1.json"
    rc, _, _ = run_cli(["example", "pw", "--a", "1", "--out", str(target)])
    assert rc == 0
    rc, out, _ = run_cli(["nabla", "--space", str(target), "--z", "0+1i"])
    assert rc == 0
    got = json.loads(out)["result"]["value"]
    assert abs(got - math.sqrt(math.sinh(2) / (2 * math.pi))) < 1e-12


def test_malformed_space_is_a_config_error():
    rc, out, _ = run_cli(["nabla", "--space", '{"nope": 1}', "--z", "0+1i"])
    assert rc == 2
    assert json.loads(out)["error"]["kind"] == "config-error"


def test_malformed_complex_flag_is_a_config_error(pw1_file):
    rc, out, _ = run_cli(["nabla", "--space", pw1_file, "--z", "bogus"])
    assert rc == 2
    assert json.loads(out)["error"]["kind"] == "config-error"


def test_majorize_csv(tmp_path, pw1_file):
    target = tmp_path / "ratios.csv"
    cfg = {
        "f": {"kind": "cos"},
        "majorant": {"type": "nabla", "space": json.loads(open(pw1_file).read())},
        "domain": {"kind": "line", "y0": 1.0, "ratio": 1.01, "rmax": 1e4},
    }
    rc, out, _ = run_cli(["majorize", "--config", "-", "--out", str(target)],
                         stdin=json.dumps(cfg))
    assert rc == 0
    doc = json.loads(out)["result"]
    assert doc["verdict"] == "majorized"
    rows = target.read_text().strip().splitlines()
    assert rows[0] == "z_re,z_im,ratio"
    assert len(rows) > 500


def test_weaktype_flags(tmp_path):
    q = {"kind": "quotient", "num": {"kind": "const", "value": [0, 1]},
         "den": {"kind": "z"}}
    rc, out, _ = run_cli(["weaktype", "--q", json.dumps(q), "--y0", "1",
                          "--a-grid", "0.5:1.0:0.25"])
    assert rc == 0
    res = json.loads(out)["result"]
    assert res["measure"][0] == pytest.approx(2 * math.sqrt(3), abs=1e-6)


def test_meantype_subcommand():
    rc, out, _ = run_cli(["meantype", "--f", '{"kind":"exp","coeff":[0,2]}'])
    assert rc == 0
    assert abs(json.loads(out)["result"]["value"] - (-2.0)) < 1e-6


def test_herglotz_subcommand(tmp_path):
    target = tmp_path / "density.csv"
    q = {"kind": "quotient", "num": {"kind": "const", "value": [0, 1]},
         "den": {"kind": "z"}}
    rc, out, _ = run_cli(["herglotz", "--q", json.dumps(q), "--out", str(target)])
    assert rc == 0
    res = json.loads(out)["result"]
    assert res["p"] == 0.0
    assert abs(res["point-masses"][0][1] - math.pi) < 1e-6
    assert target.read_text().splitlines()[0] == "t,density"


def test_clark_subcommand():
    rc, out, _ = run_cli(["clark", "--theta", '{"kind":"exp","a":1.0}',
                          "--z", "0.5+0.8i"])
    assert rc == 0
    res = json.loads(out)["result"]
    assert res["diagonal"] > 0
    assert res["kernel"]["kind"] == "product"
    assert res["checks"]["contraction-margin"] > 0


def test_clark_rejects_boundary_anchor():
    rc, out, _ = run_cli(["clark", "--theta", '{"kind":"exp","a":1.0}',
                          "--z", "0.5"])
    assert rc == 2


def test_a60scan_subcommand(tmp_path):
    target = tmp_path / "scan.csv"
    rc, out, _ = run_cli(["a60scan", "--theta", '{"kind":"exp","a":1.0}',
                          "--y0", "1", "--c", "10", "--r-grid", "[4,16,64]",
                          "--out", str(target)])
    assert rc == 0
    rows = json.loads(out)["result"]["rows"]
    assert rows[0]["ratio"] > 0.5 and rows[-1]["ratio"] == 0.0
    assert len(target.read_text().splitlines()) == 4


def test_admissible_subcommand(pw1_file):
    sinc = {"kind": "product", "children": [
        {"kind": "const", "value": [1.0 / math.pi, 0.0]}, {"kind": "sinc"}]}
    cfg = {
        "space": json.loads(open(pw1_file).read()),
        "majorant": {"type": "nabla", "space": json.loads(open(pw1_file).read())},
        "domain": {"kind": "axis", "ratio": 1.02, "rmax": 1e4},
        "witnesses": [sinc],
    }
    rc, out, _ = run_cli(["admissible", "--config", "-"], stdin=json.dumps(cfg))
    assert rc == 0
    assert json.loads(out)["result"]["admissible"] is True


def test_eval_derivative_order(pw1_file):
    rc, out, _ = run_cli(["eval", "--f", '{"kind":"exp","coeff":[0,-1]}',
                          "--z", "0", "--order", "1"])
    assert rc == 0
    val = json.loads(out)["result"]["value"]
    assert abs(complex(*val) - (-1j)) < 1e-10


def test_output_round_trips_and_is_deterministic(pw1_file):
    args = ["kernel", "--space", pw1_file, "--w", "0.3+0.1i", "--z", "1-0.2i"]
    docs = []
    for threads in ("1", "8"):
        rc, out, _ = run_cli(args, env={"DBLAB_THREADS": threads})
        assert rc == 0
        doc = json.loads(out)
        doc.pop("timestamp")
        docs.append(json.dumps(doc, sort_keys=True))
    assert docs[0] == docs[1]


def test_main_entrypoint_in_process(capsys):
    rc = main(["defaults"])
    assert rc == 0
    out = capsys.readouterr().out
    assert json.loads(out)["result"]["version"] == 1
