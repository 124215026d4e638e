import io
import json

import pytest

from r2k.cli import run
from r2k.config import Config, load_config
from r2k.errors import ConfigError


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = run(list(argv), out, err)
    return status, out.getvalue(), err.getvalue()


@pytest.fixture(autouse=True)
def _clean_cwd(tmp_path, monkeypatch):
    # keep a stray r2k.json in the working directory out of the tests
    monkeypatch.chdir(tmp_path)


def test_bracket():
    assert call("bracket", "L(2)", "L(-2)") == (0, "4*L(0) + 1/2*C\n", "")
    status, out, _ = call("bracket", "-L(1)", "G-(1)")
    assert status == 0 and out == "1/2*G-(2)\n"


def test_usage_errors():
    assert call()[0] == 2
    assert call("nope")[0] == 2
    assert call("bracket", "L(1")[0] == 2
    status, _, err = call("bracket", "L(1", "L(2)")
    assert status == 2 and "position" in err
    assert call("bracket", "L(1,2)", "L(0)")[0] == 2
    assert call("apply-aut", "--f", "1", "L(0)")[0] == 2


def test_apply_aut():
    status, out, _ = call("apply-aut", "--f", "1", "--xi", "1", "--eps", "1", "--a", "2", "--b", "1", "L(0)")
    assert (status, out) == (0, "L(0) + 2*H(0) + 2/3*C\n")
    status, out, _ = call("apply-aut", "--params", '{"f": ["1"], "xi": -1, "eps": -1, "a": [0], "b": "1"}',
                          "G+(3)")
    assert out == "G-(-3)\n"


def test_invert_aut_both_laws():
    status, out, _ = call("invert-aut", "--f", "1", "--xi", "-1", "--eps", "1", "--a", "0", "--b", "2",
                          "--law", "both")
    d = json.loads(out)
    assert status == 0
    assert d["derived"]["b"] == "2" and d["derived"]["oracle"] == "agree"
    assert d["paper"]["b"] == "1/2" and d["paper"]["oracle"] == "disagree"


def test_compose_aut_text(tmp_path):
    left = tmp_path / "left.json"
    left.write_text('{"f": ["1"], "xi": 1, "eps": -1, "a": [1], "b": "1"}')
    status, out, _ = call("--format", "text", "compose-aut", "--left", str(left),
                          "--right", "--f 1 --xi 1 --eps 1 --a 0 --b 1", "--law", "both")
    lines = out.splitlines()
    assert status == 0
    assert lines[0] == "derived: sigma(f=(1), xi=1, eps=-1, a=1, b=1)"
    assert lines[1] == "derived oracle: agree"
    assert lines[2] == "paper: sigma(f=(1), xi=1, eps=-1, a=-1, b=1)"
    assert lines[3].startswith("paper oracle: disagree")


def test_compose_aut_negative_shift():
    status, out, _ = call("compose-aut", "--left", "--f 2 --xi -1 --eps 1 --a -1 --b 3",
                          "--right", "--f 1/2 --xi 1 --eps -1 --a 2 --b -1", "--format", "text")
    assert status == 0 and "derived oracle: agree" in out


def test_derivation_files(tmp_path):
    t = tmp_path / "t.json"
    assert call("make-der", "--kind", "odd-inner", "--xi0", "2", "--xi1", "-3", "--gamma", "-1",
                "--window", "3", "--out", str(t))[0] == 0
    status, out, _ = call("decompose-der", "--table", str(t))
    assert status == 0
    assert json.loads(out) == {"kind": "odd-inner", "xi0": "2", "xi1": "-3", "gamma": [-1]}
    status, out, _ = call("check-der", "--table", str(t), "--window", "2", "--format", "text")
    assert status == 0 and out.splitlines()[-1] == "PASS"


def test_check_der_failure(tmp_path):
    t = tmp_path / "t.json"
    call("make-der", "--kind", "ad", "--element", "L(1)", "--window", "2", "--out", str(t))
    d = json.loads(t.read_text())
    entry = next(e for e in d["entries"] if e["symbol"] == {"kind": "H", "index": [1]})
    entry["value"][0]["coeff"] = "5"
    t.write_text(json.dumps(d))
    status, out, _ = call("check-der", "--table", str(t))
    assert status == 1
    rec = next(c for c in json.loads(out)["checks"] if c["id"] == "leibniz")
    assert rec["status"] == "fail" and rec["witness"]["inputs"]
    status, out, _ = call("decompose-der", "--table", str(t))
    assert status == 1 and out.startswith("NotDerivation")


def test_make_der_missing_params():
    assert call("make-der", "--kind", "even-inner", "--h0", "1")[0] == 2
    assert call("make-der", "--kind", "even-inner", "--h0", "1", "--eta", "0", "--gamma", "0")[0] == 2
    assert call("check-der", "--table", "missing.json")[0] == 2


def test_scaling_decomposes(tmp_path):
    t = tmp_path / "s.json"
    call("make-der", "--kind", "scaling", "--phi", "5/3", "--e0", "-2", "--window", "2", "--out", str(t))
    status, out, _ = call("decompose-der", "--table", str(t))
    assert json.loads(out) == {"kind": "scaling", "phi": ["5/3"], "e0": "-2"}


def test_generic_config(tmp_path):
    cfg = tmp_path / "g.json"
    cfg.write_text('{"mode": "generic", "rank": 2, "window": 1}')
    status, out, _ = call("--config", str(cfg), "bracket", "L(1,0)", "L(-1,0)")
    assert out == "2*u1*L(0,0) + (1/12*u1^3 - 1/12*u1)*C\n"


def test_default_config_file(tmp_path):
    (tmp_path / "r2k.json").write_text('{"generators": ["1/2"]}')
    assert call("bracket", "L(2)", "L(-2)")[1] == "2*L(0)\n"


def test_audit_structure(tmp_path):
    rep = tmp_path / "r.json"
    status, out, _ = call("audit", "--suite", "structure", "--window", "2", "--report", str(rep))
    assert (status, out) == (0, "PASS\n")
    d = json.loads(rep.read_text())
    assert d["meta"]["window"] == 2 and all(c["status"] == "pass" for c in d["checks"])


def test_config_validation(tmp_path):
    assert load_config() == Config()
    with pytest.raises(ConfigError):
        Config(mode="rational", rank=2)
    with pytest.raises(ConfigError):
        Config(mode="generic", rank=2, generators=["u1", "u3"])
    with pytest.raises(ConfigError):
        Config.from_dict({"window": 0})
    with pytest.raises(ConfigError):
        Config.from_dict({"colour": "blue"})
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "absent.json"))
    with pytest.raises(ConfigError):
        Config(generators=["u1"]).embedding()
    bad = tmp_path / "bad.json"
    bad.write_text('{"generators": ["0"]}')
    assert call("--config", str(bad), "bracket", "L(1)", "L(0)")[0] == 2
