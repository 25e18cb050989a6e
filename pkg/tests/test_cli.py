import io
import json
import subprocess
import sys

import pytest

from fusionring.cache import ENV_VAR
from fusionring.cli import CliConfig, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


@pytest.fixture(autouse=True)
def no_env_cache(monkeypatch):
    monkeypatch.delenv(ENV_VAR, raising=False)


def test_burnside_table_text():
    code, out, _ = call("S3", "burnside-table")
    assert code == 0
    assert "1#0 + C2#0" in out


def test_basis_json():
    data = call_json("C2xC2", "basis")
    assert [r["key"] for r in data["basis"]] == ["H1#0[]", "H2#0[]", "H2#1[]", "H2#2[]", "H4#0[0]", "H4#0[1]"]
    assert [r["projective_rank"] for r in data["basis"]] == [1, 2, 2, 2, 4, 1]
    assert data["modulus"] == 4


def test_trivial_group():
    data = call_json("C1", "basis")
    assert len(data["basis"]) == 1 and len(data["untwisted"]) == 1


def test_h2_selectors():
    for sel in ("G", "H8#0", "D4#0", "[8:7]", "7"):
        data = call_json("D4", "h2", sel)
        assert data["invariant_factors"] == [2]
        assert data["subgroup_label"] == "D4#0"
    assert call_json("D4", "h2", "1")["invariant_factors"] == []


def test_product_and_invertibles():
    data = call_json("C2xC2", "product", "H4#0[1]", "H4#0[1]")
    assert data["twisted"] == [{"key": "H4#0[0]", "coeff": 1}]
    assert data["forget_commutes"]
    inv = call_json("C2xC2", "invertibles")
    assert inv["elements"] == ["H4#0[0]", "H4#0[1]"]
    assert inv["verdict"] == "MATCHES H²(G,k×)"


def test_fusion_table_symmetric():
    data = call_json("S3", "fusion-table")
    lookup = {(p["left"], p["right"]): p["terms"] for p in data["products"]}
    for (a, b), terms in lookup.items():
        assert lookup[b, a] == terms


def test_verify_passes():
    code, out, _ = call("Q8", "verify")
    assert code == 0
    assert "FAIL" not in out and out.count("PASS") >= 15
    data = call_json("C6", "verify")
    assert all(c["passed"] for c in data["checks"])


@pytest.mark.parametrize("argv,code", [
    (["C2x", "basis"], 2),
    (["S3", "h2", "nope"], 2),
    (["C2xC2", "product", "H4#0[5]", "H1#0[]"], 2),
    (["S3", "frobnicate"], 2),
    (["S6", "basis"], 3),
    (["S5", "basis"], 3),
    (["D6", "h2", "G", "--unknowns-cap", "50"], 3),
    (["S4", "subgroups", "--order-cap", "10"], 3),
])
def test_exit_codes(argv, code, capsys):
    assert call(*argv)[0] == code


def test_parse_error_reports_position():
    _, _, err = call("C2x", "basis")
    assert "position 3" in err


def test_untwisted_commands_allow_larger_groups():
    data = call_json("S5", "subgroups")
    assert data["order"] == 120 and len(data["classes"]) == 19
    assert CliConfig("S5", "subgroups").effective_order_cap == 2000
    assert CliConfig("S5", "basis").effective_order_cap == 200


def test_cache_cold_and_warm_identical(tmp_path):
    cache = str(tmp_path / "c.jsonl")
    _, cold, _ = call("A4", "fusion-table", "--format", "json", "--cache", cache)
    _, warm, _ = call("A4", "fusion-table", "--format", "json", "--cache", cache)
    _, none, _ = call("A4", "fusion-table", "--format", "json")
    assert cold == warm == none


def test_console_script_utf8():
    res = subprocess.run([sys.executable, "-m", "fusionring.cli", "C2xC2", "invertibles"],
                         capture_output=True)
    assert res.returncode == 0
    assert "MATCHES H²(G,k×)".encode("utf-8") in res.stdout
    assert b"\r\n" not in res.stdout
