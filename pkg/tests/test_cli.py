import json
import subprocess
import sys

import pytest

from nacyclic.cli import SCHEMA_VERSION, main
from nacyclic.extension import Q2_NORM_TABLE


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def machine(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "machine")
    assert code == 0, err
    doc = json.loads(out)
    assert doc["schema_version"] == SCHEMA_VERSION
    return doc["result"]


def test_canon_text(capsys):
    code, out, _ = run(capsys, "classify", "canon", "--field", "Qp:5", "--ext", "sqrt:2", "--a", "(0,3)")
    assert code == 0
    assert "quaternion-unramified" in out and "r*sqrt(c)" in out
    assert "a                (0, 5^0*(1 + 0*5" in out


def test_canon_machine(capsys):
    r = machine(capsys, "classify", "canon", "--field", "Qp:5", "--ext", "sqrt:2", "--a", "(0,10)")
    assert r["a"].startswith("(0, 5^1*(1 + 0*5")
    assert r["case"] == "quaternion-unramified"


def test_oracle_verify(capsys):
    r = machine(capsys, "oracle", "verify", "sigma_distinct", "--q", "2", "--m", "3")
    assert r["passed"] and r["checked"] == 36
    code, out, _ = run(capsys, "oracle", "verify", "sigma_distinct", "--q", "2", "--m", "3")
    assert code == 0 and "passed           yes" in out


def test_oracle_classes(capsys):
    r = machine(capsys, "oracle", "classes", "--q", "3", "--m", "2")
    assert r["class_count"] == 2 and r["agreement"]


def test_ext_list_q2(capsys):
    r = machine(capsys, "ext", "list", "--field", "Qp:2", "--m", "2")
    assert r["count"] == 7
    labels = [row["label"] for row in r["extensions"]]
    assert labels[0] == "Q2(sqrt(-3))"
    for row in r["extensions"]:
        c = int(row["label"][len("Q2(sqrt("):-2])
        assert sorted(int(x) for x in row["norm_group"]) == sorted(Q2_NORM_TABLE[c])


def test_field_info_and_ext(capsys):
    r = machine(capsys, "field-info", "--field", "Qp:7")
    assert r["epsilon"].startswith("7^0*(3 ")
    r = machine(capsys, "field-info", "--field", "GF:9")
    assert r["q"] == 9 and r["modulus"] == [1, 0, 1]
    r = machine(capsys, "ext", "make", "--field", "Qp:7", "--ext", "kummer:7", "--m", "3")
    assert r["ramification"] == 3 and len(r["class_reps"]) == 3
    r = machine(capsys, "ext", "norms", "--field", "Qp:5", "--ext", "sqrt:2", "--x", "(0,1)", "--c", "5")
    assert r["norms"][0]["norm"].startswith("5^0*(3 ")
    assert r["membership"] == [{"c": r["membership"][0]["c"], "is_norm": False}]


def test_alg_commands(capsys):
    base = ["--field", "GF:9", "--ext", "unram:2", "--a", "(0,1)"]
    r = machine(capsys, "alg", "mul", *base, "--x", "[(0,1)]", "--y", "[(1,0);(0,1)]")
    assert r["product"] == "[([0,0], [1,0]); ([0,2], [0,2])]"
    r = machine(capsys, "alg", "assoc", "--field", "GF:3", "--ext", "unram:2", "--a", "(0,1)",
                "--x", "[0;1]", "--y", "[0;1]", "--z", "[0;1]")
    # [t,t,t] = (a - sigma(a))t and sigma(i) = -i, so the t-coefficient is 2i
    assert r["associator"] == "[(0, 0); (0, 2)]"
    r = machine(capsys, "alg", "nuclei", "--field", "GF:2", "--ext", "unram:3", "--a", "(0,1,0)")
    assert [r[k]["dimension"] for k in ("left", "middle", "right", "nucleus", "center")] == [3, 3, 3, 3, 1]
    r = machine(capsys, "alg", "division", "--field", "Qp:5", "--ext", "sqrt:2", "--a", "(0,1)")
    assert r["division"] is True and r["method"] == "prime-degree"
    r = machine(capsys, "alg", "table", "--field", "GF:2", "--ext", "unram:2", "--a", "(0,1)")
    assert len(r["table"]) == 4 and r["table"][0][0] == "[(1, 0); (0, 0)]"


def test_classify_commands(capsys):
    base = ["--field", "Qp:5", "--ext", "sqrt:2"]
    r = machine(capsys, "classify", "equiv", *base, "--a", "(0,1)", "--b", "(0,5)")
    assert r["equivalent"] is False
    r = machine(capsys, "classify", "iso", *base, "--a", "(1,1)", "--b", "(1,-1)")
    assert r["isomorphic"] is True
    r = machine(capsys, "classify", "enumerate", "--field", "Qp:3", "--ext", "sqrt:3", "--check")
    assert r["count"] == r["expected_count"] == 7 and r["violations"] == []
    r = machine(capsys, "classify", "degree4", "--field", "Qp:5")
    assert r["count"] == 12
    r = machine(capsys, "classify", "canon", *base, "--a", "(1,3)", "--mode", "alt")
    assert r["case"].endswith("-alt")


def test_machine_output_is_byte_stable(capsys):
    argv = ["classify", "enumerate", "--field", "Qp:7", "--ext", "kummer:7", "--m", "3",
            "--window", "0,0,3", "--format", "machine"]
    outs = []
    for _ in range(2):
        assert main(argv) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    assert outs[0] == json.dumps(json.loads(outs[0]), sort_keys=True, indent=2) + "\n"


@pytest.mark.parametrize("argv,code", [
    (["classify", "canon", "--field", "Qp:5", "--ext", "sqrt:2", "--a", "(0,"], 3),
    (["field-info", "--field", "XX:5"], 3),
    (["ext", "make", "--field", "Qp:3", "--ext", "kummer:2", "--m", "3"], 4),
    (["oracle", "verify", "steele", "--q", "3", "--m", "4"], 6),
    (["field-info", "--field", "GF:6"], 7),
    (["classify", "canon", "--field", "Qp:5", "--ext", "sqrt:5", "--a", "(1,0)"], 7),
    (["oracle", "verify", "nope", "--q", "2", "--m", "2"], 7),
    (["classify", "enumerate", "--field", "Qp:3", "--ext", "sqrt:3", "--window", "a,b"], 3),
])
def test_exit_codes(capsys, argv, code):
    rc, out, err = run(capsys, *argv)
    assert rc == code and out == "" and err.startswith("error (")
    rc, out, _ = run(capsys, *argv, "--format", "machine")
    assert rc == code
    doc = json.loads(out)
    assert doc["error"]["exit_code"] == code and doc["schema_version"] == SCHEMA_VERSION


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["alg", "mul"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code == 2


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "nacyclic.cli", "classify", "degree4", "--field", "Qp:3",
                          "--format", "machine"], capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["result"]["count"] == 4
