import json
import subprocess
import sys

import pytest

from conftest import DATA
from fsegre.cli import main
from fsegre.graded import dump_ring, load_ring
from fsegre.qdivisor import dump_divisor, load_divisor


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out.strip() else None


R32, S32 = DATA / "example3_2_R.ring", DATA / "example3_2_S.ring"
R42, S42 = DATA / "example4_2_R.ring", DATA / "example4_2_S.ring"
R53, S53 = DATA / "example5_3_R_p7.ring", DATA / "example5_3_S_p7.ring"


def test_a_inv(capsys):
    assert run_json(capsys, "a-inv", R42) == (0, {"a_invariant": 1})
    assert run_json(capsys, "a-inv", S42) == (0, {"a_invariant": 7})
    assert run_json(capsys, "a-inv", R32) == (0, {"a_invariant": -1})


def test_cm_check(capsys):
    assert run_json(capsys, "cm-check", R42, S42) == (0, {"cohen_macaulay": True, "a_invariant": -5})
    code, out = run_json(capsys, "cm-check", R53, S53)
    assert code == 0 and out["cohen_macaulay"] is False
    assert out["witness"] == {"k": 2, "degree": 1, "term": "H^2(R)#S", "dim": 2}


def test_a_segre(capsys):
    assert run_json(capsys, "a-segre", R42, S42) == (0, {"a_invariant": -5})


def test_fedder(capsys):
    assert run_json(capsys, "fedder", "--p", 2, "x^2+y^3+z^3") == (0, {"f_pure": False})
    assert run_json(capsys, "fedder", "--p", 2, "a*d - b*c") == (0, {"f_pure": True})
    assert run_json(capsys, "fedder", "--p", 5, "x^2+y^3+z^5", "w") == (0, {"f_pure": False})


def test_hilbert(capsys):
    code, out = run_json(capsys, "hilbert", S32, "--window", "0..4")
    assert code == 0
    assert out["coefficients"] == [1, 0, 2, 0, 3]
    assert out["numerator"] == [1] and out["denominator"] == [2, 2]
    code, out = run_json(capsys, "hilbert", R32, "--window", "-2..1")
    assert out["window"] == [-2, 1] and out["coefficients"] == [0, 0, 1, 0]


def test_kunneth(capsys):
    code, out = run_json(capsys, "kunneth", R32, S32, "--window", "-3..0")
    assert code == 0 and out["dim"] == 3
    assert out["H"]["3"]["terms"] == ["H^2(R)#H^2(S)"]
    assert all(v == 0 for k in "0123" for v in out["H"][k]["values"])


def test_frob_closure(capsys):
    code, out = run_json(capsys, "frob-closure", R32, "--ideal", "y,z", "--element", "x", "--emax", 2)
    assert code == 0 and out["verdict"] == "confirmed" and out["e"] == 1
    code, out = run_json(capsys, "frob-closure", R32, "--ideal", "y,z", "--element", "x", "--emax", 0)
    assert code == 4 and out["verdict"] == "inconclusive"


def test_cech_script(capsys):
    code, out = run_json(capsys, "cech", R32, DATA / "example3_2_socle.cech")
    assert code == 0
    steps = {(s["op"], s.get("name")): s for s in out["steps"]}
    assert steps[("make", "eta")]["degree"] == -1
    assert steps[("zero", "eta")]["zero"] is False
    assert steps[("frobenius", "feta")]["degree"] == -2
    assert steps[("zero", "feta")]["zero"] is True
    assert steps[("zero", "eta2")]["zero"] is True


def test_cech_script_error(capsys, tmp_path):
    script = tmp_path / "bad.cech"
    script.write_text("sop y z\nmake a x 1 1\nbogus a\n")
    code, out, err = run(capsys, "cech", R32, script)
    assert code == 2 and "bad.cech:3" in err


def test_frob_inj_and_oracle(capsys):
    code, out = run_json(capsys, "frob-inj", R32, "--window", "-1..-1")
    assert code == 0 and out["injective"] is False and out["witnesses"] == ["[(x)/(y*z)]"]
    code, out = run_json(capsys, "lc-oracle", R32, "--window", "-1..0")
    assert code == 0 and out["H2"] == {"-1": 1, "0": 0}


def test_probe(capsys):
    code, out = run_json(capsys, "probe", R42, S42, "--eta1", "x", 1, 2, "--eta2", "u^3*v^3", 4, 4,
                         "--c1", "z^2", "--c2", "v^3", "--emax", 3)
    assert code == 0 and out["verdict"] == "confirmed" and out["e"] == 1
    code, out = run_json(capsys, "probe", R32, R32, "--eta1", "x", 1, 1, "--eta2", "x", 1, 1,
                         "--c1", "y", "--c2", "y", "--emax", 2)
    assert code == 4 and out["verdict"] == "inconclusive"
    code, out, err = run(capsys, "probe", R32, S32, "--eta1", "x", 1, 1, "--eta2", 1, 1, 1,
                         "--c1", 1, "--c2", 1)
    assert code == 3 and "degrees differ" in err


def test_sections(capsys):
    code, out = run_json(capsys, "sections", DATA / "remark_p7_k1.div", "--window", "0..6", "--degree", 6)
    assert code == 0
    assert out["dims"] == [1, 0, 0, 0, 0, 0, 1]
    assert out["a_invariant"] == 1
    assert len(out["basis"]) == 1


def test_demazure(capsys):
    code, out = run_json(capsys, "demazure", DATA / "remark_p5_k1.div", "--degree-bound", 40)
    assert code == 0
    assert [g["degree"] for g in out["generators"]] == [6, 10, 15]
    assert out["relations"] == [{"degree": 30, "relation": "g1^5 - g2^3 - g3^2"}]


def test_segre_present(capsys):
    code, out = run_json(capsys, "segre-present", R32, S32)
    assert code == 0
    assert [g["degree"] for g in out["generators"]] == [2, 2, 2, 2]
    assert len(out["relations"]) == 1


@pytest.mark.parametrize("p", [7, 5])
def test_verify_remark(capsys, p):
    code, out = run_json(capsys, "verify-remark", "--p", p, "--k", 1)
    assert code == 0 and out["ok"] is True
    assert out["relation"] == f"z^{p} - y^3 - x^2"


def test_props_seeded(capsys):
    a = run_json(capsys, "props", "--seed", 11, "--samples", 5)
    b = run_json(capsys, "props", "--seed", 11, "--samples", 5)
    assert a == b and a[0] == 0 and a[1]["ok"]


def test_pretty(capsys):
    code, out, _ = run(capsys, "cm-check", R42, S42, "--pretty")
    assert code == 0
    assert out.splitlines() == ["cohen_macaulay: yes", "a_invariant: -5"]


@pytest.mark.parametrize("argv,code", [
    (["a-inv", "missing.ring"], 2),
    (["hilbert", str(S32), "--window", "3..1"], 2),
    (["hilbert", str(S32), "--window", "abc"], 2),
    (["verify-remark", "--p", "9", "--k", "1"], 3),
    (["fedder", "--p", "4", "x^2"], 2),
    (["fedder", "--p", "2", "x^^2"], 2),
    (["nosuchcommand"], 2),
    ([], 2),
])
def test_exit_codes(capsys, argv, code):
    assert main(argv) == code
    assert capsys.readouterr().err


def test_bad_ring_file(capsys, tmp_path):
    bad = tmp_path / "bad.ring"
    bad.write_text('{"char": 4, "vars": [], "relations": []}')
    code, out, err = run(capsys, "a-inv", bad)
    assert code == 2 and "char" in err


def test_golden_files_round_trip():
    for name in ("example3_2_R.ring", "example3_2_S.ring", "example4_2_R.ring", "example4_2_S.ring",
                 "example5_3_R_p7.ring", "example5_3_S_p7.ring"):
        assert dump_ring(load_ring(DATA / name)) == (DATA / name).read_text()
    for name in ("remark_p7_k1.div", "remark_p5_k1.div"):
        assert dump_divisor(load_divisor(DATA / name)) == (DATA / name).read_text()


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "fsegre.cli", "a-inv", str(R42)],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout) == {"a_invariant": 1}
