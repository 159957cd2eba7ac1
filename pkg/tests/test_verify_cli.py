import json

import pytest

from hyperdef import cli, verify


def test_manifest_covers_every_inscope_item():
    # every in-scope item carries exactly one check id, and every id is known
    for item, check_id in verify.MANIFEST.items():
        assert check_id in verify.CHECK_IDS, item
    topics = {item.split(".")[0] for item in verify.MANIFEST}
    assert topics == {"pbw", "decomp", "verma", "regular", "center"}
    named = {"cor-basis", "thm-equiv", "cor-chibij", "prop-decomp", "cor-prem",
             "prop-tvm", "lem-bvcorresp", "prop-quotcorresp", "thm-regular-1",
             "thm-regular-2", "thm-regular-3", "thm-regular-4", "cor-maxdim",
             "prop-azudiag", "cor-orbit"}
    assert named <= set(verify.CHECK_IDS)


def test_unknown_check_id():
    ctx = verify.GridContext(verify.SMALL_GRID)
    with pytest.raises(ValueError, match="unknown check id"):
        verify.run_check("no-such-check", ctx, 2, 0)


def test_empty_grid():
    bundle = verify.run_suite("empty")
    assert bundle["checks"] == []
    assert bundle["summary"]["n_fail"] == 0


def test_run_check_single():
    ctx = verify.GridContext(verify.SMALL_GRID)
    out = verify.run_check("cor-basis", ctx, 2, 0)
    assert len(out) == 1 and out[0].verdict == "pass"
    assert out[0].evidence["expected_dim"] == 8


def test_cli_dist_dump(tmp_path, capsys):
    out = tmp_path / "di.json"
    assert cli.main(["dist", "dump", "--p", "2", "--r", "1",
                     "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["basis"]) == 8


def test_cli_algebra_build_matches_di(tmp_path):
    out = tmp_path / "alg.json"
    assert cli.main(["algebra", "build", "--p", "2", "--r", "0",
                     "--chi", "0,0,0", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["basis"]) == 8
    out2 = tmp_path / "di.json"
    cli.main(["dist", "dump", "--p", "2", "--r", "1", "--out", str(out2)])
    di = json.loads(out2.read_text())
    assert [[a, b, w, v[0]] for a, b, w, v in data["mult"]] == di["mult"]


def test_cli_verma_and_irr(tmp_path):
    out = tmp_path / "z.json"
    assert cli.main(["verma", "--p", "2", "--r", "0", "--chi", "0,0,1",
                     "--lambda", "0", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["dim"] == 2

    out2 = tmp_path / "irr.csv"
    assert cli.main(["irr", "--p", "2", "--r", "0", "--chi", "0,0,1",
                     "--out", str(out2)]) == 0
    lines = out2.read_text().strip().splitlines()
    assert lines[0].startswith("class,dim_M")
    assert len(lines) == 3   # two classes at p=2, chi regular nilpotent


def test_cli_irr_determinism(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    cli.main(["irr", "--p", "2", "--r", "0", "--chi", "0,1,0", "--out", str(a)])
    cli.main(["irr", "--p", "2", "--r", "0", "--chi", "0,1,0", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_cli_verify_empty_grid(tmp_path):
    out = tmp_path / "report.json"
    assert cli.main(["verify", "--grid", "empty", "--out", str(out)]) == 0
    bundle = json.loads(out.read_text())
    assert bundle["summary"]["n_fail"] == 0


def test_cli_usage_errors():
    assert cli.main(["bogus"]) == 2
    assert cli.main(["verma", "--p", "2", "--r", "0", "--chi", "0,0,1",
                     "--lambda", "99"]) == 2
    assert cli.main(["algebra", "build", "--p", "2", "--r", "0",
                     "--chi", "1,2"]) == 2


def test_parse_chi_bracketed():
    chi = cli.parse_chi("[0],[1,1],[1]", 2, 2)
    assert chi.field.q == 4 and chi.values == (0, 3, 1)


def test_check_determinism_bit_identical():
    out1 = [c.to_json() for c in
            verify.run_check("cor-chibij", verify.GridContext(verify.SMALL_GRID),
                             2, 0)]
    out2 = [c.to_json() for c in
            verify.run_check("cor-chibij", verify.GridContext(verify.SMALL_GRID),
                             2, 0)]
    assert json.dumps(out1, sort_keys=True) == json.dumps(out2, sort_keys=True)


def test_irr_nine_row_table(tmp_path):
    out = tmp_path / "irr9.csv"
    assert cli.main(["irr", "--p", "3", "--r", "1", "--chi", "0,0,0",
                     "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 10   # header + 9 classes
