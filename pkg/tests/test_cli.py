import io
import json
import sys

from nqsym.cli import main


def run_cli(args, stdin_text="", capsys=None):
    old = sys.stdin
    sys.stdin = io.StringIO(stdin_text)
    try:
        code = main(args)
    finally:
        sys.stdin = old
    out = capsys.readouterr().out
    return code, out


def test_expand(capsys):
    code, out = run_cli(["expand", "--comp", "1,2,2"], capsys=capsys)
    assert code == 0
    data = json.loads(out)
    assert data["composition"] == [1, 2, 2]
    comps = [tuple(t["comp"]) for t in data["L"]["terms"]]
    assert set(comps) == {(1, 4), (1, 3, 1), (1, 1, 3), (1, 1, 2, 1)}
    # digit-string input form
    code2, out2 = run_cli(["expand", "--comp", "122"], capsys=capsys)
    assert out2 == out


def test_expand_deterministic_bytes(capsys):
    _, first = run_cli(["expand", "--comp", "2,1,3"], capsys=capsys)
    _, second = run_cli(["expand", "--comp", "2,1,3"], capsys=capsys)
    assert first == second


def test_expand_pretty(capsys):
    code, out = run_cli(["expand", "--comp", "1,2,2", "--pretty"], capsys=capsys)
    assert code == 0
    assert "N[122]" in out and "L[14]" in out


def test_convert_and_mul(capsys):
    element = {"basis": "N", "terms": [{"comp": [2], "num": 1, "den": 1}]}
    code, out = run_cli(["convert", "--to", "M"], json.dumps(element), capsys)
    assert code == 0
    data = json.loads(out)
    assert data["basis"] == "M"
    assert {tuple(t["comp"]): t["num"] for t in data["terms"]} == {(2,): 1, (1, 1): 2}

    factors = [
        {"basis": "M", "terms": [{"comp": [1], "num": 1, "den": 1}]},
        {"basis": "M", "terms": [{"comp": [1, 1], "num": 1, "den": 1}]},
    ]
    code, out = run_cli(["mul"], json.dumps(factors), capsys)
    assert code == 0
    data = json.loads(out)
    assert {tuple(t["comp"]): t["num"] for t in data["terms"]} == {
        (1, 1, 1): 3,
        (2, 1): 1,
        (1, 2): 1,
    }
    # N-basis product of N-basis factors stays exact
    nfactors = [
        {"basis": "N", "terms": [{"comp": [1], "num": 1, "den": 1}]},
        {"basis": "N", "terms": [{"comp": [1, 1], "num": 1, "den": 1}]},
    ]
    code, out = run_cli(["mul", "--basis", "N"], json.dumps(nfactors), capsys)
    data = json.loads(out)
    assert {tuple(t["comp"]): t["num"] for t in data["terms"]} == {
        (2, 1): 1,
        (1, 1, 1): 1,
    }


def test_matroid_f(capsys):
    matroid = {"n": 4, "bases": [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]}
    code, out = run_cli(["matroid-f"], json.dumps(matroid), capsys)
    assert code == 0
    data = json.loads(out)
    assert data["element"]["terms"] == [{"comp": [2, 2], "den": 1, "num": 6}]
    assert data["stats"]["num_bases"] == 6
    assert data["stats"]["in_rank_space"] is True
    assert data["stats"]["corner_coefficient"] == 6


def test_recover_round_trip(capsys):
    from nqsym.matroids import rank2_qsym
    from nqsym.qsym import convert

    element = rank2_qsym((3, 2, 1)).to_json()
    code, out = run_cli(["recover"], json.dumps(element), capsys)
    assert code == 0
    data = json.loads(out)
    assert data["lambda"] == [3, 2, 1]
    assert data["loops"] == 0
    # the invariant may arrive in any basis
    in_l = convert(rank2_qsym((3, 2, 1)), "L").to_json()
    code, out = run_cli(["recover"], json.dumps(in_l), capsys)
    assert code == 0
    assert json.loads(out)["lambda"] == [3, 2, 1]


def test_rank2_split(capsys):
    code, out = run_cli(["rank2-split", "--lambda", "2,2,1", "--s", "1"], capsys=capsys)
    assert code == 0
    data = json.loads(out)
    assert data["alpha"] == [2, 2, 1]
    assert data["beta"] == [2, 3]
    assert data["mu"] == [2, 3]
    assert data["certificate"]["S"] == [1, 2]


def test_geom_decompose(capsys):
    payload = {"lambda": [2, 1, 1, 1], "J": [[2, 2, 1], [3, 1, 1]]}
    code, out = run_cli(["geom-decompose"], json.dumps(payload), capsys)
    assert code == 0
    data = json.loads(out)
    assert data["verified"] is True
    assert len(data["representatives"]) == 2
    assert all("blocks" in rep for rep in data["representatives"])


def test_error_exit_codes(capsys):
    code, out = run_cli(["convert", "--to", "M"], "not json", capsys)
    assert code == 1
    data = json.loads(out)
    assert data["error"]["kind"] == "ValidationError"

    big = {"n": 14, "bases": [list(range(1, 15))]}
    code, out = run_cli(["matroid-f"], json.dumps(big), capsys)
    assert code == 2
    assert json.loads(out)["error"]["kind"] == "resource-limit"

    bad_matroid = {"n": 4, "bases": [[1, 2], [3, 4]]}
    code, out = run_cli(["matroid-f"], json.dumps(bad_matroid), capsys)
    assert code == 1


def test_verify_small(capsys, tmp_path):
    report_path = tmp_path / "report.json"
    code, out = run_cli(
        ["verify", "--max-n", "4", "--seed", "1", "--report", str(report_path)],
        capsys=capsys,
    )
    assert code == 0
    data = json.loads(out)
    assert data["all_passed"] is True
    assert len(data["checks"]) == 10
    saved = json.loads(report_path.read_text())
    assert saved["all_passed"] is True


def test_verify_pretty_lines(capsys):
    code, out = run_cli(["verify", "--max-n", "3", "--pretty"], capsys=capsys)
    assert code == 0
    lines = [line for line in out.splitlines() if line.startswith(("PASS", "FAIL"))]
    assert len(lines) == 10
    assert all(line.startswith("PASS") for line in lines)
