import json
from pathlib import Path

import pytest

from wedgemaps.classify import iter_specs, kernel_witness
from wedgemaps.cli import main, table_cells
from wedgemaps.space import TensorElement
from wedgemaps.wedge import MapSpec

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def golden_grid(l):
    lines = [ln.split() for ln in (GOLDEN / f"table_N4_s1_l{l}.txt").read_text().splitlines() if not ln.startswith("#")]
    return lines


@pytest.mark.parametrize("l", [0, 1, 2, 3])
def test_table_matches_golden(capsys, l):
    code, out, _ = run(capsys, "table", "--N", 4, "--s", 1, "--l", l, "--format", "json")
    assert code == 0
    cells = json.loads(out)["cells"]
    grid = {}
    for c in cells:
        grid.setdefault(c["n"], []).append(c["arrow"] or "none")
    assert [grid[n] for n in sorted(grid)] == golden_grid(l)


def test_table_ascii(capsys):
    code, out, _ = run(capsys, "table", "--N", 4, "--s", 1, "--l", 2)
    assert code == 0
    assert out.splitlines()[2].split() == ["n=0", ">->", ">->", "-->", "->>", "."]


def test_table_all_levels_json(capsys):
    code, out, _ = run(capsys, "table", "--N", 4, "--s", 1, "--format", "json")
    blocks = json.loads(out)
    assert [len(b["cells"]) for b in blocks] == [25, 20, 15, 10]


def test_table_usage_errors(capsys):
    assert run(capsys, "table", "--N", 4, "--s", 4)[0] == 2
    assert run(capsys, "table", "--N", 4)[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_table_cells_record_shape():
    cells = table_cells(4, 1, 0)
    assert set(cells[0]) == {"n", "k", "arrow", "injective", "surjective"}


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--max-N", 2, "--format", "json")
    report = json.loads(out)
    assert code == 0
    assert report["count"] == len(list(iter_specs(2)))
    assert report["discrepancies"] == []


def test_verify_n4_s1(capsys):
    code, out, _ = run(capsys, "verify", "--max-N", 4, "--max-s", 1, "--max-l", 3, "--format", "json")
    report = json.loads(out)
    assert code == 0
    n4 = [r for r in report["records"] if r["spec"]["N"] == 4]
    assert len(n4) == 16 + 12 + 8 + 4
    assert all(r["agree"] for r in report["records"])


def test_verify_flags_published_claim(capsys):
    code, out, _ = run(capsys, "verify", "--max-N", 4, "--max-s", 2, "--format", "json")
    assert code == 0
    report = json.loads(out)
    (flagged,) = report["flagged"]
    assert flagged["spec"] == {"N": 4, "l": 1, "s": 2, "n": 1, "k": 1}
    assert flagged["flag"] == "published-claim-conflict"
    assert flagged["oracle"]["surjective"] == (flagged["rank"] == flagged["dims"][1])


def test_verify_resource_bounds(capsys):
    assert run(capsys, "verify", "--max-N", 9)[0] == 3
    code, out, _ = run(capsys, "verify", "--max-N", 5, "--time-limit", 0, "--format", "json")
    assert code == 3
    assert json.loads(out)["aborted"] is True


def test_verify_text_summary(capsys):
    code, out, _ = run(capsys, "verify", "--max-N", 3)
    assert code == 0 and "specs checked" in out


@pytest.mark.parametrize("qs, expected", [((1, 1), "1/2 -1/2"), ((0, 2), "1"), ((2, 1), "1/3 -1/6 1/3")])
def test_coeffs(capsys, qs, expected):
    code, out, _ = run(capsys, "coeffs", "--q", qs[0], "--s", qs[1])
    assert code == 0 and out.strip() == expected


def test_coeffs_alternating(capsys):
    assert run(capsys, "coeffs", "--q", 2, "--s", 1, "--variant", "alternating")[1].strip() == "1/3 -1/6 -1/3"


@pytest.mark.parametrize("mps", [(2, 1, 1), (1, 1, 1), (3, 2, 2)])
def test_inverse_check_passes(capsys, mps):
    m, p, s = mps
    code, out, _ = run(capsys, "inverse-check", "--m", m, "--p", p, "--s", s)
    assert code == 0 and "pass" in out


def test_inverse_check_reports_violation(capsys):
    code, out, _ = run(capsys, "inverse-check", "--m", 3, "--p", 1, "--s", 1, "--variant", "alternating", "--format", "json")
    assert code == 1
    assert json.loads(out)["violations"]["left"] is not None


def test_inverse_check_show(capsys):
    code, out, _ = run(capsys, "inverse-check", "--m", 2, "--p", 1, "--s", 1, "--show", "--format", "json")
    assert set(json.loads(out)["matrices"]) == {"A", "B", "A_surj", "B_surj"}


def test_apply_scalar(capsys, tmp_path):
    f = tmp_path / "x.json"
    f.write_text(json.dumps({"N": 2, "l": 0, "n": 0, "k": 0, "terms": [{"mu": [], "c": [], "coeff": "1"}]}))
    code, out, _ = run(capsys, "apply", f, "--s", 1)
    assert code == 0
    img = json.loads(out)
    assert img["terms"] == [{"mu": [1], "c": [1], "coeff": "1"}, {"mu": [2], "c": [2], "coeff": "1"}]
    assert TensorElement.from_json(img).dumps() == out.strip()  # round trip


def test_apply_kernel_witness(capsys, tmp_path):
    f = tmp_path / "x.json"
    f.write_text(kernel_witness(MapSpec(4, 0, 1, 2, 2)).dumps())
    code, out, _ = run(capsys, "apply", f, "--s", 1)
    assert code == 0 and json.loads(out)["terms"] == []


def test_apply_half_coefficients(capsys, tmp_path):
    f = tmp_path / "x.json"
    f.write_text(json.dumps({"N": 3, "l": 0, "n": 1, "k": 0, "terms": [{"mu": [1], "c": [], "coeff": "1/2"}]}))
    _, out, _ = run(capsys, "apply", f, "--s", 1)
    coeffs = [t["coeff"] for t in json.loads(out)["terms"]]
    assert coeffs and all(c in ("1/2", "-1/2") for c in coeffs)


def test_apply_with_coframe(capsys, tmp_path):
    f = tmp_path / "x.json"
    f.write_text(json.dumps({"N": 2, "l": 0, "n": 0, "k": 0, "terms": [{"mu": [], "c": [], "coeff": "1"}]}))
    cf = tmp_path / "cf.json"
    cf.write_text(json.dumps([["2", "0"], ["1", "1/3"]]))
    _, out, _ = run(capsys, "apply", f, "--s", 1, "--coframe", cf)
    terms = {(tuple(t["mu"]), tuple(t["c"])): t["coeff"] for t in json.loads(out)["terms"]}
    assert terms == {((1,), (1,)): "2", ((1,), (2,)): "1", ((2,), (2,)): "1/3"}


def test_apply_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert run(capsys, "apply", bad, "--s", 1)[0] == 2
    ok = tmp_path / "x.json"
    ok.write_text(json.dumps({"N": 2, "l": 0, "n": 1, "k": 0, "terms": []}))
    assert run(capsys, "apply", ok, "--s", 2)[0] == 2  # n + s exceeds N - l
    assert run(capsys, "apply", tmp_path / "missing.json", "--s", 1)[0] == 2


def test_witness(capsys):
    code, out, _ = run(capsys, "witness", "--N", 4, "--l", 2, "--s", 1, "--n", 1, "--k", 1, "--format", "json")
    assert code == 0
    out = json.loads(out)
    assert out["kernel"]["image_is_zero"] is True
    assert out["cokernel"]["in_image"] is False


def test_classify_and_dims(capsys):
    code, out, _ = run(capsys, "classify", "--N", 4, "--l", 0, "--s", 1, "--n", 2, "--k", 1, "--oracle", "--format", "json")
    out = json.loads(out)
    assert out["kind"] == "bijective" and out["rank"] == 24 and out["by_dims"] == out["predicate"]
    assert run(capsys, "dims", "--N", 4, "--l", 0, "--s", 1, "--n", 2, "--k", 1)[1].strip() == "24 24"
    assert run(capsys, "classify", "--N", 4, "--l", 0, "--s", 1, "--n", 4, "--k", 1)[0] == 2
    assert run(capsys, "dims", "--N", 4)[0] == 2


def test_out_flag(capsys, tmp_path):
    target = tmp_path / "t.json"
    run(capsys, "table", "--N", 4, "--s", 1, "--l", 0, "--format", "json", "--out", target)
    assert len(json.loads(target.read_text())["cells"]) == 25
