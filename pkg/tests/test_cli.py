import json
import re

import pytest

from realbrauer.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def result(text):
    return text.strip().splitlines()[-1]


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["classify", "--clifford", "0,2"], "RESULT: type=2 label=[0;1,+]"),
        (["classify", "--clifford", "2,0", "--oracle"], "RESULT: type=6 label=[0;1,-]"),
        (["classify", "--clifford", "0,1", "--tensor-power", "8"], "RESULT: type=0 label=[0;0,+]"),
        (["type-add", "[0;1,+]", "[0;1,+]"], "RESULT: type=4 label=[0;0,-]"),
        (["brauer", "--groupoid", "point", "--flavor", "brR", "--m", "4"], "RESULT: Z8"),
        (["brauer", "--groupoid", "point", "--flavor", "br"], "RESULT: Z2"),
        (["cohomology", "--group", "Z3xZ3", "--coeff", "S1", "--n", "2"], "RESULT: Z/3"),
        (["cohomology", "--groupoid", "Z2", "--coeff", "mu:4", "--n", "2", "--real"], "RESULT: Z/2"),
        (["decompose", "--group", "Z3xZ3", "--double"], "RESULT: decomposition holds"),
    ],
)
def test_documented_commands(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert result(out) == expected


def test_groupoid_file(capsys, tmp_path):
    from realbrauer.groupoid_core import abelian_group, dumps

    path = tmp_path / "z3z3.g"
    path.write_text(dumps(abelian_group([3, 3])))
    code, out, _ = run(capsys, "cohomology", "--groupoid", str(path), "--coeff", "mu:3", "--n", "2")
    assert code == 0 and result(out) == "RESULT: Z/3 x Z/3 x Z/3"


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as err:
        main(["classify", "--bogus"])
    assert err.value.code == 2
    code, _, err_text = run(capsys, "cohomology", "--groupoid", "nowhere")
    assert code == 2 and "nowhere" in err_text


def test_failure_exit_code(capsys, tmp_path):
    from realbrauer.graded_algebra import dumps, make_clifford
    from realbrauer.exact_linalg import I

    A = make_clifford(0, 2)
    sigma = [{k: (c * I if A.degrees[k] else c) for k, c in img.items()} for img in A.sigma_images]
    path = tmp_path / "bad.alg"
    path.write_text(dumps(A.with_real_structure(sigma)))
    code, out, err_text = run(capsys, "classify", "--algebra", str(path))
    assert code == 1
    assert "witness" in (out + err_text)


def test_extension_workflow(capsys, tmp_path):
    e1 = tmp_path / "e1.ext"
    code, out, _ = run(capsys, "ext", "build", "--groupoid", "Z2", "--m", "4", "--omega-cup", "0,1", "--out", str(e1))
    assert code == 0 and e1.exists()
    code, out, _ = run(capsys, "ext", "dd", str(e1))
    assert code == 0
    code, out, _ = run(capsys, "ext", "trivial", str(e1))
    assert code == 0 and result(out) == "RESULT: nontrivial"
    e2 = tmp_path / "e2.ext"
    code, out, _ = run(capsys, "ext", "tensor", str(e1), str(e1), "--out", str(e2))
    assert code == 0
    code, out, _ = run(capsys, "ext", "trivial", str(e2))
    assert code == 0 and result(out) == "RESULT: trivial"


def test_json_mode(capsys):
    code, out, _ = run(capsys, "--json", "classify", "--clifford", "0,3")
    data = json.loads(out)
    assert code == 0
    assert data["data"] == {"label": "[1;1,-]", "z8": 3}
    assert data["result"] == "type=3 label=[1;1,-]"


@pytest.mark.parametrize(
    "argv",
    [
        ["report", "--group", "Z2"],
        ["brauer", "--group", "Z2", "--report", "orders"],
        ["verify-table", "--max-n", "3"],
    ],
)
def test_byte_identical(capsys, argv):
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second and first.startswith(first.splitlines()[0])
    assert result(first).startswith("RESULT:")


def test_verify_all_and_mutations(capsys):
    code, out, _ = run(capsys, "verify-all", "--only", "2,5")
    assert code == 0 and result(out) == "RESULT: 2/2 criteria pass"
    code, out, _ = run(capsys, "verify-all", "--only", "2", "--mutate", "product-sign", "--verbose")
    assert code == 1
    assert re.search(r"criterion +2 FAIL", out) and "pair (2,2)" in out
    assert result(out) == "RESULT: FAIL criteria [2]"
    code, out, _ = run(capsys, "verify-all", "--only", "4,6", "--mutate", "real-twist")
    assert code == 1
    assert re.search(r"criterion +6 FAIL", out)
