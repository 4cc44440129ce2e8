import json

import pytest

from osp_lickorish.cli import main

UNKNOT = "mlp 1\ncup 1 u\ncap 1\nend\n"
HOPF = "mlp 1\ncup 1 u\ncup 2 u\nx+ 1\nx+ 1\ncap 2\ncap 1\nend\n"


@pytest.fixture
def mlp(tmp_path):
    def write(text, name="d.mlp"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_tables_n3(capsys):
    code, out, _ = run(capsys, ["tables", "--N", "3", "--json"])
    assert code == 0
    doc = json.loads(out)
    assert [e["exact"] for e in doc["d"]] == ["0", "-1/6 - 1/3*q", "1/6 + 1/3*q"]
    assert doc["z"]["exact"] == "-1"
    assert doc["verification"]["failed"] == 0


def test_tables_n5(capsys):
    code, _, _ = run(capsys, ["tables", "--N", "5"])
    assert code == 0


def test_even_N_is_usage_error(capsys):
    code, _, err = run(capsys, ["tables", "--N", "4"])
    assert code == 1 and "odd" in err


def test_bad_flag_is_usage_error(capsys):
    assert run(capsys, ["tables", "--bogus"])[0] == 1


def test_eval_unknot(capsys, mlp):
    code, out, _ = run(capsys, ["eval", mlp(UNKNOT), "--N", "3", "--json"])
    assert code == 0 and json.loads(out)["value"]["exact"] == "-2"


def test_eval_kink(capsys, mlp):
    code, out, _ = run(capsys, ["eval", mlp(UNKNOT), "--N", "3", "--kink", "1,-1", "--json"])
    # -2 q^-2 = -2 q at N = 3
    assert code == 0 and json.loads(out)["value"]["exact"] == "-2*q"


def test_eval_colors(capsys, mlp):
    code, out, _ = run(capsys, ["eval", mlp(UNKNOT), "--N", "5", "--colors", "2", "--json"])
    assert code == 0 and json.loads(out)["value"]["exact"] == "2 + 2*q^2 + 2*q^3"


def test_eval_open(capsys, mlp):
    code, out, _ = run(capsys, ["eval", mlp("mlp 1\nboundary 1 1\nend\n"), "--open", "--json"])
    doc = json.loads(out)
    assert code == 0 and doc["scalar"]["exact"] == "1" and doc["matrix"]["shape"] == [3, 3]


def test_parse_error_exit(capsys, mlp):
    code, _, err = run(capsys, ["eval", mlp("mlp 1\ncup 1 u\nx+ 3\nend\n")])
    assert code == 2 and "line 3" in err


def test_invariant_fixtures(capsys, mlp):
    code, out, _ = run(capsys, ["invariant", mlp("mlp 1\nend\n"), "--json"])
    assert code == 0 and json.loads(out)["F"]["exact"] == "1"
    code, out, _ = run(capsys, ["invariant", mlp(UNKNOT), "--N", "3", "--json"])
    # 1 + 2 q^2 reduced at N = 3
    assert json.loads(out)["F"]["exact"] == "-1 - 2*q"
    code, out, _ = run(capsys, ["invariant", mlp(HOPF), "--N", "3", "--json"])
    doc = json.loads(out)
    assert doc["F"]["exact"] == "1" and doc["linking_matrix"] == [[0, 1], [1, 0]] and doc["sigma"] == 1


def test_x_file(capsys, tmp_path, mlp):
    x = tmp_path / "x.json"
    x.write_text(json.dumps(["1/2", 0, [0, 1]]))
    code, out, _ = run(capsys, ["tables", "--N", "3", "--x-file", str(x), "--json"])
    assert code == 0 and json.loads(out)["verification"]["failed"] == 0
    x.write_text("[1, 2]")
    assert run(capsys, ["tables", "--N", "3", "--x-file", str(x)])[0] == 1


def test_selftest(capsys):
    code, out, _ = run(capsys, ["selftest", "--N", "3", "--json"])
    assert code == 0 and json.loads(out)["verification"]["failed"] == 0
    code, out, _ = run(capsys, ["selftest", "--N", "3", "--perturb-d", "--json"])
    assert code == 3 and json.loads(out)["verification"]["failed"] > 0


def test_output_is_deterministic(capsys, mlp):
    path = mlp(HOPF)
    a = run(capsys, ["invariant", path, "--N", "5"])[1]
    b = run(capsys, ["invariant", path, "--N", "5"])[1]
    assert a == b


def test_root_selects_embedding(capsys, mlp):
    path = mlp(HOPF)
    one = json.loads(run(capsys, ["eval", path, "--N", "5", "--json"])[1])["value"]
    two = json.loads(run(capsys, ["eval", path, "--N", "5", "--root", "2", "--json"])[1])["value"]
    assert one["exact"] == two["exact"]
    assert run(capsys, ["eval", path, "--N", "9", "--root", "3"])[0] == 1
