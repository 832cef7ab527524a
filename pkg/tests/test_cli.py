import json

import pytest

from billiardknots.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_bracket_oracle(capsys):
    code, out, _ = run(capsys, "bracket", "--a", "3", "--b", "4", "--signs", "+-+",
                       "--method", "oracle")
    assert code == 0
    assert out == "-A^5 - A^-3 + A^-7"


def test_bracket_methods_agree(capsys):
    for method in ("oracle", "recursion"):
        code, out, _ = run(capsys, "bracket", "--a", "5", "--b", "4",
                           "--signs", "++--+-", "--method", method)
        assert code == 0
        if method == "oracle":
            want = out
    assert out == want


def test_bracket_bumpered_recursion(capsys):
    code, out, _ = run(capsys, "bracket", "--b", "4", "--bumpers", "1",
                       "--signs", "++--+-")
    code2, out2, _ = run(capsys, "bracket", "--b", "4", "--bumpers", "1",
                         "--signs", "++--+-", "--method", "oracle")
    assert code == code2 == 0
    assert out == out2


def test_jones(capsys):
    code, out, _ = run(capsys, "jones", "--a", "3", "--b", "4", "--signs", "+-+")
    assert code == 0
    assert out == "t + t^3 - t^4"


def test_json_output(capsys):
    code, out, _ = run(capsys, "--json", "bracket", "--a", "3", "--b", "4",
                       "--signs", "+-+")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == 1
    assert data["bracket"] == [[5, -1], [-3, -1], [-7, 1]]


def test_terms(capsys):
    code, out, _ = run(capsys, "terms", "--family", "bt", "--n", "4")
    assert code == 0
    assert out.splitlines()[0] == "(h3,X)+(h2,R)+(g2,N)"


def test_pd(capsys):
    code, out, _ = run(capsys, "pd", "--a", "3", "--b", "4", "--signs", "+-+")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("PD[X[")
    assert lines[1].startswith("O1")


def test_verify_ok(capsys):
    code, out, _ = run(capsys, "verify", "--family", "f", "--max-n", "6")
    assert code == 0
    assert "all match" in out


def test_table_rows(capsys):
    code, out, _ = run(capsys, "table", "--which", "2")
    assert code == 0
    assert "7 | 12a_0960 | (1,-5,13,-23,34,-42,45,-42,34,-23,13,-5,1)" in out


def test_tilings(capsys):
    code, out, _ = run(capsys, "tilings", "--b", "7")
    assert code == 0
    assert out.splitlines()[0] == "(S2,C,C)+(S2,V,H,V)+(S1,H,[C,V]+[V,H])"
    assert "bijection with the expansion: ok" in out


def test_bench_small(capsys):
    code, out, _ = run(capsys, "--json", "bench", "--a", "3", "--b", "6")
    assert code == 0
    data = json.loads(out)
    assert data["oracle_states"] == 32
    assert data["speedup"] > 0


def test_bad_arguments_exit_2(capsys):
    code, _, err = run(capsys, "bracket", "--a", "7", "--b", "2", "--signs", "+")
    assert code == 2
    assert "error" in err
    with pytest.raises(SystemExit) as exc:
        main(["bracket", "--b", "2"])  # missing --signs
    assert exc.value.code == 2
    code, _, err = run(capsys, "bracket", "--a", "3", "--b", "4", "--signs", "++")
    assert code == 2
