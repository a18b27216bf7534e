import io
import json
import subprocess
import sys

from dompoly.cli import EXIT_CAP, EXIT_PARSE, main, random_polynomials, run_batch


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_test_command(capsys):
    code, out, _ = _run(capsys, "test", "1,0,-5,1")
    rec = json.loads(out)
    assert code == 0 and rec["dominant"] and rec["method"] == "alg3"
    assert "/" in rec["witness"]["r"] and rec["witness"]["side"] == "-"


def test_test_command_algorithms(capsys):
    for algo in ("simple", "efficient", "irreducible"):
        code, out, _ = _run(capsys, "test", "1,-1,-1,-1", "--algorithm", algo)
        assert code == 0 and json.loads(out)["dominant"]
    code, _, err = _run(capsys, "test", "1,0,-1", "--algorithm", "irreducible")
    assert code == 1 and "irreducible" in err


def test_oracle_flag(capsys):
    code, out, _ = _run(capsys, "test", "1,-3,2", "--no-filters", "--oracle")
    rec = json.loads(out)
    assert rec["oracle"]["dominant"] == rec["dominant"] is True


def test_parse_error_exit_code(capsys):
    code, _, err = _run(capsys, "test", "0,1,1")
    assert code == EXIT_PARSE and "zero leading coefficient" in err


def test_cap_exit_code(capsys):
    code, _, err = _run(capsys, "census", "--degree", "3", "--height", "3", "--cap", "10")
    assert code == EXIT_CAP and "--force" in err


def test_stability_and_bounds(capsys):
    code, out, _ = _run(capsys, "stability", "1,0,-4")
    assert json.loads(out)["nu"] == 2
    code, out, _ = _run(capsys, "bounds", "2,-5,2")
    rec = json.loads(out)
    assert rec["c1"] == "1/6" and rec["c2"] == "7/2"


def test_census_command(capsys, tmp_path):
    csv_path = tmp_path / "t.csv"
    code, out, _ = _run(capsys, "census", "--degree", "2", "--height", "1", "--csv", str(csv_path))
    assert code == 0 and "0.4444" in out
    assert csv_path.read_text().splitlines()[1] == "M,2,1,4,9,4/9,0.4444"


def test_batch(tmp_path):
    path = tmp_path / "in.txt"
    path.write_text("1,-1,-1\n1,0,1\n")
    buf = io.StringIO()
    recs = run_batch(path, out=buf)
    assert [r["dominant"] for r in recs] == [True, False]
    assert len(buf.getvalue().splitlines()) == 2


def test_batch_empty_and_malformed(tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    assert run_batch(empty, out=io.StringIO()) == []
    bad = tmp_path / "bad.txt"
    bad.write_text("1,-1,-1\n1,,2\n1,0,1\n")
    recs = run_batch(bad, out=io.StringIO())
    assert recs[1]["line"] == 2 and "error" in recs[1]
    assert recs[0]["dominant"] is True and recs[2]["dominant"] is False


def test_batch_keeps_input_order_with_workers(tmp_path):
    polys = random_polynomials(3, 40, 2, 4, 20)
    path = tmp_path / "many.txt"
    path.write_text("\n".join(str(f) for f in polys))
    recs = run_batch(path, workers=2, out=io.StringIO())
    assert [r["input"] for r in recs] == [str(f) for f in polys]


def test_random_is_seeded(capsys):
    _, a, _ = _run(capsys, "random", "--seed", "7", "--count", "5")
    _, b, _ = _run(capsys, "random", "--seed", "7", "--count", "5")
    assert a == b and len(a.splitlines()) == 5


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "dompoly", "test", "1,-3,2"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["dominant"]
