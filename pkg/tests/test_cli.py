import io
import json
import subprocess
import sys

import pytest

from fibseries import cli, serialize
from fibseries.engine import coefficient
from fibseries.expander import BUDGET_ENV, expand


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("m, expected", [("12", "-1\n"), ("0", "1\n"), ("18", "1\n")])
def test_coeff(m, expected):
    assert run("coeff", m) == (0, expected)


def test_coeff_steps():
    code, text = run("coeff", "20", "--steps")
    assert code == 0
    assert text.splitlines() == ["high m=20 n=7 next=2 sign=+1", "base m=2", "-1"]
    assert run("coeff", "15", "--steps")[1].splitlines() == ["mid m=15 n=7", "0"]


def test_coeff_huge():
    m = "9" * 250 + "1234567890" * 25
    code, text = run("coeff", m)
    assert code == 0
    assert text.strip() in {"-1", "0", "1"}
    assert int(text) == coefficient(int(m))


def test_coeff_beyond_default_str_limit():
    m = "3" * 6000
    code, text = run("coeff", m)
    assert code == 0 and text.strip() in {"-1", "0", "1"}


@pytest.mark.parametrize("bad", ["-3", "abc", "1.5", "", "0x10"])
def test_coeff_bad_input(bad, capsys):
    assert run("coeff", bad)[0] == 2


def test_expand_bfile_exact():
    assert run("expand", "4", "--format", "bfile") == (0, "0 1\n1 -1\n2 -1\n3 0\n4 1\n")


def test_expand_csv_exact():
    assert run("expand", "0", "--format", "csv") == (0, "position,coefficient\n0,1\n")


def test_expand_json_exact():
    assert run("expand", "2", "--format", "json") == (0, '[["0",1],["1",-1],["2",-1]]\n')


def test_expand_18_has_last_line():
    code, text = run("expand", "18")
    assert code == 0
    assert text.splitlines()[-1] == "18 1"
    assert "18 1" in text.splitlines()


def test_expand_to_file(tmp_path):
    path = tmp_path / "a.txt"
    assert run("expand", "4", "--format", "bfile", "--out", str(path))[0] == 0
    assert path.read_bytes() == b"0 1\n1 -1\n2 -1\n3 0\n4 1\n"


def test_expand_io_error(tmp_path):
    path = tmp_path / "missing" / "a.txt"
    assert run("expand", "4", "--out", str(path))[0] == 3


def test_expand_budget_exit(monkeypatch):
    monkeypatch.setenv(BUDGET_ENV, "10")
    assert run("expand", "10")[0] == 4
    assert run("expand", "9")[0] == 0


def test_expand_bad_format():
    assert run("expand", "4", "--format", "xml")[0] == 2


@pytest.mark.parametrize("fmt", serialize.FORMATS)
def test_round_trip(fmt):
    arr = expand(10**4)
    text = serialize.dumps(arr, fmt)
    assert serialize.loads(text, fmt) == arr
    assert serialize.dumps(arr, fmt) == text


def test_bfile_round_trip_through_file(tmp_path):
    path = tmp_path / "b.txt"
    assert run("expand", "10000", "--out", str(path))[0] == 0
    with open(path) as fh:
        assert serialize.read(fh, "bfile") == expand(10**4)


@pytest.mark.parametrize(
    "text, fmt",
    [
        ("0 1\n2 -1\n", "bfile"),
        ("0 1\n1 5\n", "bfile"),
        ("0 1", "bfile"),
        ("0,1\n", "csv"),
        ('[["1",1]]', "json"),
    ],
)
def test_loads_rejects_malformed(text, fmt):
    with pytest.raises(ValueError):
        serialize.loads(text, fmt)


def test_output_is_stable_across_processes():
    cmd = [sys.executable, "-m", "fibseries", "expand", "300", "--format", "json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
    assert json.loads(first)[300] == ["300", coefficient(300)]


def test_verify_small():
    code, text = run("verify", "0")
    assert code == 0
    code, text = run("verify", "18")
    assert code == 0
    assert "engine_vs_expand       PASS passed=19 failed=0" in text
    assert "expand_vs_product      PASS passed=19 failed=0" in text


def test_verify_2000():
    code, text = run("verify", "2000")
    assert code == 0
    assert "FAIL" not in text
    names = [line.split()[0] for line in text.splitlines() if not line.startswith(("positions", " "))]
    assert names == sorted(names)


def test_verify_parallel_matches_serial():
    assert run("verify", "600", "--jobs", "2") == run("verify", "600")


def test_verify_sampling_above_exhaustive_range(monkeypatch):
    import fibseries.checks as checks

    monkeypatch.setattr(checks, "EXHAUSTIVE_ENGINE_LIMIT", 100)
    monkeypatch.setattr(checks, "SAMPLE_SIZE", 50)
    a = run("verify", "5000", "--enumerate-limit", "200", "--seed", "3")
    b = run("verify", "5000", "--enumerate-limit", "200", "--seed", "3")
    assert a == b and a[0] == 0


def test_verify_reports_falsification(monkeypatch):
    import fibseries.checks as checks

    monkeypatch.setattr(checks, "coefficient", lambda m: 1 if m == 17 else coefficient(m))
    code, text = run("verify", "100")
    assert code == 1
    assert "FAIL" in text


def test_stats_table():
    code, text = run("stats", "12")
    assert code == 0
    lines = text.splitlines()
    row5 = next(line.split("\t") for line in lines if line.startswith("5\t"))
    assert row5[1:6] == ["5", "4", "4", "1/5", "0.200000"]
    assert all(line.split("\t")[6] == "ok" for line in lines[1:] if line[:1].isdigit() and int(line.split("\t")[0]) >= 6)
    assert lines[-1] == "r1 = 1.543689  lambda = 1.618034"


def test_stats_json():
    code, text = run("stats", "40", "--format", "json", "--direct-max", "20")
    assert code == 0
    doc = json.loads(text)
    rows = {r["n"]: r for r in doc["rows"]}
    assert rows[10]["p"] == "26/55"
    assert rows[20]["alpha_direct"] == rows[20]["alpha"]
    assert rows[21]["alpha_direct"] is None
    assert doc["r1"].startswith("1.54") and doc["lambda"].startswith("1.618")


def test_stats_rejects_small_nmax():
    assert run("stats", "4")[0] == 2


def test_roots():
    code, text = run("roots", "--tol", "1e-10")
    assert code == 0
    assert "p(-1) = 0" in text
    assert "r1 < lambda: True" in text
    assert run("roots", "--tol", "-1")[0] == 2


def test_entry_point_help():
    proc = subprocess.run([sys.executable, "-m", "fibseries", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    for sub in ("coeff", "expand", "verify", "stats", "roots"):
        assert sub in proc.stdout
