import csv
import io
import os
import subprocess
import sys
from fractions import Fraction

import pytest

from sl2char.cli import ConfigError, SweepConfig, fmt, load_config, main, parse_config_text
from sl2char.exact import Surd


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def rows_of(text):
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["schema_version", "1"]
    return [dict(zip(rows[1], r)) for r in rows[2:]]


def test_config_round_trip():
    cfg = SweepConfig(p=[5, 7], prec=20, r_max=4, classes=["eps:1", "split"], gammas=["pi:1@1"], tol=1e-6)
    back = load_config(None, parse_config_text(cfg.serialize()))
    assert back == cfg
    assert load_config(None, parse_config_text(SweepConfig().serialize())) == SweepConfig()


def test_config_file_and_override(tmp_path, capsys):
    path = tmp_path / "run.cfg"
    path.write_text("# sweep\np = 7\nr-max = 4\n")
    cfg = load_config(path, {"r_max": 2})
    assert cfg.p == [7] and cfg.r_max == 2
    rc, out, _ = run(capsys, "sweep-bound", "--config", str(path), "--dump-config")
    assert rc == 0 and "p = 7" in out and "r_max = 4" in out


def test_config_diagnostics(tmp_path):
    with pytest.raises(ConfigError, match=r"cfg:2: unknown field 'bogus'"):
        parse_config_text("p = 5\nbogus = 1\n", "cfg")
    with pytest.raises(ConfigError, match=r"cfg:1: expected"):
        parse_config_text("p 5\n", "cfg")
    with pytest.raises(ConfigError, match=r"cfg:1: field 'seed'"):
        parse_config_text("seed = x\n", "cfg")
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "missing.cfg")


@pytest.mark.parametrize("argv, needle", [
    (["--p", "3"], "p >= 2e+3"),
    (["--p", "9"], "not prime"),
    (["--prec", "5"], "precision policy"),
    (["--r-min", "4", "--r-max", "2"], "empty depth range"),
    (["--classes", "foo"], "classes"),
    (["--tol", "-1"], "tol"),
])
def test_config_errors_exit_2(capsys, argv, needle):
    rc, _, err = run(capsys, "sweep-bound", *argv)
    assert rc == 2 and needle in err


def test_sweep_small(capsys):
    rc, out, err = run(capsys, "sweep-bound", "--p", "5", "--r-max", "2", "--gamma-depth-max", "4")
    assert rc == 0 and "failures=0" in err
    rows = rows_of(out)
    assert len(rows) == 40 * 31
    assert all(r["pass"] == "true" for r in rows)
    assert min(float(r["rhs"]) - float(r["lhs"]) for r in rows) > 0
    # split-deep at 1+p^2, against 2 + 1/25
    spot = {(r["r"], r["normalized_value"], r["rhs"]) for r in rows if r["gamma_id"] == "1+p^2" and r["kind"] == "unramified"}
    assert {("0", "0.96", "2.04"), ("1", "0.8", "2.04")} <= spot
    assert {r["value_kind"] for r in rows} <= {"exact", "upper_bound", "zero"}


def test_sweep_filters(capsys):
    rc, out, _ = run(capsys, "sweep-bound", "--p", "7", "--r-min", "1", "--r-max", "1",
                     "--classes", "pi:1", "--gamma-depth-max", "2")
    rows = rows_of(out)
    assert rc == 0 and rows
    assert {r["gamma_class"] for r in rows} == {"pi,1"}
    assert {r["r"] for r in rows} == {"1/2"}


def test_sweep_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert main(["sweep-bound", "--p", "5,7", "--r-max", "2", "--gamma-depth-max", "2", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_kappa_table(capsys):
    rc, out, _ = run(capsys, "kappa-table", "--types", "A1,C2,G2")
    rows = {r["type"]: r for r in rows_of(out)}
    assert (rows["A1"]["kappa"], rows["A1"]["A"]) == ("1/3", "2")
    assert (rows["C2"]["kappa"], rows["C2"]["A"]) == ("1/10", "7")
    assert (rows["G2"]["h_G"], rows["G2"]["kappa"], rows["G2"]["A"]) == ("5", "3/14", "11")


def test_kappa_table_edge_cases(capsys):
    rc, out, _ = run(capsys, "kappa-table", "--types", "")
    assert rc == 0 and rows_of(out) == []
    rc, out, err = run(capsys, "kappa-table", "--types", "A1,X9")
    assert rc == 0 and "skipping 'X9'" in err
    assert [r["type"] for r in rows_of(out)] == ["A1"]


def test_asymptotics_small_range(capsys):
    rc, out, err = run(capsys, "asymptotics", "--p", "5", "--r-max", "2")
    assert rc == 0 and rows_of(out) == [] and "warning" in err


def test_asymptotics_rows(capsys):
    rc, out, _ = run(capsys, "asymptotics", "--p", "5", "--r-max", "8", "--gammas", "eps:1@2")
    rows = rows_of(out)
    assert rc == 0 and rows
    assert all(r["decreasing"] == "true" for r in rows)


def test_checks_pass_and_fault(capsys):
    rc, out, _ = run(capsys, "checks", "--p", "5", "--samples", "200")
    assert rc == 0 and "checks status=PASS" in out
    rc, out, _ = run(capsys, "checks", "--p", "5", "--samples", "50", "--inject-fault", "legendre")
    assert rc != 0
    assert "check=expsum p=5 status=FAIL" in out


def test_fmt():
    assert fmt(True) == "true"
    assert fmt(Fraction(3, 4)) == "3/4"
    assert fmt(Fraction(4, 2)) == "2"
    assert fmt(float("nan")) == "nan"
    assert fmt(Surd.qpow(-1, 5)) == "1/5*sqrt(5)"


def test_module_entry_point(tmp_path):
    env = dict(os.environ, SL2CHAR_NUMBA="0")
    res = subprocess.run([sys.executable, "-m", "sl2char", "kappa-table", "--types", "A1"],
                         capture_output=True, text=True, env=env, cwd=tmp_path)
    assert res.returncode == 0
    assert res.stdout.splitlines()[:3] == ["schema_version,1", "type,rank,dim,num_pos,h_G,r_G,kappa,A,flags",
                                           "A1,1,3,1,1,1,1/3,2,"]
    res = subprocess.run([sys.executable, "-m", "sl2char", "checks", "--p", "2"], capture_output=True, text=True)
    assert res.returncode == 2
