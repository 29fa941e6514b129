import numpy as np
import pytest

from spweno.cli import main, run_property_suite


def _read(path):
    with open(path) as fh:
        return fh.read()


def test_recon_accuracy_command(tmp_path):
    out = tmp_path / "recon.csv"
    code = main(["recon-accuracy", "--n", "40", "--n", "80",
                 "--scheme", "spweno", "--out", str(out)])
    assert code == 0
    text = _read(out)
    lines = text.strip().splitlines()
    assert lines[0].startswith("# command=recon-accuracy")
    assert lines[1] == "scheme,n,error_l1,rate_l1,error_linf,rate_linf"
    assert len(lines) == 4
    first = lines[2].split(",")
    assert first[0] == "spweno" and first[1] == "40"
    assert first[3] == ""  # no rate on the coarsest mesh
    assert lines[3].split(",")[3] != ""


def test_convergence_command_and_determinism(tmp_path):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    args = ["convergence", "--problem", "adv1", "--scheme", "eno2",
            "--n", "50", "--n", "100"]
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert _read(out1) == _read(out2)
    rows = _read(out1).strip().splitlines()[2:]
    assert len(rows) == 2
    err50 = float(rows[0].split(",")[2])
    assert err50 == pytest.approx(1.61e-2, rel=0.05)


def test_convergence_rejects_unordered_n(tmp_path):
    with pytest.raises(SystemExit):
        main(["convergence", "--problem", "adv1", "--n", "100", "--n", "50",
              "--out", str(tmp_path / "x.csv")])


def test_solve_command_snapshot(tmp_path):
    out = tmp_path / "snap.csv"
    code = main(["solve", "--problem", "burgers2", "--out", str(out)])
    assert code == 0
    lines = _read(out).strip().splitlines()
    assert lines[1] == "x,u"
    data = np.array([row.split(",") for row in lines[2:]], dtype=float)
    assert data.shape == (100, 2)
    # left-moving data transported: shock near x = 0.45 at T = 0.45
    x, u = data[:, 0], data[:, 1]
    crossings = np.where((u[:-1] >= 1.0) & (u[1:] < 1.0))[0]
    xc = x[crossings[-1]]
    assert abs(xc - 0.45) < 0.05


def test_solve_zero_time_echoes_initial(tmp_path):
    out = tmp_path / "echo.csv"
    assert main(["solve", "--problem", "adv3", "--tend", "0",
                 "--out", str(out)]) == 0
    data = np.array([row.split(",") for row in
                     _read(out).strip().splitlines()[2:]], dtype=float)
    expected = np.where(data[:, 0] <= 0.0, 3.0, -1.0)
    assert np.array_equal(data[:, 1], expected)


def test_entropy_history_command(tmp_path):
    out = tmp_path / "hist.csv"
    code = main(["entropy-history", "--problem", "burgers1", "--n", "50",
                 "--tend", "0.05", "--scheme", "spweno", "--scheme", "eno2",
                 "--out", str(out)])
    assert code == 0
    lines = _read(out).strip().splitlines()
    assert lines[1] == "scheme,t,E,rel_change"
    first = lines[2].split(",")
    assert first[0] == "spweno"
    assert float(first[1]) == 0.0
    assert float(first[3]) == 0.0
    assert sum(1 for row in lines[2:] if row.startswith("eno2,")) >= 2


def test_entropy_history_zero_time_single_row(tmp_path):
    out = tmp_path / "hist0.csv"
    assert main(["entropy-history", "--problem", "burgers1", "--n", "50",
                 "--tend", "0", "--out", str(out)]) == 0
    lines = _read(out).strip().splitlines()
    assert len(lines) == 3
    assert float(lines[2].split(",")[3]) == 0.0


def test_unknown_problem_fails(capsys):
    code = main(["solve", "--problem", "nope", "--out", "/tmp/x.csv"])
    assert code == 1
    assert "available" in capsys.readouterr().err


def test_out_dir_env_default(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("TECNO_OUT_DIR", str(tmp_path))
    assert main(["recon-accuracy", "--n", "40", "--scheme", "eno2"]) == 0
    printed = capsys.readouterr().out.strip()
    assert printed == str(tmp_path / "recon_accuracy.csv")
    assert (tmp_path / "recon_accuracy.csv").exists()


def test_proptest_command_small(capsys):
    code = main(["proptest", "--samples", "20000", "--seed", "3"])
    assert code == 0
    out = capsys.readouterr().out
    assert "sign-property" in out
    assert "violations expected" in out
    assert "FAIL" not in out


def test_property_suite_seed_determinism():
    a = run_property_suite(seed=9, samples=5000)
    b = run_property_suite(seed=9, samples=5000)
    assert [(r.name, r.scheme, r.violations) for r in a] == \
           [(r.name, r.scheme, r.violations) for r in b]
