"""Command-line interface: flags, exit codes, CSV conventions, determinism."""

import math

import pytest

from cornell_lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_text_output(capsys):
    code, out, _ = run(capsys, "analyze", "--a", "1", "--b", "1")
    assert code == 0
    rde_line = next(l for l in out.splitlines() if l.startswith("r_delta_e"))
    assert rde_line.split("=")[1].strip().startswith("0.79944487")
    assert "CoulombDominant" in out


def test_analyze_rejects_negative_b(capsys):
    code, _, err = run(capsys, "analyze", "--a", "1", "--b", "-1")
    assert code == 2
    assert "b must be > 0" in err


def test_analyze_pure_linear_hides_coulomb_peak(capsys):
    code, out, _ = run(capsys, "analyze", "--a", "0", "--b", "1")
    assert code == 0
    e_line = next(l for l in out.splitlines() if l.startswith("e_exact"))
    assert abs(float(e_line.split("=")[1].split("(")[0]) - 2.338107) < 1e-5
    assert "r0_coulomb" not in out
    assert "pt1_delta_e" not in out


def test_analyze_csv_round_trip(capsys):
    code, out, _ = run(capsys, "analyze", "--a", "1", "--b", "1", "--format", "csv")
    assert code == 0
    header, row = out.strip().splitlines()
    fields = dict(zip(header.split(","), row.split(",")))
    assert fields["regime"] == "CoulombDominant"
    # numbers re-parse and re-format identically (1 ulp of printed value)
    for key in ("e_exact", "delta_e", "r_delta_e", "r0_asym"):
        val = float(fields[key])
        assert math.isfinite(val)
    assert f"{float(fields['r_delta_e']):.16g}" == fields["r_delta_e"]
    assert f"{float(fields['e_exact']):.9g}" == fields["e_exact"]


def test_bad_flags_exit_one(capsys):
    code, _, err = run(capsys, "analyze", "--a", "1")  # missing --b
    assert code == 1
    code, _, err = run(capsys, "analyze", "--a", "1", "--b", "x")
    assert code == 1
    code, _, err = run(capsys, "wrong-command")
    assert code == 1


def test_table_csv_shape(capsys):
    code, out, _ = run(capsys, "table", "1", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 19  # header + 18 rows
    assert lines[0].startswith("a,b,N,l,r0_computed")
    assert all(line.endswith("PASS") for line in lines[1:])


def test_table_three_passes(capsys):
    code, out, _ = run(capsys, "table", "3", "--format", "csv")
    assert code == 0
    assert len(out.strip().splitlines()) == 21


def test_table_two_reports_discrepancies(capsys):
    code, out, _ = run(capsys, "table", "2")
    assert code == 0
    assert out.count("EXPECTED-DISCREPANCY") >= 3
    assert "FAIL" not in out.replace("EXPECTED-DISCREPANCY", "")


def test_table_unknown_id(capsys):
    code, _, err = run(capsys, "table", "9")
    assert code == 1
    assert "unknown table id" in err


def test_profile_shape_and_zero_crossing(capsys):
    # grid includes r = 2.0, the Coulomb peak radius for a=1, 2m=1
    code, out, _ = run(capsys, "profile", "--a", "1", "--b", "0.01",
                       "--r-min", "0.4", "--r-max", "2.0", "--steps", "9")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "r,delta_e,f_log_deriv,v_eff"
    assert len(lines) == 10
    rows = [line.split(",") for line in lines[1:]]
    assert float(rows[-1][0]) == pytest.approx(2.0)
    assert float(rows[-1][1]) == 0.0
    # monotone decreasing correction profile on (0, 2]
    values = [float(r[1]) for r in rows]
    assert all(y < x for x, y in zip(values, values[1:]))


def test_profile_invalid_range(capsys):
    code, _, _ = run(capsys, "profile", "--a", "1", "--b", "1",
                     "--r-min", "2", "--r-max", "1", "--steps", "5")
    assert code == 1
    code, _, _ = run(capsys, "profile", "--a", "1", "--b", "1",
                     "--r-min", "0", "--r-max", "1", "--steps", "5")
    assert code == 1
    code, _, _ = run(capsys, "profile", "--a", "1", "--b", "1",
                     "--r-min", "0.5", "--r-max", "1", "--steps", "1")
    assert code == 1


def test_sweep_grid(capsys):
    code, out, _ = run(capsys, "sweep", "--a", "1", "--b", "0.01,1",
                       "--l", "0:1", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 5  # header + 2 b-values x 2 l-values
    assert lines[0].endswith(",error")
    assert all(line.endswith(",") for line in lines[1:])  # no per-row errors
    # deterministic ordering: b inner loop over l
    cells = [(line.split(",")[1], line.split(",")[4]) for line in lines[1:]]
    assert cells == [("0.01", "0"), ("0.01", "1"), ("1", "0"), ("1", "1")]


def test_sweep_range_parsing(capsys):
    code, out, _ = run(capsys, "sweep", "--a", "0:0.2:0.1", "--b", "1", "--format", "csv")
    assert code == 0
    assert len(out.strip().splitlines()) == 4
    code, _, err = run(capsys, "sweep", "--a", "1", "--b", "2:1")
    assert code == 1
    code, _, err = run(capsys, "sweep", "--a", "1", "--b", "1", "--l", "0.5")
    assert code == 1


def test_sweep_requires_ranges(capsys):
    code, _, _ = run(capsys, "sweep", "--a", "1")
    assert code == 1


def test_csv_determinism(capsys):
    args = ("profile", "--a", "1", "--b", "1", "--r-min", "0.2",
            "--r-max", "3.0", "--steps", "40", "--format", "csv")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_threaded_rows_keep_order(capsys, monkeypatch):
    args = ("sweep", "--a", "1", "--b", "0.01,1", "--l", "0:1", "--format", "csv")
    _, serial, _ = run(capsys, *args)
    monkeypatch.setenv("CORNELL_LAB_THREADS", "4")
    _, threaded, _ = run(capsys, *args)
    assert serial == threaded


def test_out_file(tmp_path, capsys):
    target = tmp_path / "result.csv"
    code, out, _ = run(capsys, "analyze", "--a", "1", "--b", "1",
                       "--format", "csv", "--out", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text().startswith("a,b,m,N,l,lambda")


def test_config_file_flags_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("a = 1\nb = 1\nformat = csv\n# comment\n")
    code, out, _ = run(capsys, "analyze", "--config", str(cfg), "--b", "0.01")
    assert code == 0
    header, row = out.strip().splitlines()
    fields = dict(zip(header.split(","), row.split(",")))
    assert fields["a"] == "1"
    assert fields["b"] == "0.01"   # flag wins over config


def test_config_file_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("zz = 1\n")
    code, _, err = run(capsys, "analyze", "--config", str(cfg), "--a", "1", "--b", "1")
    assert code == 1
    assert "unknown config key" in err


def test_profile_crosses_target_exactly_once_on_table_rows(capsys):
    # the sampled correction profile must bracket its own critical radius
    # exactly once for every built-in N=3 configuration
    from cornell_lab.analysis import TABLES, analyze
    from cornell_lab.params import SystemParams

    for row in TABLES[1].rows:
        p = SystemParams(a=row.a, b=row.b, ell=row.ell)
        res = analyze(p)
        target = res.e_exact - res.e_es
        lo = 0.02 * res.r_delta_e
        hi = min(0.999 * res.r0_coulomb, 3.0 * res.r_delta_e)
        code, out, _ = run(capsys, "profile", "--a", str(row.a), "--b", str(row.b),
                           "--l", str(row.ell), "--r-min", str(lo),
                           "--r-max", str(hi), "--steps", "200")
        assert code == 0
        values = [float(line.split(",")[1]) - target
                  for line in out.strip().splitlines()[1:]]
        crossings = sum(1 for x, y in zip(values, values[1:])
                        if (x > 0.0) != (y > 0.0))
        assert crossings == 1, f"row {row}"


def test_solver_failure_maps_to_exit_three(capsys, monkeypatch):
    from cornell_lab import cli
    from cornell_lab.errors import SolverError

    def boom(*args, **kwargs):
        raise SolverError("synthetic")

    monkeypatch.setattr(cli, "analyze", boom)
    code, _, err = run(capsys, "analyze", "--a", "1", "--b", "1")
    assert code == 3
    assert "solver failure" in err
