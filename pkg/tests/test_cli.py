import json
import math

import numpy as np
import pytest

from qmkit.cli import main


def run_cli(args):
    return main(args)


def data_lines(path):
    return [l for l in path.read_text().splitlines() if not l.startswith("#")]


# ---------------------------------------------------------------------------
# state
# ---------------------------------------------------------------------------

def test_state_ghz_rows(tmp_path):
    out = tmp_path / "ghz.csv"
    assert run_cli(["state", "--name", "ghz", "--n", "3", "--out", str(out)]) == 0
    rows = data_lines(out)
    assert len(rows) == 8
    re0, im0 = map(float, rows[0].split(","))
    assert re0 == pytest.approx(1 / math.sqrt(2))
    assert im0 == 0.0


def test_state_dicke_amplitudes(tmp_path):
    out = tmp_path / "d.csv"
    assert run_cli(["state", "--name", "dicke", "--n", "3", "--k", "2",
                    "--out", str(out)]) == 0
    rows = data_lines(out)
    amps = [float(r.split(",")[0]) for r in rows]
    hot = [i for i, a in enumerate(amps) if abs(a) > 1e-12]
    assert hot == [3, 5, 6]
    assert amps[3] == pytest.approx(1 / math.sqrt(3))


def test_state_white_noise_density_matrix(tmp_path):
    out = tmp_path / "noisy.csv"
    assert run_cli(["state", "--name", "ghz", "--n", "3",
                    "--white-noise", "0.1", "--out", str(out)]) == 0
    rows = data_lines(out)
    assert len(rows) == 64  # 8x8 density matrix, one entry per row
    first = rows[0].split(",")
    assert len(first) == 4  # row,col,re,im


def test_state_json_format(tmp_path):
    out = tmp_path / "w.json"
    assert run_cli(["state", "--name", "w", "--n", "2", "--format", "json",
                    "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["kind"] == "ket"
    assert payload["dimension"] == 4
    amp = payload["amplitudes"][1]
    assert amp[0] == pytest.approx(1 / math.sqrt(2))


def test_state_unknown_name_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        run_cli(["state", "--name", "bogus"])
    assert exc.value.code == 2


def test_state_missing_parameter_is_usage_error(capsys):
    assert run_cli(["state", "--name", "ghz"]) == 2
    assert "requires --n" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# measure
# ---------------------------------------------------------------------------

def test_measure_xyz_expectations(tmp_path):
    out = tmp_path / "m.csv"
    assert run_cli(["measure", "--name", "ghz", "--n", "1", "--set", "xyz",
                    "--backend", "exact", "--out", str(out)]) == 0
    rows = [r.split(",") for r in data_lines(out)]
    vals = [float(r[2]) for r in rows]
    np.testing.assert_allclose(vals, [1.0, 0.0, 0.0], atol=1e-12)


def test_measure_pauli_maximally_mixed(tmp_path):
    out = tmp_path / "mm.csv"
    # |0> with 50% white noise is I/2
    assert run_cli(["measure", "--name", "basis", "--d", "2", "--k", "0",
                    "--white-noise", "1.0", "--set", "pauli",
                    "--out", str(out)]) == 0
    rows = [r.split(",") for r in data_lines(out)]
    assert len(rows) == 6
    for r in rows:
        assert float(r[2]) == pytest.approx(0.5, abs=1e-12)
        assert r[1] != ""  # every pauli element belongs to a group


def test_measure_sampled_reproducible(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    args = ["measure", "--name", "ghz", "--n", "1", "--set", "sic",
            "--backend", "mc", "--shots", "500", "--seed", "42"]
    assert run_cli(args + ["--out", str(a)]) == 0
    assert run_cli(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_measure_unsupported_dimension_exit_3(tmp_path, capsys):
    code = run_cli(["measure", "--name", "random", "--d", "6", "--set", "mub",
                    "--out", str(tmp_path / "x.csv")])
    assert code == 3
    assert "UnsupportedDimension" in capsys.readouterr().err


def test_measure_pauli_on_non_qubit_dimension_exit_3(tmp_path, capsys):
    code = run_cli(["measure", "--name", "random", "--d", "3", "--set", "pauli",
                    "--out", str(tmp_path / "x.csv")])
    assert code == 3


# ---------------------------------------------------------------------------
# bench-povm / backend-compare
# ---------------------------------------------------------------------------

def test_bench_povm_rows(tmp_path):
    out = tmp_path / "bench.csv"
    assert run_cli(["bench-povm", "--repeats", "2", "--out", str(out)]) == 0
    rows = [r.split(",") for r in data_lines(out)]
    table = {(r[0], int(r[1])) for r in rows}
    assert {("pauli", 2), ("pauli", 4), ("pauli", 8)} <= table
    assert {("stoke", d) for d in (2, 4, 8)} <= table
    assert {("mub", d) for d in (2, 3, 4, 5, 7)} <= table
    assert {("sic", d) for d in range(2, 9)} <= table
    assert all(float(r[2]) >= 0 for r in rows)


def test_backend_compare_exact_column(tmp_path):
    out = tmp_path / "cmp.csv"
    assert run_cli(["backend-compare", "--samples", "50", "--iterations", "200",
                    "--no-timing", "--out", str(out)]) == 0
    rows = [r.split(",") for r in data_lines(out)]
    assert len(rows) == 50
    for r in rows:
        x, exact = float(r[0]), float(r[1])
        assert exact == pytest.approx(math.exp(-x), abs=1e-15)
    # header carries the two mean absolute errors
    header = [l for l in out.read_text().splitlines() if l.startswith("# mc_mae")]
    assert len(header) == 1


def test_backend_compare_cdf_beats_mc(tmp_path):
    maes = []
    for seed in range(20):
        out = tmp_path / f"cmp{seed}.csv"
        run_cli(["backend-compare", "--samples", "100", "--iterations", "1000",
                 "--seed", str(seed), "--no-timing", "--out", str(out)])
        header = [l for l in out.read_text().splitlines()
                  if l.startswith("# mc_mae")][0]
        parts = dict(kv.split("=") for kv in header[2:].split())
        maes.append((float(parts["mc_mae"]), float(parts["cdf_mae"])))
    mc_mean = np.mean([m for m, _ in maes])
    cdf_mean = np.mean([c for _, c in maes])
    assert cdf_mean <= mc_mean


def test_backend_compare_timing_table(tmp_path):
    out = tmp_path / "cmp.csv"
    timing = tmp_path / "timing.csv"
    assert run_cli(["backend-compare", "--samples", "5", "--iterations", "10",
                    "--out", str(out), "--timing-out", str(timing)]) == 0
    rows = [r.split(",") for r in data_lines(timing)]
    assert [int(r[0]) for r in rows] == list(range(1000, 11000, 1000))


# ---------------------------------------------------------------------------
# phasespace
# ---------------------------------------------------------------------------

def test_phasespace_planar_vacuum(tmp_path):
    out = tmp_path / "h.csv"
    assert run_cli(["phasespace", "--name", "coherent", "--d", "20",
                    "--alpha", "0", "--map", "husimi", "--coords", "planar",
                    "--xmin", "-1", "--xmax", "1", "--ymin", "-1", "--ymax", "1",
                    "--nx", "3", "--ny", "3", "--out", str(out)]) == 0
    rows = [r.split(",") for r in data_lines(out)]
    assert len(rows) == 9
    centre = [r for r in rows if float(r[0]) == 0.0 and float(r[1]) == 0.0][0]
    assert float(centre[2]) == pytest.approx(1 / math.pi, abs=1e-12)


def test_phasespace_spherical_dicke(tmp_path):
    out = tmp_path / "q.csv"
    assert run_cli(["phasespace", "--name", "zeeman", "--j", "10", "--m", "7",
                    "--map", "husimi", "--coords", "spherical",
                    "--ntheta", "21", "--nphi", "9", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "# kind=husimi coords=spherical n1=21 n2=9"
    assert len(lines) == 1 + 21 * 9


def test_phasespace_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["phasespace", "--name", "random", "--d", "8", "--seed", "9",
            "--map", "wigner", "--coords", "planar", "--nx", "5", "--ny", "5"]
    assert run_cli(args + ["--out", str(a)]) == 0
    assert run_cli(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


# ---------------------------------------------------------------------------
# tomography
# ---------------------------------------------------------------------------

def test_tomography_exact_report(tmp_path):
    out = tmp_path / "t.json"
    assert run_cli(["tomography", "--name", "ghz", "--n", "2", "--set", "pauli",
                    "--shots", "exact", "--format", "json",
                    "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["fidelity"] >= 1 - 1e-9
    assert {"dimension", "set_kind", "shots", "backend", "seed", "fidelity",
            "trace_distance"} == set(rep)
    assert rep["shots"] == "exact"


def test_tomography_batch_rows(tmp_path):
    out = tmp_path / "batch.csv"
    assert run_cli(["tomography", "--name", "ghz", "--n", "1", "--set", "sic",
                    "--shots", "300", "--backend", "cdf", "--repeats", "20",
                    "--out", str(out)]) == 0
    rows = data_lines(out)
    assert len(rows) == 20
    seeds = [int(r.split(",")[4]) for r in rows]
    assert seeds == list(range(20))


def test_tomography_shots_validation(tmp_path, capsys):
    code = run_cli(["tomography", "--name", "ghz", "--n", "1", "--set", "sic",
                    "--shots", "never", "--out", str(tmp_path / "x.csv")])
    assert code == 2


# ---------------------------------------------------------------------------
# metrology
# ---------------------------------------------------------------------------

def test_metrology_default_theta_files(tmp_path, capsys):
    assert run_cli(["metrology", "--j", "2", "--points", "12",
                    "--out-dir", str(tmp_path)]) == 0
    files = sorted(tmp_path.glob("cat_theta_*.csv"))
    assert len(files) == 4
    one = [r for r in files[0].read_text().splitlines() if not r.startswith("#")]
    assert len(one) == 12
    # sql column constant 1/sqrt(2j)
    sqls = {r.split(",")[4] for r in one}
    assert len(sqls) == 1
    assert float(sqls.pop()) == pytest.approx(1 / math.sqrt(4))


def test_metrology_phi_axis_in_radians(tmp_path):
    run_cli(["metrology", "--j", "1", "--points", "5", "--t-max", "0.2",
             "--thetas-pi", "0.25", "--out-dir", str(tmp_path)])
    rows = [r for r in (tmp_path / "cat_theta_0.25pi.csv").read_text().splitlines()
            if not r.startswith("#")]
    phis = [float(r.split(",")[0]) for r in rows]
    assert phis[-1] == pytest.approx(0.2 * math.pi)


def test_metrology_deterministic(tmp_path):
    d1, d2 = tmp_path / "r1", tmp_path / "r2"
    for d in (d1, d2):
        run_cli(["metrology", "--j", "2", "--points", "8", "--out-dir", str(d)])
    for f1 in sorted(d1.glob("*.csv")):
        f2 = d2 / f1.name
        assert f1.read_bytes() == f2.read_bytes()


# ---------------------------------------------------------------------------
# stdout path
# ---------------------------------------------------------------------------

def test_stdout_output(capsys):
    assert run_cli(["state", "--name", "ghz", "--n", "1"]) == 0
    out = capsys.readouterr().out
    rows = [l for l in out.splitlines() if not l.startswith("#")]
    assert len(rows) == 2
