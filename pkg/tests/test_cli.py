import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from hyperradon import radon as rd
from hyperradon import specfun as sf
from hyperradon.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def table(text):
    rows = [r for r in text.splitlines() if not r.startswith("#")]
    return list(csv.reader(io.StringIO("\n".join(rows))))


def test_help_lists_exit_codes():
    out = subprocess.run([sys.executable, "-m", "hyperradon", "--help"], capture_output=True, text=True, check=True).stdout
    for code in range(5):
        assert f"  {code}  " in out
    assert "HYPERRADON_THREADS" in out


def test_eval_besselK(capsys):
    code, out, _ = run(capsys, "eval", "besselK", "--kappa", "1.5", "--xmin", "0.5", "--xmax", "4", "--n", "8")
    assert code == 0
    assert out.splitlines()[0] == "# besselK,kappa=1.5"
    rows = table(out)
    assert rows[0] == ["x", "value", "err"]
    x = np.array([float(r[0]) for r in rows[1:]])
    v = np.array([float(r[1]) for r in rows[1:]])
    assert np.allclose(x, np.linspace(0.5, 4, 8))
    assert np.allclose(v, sf.bessel_K_imag_array(1.5, x)[0], rtol=1e-11)


@pytest.mark.parametrize(
    "argv",
    [
        ("besselJ", "--nu", "1.5", "--nu-imag", "0.5", "--part", "im"),
        ("conical", "--kappa", "2", "--m", "1"),
        ("conical", "--kappa", "2", "--m", "0", "--variable", "x", "--xmin", "1", "--xmax", "5"),
        ("E", "--k", "1", "--nu", "1.5", "--xmin", "-3", "--xmax", "3"),
        ("O", "--k", "2", "--nu", "1.5", "--xmin", "-3", "--xmax", "3"),
        ("scattering", "--kappa", "1.0", "--xmin", "-5", "--xmax", "3"),
        ("bound", "--n-state", "1", "--xmin", "-5", "--xmax", "3"),
    ],
)
def test_eval_functions(capsys, argv):
    code, out, _ = run(capsys, "eval", *argv, "--n", "6")
    assert code == 0
    rows = table(out)
    assert len(rows) == 7
    assert all(math.isfinite(float(v)) for r in rows[1:] for v in r)


@pytest.mark.parametrize(
    "argv",
    [
        ("eval", "nosuch"),
        ("eval", "besselK"),
        ("eval", "besselK", "--kappa", "1", "--xmin", "-1"),
        ("eval", "besselK", "--kappa", "1", "--n", "1"),
        ("eval", "besselK", "--kappa", "1", "--xmin", "3", "--xmax", "2"),
        ("eval", "conical", "--kappa", "1", "--m", "0", "--variable", "x", "--xmin", "0.5"),
        ("eval", "besselK", "--kappa", "1", "--plot", "curve.pdf"),
        ("verify", "nosuch"),
        ("radon", "--model", "disc", "--k", "1.5", "--nu", "1"),
        ("radon", "--model", "halfplane", "--k", "0", "--nu", "1"),
        ("radon", "--model", "halfplane", "--k", "1", "--nu", "1", "--xmin", "0"),
        ("radon", "--model", "disc", "--k", "1", "--nu", "1", "--fit-theta"),
        ("radon", "--model", "halfplane", "--k", "1", "--nu", "1", "--xmin", "1", "--antipodal-check"),
        ("radon", "--model", "halfplane", "--k", "1", "--nu", "1.5", "--xmin", "1", "--n", "2", "--fit-theta", "--fit-window", "30", "32"),
    ],
)
def test_bad_parameters_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_bad_config_exit_2(capsys, tmp_path):
    for text in ("nosuch = 1\n", "quad_rtol = -1\n", "quad_rtol\n", "quad_rtol = abc\n"):
        p = tmp_path / "c.cfg"
        p.write_text(text)
        code, _, err = run(capsys, "--config", str(p), "eval", "besselK", "--kappa", "1", "--n", "3")
        assert code == 2, text
    code, _, _ = run(capsys, "--config", str(tmp_path / "missing.cfg"), "eval", "besselK", "--kappa", "1")
    assert code == 2


def test_bad_thread_count_exit_2(capsys, monkeypatch):
    monkeypatch.setenv("HYPERRADON_THREADS", "zero")
    assert run(capsys, "eval", "besselK", "--kappa", "1", "--n", "3")[0] == 2


def test_nonconvergence_exit_3(capsys, tmp_path):
    p = tmp_path / "c.cfg"
    p.write_text("sigma_cutoff = 0.5\n")
    code, _, err = run(capsys, "--config", str(p), "radon", "--model", "disc", "--k", "1", "--nu", "1.5", "--n", "3")
    assert code == 3
    assert err.startswith("non-convergence:")


def test_io_error_exit_4(capsys, tmp_path):
    code, _, err = run(capsys, "eval", "besselK", "--kappa", "1", "--n", "3", "--out", str(tmp_path / "no" / "x.csv"))
    assert code == 4
    assert err.startswith("i/o error:")


def test_verify_report(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "geometry", "--out", str(out))
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["suite"] == "geometry" and rep["passed"] is True and rep["schema"] == 1
    assert set(rep["tolerances"]) >= {"quad_rtol", "fd_step"}
    for c in rep["checks"]:
        assert set(c) == {"name", "measured", "tolerance", "passed", "detail"}
        assert c["passed"] == (c["measured"] <= c["tolerance"])


def test_verify_failure_exit_1(capsys, tmp_path):
    # a huge finite-difference step spoils the Casimir check
    p = tmp_path / "c.cfg"
    p.write_text("fd_step = 0.5\n")
    code, out, err = run(capsys, "--config", str(p), "verify", "group")
    assert code == 1
    assert json.loads(out)["passed"] is False
    assert "FAIL group: Casimir" in err


def test_verify_spectral_theta(capsys):
    code, out, _ = run(capsys, "verify", "spectral", "--theta", str(math.pi / 4))
    assert code == 0
    checks = json.loads(out)["checks"]
    assert checks[0]["detail"].startswith("0.5, 2.5, 4.5")


def test_radon_disc_columns(capsys):
    code, out, _ = run(capsys, "radon", "--model", "disc", "--k", "2", "--nu", "1.5", "--n", "5", "--antipodal-check")
    assert code == 0
    rows = table(out)
    assert rows[0] == ["x", "re_quadrature", "im_quadrature", "quad_err", "re_closed_form", "im_closed_form", "rel_diff", "antipodal_dev"]
    data = np.array(rows[1:], dtype=float)
    assert np.all(data[:, 6] <= 1e-6)
    assert np.all(data[:, 7] <= 1e-8)
    cf = rd.radon_disc_closed_form(2, 1.5, data[:, 0])
    assert np.allclose(data[:, 4], cf.real, rtol=1e-11)


def test_radon_halfplane_fit_theta(capsys):
    code, out, err = run(capsys, "radon", "--model", "halfplane", "--k", "1", "--nu", "1.5", "--xmin", "0.5", "--xmax", "3", "--n", "4", "--fit-theta")
    assert code == 0
    line = [r for r in out.splitlines() if r.startswith("# theta_fit=")][0]
    th = float(line.split(",")[0].split("=")[1])
    assert abs(th - 0.75 * math.pi) <= 1e-2
    assert "fitted extension angle" in err


def test_output_independent_of_thread_count(capsys, monkeypatch, tmp_path):
    outs = []
    for n in ("1", "4"):
        monkeypatch.setenv("HYPERRADON_THREADS", n)
        path = tmp_path / f"t{n}.csv"
        assert run(capsys, "radon", "--model", "disc", "--k", "1", "--nu", "1.2", "--n", "9", "--out", str(path))[0] == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


@pytest.mark.parametrize("suffix", ["svg", "png"])
def test_plot_output(capsys, tmp_path, suffix):
    paths = []
    for i in range(2):
        p = tmp_path / f"k{i}.{suffix}"
        assert run(capsys, "eval", "besselK", "--kappa", "2", "--n", "20", "--plot", str(p))[0] == 0
        paths.append(p.read_bytes())
    head = paths[0][:200]
    assert (b"<svg" in paths[0][:2000]) if suffix == "svg" else head.startswith(b"\x89PNG")
    assert paths[0] == paths[1]


def test_radon_plot(capsys, tmp_path):
    p = tmp_path / "r.svg"
    assert run(capsys, "radon", "--model", "halfplane", "--k", "1", "--nu", "1", "--xmin", "0.5", "--xmax", "4", "--n", "5", "--plot", str(p))[0] == 0
    assert p.stat().st_size > 1000
