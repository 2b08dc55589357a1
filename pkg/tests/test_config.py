import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperradon import config as cfg
from hyperradon import liegroup, radon


def test_parse_with_comments():
    text = "# overrides\n\nquad_rtol = 1e-9  # tighter\nfd_step=2e-3\n"
    assert cfg.parse_config_text(text) == {"quad_rtol": 1e-9, "fd_step": 2e-3}


@pytest.mark.parametrize("text", ["nosuch = 1", "quad_rtol = 0", "quad_rtol = -1e-3", "quad_rtol = nan", "quad_rtol = inf", "quad_rtol 1", "quad_rtol = x"])
def test_parse_rejects(text):
    with pytest.raises(cfg.ConfigError):
        cfg.parse_config_text(text)


def test_defaults_cover_every_key():
    d = cfg.default_tolerances()
    assert set(d) == set(cfg.TOLERANCE_TARGETS)
    assert all(v > 0 for v in d.values())


@pytest.mark.parametrize("env,n", [({}, 1), ({"HYPERRADON_THREADS": ""}, 1), ({"HYPERRADON_THREADS": "8"}, 8)])
def test_thread_count(env, n):
    assert cfg.thread_count(env) == n


@pytest.mark.parametrize("raw", ["0", "-2", "two", "1.5"])
def test_thread_count_rejects(raw):
    with pytest.raises(cfg.ConfigError):
        cfg.thread_count({"HYPERRADON_THREADS": raw})


def test_applied_tolerances_restores():
    before = (radon.QUAD_RTOL, liegroup.FD_STEP)
    with cfg.applied_tolerances({"quad_rtol": 1e-6, "fd_step": 0.01}):
        assert (radon.QUAD_RTOL, liegroup.FD_STEP) == (1e-6, 0.01)
    assert (radon.QUAD_RTOL, liegroup.FD_STEP) == before


def test_applied_tolerances_restores_on_error():
    before = radon.SIGMA_CUTOFF
    with pytest.raises(RuntimeError):
        with cfg.applied_tolerances({"sigma_cutoff": 3.0}):
            raise RuntimeError
    assert radon.SIGMA_CUTOFF == before


@given(st.sampled_from(sorted(cfg.TOLERANCE_TARGETS)), st.floats(1e-12, 1e3))
def test_round_trip_through_text(key, value):
    assert cfg.parse_config_text(f"{key} = {value!r}") == {key: value}


def test_run_config():
    rc = cfg.RunConfig("radon", {"k": 1}, {"quad_rtol": 1e-8})
    assert rc.effective_tolerances()["quad_rtol"] == 1e-8
    assert rc.effective_tolerances()["tail_rtol"] == radon.TAIL_RTOL
    with pytest.raises(cfg.ConfigError):
        cfg.RunConfig("radon", format="xml")
    with pytest.raises(cfg.ConfigError):
        cfg.RunConfig("radon", tolerances={"fd_step": -math.pi})


def test_load_config_missing(tmp_path):
    with pytest.raises(cfg.ConfigError):
        cfg.load_config(tmp_path / "absent.cfg")
