import dataclasses

import pytest
from hypothesis import given, strategies as st

from lobbysim.model import ConfigError, EnvironmentParams, GameConfig
from lobbysim.runspec import ConfigParseError, RunSpec, parse_config, render_config

REFERENCE_SETUP = """\
# reference setup
n = 100
K = 40
mu = 0
sigma = 12
steps = 500
"""


def test_reference_setup():
    spec = parse_config(REFERENCE_SETUP)
    c = spec.config
    assert (c.n, c.initial_capital, c.env.mu, c.env.sigma, c.steps) == (100, 40.0, 0.0, 12.0, 500)
    assert c.accept_threshold == 0.5
    assert spec.replications == 200
    assert spec.worker_count >= 1
    assert spec.mode == "single-game"


def test_negative_sigma_names_field():
    with pytest.raises(ConfigError) as err:
        parse_config("sigma = -1\n")
    assert err.value.field == "sigma"


def test_unknown_key_is_an_error():
    with pytest.raises(ConfigParseError) as err:
        parse_config("n = 10\naltrusts = 3\n")
    assert "altrusts" in str(err.value)
    assert err.value.lineno == 2


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("n = 10\nn = 11\n", 2),
        ("\n\nsteps\n", 3),
        ("steps = ten\n", 1),
        ("n = 1.5\n", 1),
        ("n0_values = 1,,2\n", 1),
        ("mode = batch\n", 1),
        ("K =\n", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(ConfigParseError) as err:
        parse_config(text)
    assert err.value.lineno == lineno
    assert f"line {lineno}" in str(err.value)


def test_comments_and_blank_lines():
    spec = parse_config("# x\n\n  n = 10   # inline\nn0 = 4\n")
    assert spec.config.n == 10 and spec.config.support_size == 4


def test_n0_defaults_to_n():
    assert parse_config("n = 30\n").config.support_size == 30


def test_sweep_axes_validated_in_sweep_mode():
    with pytest.raises(ConfigError) as err:
        parse_config("mode = sweep\nn = 50\n")
    assert "altruist_counts" in str(err.value)
    spec = parse_config("mode = sweep\nn = 50\naltruist_counts = 0,25,50\nn0_values = 10,50\n")
    assert spec.altruist_counts == (0, 25, 50) and spec.support_sizes == (10, 50)


def test_overrides_win():
    spec = parse_config("seed = 3\nreplications = 10\n", {"seed": 9, "replications": None})
    assert spec.master_seed == 9 and spec.replications == 10


def test_bad_workers_and_seed():
    with pytest.raises(ConfigError):
        parse_config("workers = 0\n")
    with pytest.raises(ConfigError):
        parse_config(f"seed = {2**64}\n")


def test_render_parse_roundtrip_default():
    spec = RunSpec(output_path="out/x.csv", worker_count=3)
    assert parse_config(render_config(spec)) == spec


@given(
    n=st.integers(1, 200),
    K=st.floats(0, 1e6, allow_nan=False),
    mu=st.floats(-1e3, 1e3, allow_nan=False),
    sigma=st.floats(1e-3, 1e3),
    steps=st.integers(1, 10_000),
    alpha=st.floats(0, 0.999),
    reps=st.integers(1, 1000),
    seed=st.integers(0, 2**64 - 1),
    workers=st.integers(1, 64),
    mode=st.sampled_from(["single-game", "sweep", "trace"]),
    data=st.data(),
)
def test_render_parse_roundtrip(n, K, mu, sigma, steps, alpha, reps, seed, workers, mode, data):
    a = data.draw(st.integers(0, n))
    k = data.draw(st.integers(1, n))
    axes_a = tuple(sorted(data.draw(st.sets(st.integers(0, n), min_size=1, max_size=5))))
    axes_s = tuple(sorted(data.draw(st.sets(st.integers(1, n), min_size=1, max_size=5))))
    cfg = GameConfig(n, K, EnvironmentParams(mu, sigma), steps, a, k, alpha)
    spec = RunSpec(mode, cfg, axes_a, axes_s, reps, seed, None, workers).validate()
    assert parse_config(render_config(spec)) == spec


def test_render_is_stable():
    spec = parse_config(REFERENCE_SETUP)
    assert render_config(parse_config(render_config(spec))) == render_config(spec)
    assert dataclasses.replace(spec) == spec
