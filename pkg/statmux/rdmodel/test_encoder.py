"""
Tests for the virtual encoder and the sigma drift process.
"""

import logging
import math

import numpy as np
import pytest

from ..errors import InvalidArgumentError, MissingDataError, ZeroRateError
from ..models.scenario import GopState, RdSample
from .drift import SigmaDrift, mean_one_lognormal, sigma_path, step_sigma_drift
from .encoder import EncoderKind, EncoderModel, encode_supergop
from .quadratic import RateModelParams

STATE = GopState(complexity=2.0, sigma=2500.0)


def test_ideal_encoder_example():
    fb = encode_supergop(EncoderModel(), STATE, 1000, np.random.default_rng(0))
    assert fb.achieved_rate == 1000
    assert fb.achieved_distortion == pytest.approx(10)


def test_noiseless_noisy_encoder_matches_ideal():
    ideal = EncoderModel(kind=EncoderKind.IDEAL)
    noisy = EncoderModel(kind=EncoderKind.NOISY, rate_cv=0.0, dist_cv=0.0)
    rng = np.random.default_rng(1)
    for allocated in (10.0, 999.0, 123456.0):
        assert encode_supergop(noisy, STATE, allocated, rng) == encode_supergop(
            ideal, STATE, allocated, rng
        )


def test_noisy_encoder_factors_have_unit_mean():
    model = EncoderModel(kind="noisy-hyperbolic", rate_cv=0.2, dist_cv=0.1)
    rng = np.random.default_rng(11)
    draws = [encode_supergop(model, STATE, 1000, rng) for _ in range(20000)]
    assert np.mean([fb.achieved_rate for fb in draws]) == pytest.approx(1000, rel=0.01)
    assert np.mean([fb.achieved_distortion for fb in draws]) == pytest.approx(10, rel=0.01)
    assert np.std([fb.achieved_rate for fb in draws]) / 1000 == pytest.approx(0.2, rel=0.05)


def test_quadratic_encoder_hits_target_rate():
    model = EncoderModel(kind=EncoderKind.QUADRATIC_Q, params=RateModelParams(a=1, b=1))
    state = GopState(complexity=100.0, sigma=3.0)
    fb = encode_supergop(model, state, 50.0, np.random.default_rng(0))
    assert fb.qstep == pytest.approx(15.177, abs=1e-3)
    assert fb.achieved_rate == pytest.approx(50.0, rel=1e-9)
    assert fb.achieved_distortion == pytest.approx(3.0 * 100 * 100 / 50.0, rel=1e-9)


REPLAY_STATE = GopState(
    complexity=2.0,
    sigma=2500.0,
    rd_samples=(RdSample(500, 40), RdSample(1000, 20), RdSample(2000, 10)),
)
REPLAY = EncoderModel(kind=EncoderKind.TRACE_REPLAY)


def test_replay_at_sample_rate():
    fb = encode_supergop(REPLAY, REPLAY_STATE, 1000, np.random.default_rng(0))
    assert fb.achieved_distortion == pytest.approx(20, rel=1e-12)
    assert not fb.clamped


def test_replay_interpolates_in_log_log_space():
    fb = encode_supergop(REPLAY, REPLAY_STATE, math.sqrt(500 * 1000), np.random.default_rng(0))
    assert fb.achieved_distortion == pytest.approx(math.sqrt(40 * 20), rel=1e-12)


def test_replay_clamps_outside_samples(caplog):
    with caplog.at_level(logging.WARNING):
        low = encode_supergop(REPLAY, REPLAY_STATE, 100, np.random.default_rng(0), stream=4)
        high = encode_supergop(REPLAY, REPLAY_STATE, 1e6, np.random.default_rng(0), stream=4)
    assert low.achieved_distortion == pytest.approx(40)
    assert high.achieved_distortion == pytest.approx(10)
    assert low.clamped and high.clamped
    assert "stream 4" in caplog.text


def test_single_sample_replay_is_constant(caplog):
    state = GopState(1.0, 1.0, rd_samples=(RdSample(1000, 5),))
    with caplog.at_level(logging.WARNING):
        fb = encode_supergop(REPLAY, state, 2500, np.random.default_rng(0))
    assert fb.achieved_distortion == pytest.approx(5)
    assert "clamping" in caplog.text


def test_replay_without_samples():
    with pytest.raises(MissingDataError):
        encode_supergop(REPLAY, STATE, 1000, np.random.default_rng(0))


def test_zero_allocation():
    with pytest.raises(ZeroRateError):
        encode_supergop(EncoderModel(), STATE, 0, np.random.default_rng(0), stream=1)


@pytest.mark.parametrize("kwargs", [{"rate_cv": 0.5}, {"dist_cv": -0.1}, {"kind": "h264"}])
def test_invalid_encoder_model(kwargs):
    with pytest.raises(ValueError):
        EncoderModel(**kwargs)


def test_mean_one_lognormal_consumes_one_draw():
    a, b = np.random.default_rng(5), np.random.default_rng(5)
    assert mean_one_lognormal(0.0, a) == 1.0
    mean_one_lognormal(0.3, b)
    assert a.standard_normal() == b.standard_normal()


def test_frozen_drift_keeps_sigma():
    drift = SigmaDrift(phi=1.0, innovation_sd=0.0)
    assert step_sigma_drift(drift, 1234.5, np.random.default_rng(0)) == pytest.approx(1234.5)


def test_memoryless_drift_jumps_to_mean():
    drift = SigmaDrift(phi=0.0, innovation_sd=0.0, log_mean=math.log(7.0))
    assert step_sigma_drift(drift, 1234.5, np.random.default_rng(0)) == pytest.approx(7.0)


def test_stationary_spread_of_log_sigma():
    drift = SigmaDrift(phi=0.9, innovation_sd=0.1, log_mean=0.0)
    rng = np.random.default_rng(2024)
    sigma = 1.0
    logs = []
    for step in range(50_100):
        sigma = step_sigma_drift(drift, sigma, rng)
        if step >= 100:
            logs.append(math.log(sigma))
    expected = 0.1 / math.sqrt(1 - 0.9**2)
    assert np.std(logs) == pytest.approx(expected, rel=0.1)


def test_sigma_path_anchors_at_first_sigma():
    path = sigma_path(SigmaDrift(phi=0.0, innovation_sd=0.0), 300.0, 13, np.random.default_rng(0))
    assert len(path) == 13
    assert path == pytest.approx([300.0] * 13)


def test_sigma_path_is_seeded():
    drift = SigmaDrift()
    a = sigma_path(drift, 300.0, 13, np.random.default_rng(9))
    b = sigma_path(drift, 300.0, 13, np.random.default_rng(9))
    assert a == b
    assert a[0] == 300.0
    assert all(s > 0 for s in a)


@pytest.mark.parametrize("kwargs", [{"phi": 1.5}, {"phi": -0.1}, {"innovation_sd": -1}])
def test_invalid_drift(kwargs):
    with pytest.raises(InvalidArgumentError):
        SigmaDrift(**kwargs)
