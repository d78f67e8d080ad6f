"""
Randomized property checks for allocation and the R-D models.
"""

import math

import numpy as np
import pytest

from ..models.feedback import FeedbackRecord
from ..rdmodel.hyperbolic import distortion_from_rate, lambda_from_rate
from ..rdmodel.quadratic import RateModelParams, qstep_from_rate, rate_from_qstep
from .allocators import (
    AllocationInput,
    StreamAllocationInput,
    allocate_lam,
    allocate_lfam,
    allocate_oracle,
    integer_shares,
)

CASES = 10_000


def _log_uniform(rng, low, high, size=None):
    return np.exp(rng.uniform(math.log(low), math.log(high), size))


def _random_case(rng):
    n = int(rng.integers(2, 9))
    channel_rate = float(_log_uniform(rng, 1e3, 1e8))
    floor_fraction = float(rng.uniform(0.0, 0.5))
    return n, channel_rate, floor_fraction


def _random_lfam_input(rng, n, channel_rate, kappa=None):
    streams = []
    for _ in range(n):
        c_prev, c_next = _log_uniform(rng, 0.1, 10.0, 2)
        if kappa is not None:
            c_prev, c_next = c_prev * kappa, c_next * kappa
        feedback = FeedbackRecord(
            achieved_rate=float(_log_uniform(rng, 1e2, 1e6)),
            achieved_distortion=float(_log_uniform(rng, 0.1, 1e3)),
        )
        streams.append(StreamAllocationInput(float(c_next), float(c_prev), feedback))
    return AllocationInput(streams=tuple(streams), channel_rate=channel_rate)


def test_shares_conserve_budget_and_respect_floor():
    rng = np.random.default_rng(20240601)
    for _ in range(CASES):
        n, channel_rate, ff = _random_case(rng)
        c = _log_uniform(rng, 1e-3, 1e3, n).tolist()
        sigma = _log_uniform(rng, 1.0, 1e5, n).tolist()
        floor = ff * channel_rate / n
        for decision in (
            allocate_lam(c, channel_rate, ff),
            allocate_oracle(sigma, c, channel_rate, ff),
            allocate_lfam(_random_lfam_input(rng, n, channel_rate), ff),
        ):
            assert math.fsum(decision.shares) == pytest.approx(channel_rate, rel=1e-9)
            assert all(share > 0 for share in decision.shares)
            assert min(decision.shares) >= floor * (1 - 1e-9)
            assert sum(integer_shares(decision.shares, channel_rate)) == round(channel_rate)


def test_lam_is_scale_invariant():
    rng = np.random.default_rng(7)
    for _ in range(CASES):
        n, channel_rate, ff = _random_case(rng)
        c = _log_uniform(rng, 1e-3, 1e3, n)
        scale = float(_log_uniform(rng, 1e-3, 1e3))
        base = allocate_lam(c.tolist(), channel_rate, ff).shares
        scaled = allocate_lam((c * scale).tolist(), channel_rate, ff).shares
        assert scaled == pytest.approx(base, rel=1e-9)


def test_lfam_bias_cancels_bitwise_for_power_of_two_only():
    """Scaling by 2**j is exact in floating point; other factors cancel only to rounding."""
    rng = np.random.default_rng(11)
    for _ in range(CASES):
        n, channel_rate, ff = _random_case(rng)
        kappa = 2.0 ** int(rng.integers(-4, 5))
        state = rng.bit_generator.state
        base = allocate_lfam(_random_lfam_input(rng, n, channel_rate), ff)
        rng.bit_generator.state = state
        biased = allocate_lfam(_random_lfam_input(rng, n, channel_rate, kappa), ff)
        assert biased.shares == base.shares


def test_lfam_arbitrary_bias_cancels_to_rounding():
    rng = np.random.default_rng(12)
    for _ in range(CASES):
        n, channel_rate, ff = _random_case(rng)
        kappa = float(_log_uniform(rng, 0.25, 4.0))
        state = rng.bit_generator.state
        base = allocate_lfam(_random_lfam_input(rng, n, channel_rate), ff)
        rng.bit_generator.state = state
        biased = allocate_lfam(_random_lfam_input(rng, n, channel_rate, kappa), ff)
        assert biased.shares == pytest.approx(base.shares, rel=1e-12)


def test_lambda_matches_central_difference():
    rng = np.random.default_rng(5)
    for _ in range(CASES):
        sigma = float(_log_uniform(rng, 1.0, 1e5))
        c = float(_log_uniform(rng, 0.1, 10.0))
        r = float(_log_uniform(rng, 1e2, 1e7))
        h = r * 1e-6
        slope = (distortion_from_rate(sigma, c, r - h) - distortion_from_rate(sigma, c, r + h)) / (2 * h)
        assert lambda_from_rate(sigma, c, r) == pytest.approx(slope, rel=1e-4)


def test_qstep_inversion_round_trip():
    rng = np.random.default_rng(3)
    for _ in range(CASES):
        params = RateModelParams(
            a=float(_log_uniform(rng, 0.1, 10.0)),
            b=float(rng.choice([0.0, _log_uniform(rng, 1e-3, 1e3)])),
        )
        c = float(_log_uniform(rng, 0.1, 1e3))
        q = float(_log_uniform(rng, 0.5, 256.0))
        rate = rate_from_qstep(params, c, q)
        assert qstep_from_rate(params, c, rate) == pytest.approx(q, rel=1e-9)
