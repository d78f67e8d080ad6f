"""
Tests for synthetic scenarios and rate-distortion samples.
"""

import numpy as np
import pytest

from ..config.scenario_file import parse_scenario_document
from ..errors import InvalidArgumentError
from ..metrics.quality import mse_from_psnr, psnr_from_mse
from ..rdmodel.hyperbolic import distortion_from_rate, fit_hyperbolic
from ..rdmodel.quadratic import RateModelParams
from .scenario_generator import (
    ScenarioGenerator,
    derive_sigma_from_psnr,
    generate_scenarios,
    qstep_rates,
    synthesize_rd_samples,
    synthesize_trace,
)

QSTEPS = [2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0]


def _file(streams, **extra):
    scenario = {"name": "x", "channel_rate_bits": 40000, "gop_count": 6, "streams": streams}
    return parse_scenario_document({"schema_version": 1, "scenarios": [scenario], **extra})


def test_derive_sigma_from_psnr():
    sigma = derive_sigma_from_psnr(35.0, 1.5, 10000.0)
    assert psnr_from_mse(distortion_from_rate(sigma, 1.5, 10000.0)) == pytest.approx(35.0)
    assert sigma == pytest.approx(mse_from_psnr(35.0) * 10000.0 / 2.25)
    with pytest.raises(InvalidArgumentError):
        derive_sigma_from_psnr(35.0, 0.0, 10000.0)


def test_generated_streams_hit_equal_share_psnr():
    sf = _file([{"complexity": 1.2, "equal_share_psnr_db": 40.0},
                {"complexity": 1.8, "equal_share_psnr_db": 30.0}])
    generator = ScenarioGenerator(sf.scenarios[0])
    assert generator.equal_share == 20000.0
    scenario = generator.generate(seed=5)
    assert scenario.name == "x"
    assert scenario.rng_seed == 5
    assert scenario.gop_count == 6
    for trace, psnr in zip(scenario.streams, (40.0, 30.0)):
        first = trace.gops[0]
        mse = distortion_from_rate(first.sigma, first.complexity, 20000.0)
        assert psnr_from_mse(mse) == pytest.approx(psnr)
        assert len({gop.sigma for gop in trace.gops}) == 1


def test_complexity_paths_are_seeded():
    sf = _file([{"complexity": 1.2, "sigma": 100.0}, {"complexity": 1.8, "sigma": 200.0}])
    a = generate_scenarios(sf, 1)[0]
    assert a == generate_scenarios(sf, 1)[0]
    assert a != generate_scenarios(sf, 2)[0]
    assert [trace.gops[0].complexity for trace in a.streams] == [1.2, 1.8]
    assert a.streams[0].gops != a.streams[1].gops


def test_classes_of_one_file_get_independent_content():
    stream = [{"complexity": 1.0, "sigma": 100.0}, {"complexity": 1.0, "sigma": 100.0}]
    sf = parse_scenario_document(
        {
            "schema_version": 1,
            "gop_count": 5,
            "scenarios": [
                {"name": "p", "channel_rate_bits": 1000, "streams": stream},
                {"name": "q", "channel_rate_bits": 1000, "streams": stream},
            ],
        }
    )
    p, q = generate_scenarios(sf, 0)
    assert [g.complexity for g in p.streams[0].gops] != [g.complexity for g in q.streams[0].gops]


def test_explicit_series_are_used_verbatim():
    sf = _file(
        [
            {"complexity": [1, 2, 3, 4, 5, 6], "sigma": [10, 20, 30, 40, 50, 60],
             "measured_complexity": [2, 2, 2, 2, 2, 2], "name": "first"},
            {"complexity": 1.0, "sigma": 5.0},
        ]
    )
    scenario = generate_scenarios(sf, 0)[0]
    first = scenario.streams[0]
    assert first.name == "first"
    assert [g.complexity for g in first.gops] == [1, 2, 3, 4, 5, 6]
    assert [g.sigma for g in first.gops] == [10, 20, 30, 40, 50, 60]
    assert all(g.measured_complexity == 2 for g in first.gops)
    assert all(g.measured_complexity is None for g in scenario.streams[1].gops)


def test_generator_needs_two_streams():
    sf = _file([{"complexity": 1.0, "sigma": 5.0}])
    with pytest.raises(InvalidArgumentError):
        ScenarioGenerator(sf.scenarios[0])


def test_linear_rate_model_gives_linear_inverse_mse():
    rates = qstep_rates(RateModelParams(a=1.0, b=0.0), 2.0, QSTEPS)
    samples = synthesize_rd_samples(900.0, 2.0, [r * 1000.0 for r in rates])
    fit = fit_hyperbolic(samples, 2.0)
    assert fit.r_squared >= 0.99
    assert fit.sigma_fit == pytest.approx(900.0)


def test_quadratic_rate_model_with_noise_stays_nearly_linear():
    rates = qstep_rates(RateModelParams(a=1.0, b=0.5), 2.0, QSTEPS)
    rng = np.random.default_rng(6)
    samples = synthesize_rd_samples(900.0, 2.0, [r * 1000.0 for r in rates], rng, noise_cv=0.01)
    assert fit_hyperbolic(samples, 2.0).r_squared >= 0.95


def test_noisy_samples_need_a_generator():
    with pytest.raises(InvalidArgumentError):
        synthesize_rd_samples(900.0, 2.0, [1000.0, 2000.0], noise_cv=0.1)


def test_synthesize_trace_covers_allocation_range():
    sf = _file([{"complexity": 1.2, "sigma": 100.0}, {"complexity": 1.8, "sigma": 200.0}])
    scenario = synthesize_trace(generate_scenarios(sf, 0)[0], points=5)
    for trace in scenario.streams:
        for gop in trace.gops:
            rates = [s.rate for s in gop.rd_samples]
            assert len(rates) == 5
            assert rates[0] == pytest.approx(20000.0 / 32)
            assert rates[-1] == pytest.approx(40000.0)
            for sample in gop.rd_samples:
                assert sample.mse == pytest.approx(gop.sigma * gop.complexity**2 / sample.rate)
    with pytest.raises(InvalidArgumentError):
        synthesize_trace(scenario, points=1)
