"""
Tests for seed and class sweeps.
"""

import time

import numpy as np
import pytest

from ..config.scenario_file import parse_scenario_document
from ..data_generator.scenario_generator import generate_scenarios
from ..errors import InvalidArgumentError
from .multiplex_executor import RunConfig, compare_runs
from .sweep_executor import SweepExecutor, pack_saving, run_sweep

SEEDS = 100


def _pack_file(seeds):
    return parse_scenario_document(
        {
            "schema_version": 1,
            "pack": "six-class",
            "encoder": {"kind": "ideal-hyperbolic", "sigma_drift": {"phi": 0.9, "innovation_sd": 0.1}},
            "complexity": {"kind": "noisy-oracle", "noise_cv": 0.2},
            "seeds": list(seeds),
        }
    )


def _configs(scenario_file):
    return [
        RunConfig(
            scenario=scenario,
            encoder=scenario_file.encoder,
            complexity_measure=scenario_file.complexity_for(scenario.name),
            allocators=scenario_file.allocators,
            floor_fraction=scenario_file.floor_fraction,
            seed=seed,
        )
        for seed in scenario_file.seeds
        for scenario in generate_scenarios(scenario_file, seed)
    ]


def test_lfam_beats_lam_over_the_six_class_pack():
    start = time.perf_counter()
    sweep = SweepExecutor(jobs=4).run(_configs(_pack_file(range(SEEDS))))
    assert time.perf_counter() - start < 30.0

    savings = [pack_saving(runs, "lam", "lfam") for runs in sweep.by_seed().values()]
    assert len(savings) == SEEDS
    assert np.mean(savings) >= 50.0
    assert sum(s > 0 for s in savings) >= 0.9 * SEEDS


def test_worker_count_does_not_change_results():
    configs = _configs(_pack_file(range(3)))
    assert run_sweep(configs, jobs=1) == run_sweep(configs, jobs=3)


def test_results_follow_submission_order():
    configs = _configs(_pack_file([7, 3]))
    results = run_sweep(configs, jobs=2)
    assert [(r.seed, r.scenario_name) for r in results] == [
        (c.seed, c.scenario.name) for c in configs
    ]
    assert [r.scenario_name for r in results[:6]] == ["A", "B", "C", "D", "E", "F"]


def test_by_seed_groups_classes():
    sweep = SweepExecutor().run(_configs(_pack_file([4, 9])))
    grouped = sweep.by_seed()
    assert list(grouped) == [4, 9]
    assert all(len(runs) == 6 for runs in grouped.values())


def test_pack_saving_is_mean_of_class_savings():
    results = run_sweep(_configs(_pack_file([11])))
    expected = np.mean([compare_runs(r, "lam", "lfam").average_saving for r in results])
    assert pack_saving(results, "lam", "lfam") == pytest.approx(expected)
    with pytest.raises(InvalidArgumentError):
        pack_saving([], "lam", "lfam")


def test_invalid_job_count():
    with pytest.raises(InvalidArgumentError):
        SweepExecutor(jobs=0)
