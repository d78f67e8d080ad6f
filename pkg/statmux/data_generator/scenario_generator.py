"""
Synthetic ground truth: expands scenario specs into per-GOP complexity and
sigma paths, and synthesizes rate-distortion samples for trace files.
"""

import logging
from dataclasses import replace
from typing import List, Optional, Sequence

import numpy as np

from ..complexity.measure import complexity_path
from ..config.scenario_file import ScenarioFile, ScenarioSpec, StreamSpec
from ..errors import InvalidArgumentError
from ..metrics.quality import mse_from_psnr
from ..models.scenario import GopState, RdSample, Scenario, StreamTrace
from ..rdmodel.drift import mean_one_lognormal
from ..rdmodel.hyperbolic import distortion_from_rate
from ..rdmodel.quadratic import RateModelParams, rate_from_qstep

logger = logging.getLogger(__name__)


def derive_sigma_from_psnr(psnr_db: float, complexity: float, share_bits: float) -> float:
    """Sigma that yields `psnr_db` when the stream receives `share_bits`."""
    if not complexity > 0 or not share_bits > 0:
        raise InvalidArgumentError(
            f"complexity and share must be positive, got {complexity}, {share_bits}"
        )
    return mse_from_psnr(psnr_db) * share_bits / (complexity * complexity)


class ScenarioGenerator:
    """Materializes one scenario class for a given seed."""

    def __init__(self, spec: ScenarioSpec, index: int = 0):
        """Initialize the generator.

        Args:
            spec: Parsed scenario class
            index: Position of the class in its file; mixed into the seed so
                classes of one pack get independent content
        """
        if len(spec.streams) < 2:
            raise InvalidArgumentError(
                f"scenario '{spec.name}' needs at least 2 streams, got {len(spec.streams)}"
            )
        self.spec = spec
        self.index = index

    @property
    def equal_share(self) -> float:
        return self.spec.channel_rate / len(self.spec.streams)

    def generate(self, seed: int) -> Scenario:
        seeds = np.random.SeedSequence([seed, self.index]).spawn(len(self.spec.streams))
        traces = tuple(
            self._generate_stream(i, stream, np.random.default_rng(child))
            for i, (stream, child) in enumerate(zip(self.spec.streams, seeds))
        )
        logger.debug(
            f"Generated scenario '{self.spec.name}' (seed {seed}): "
            f"{len(traces)} streams x {self.spec.gop_count} super GOPs"
        )
        return Scenario(
            streams=traces,
            channel_rate=self.spec.channel_rate,
            super_gop_frames=self.spec.super_gop_frames,
            frame_rate=self.spec.frame_rate,
            rng_seed=seed,
            name=self.spec.name,
        )

    def _generate_stream(self, i: int, stream: StreamSpec, rng: np.random.Generator) -> StreamTrace:
        k = self.spec.gop_count
        if isinstance(stream.complexity, tuple):
            complexity = list(stream.complexity)
        else:
            complexity = complexity_path(
                stream.complexity,
                k,
                rng,
                phi=self.spec.complexity_drift_phi,
                innovation_sd=self.spec.complexity_drift_sd,
            )

        if isinstance(stream.sigma, tuple):
            sigma = list(stream.sigma)
        elif stream.sigma is not None:
            sigma = [stream.sigma] * k
        else:
            sigma = [
                derive_sigma_from_psnr(stream.equal_share_psnr_db, complexity[0], self.equal_share)
            ] * k

        measured = stream.measured_complexity or (None,) * k
        gops = tuple(
            GopState(complexity=c, sigma=s, measured_complexity=m)
            for c, s, m in zip(complexity, sigma, measured)
        )
        return StreamTrace(stream=i, gops=gops, name=stream.name)


def generate_scenarios(scenario_file: ScenarioFile, seed: int) -> List[Scenario]:
    """One Scenario per class of the file, all for the same seed."""
    return [
        ScenarioGenerator(spec, index).generate(seed)
        for index, spec in enumerate(scenario_file.scenarios)
    ]


def synthesize_rd_samples(
    sigma: float,
    c: float,
    rates: Sequence[float],
    rng: Optional[np.random.Generator] = None,
    noise_cv: float = 0.0,
) -> tuple:
    """Sample the hyperbolic law at `rates`, with optional multiplicative noise."""
    if noise_cv and rng is None:
        raise InvalidArgumentError("noisy samples need a generator")
    samples = []
    for rate in rates:
        mse = distortion_from_rate(sigma, c, rate)
        if noise_cv:
            mse *= mean_one_lognormal(noise_cv, rng)
        samples.append(RdSample(rate=float(rate), mse=mse))
    return tuple(samples)


def qstep_rates(params: RateModelParams, c: float, qsteps: Sequence[float]) -> List[float]:
    """Rates the quadratic rate model produces over a ladder of Q steps."""
    return [rate_from_qstep(params, c, q) for q in qsteps]


def synthesize_trace(
    scenario: Scenario,
    points: int = 7,
    rng: Optional[np.random.Generator] = None,
    noise_cv: float = 0.0,
) -> Scenario:
    """Attach rd samples to every super GOP of a scenario.

    Samples span from 1/32 of the equal share up to the whole channel, so any
    allocation under a floor of at least 1/32 of the equal share stays inside
    the sampled range.
    """
    if points < 2:
        raise InvalidArgumentError(f"need at least 2 sample points, got {points}")
    share = scenario.channel_rate / scenario.stream_count
    rates = np.geomspace(share / 32.0, scenario.channel_rate, points)
    streams = tuple(
        replace(
            trace,
            gops=tuple(
                replace(gop, rd_samples=synthesize_rd_samples(gop.sigma, gop.complexity, rates, rng, noise_cv))
                for gop in trace.gops
            ),
        )
        for trace in scenario.streams
    )
    return replace(scenario, streams=streams)
