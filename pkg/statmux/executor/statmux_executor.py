"""
Statmux executor: drives simulate, replay, fit and report from files to files.
"""

import csv
import logging
from collections import OrderedDict
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..alloc.registry import ALLOCATORS
from ..config.scenario_file import ScenarioFile, load_scenario_file
from ..complexity.measure import ComplexityKind
from ..config.settings import (
    FIT_FILE,
    FIT_PLOT_FILE,
    GOP_REPORT_FILE,
    RUN_INFO_FILE,
    SUMMARY_FILE,
    SWEEP_FILE,
    TABLE_FILE,
    VARIANCE_PLOT_FILE,
)
from ..data_generator.scenario_generator import generate_scenarios
from ..errors import ConfigError, FitError, InvalidArgumentError, TraceError, UndefinedSavingError
from ..metrics.table import AggregateTable, aggregate_table, format_table
from ..models.scenario import GopState, Scenario, StreamTrace, validate_scenario
from ..rdmodel.encoder import EncoderKind
from ..rdmodel.hyperbolic import HyperbolicFit, fit_hyperbolic, fit_hyperbolic_pooled
from ..records.csv_records import (
    read_run_info,
    read_summary,
    write_gop_report,
    write_run_info,
    write_summary,
)
from ..records.plot_data import (
    FitSeries,
    render_fit_plot,
    render_variance_plot,
    write_fit_plot_data,
    write_variance_by_gop,
)
from ..records.trace_csv import MEASURED_COLUMN, TraceGop, read_trace
from .multiplex_executor import RunConfig, RunResult, compare_runs
from .sweep_executor import SweepExecutor, SweepResult, pack_saving

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


@dataclass(frozen=True)
class StreamFit:
    stream: int
    fit: HyperbolicFit
    samples: int


class StatmuxExecutor:
    """Main executor for the command-line operations."""

    def __init__(self, jobs: int = 1, plot: bool = False):
        """Initialize the executor.

        Args:
            jobs: Worker threads for sweeps
            plot: Also render plot data to PNG
        """
        self.sweep_executor = SweepExecutor(jobs)
        self.plot = plot

    def simulate(
        self,
        config_path: PathLike,
        out_dir: PathLike,
        seed: Optional[int] = None,
        allocators: Optional[Sequence[str]] = None,
    ) -> Optional[AggregateTable]:
        """Run every scenario class x seed of a scenario file.

        Args:
            config_path: Scenario file
            out_dir: Output directory
            seed: Replaces the file's seeds
            allocators: Replaces the file's allocator list

        Returns:
            The baseline/candidate table, if both allocators ran
        """
        scenario_file = _override(load_scenario_file(config_path), seed, allocators)
        for spec in scenario_file.scenarios:
            if len(spec.streams) < 2:
                raise ConfigError(
                    f"scenario '{spec.name}' needs at least 2 streams, got {len(spec.streams)}",
                    field="scenarios",
                )
        if scenario_file.complexity.kind is ComplexityKind.TRACE_PROVIDED:
            for i, spec in enumerate(scenario_file.scenarios):
                for j, stream in enumerate(spec.streams):
                    if stream.measured_complexity is None:
                        raise ConfigError(
                            "trace-provided complexity needs measured values for every stream",
                            field=f"scenarios[{i}].streams[{j}].measured_complexity",
                        )
        per_seed = {s: generate_scenarios(scenario_file, s) for s in scenario_file.seeds}
        configs = [
            self._run_config(scenario_file, per_seed[s][index], s)
            for index in range(len(scenario_file.scenarios))
            for s in scenario_file.seeds
        ]
        sweep = self.sweep_executor.run(configs)
        return self._write_outputs(scenario_file, sweep, Path(out_dir))

    def replay(
        self,
        trace_path: PathLike,
        config_path: PathLike,
        out_dir: PathLike,
        seed: Optional[int] = None,
        allocators: Optional[Sequence[str]] = None,
    ) -> Optional[AggregateTable]:
        """Replay a recorded trace through the trace-replay encoder.

        The config supplies the channel, allocators, complexity measure and
        seeds; its single scenario class must have no streams or exactly as
        many streams as the trace.
        """
        scenario_file = _override(load_scenario_file(config_path), seed, allocators)
        if len(scenario_file.scenarios) != 1:
            raise ConfigError(
                f"replay needs exactly one scenario class, got {len(scenario_file.scenarios)}",
                field="scenarios",
            )
        spec = scenario_file.scenarios[0]
        trace = read_trace(Path(trace_path))
        if spec.streams and len(spec.streams) != trace.stream_count:
            raise TraceError(
                f"trace has {trace.stream_count} streams, scenario '{spec.name}' "
                f"declares {len(spec.streams)}"
            )
        if scenario_file.complexity.kind is ComplexityKind.TRACE_PROVIDED and any(
            gop.measured_complexity is None for gops in trace.streams for gop in gops
        ):
            raise TraceError(
                "trace-provided complexity needs a measured value for every super GOP",
                field=MEASURED_COLUMN,
            )

        # Distortion comes from the trace samples
        encoder = scenario_file.encoder
        if encoder.sigma_drift is not None:
            logger.warning("Ignoring sigma drift: replayed distortion comes from the trace")
        encoder = replace(encoder, kind=EncoderKind.TRACE_REPLAY, sigma_drift=None)
        scenario_file = replace(scenario_file, encoder=encoder)

        # Rebuild the ground truth from the trace
        streams = tuple(
            StreamTrace(
                stream=i,
                gops=tuple(_replay_state(i, k, gop) for k, gop in enumerate(gops, start=1)),
                name=spec.streams[i].name if spec.streams else "",
            )
            for i, gops in enumerate(trace.streams)
        )
        scenario = Scenario(
            streams=streams,
            channel_rate=spec.channel_rate,
            super_gop_frames=spec.super_gop_frames,
            frame_rate=spec.frame_rate,
            name=spec.name,
        )
        problems = validate_scenario(scenario)
        if problems:
            raise TraceError("; ".join(problems))

        configs = [
            self._run_config(scenario_file, replace(scenario, rng_seed=s), s)
            for s in scenario_file.seeds
        ]
        sweep = self.sweep_executor.run(configs)
        return self._write_outputs(scenario_file, sweep, Path(out_dir))

    def fit(self, trace_path: PathLike, out_dir: PathLike) -> List[StreamFit]:
        """Fit sigma per stream from the trace's rd samples.

        Writes fit.csv and the 1/MSE-versus-rate plot data.
        """
        trace = read_trace(Path(trace_path))
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)

        fits: List[StreamFit] = []
        series: List[FitSeries] = []
        for i, gops in enumerate(trace.streams):
            count = sum(len(gop.rd_samples) for gop in gops)
            if count < 3:
                raise FitError(f"stream {i}: need at least 3 rd samples, got {count}")
            fit = fit_hyperbolic_pooled([(gop.rd_samples, gop.complexity) for gop in gops])
            fits.append(StreamFit(stream=i, fit=fit, samples=count))

            points = [(s.rate, s.mse, gop.complexity) for gop in gops for s in gop.rd_samples]
            series.append(
                FitSeries(
                    stream=i,
                    sigma_fit=fit.sigma_fit,
                    r_squared=fit.r_squared,
                    rates=tuple(rate for rate, _, _ in points),
                    inverse_mse=tuple(1.0 / mse for _, mse, _ in points),
                    fitted_inverse_mse=tuple(
                        rate / (fit.sigma_fit * c * c) for rate, _, c in points
                    ),
                )
            )
            logger.info(
                f"stream {i}: sigma_fit {fit.sigma_fit:.6g}, r^2 {fit.r_squared:.6f} ({count} samples)"
            )

        # Fit table and plot data
        with open(out / FIT_FILE, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(["stream", "sigma_fit", "r_squared", "samples"])
            for item in fits:
                writer.writerow(
                    [item.stream, repr(item.fit.sigma_fit), repr(item.fit.r_squared), item.samples]
                )
        write_fit_plot_data(out / FIT_PLOT_FILE, series)
        if self.plot:
            render_fit_plot(out / Path(FIT_PLOT_FILE).with_suffix(".png").name, series)
        return fits

    def report(self, run_dirs: Sequence[PathLike], out_path: PathLike) -> AggregateTable:
        """Aggregate run directories into one table.

        Each run directory contributes one (measure, class) cell, labelled from
        its run.yaml; repeated seeds of a cell are averaged.
        """
        directories = _expand_run_dirs([Path(d) for d in run_dirs])
        cells: "OrderedDict[str, OrderedDict[str, List[Tuple[float, float]]]]" = OrderedDict()
        labels = set()
        for directory in directories:
            info = read_run_info(directory / RUN_INFO_FILE)
            baseline = info.get("baseline", "lam")
            candidate = info.get("candidate", "lfam")
            labels.add((baseline, candidate))
            rows = read_summary(directory / SUMMARY_FILE)
            for name in (baseline, candidate):
                if name not in rows:
                    raise ConfigError(
                        f"allocator '{name}' missing from {SUMMARY_FILE}", field=str(directory)
                    )
            measure = str(info.get("complexity_label", "default"))
            cls = str(info.get("scenario", directory.name))
            cells.setdefault(measure, OrderedDict()).setdefault(cls, []).append(
                (rows[baseline].avg_variance, rows[candidate].avg_variance)
            )

        if len(labels) > 1:
            raise ConfigError(f"runs compare different allocators: {sorted(labels)}")
        # Average repeated seeds of a cell
        grid = {
            measure: {
                cls: (
                    float(np.mean([b for b, _ in pairs])),
                    float(np.mean([c for _, c in pairs])),
                )
                for cls, pairs in by_class.items()
            }
            for measure, by_class in cells.items()
        }
        try:
            table = aggregate_table(grid)
        except UndefinedSavingError:
            raise
        except InvalidArgumentError as e:
            raise ConfigError(f"inconsistent run grid: {e}") from None

        baseline, candidate = labels.pop()
        out = Path(out_path)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(format_table(table, baseline.upper(), candidate.upper()), encoding="utf-8")
        logger.info(f"Wrote {out} ({len(directories)} runs)")
        return table

    def _run_config(self, scenario_file: ScenarioFile, scenario: Scenario, seed: int) -> RunConfig:
        return RunConfig(
            scenario=scenario,
            encoder=scenario_file.encoder,
            complexity_measure=scenario_file.complexity_for(scenario.name),
            allocators=scenario_file.allocators,
            floor_fraction=scenario_file.floor_fraction,
            seed=seed,
        )

    def _write_outputs(
        self, scenario_file: ScenarioFile, sweep: SweepResult, out_dir: Path
    ) -> Optional[AggregateTable]:
        results = sweep.results
        single = len(results) == 1
        out_dir.mkdir(parents=True, exist_ok=True)
        for result in results:
            run_dir = out_dir if single else out_dir / result.scenario_name / f"seed_{result.seed}"
            self._write_run(scenario_file, result, run_dir)

        # Cross-run outputs need the baseline and the candidate
        baseline, candidate = scenario_file.baseline, scenario_file.candidate
        if baseline not in scenario_file.allocators or candidate not in scenario_file.allocators:
            logger.warning(
                f"Skipping {TABLE_FILE}: needs both '{baseline}' and '{candidate}' in the allocator list"
            )
            return None

        if not single:
            self._write_sweep(results, baseline, candidate, out_dir / SWEEP_FILE)
            for seed, runs in sweep.by_seed().items():
                if len(runs) > 1:
                    logger.info(
                        f"seed {seed}: pack saving {pack_saving(runs, baseline, candidate):.2f}% "
                        f"over {len(runs)} classes"
                    )

        # One measure row, one cell per scenario class
        grid: Dict[str, Dict[str, Tuple[float, float]]] = {scenario_file.complexity_label: {}}
        for name in dict.fromkeys(r.scenario_name for r in results):
            runs = [r for r in results if r.scenario_name == name]
            grid[scenario_file.complexity_label][name] = (
                float(np.mean([r.summaries[baseline].average_variance for r in runs])),
                float(np.mean([r.summaries[candidate].average_variance for r in runs])),
            )
        try:
            table = aggregate_table(grid)
        except UndefinedSavingError as e:
            logger.warning(f"Skipping {TABLE_FILE}: {e}")
            return None
        (out_dir / TABLE_FILE).write_text(
            format_table(table, baseline.upper(), candidate.upper()), encoding="utf-8"
        )
        return table

    def _write_run(self, scenario_file: ScenarioFile, result: RunResult, run_dir: Path) -> None:
        run_dir.mkdir(parents=True, exist_ok=True)
        summaries = [result.summaries[name] for name in scenario_file.allocators]
        write_gop_report(run_dir / GOP_REPORT_FILE, summaries)
        write_summary(run_dir / SUMMARY_FILE, summaries)
        write_variance_by_gop(run_dir / VARIANCE_PLOT_FILE, summaries)
        write_run_info(
            run_dir / RUN_INFO_FILE,
            {
                "name": scenario_file.name,
                "scenario": result.scenario_name,
                "complexity_label": scenario_file.complexity_label,
                "seed": result.seed,
                "allocators": list(scenario_file.allocators),
                "baseline": scenario_file.baseline,
                "candidate": scenario_file.candidate,
                "encoder": scenario_file.encoder.kind.value,
                "gop_count": result.gop_count,
                "stream_count": len(result.true_sigma),
            },
        )
        if self.plot:
            render_variance_plot(
                run_dir / Path(VARIANCE_PLOT_FILE).with_suffix(".png").name,
                summaries,
                title=f"{result.scenario_name} (seed {result.seed})",
            )

    def _write_sweep(
        self, results: List[RunResult], baseline: str, candidate: str, path: Path
    ) -> None:
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(
                ["scenario", "seed", f"{baseline}_variance", f"{candidate}_variance", "saving"]
            )
            for result in results:
                comparison = compare_runs(result, baseline, candidate)
                writer.writerow(
                    [
                        result.scenario_name,
                        result.seed,
                        repr(result.summaries[baseline].average_variance),
                        repr(result.summaries[candidate].average_variance),
                        repr(comparison.average_saving),
                    ]
                )


def _override(
    scenario_file: ScenarioFile, seed: Optional[int], allocators: Optional[Sequence[str]]
) -> ScenarioFile:
    if seed is not None:
        if seed < 0:
            raise ConfigError(f"seed must be non-negative, got {seed}", field="seeds")
        scenario_file = replace(scenario_file, seeds=(seed,))
    if allocators:
        for name in allocators:
            if name not in ALLOCATORS:
                raise ConfigError(
                    f"unknown allocator '{name}' (known: {', '.join(ALLOCATORS)})", field="allocators"
                )
        scenario_file = replace(scenario_file, allocators=tuple(dict.fromkeys(allocators)))
    return scenario_file


def _replay_state(stream: int, k: int, gop: TraceGop) -> GopState:
    """Ground truth for one replayed super GOP, with sigma fitted from its samples."""
    if not gop.rd_samples:
        raise TraceError(f"stream {stream}, gop {k}: replay needs rate,mse samples")
    sigma = None
    if len(gop.rd_samples) >= 3:
        try:
            sigma = fit_hyperbolic(gop.rd_samples, gop.complexity).sigma_fit
        except FitError as e:
            logger.warning(f"stream {stream}, gop {k}: {e}; estimating sigma from sample means")
    else:
        logger.warning(
            f"stream {stream}, gop {k}: {len(gop.rd_samples)} rd sample(s), "
            f"estimating sigma from sample means"
        )
    if sigma is None:
        c2 = gop.complexity * gop.complexity
        sigma = float(np.mean([s.rate * s.mse / c2 for s in gop.rd_samples]))
    return GopState(
        complexity=gop.complexity,
        sigma=sigma,
        rd_samples=gop.rd_samples,
        measured_complexity=gop.measured_complexity,
    )


def _expand_run_dirs(paths: List[Path]) -> List[Path]:
    """Run directories, descending into sweep outputs."""
    directories: List[Path] = []
    for path in paths:
        if (path / SUMMARY_FILE).exists():
            directories.append(path)
            continue
        nested = sorted(p.parent for p in path.rglob(SUMMARY_FILE)) if path.is_dir() else []
        if not nested:
            raise ConfigError(f"no {SUMMARY_FILE} found", field=str(path))
        directories.extend(nested)
    return directories
