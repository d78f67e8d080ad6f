"""
Scenario file loading and schema validation.

A scenario file is YAML. Every mapping remembers the line of each key so that
schema errors point at the offending line; unknown keys are rejected.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import yaml

from ..alloc.registry import ALLOCATORS
from ..complexity.measure import ComplexityKind, ComplexityMeasure
from ..errors import ConfigError, InvalidArgumentError
from ..models.scenario import bps_to_bits_per_supergop
from ..rdmodel.drift import SigmaDrift
from ..rdmodel.encoder import EncoderKind, EncoderModel
from ..rdmodel.quadratic import RateModelParams
from .settings import (
    COMPLEXITY_DRIFT_PHI,
    COMPLEXITY_DRIFT_SD,
    FLOOR_FRACTION,
    FRAME_RATE,
    GOP_COUNT,
    SCHEMA_VERSION,
    SIGMA_DRIFT_PHI,
    SIGMA_DRIFT_SD,
    SIX_CLASS_PACK,
    SUPER_GOP_FRAMES,
)

logger = logging.getLogger(__name__)

PACKS = {"six-class": SIX_CLASS_PACK}

Series = Union[float, Tuple[float, ...]]


class _LineDict(dict):
    """dict that remembers where it and each of its keys appeared."""

    line: Optional[int] = None

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.key_lines: Dict[Any, int] = {}


class _LineLoader(yaml.SafeLoader):
    pass


def _construct_mapping(loader: _LineLoader, node: yaml.MappingNode):
    data = _LineDict()
    data.line = node.start_mark.line + 1
    yield data
    data.update(loader.construct_mapping(node))
    for key_node, _ in node.value:
        if isinstance(key_node, yaml.ScalarNode):
            data.key_lines[key_node.value] = key_node.start_mark.line + 1


_LineLoader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _construct_mapping)


@dataclass(frozen=True)
class StreamSpec:
    """One stream of a scenario class; scalars are expanded to synthetic paths."""

    complexity: Series
    sigma: Optional[Series] = None
    equal_share_psnr_db: Optional[float] = None
    measured_complexity: Optional[Tuple[float, ...]] = None
    name: str = ""


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    channel_rate: float
    super_gop_frames: int
    frame_rate: float
    gop_count: int
    streams: Tuple[StreamSpec, ...]
    complexity_drift_phi: float = COMPLEXITY_DRIFT_PHI
    complexity_drift_sd: float = COMPLEXITY_DRIFT_SD


@dataclass(frozen=True)
class ScenarioFile:
    """Validated contents of a scenario file."""

    name: str
    complexity_label: str
    scenarios: Tuple[ScenarioSpec, ...]
    encoder: EncoderModel
    complexity: ComplexityMeasure
    allocators: Tuple[str, ...]
    baseline: str
    candidate: str
    floor_fraction: float
    seeds: Tuple[int, ...]
    complexity_by_scenario: Dict[str, ComplexityMeasure] = field(default_factory=dict)

    def complexity_for(self, scenario: str) -> ComplexityMeasure:
        """Measure for one scenario; biases may differ between scenarios."""
        return self.complexity_by_scenario.get(scenario, self.complexity)


_REQUIRED = object()


class _Section:
    """Typed, line-aware access to one mapping of the document."""

    def __init__(self, data: Any, path: str, line: Optional[int] = None):
        if not isinstance(data, dict):
            raise ConfigError("expected a mapping", field=path or None, line=line)
        self.data = data
        self.path = path
        self.line = getattr(data, "line", line)
        self.used = set()

    def field(self, key: str) -> str:
        return f"{self.path}.{key}" if self.path else key

    def line_of(self, key: str) -> Optional[int]:
        return getattr(self.data, "key_lines", {}).get(key, self.line)

    def error(self, key: str, message: str) -> ConfigError:
        return ConfigError(message, field=self.field(key), line=self.line_of(key))

    def has(self, key: str) -> bool:
        return key in self.data and self.data[key] is not None

    def raw(self, key: str, default: Any = _REQUIRED) -> Any:
        self.used.add(key)
        if key not in self.data or self.data[key] is None:
            if default is _REQUIRED:
                raise ConfigError("required field is missing", field=self.field(key), line=self.line)
            return default
        return self.data[key]

    def number(self, key: str, default: Any = _REQUIRED, positive: bool = False,
               non_negative: bool = False) -> float:
        value = self.raw(key, default)
        if value is default and default is not _REQUIRED:
            return value
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            raise self.error(key, f"expected a finite number, got {value!r}")
        if positive and value <= 0:
            raise self.error(key, f"must be positive, got {value}")
        if non_negative and value < 0:
            raise self.error(key, f"must be non-negative, got {value}")
        return float(value)

    def integer(self, key: str, default: Any = _REQUIRED, minimum: int = 1) -> int:
        value = self.raw(key, default)
        if isinstance(value, bool) or not isinstance(value, int):
            raise self.error(key, f"expected an integer, got {value!r}")
        if value < minimum:
            raise self.error(key, f"must be at least {minimum}, got {value}")
        return value

    def text(self, key: str, default: Any = _REQUIRED) -> str:
        value = self.raw(key, default)
        if not isinstance(value, str):
            raise self.error(key, f"expected a string, got {value!r}")
        return value

    def number_list(self, key: str, default: Any = _REQUIRED, length: Optional[int] = None,
                    positive: bool = True) -> Optional[Tuple[float, ...]]:
        value = self.raw(key, default)
        if value is default and default is not _REQUIRED:
            return value
        if not isinstance(value, list):
            raise self.error(key, f"expected a list, got {value!r}")
        result = []
        for item in value:
            if isinstance(item, bool) or not isinstance(item, (int, float)) or not math.isfinite(item):
                raise self.error(key, f"expected finite numbers, got {item!r}")
            if positive and item <= 0:
                raise self.error(key, f"values must be positive, got {item}")
            result.append(float(item))
        if length is not None and len(result) != length:
            raise self.error(key, f"expected {length} values, got {len(result)}")
        return tuple(result)

    def series(self, key: str, length: int) -> Series:
        value = self.raw(key)
        if isinstance(value, list):
            return self.number_list(key, length=length)
        return self.number(key, positive=True)

    def section(self, key: str) -> "_Section":
        return _Section(self.raw(key), self.field(key), self.line_of(key))

    def close(self) -> None:
        for key in self.data:
            if key not in self.used:
                raise ConfigError("unknown key", field=self.field(str(key)), line=self.line_of(key))


def _parse_stream(section: _Section, gop_count: int) -> StreamSpec:
    complexity = section.series("complexity", gop_count)
    sigma = None
    psnr = None
    if section.has("sigma") and section.has("equal_share_psnr_db"):
        raise section.error("sigma", "give either sigma or equal_share_psnr_db, not both")
    if section.has("sigma"):
        sigma = section.series("sigma", gop_count)
    elif section.has("equal_share_psnr_db"):
        psnr = section.number("equal_share_psnr_db")
    else:
        raise ConfigError("one of sigma / equal_share_psnr_db is required",
                          field=section.path, line=section.line)
    spec = StreamSpec(
        complexity=complexity,
        sigma=sigma,
        equal_share_psnr_db=psnr,
        measured_complexity=section.number_list("measured_complexity", None, length=gop_count),
        name=section.text("name", ""),
    )
    section.raw("sigma", None)
    section.raw("equal_share_psnr_db", None)
    section.close()
    return spec


def _parse_scenario(section: _Section, default_gop_count: int) -> ScenarioSpec:
    name = section.text("name")
    if section.has("channel_rate_bps") == section.has("channel_rate_bits"):
        raise ConfigError("exactly one of channel_rate_bps / channel_rate_bits is required",
                          field=section.path, line=section.line)
    frames = section.integer("super_gop_frames", SUPER_GOP_FRAMES)
    frame_rate = section.number("frame_rate", FRAME_RATE, positive=True)
    if section.has("channel_rate_bps"):
        bps = section.number("channel_rate_bps", positive=True)
        channel_rate = bps_to_bits_per_supergop(bps, frames, frame_rate)
    else:
        channel_rate = section.number("channel_rate_bits", positive=True)
    section.raw("channel_rate_bps", None)
    section.raw("channel_rate_bits", None)
    gop_count = section.integer("gop_count", default_gop_count, minimum=2)

    phi, sd = COMPLEXITY_DRIFT_PHI, COMPLEXITY_DRIFT_SD
    if section.has("complexity_drift"):
        drift = section.section("complexity_drift")
        phi = drift.number("phi", COMPLEXITY_DRIFT_PHI, non_negative=True)
        sd = drift.number("innovation_sd", COMPLEXITY_DRIFT_SD, non_negative=True)
        if phi > 1:
            raise drift.error("phi", f"must lie in [0, 1], got {phi}")
        drift.close()
    section.raw("complexity_drift", None)

    streams = []
    raw_streams = section.raw("streams", [])
    if not isinstance(raw_streams, list):
        raise section.error("streams", "expected a list of streams")
    for index, item in enumerate(raw_streams):
        streams.append(
            _parse_stream(_Section(item, f"{section.field('streams')}[{index}]",
                                   section.line_of("streams")), gop_count)
        )
    section.close()
    return ScenarioSpec(
        name=name,
        channel_rate=channel_rate,
        super_gop_frames=frames,
        frame_rate=frame_rate,
        gop_count=gop_count,
        streams=tuple(streams),
        complexity_drift_phi=phi,
        complexity_drift_sd=sd,
    )


def _parse_scenarios(items: Any, path: str, line: Optional[int], gop_count: int) -> List[ScenarioSpec]:
    if not isinstance(items, list) or not items:
        raise ConfigError("expected a non-empty list of scenarios", field=path, line=line)
    specs = [_parse_scenario(_Section(item, f"{path}[{i}]", line), gop_count)
             for i, item in enumerate(items)]
    names = [spec.name for spec in specs]
    if len(set(names)) != len(names):
        raise ConfigError(f"scenario names must be unique, got {names}", field=path, line=line)
    return specs


def _parse_encoder(section: _Section) -> EncoderModel:
    kind = section.text("kind", EncoderKind.IDEAL.value)
    if kind not in {k.value for k in EncoderKind}:
        raise section.error("kind", f"unknown encoder kind '{kind}' "
                                    f"(known: {', '.join(k.value for k in EncoderKind)})")
    drift = None
    if section.has("sigma_drift"):
        drift_section = section.section("sigma_drift")
        log_mean = drift_section.raw("log_mean", None)
        if log_mean is not None:
            log_mean = drift_section.number("log_mean")
        try:
            drift = SigmaDrift(
                phi=drift_section.number("phi", SIGMA_DRIFT_PHI),
                innovation_sd=drift_section.number("innovation_sd", SIGMA_DRIFT_SD),
                log_mean=log_mean,
            )
        except InvalidArgumentError as e:
            raise section.error("sigma_drift", str(e)) from None
        drift_section.close()
    section.raw("sigma_drift", None)

    try:
        params = RateModelParams(
            a=section.number("a", 1.0),
            b=section.number("b", 0.0),
            c_lambda=section.number("c_lambda", 1.0),
        )
        model = EncoderModel(
            kind=EncoderKind(kind),
            params=params,
            rate_cv=section.number("rate_cv", 0.0),
            dist_cv=section.number("dist_cv", 0.0),
            sigma_drift=drift,
        )
    except InvalidArgumentError as e:
        raise ConfigError(str(e), field=section.path, line=section.line) from None
    section.close()
    return model


def _parse_complexity(
    section: _Section,
) -> Tuple[ComplexityMeasure, Optional[Dict[str, Tuple[float, ...]]]]:
    """Parse the measure; `biases` is one list or a mapping of scenario name to list."""
    kind = section.text("kind", ComplexityKind.ORACLE.value)
    if kind not in {k.value for k in ComplexityKind}:
        raise section.error("kind", f"unknown complexity measure '{kind}' "
                                    f"(known: {', '.join(k.value for k in ComplexityKind)})")
    per_scenario = None
    biases: Tuple[float, ...] = ()
    if section.has("biases") and isinstance(section.data["biases"], dict):
        by_name = section.section("biases")
        per_scenario = {str(name): by_name.number_list(name) for name in by_name.data}
        if not per_scenario:
            raise section.error("biases", "expected at least one scenario")
        # first entry keeps the file-level measure valid
        biases = next(iter(per_scenario.values()))
    else:
        biases = section.number_list("biases", ())
    try:
        cm = ComplexityMeasure(
            kind=ComplexityKind(kind),
            biases=biases,
            noise_cv=section.number("noise_cv", 0.0),
        )
    except InvalidArgumentError as e:
        raise ConfigError(str(e), field=section.path, line=section.line) from None
    section.close()
    return cm, per_scenario


def parse_scenario_document(data: Any, source: Optional[Path] = None) -> ScenarioFile:
    """Validate a loaded document.

    Args:
        data: Result of loading the YAML text
        source: File the document came from, for resolving pack paths
    """
    root = _Section(data, "")
    version = root.integer("schema_version")
    if version != SCHEMA_VERSION:
        raise root.error("schema_version", f"unsupported schema version {version} (expected {SCHEMA_VERSION})")

    gop_count = root.integer("gop_count", GOP_COUNT, minimum=2)
    if root.has("scenarios") == root.has("pack"):
        raise ConfigError("exactly one of scenarios / pack is required", line=root.line)
    if root.has("pack"):
        scenarios = _load_pack(root.text("pack"), source, gop_count, root)
    else:
        scenarios = _parse_scenarios(root.raw("scenarios"), "scenarios",
                                     root.line_of("scenarios"), gop_count)
    root.raw("scenarios", None)
    root.raw("pack", None)

    encoder = _parse_encoder(root.section("encoder")) if root.has("encoder") else EncoderModel()
    root.raw("encoder", None)
    complexity, per_scenario_biases = (
        _parse_complexity(root.section("complexity")) if root.has("complexity")
        else (ComplexityMeasure(), None)
    )
    root.raw("complexity", None)

    allocators = root.raw("allocators", ["lam", "lfam"])
    if not isinstance(allocators, list) or not allocators or not all(isinstance(a, str) for a in allocators):
        raise root.error("allocators", "expected a non-empty list of allocator names")
    for name in allocators:
        if name not in ALLOCATORS:
            raise root.error("allocators", f"unknown allocator '{name}' (known: {', '.join(ALLOCATORS)})")

    seeds = root.raw("seeds", [0])
    if not isinstance(seeds, list) or not seeds or not all(
        isinstance(s, int) and not isinstance(s, bool) and s >= 0 for s in seeds
    ):
        raise root.error("seeds", "expected a non-empty list of non-negative integers")

    floor_fraction = root.number("floor_fraction", FLOOR_FRACTION, non_negative=True)
    if floor_fraction >= 1:
        raise root.error("floor_fraction", f"must be below 1, got {floor_fraction}")

    complexity_by_scenario = _complexity_by_scenario(
        complexity, per_scenario_biases, scenarios, root
    )

    result = ScenarioFile(
        name=root.text("name", source.stem if source else "scenario"),
        complexity_label=root.text("complexity_label", complexity.kind.value),
        scenarios=tuple(scenarios),
        encoder=encoder,
        complexity=complexity,
        allocators=tuple(allocators),
        baseline=root.text("baseline", "lam"),
        candidate=root.text("candidate", "lfam"),
        floor_fraction=floor_fraction,
        seeds=tuple(seeds),
        complexity_by_scenario=complexity_by_scenario,
    )
    root.close()
    return result


def _complexity_by_scenario(
    complexity: ComplexityMeasure,
    per_scenario_biases: Optional[Dict[str, Tuple[float, ...]]],
    scenarios: List[ScenarioSpec],
    root: _Section,
) -> Dict[str, ComplexityMeasure]:
    if per_scenario_biases is not None:
        names = {spec.name for spec in scenarios}
        unknown = [name for name in per_scenario_biases if name not in names]
        if unknown:
            raise root.error("complexity", f"biases given for unknown scenarios {unknown}")
    if complexity.kind is not ComplexityKind.BIASED_ORACLE:
        return {}

    measures = {}
    for spec in scenarios:
        if per_scenario_biases is None:
            biases = complexity.biases
        elif spec.name in per_scenario_biases:
            biases = per_scenario_biases[spec.name]
        else:
            raise root.error("complexity", f"biased-oracle has no biases for scenario '{spec.name}'")
        if spec.streams and len(biases) != len(spec.streams):
            raise root.error(
                "complexity",
                f"biased-oracle needs {len(spec.streams)} biases for scenario "
                f"'{spec.name}', got {len(biases)}",
            )
        measures[spec.name] = replace(complexity, biases=biases)
    return measures


def _load_pack(pack: str, source: Optional[Path], gop_count: int, root: _Section) -> List[ScenarioSpec]:
    path = PACKS.get(pack)
    if path is None:
        path = Path(pack)
        if not path.is_absolute() and source is not None:
            path = source.parent / path
    if not path.exists():
        raise root.error("pack", f"unknown pack '{pack}' (known: {', '.join(PACKS)} or a file path)")
    document = _load_yaml(path)
    section = _Section(document, "")
    specs = _parse_scenarios(section.raw("scenarios"), f"{path.name}:scenarios",
                             section.line_of("scenarios"), gop_count)
    section.close()
    return specs


def _load_yaml(path: Path) -> Any:
    try:
        with open(path, encoding="utf-8") as f:
            return yaml.load(f, Loader=_LineLoader)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        raise ConfigError(f"malformed YAML: {e}", line=mark.line + 1 if mark else None) from None


def load_scenario_file(path: Union[str, Path]) -> ScenarioFile:
    """Load and validate a scenario file."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"scenario file not found: {path}")
    logger.info(f"Loading scenario file {path}")
    return parse_scenario_document(_load_yaml(path), source=path)
