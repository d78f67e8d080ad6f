"""
Tests for scenario file loading and validation.
"""

import pytest

from ..complexity.measure import ComplexityKind
from ..errors import ConfigError
from ..rdmodel.encoder import EncoderKind
from .scenario_file import load_scenario_file, parse_scenario_document
from .settings import EXAMPLE_CONFIG

MINIMAL = """\
schema_version: 1
scenarios:
  - name: pair
    channel_rate_bits: 9000
    streams:
      - {complexity: 2.0, sigma: 2500}
      - {complexity: 1.0, sigma: 20000}
"""


def _write(tmp_path, text, name="scenario.yaml"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_bundled_example():
    sf = load_scenario_file(EXAMPLE_CONFIG)
    assert sf.name == "example"
    assert sf.complexity_label == "noisy-oracle"
    assert sf.encoder.kind is EncoderKind.NOISY
    assert sf.encoder.sigma_drift.phi == 0.9
    assert sf.complexity.kind is ComplexityKind.NOISY_ORACLE
    assert sf.allocators == ("lam", "lfam", "oracle", "uniform")
    assert sf.seeds == (1,)
    (spec,) = sf.scenarios
    assert spec.channel_rate == pytest.approx(1_600_000)
    assert [s.name for s in spec.streams] == ["drill", "mall", "party", "horses"]


def test_defaults(tmp_path):
    sf = load_scenario_file(_write(tmp_path, MINIMAL))
    assert sf.name == "scenario"
    assert sf.allocators == ("lam", "lfam")
    assert (sf.baseline, sf.candidate) == ("lam", "lfam")
    assert sf.floor_fraction == 0.05
    assert sf.seeds == (0,)
    assert sf.encoder.kind is EncoderKind.IDEAL
    assert sf.complexity.kind is ComplexityKind.ORACLE
    assert sf.complexity_label == "oracle"
    spec = sf.scenarios[0]
    assert spec.channel_rate == 9000
    assert spec.gop_count == 13
    assert spec.streams[0].sigma == 2500


def test_series_must_cover_every_gop(tmp_path):
    text = MINIMAL.replace("complexity: 2.0,", "complexity: [2.0, 2.1],")
    with pytest.raises(ConfigError, match="expected 13 values"):
        load_scenario_file(_write(tmp_path, text))


def test_unknown_key_names_field_and_line(tmp_path):
    text = MINIMAL + "colour: blue\n"
    with pytest.raises(ConfigError) as info:
        load_scenario_file(_write(tmp_path, text))
    assert info.value.field == "colour"
    assert info.value.line == 8


def test_negative_rate_names_field(tmp_path):
    text = MINIMAL.replace("channel_rate_bits: 9000", "channel_rate_bits: -9000")
    with pytest.raises(ConfigError) as info:
        load_scenario_file(_write(tmp_path, text))
    assert info.value.field == "scenarios[0].channel_rate_bits"
    assert info.value.line == 4
    assert "must be positive" in str(info.value)


def test_malformed_yaml_reports_line(tmp_path):
    with pytest.raises(ConfigError) as info:
        load_scenario_file(_write(tmp_path, "schema_version: 1\nscenarios: [\n  - a: {\n"))
    assert info.value.line is not None


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        load_scenario_file(tmp_path / "absent.yaml")


@pytest.mark.parametrize(
    "document, field",
    [
        ({"schema_version": 2, "pack": "six-class"}, "schema_version"),
        ({"schema_version": 1, "pack": "six-class", "allocators": ["minave"]}, "allocators"),
        ({"schema_version": 1, "pack": "six-class", "seeds": [-1]}, "seeds"),
        ({"schema_version": 1, "pack": "six-class", "floor_fraction": 1.0}, "floor_fraction"),
        ({"schema_version": 1, "pack": "no-such-pack"}, "pack"),
        ({"schema_version": 1, "pack": "six-class", "encoder": {"kind": "x265"}}, "encoder.kind"),
    ],
)
def test_invalid_documents(document, field):
    with pytest.raises(ConfigError) as info:
        parse_scenario_document(document)
    assert info.value.field == field


def test_exactly_one_scenario_source():
    with pytest.raises(ConfigError, match="exactly one"):
        parse_scenario_document({"schema_version": 1})


def test_channel_rate_given_once():
    document = {
        "schema_version": 1,
        "scenarios": [
            {"name": "x", "channel_rate_bps": 1e6, "channel_rate_bits": 4e4, "streams": []}
        ],
    }
    with pytest.raises(ConfigError, match="exactly one of channel_rate"):
        parse_scenario_document(document)


def test_stream_needs_sigma_or_psnr():
    document = {
        "schema_version": 1,
        "scenarios": [{"name": "x", "channel_rate_bits": 9000, "streams": [{"complexity": 1.0}]}],
    }
    with pytest.raises(ConfigError) as info:
        parse_scenario_document(document)
    assert info.value.field == "scenarios[0].streams[0]"


def test_six_class_pack():
    sf = parse_scenario_document({"schema_version": 1, "pack": "six-class", "gop_count": 8})
    assert [s.name for s in sf.scenarios] == ["A", "B", "C", "D", "E", "F"]
    assert [len(s.streams) for s in sf.scenarios] == [2, 5, 4, 4, 3, 3]
    assert all(s.gop_count == 8 for s in sf.scenarios)
    assert sf.scenarios[0].channel_rate == pytest.approx(8_000_000)


def test_pack_from_relative_path(tmp_path):
    _write(tmp_path, "scenarios:\n" + MINIMAL.split("scenarios:\n", 1)[1], "mine.yaml")
    path = _write(tmp_path, "schema_version: 1\npack: mine.yaml\n")
    sf = load_scenario_file(path)
    assert sf.scenarios[0].name == "pair"


def test_biases_must_match_stream_count(tmp_path):
    text = MINIMAL + "complexity:\n  kind: biased-oracle\n  biases: [2.0, 0.5, 1.0]\n"
    with pytest.raises(ConfigError) as info:
        load_scenario_file(_write(tmp_path, text))
    assert info.value.field == "complexity"
    assert "needs 2 biases" in str(info.value)


def test_duplicate_scenario_names():
    streams = [{"complexity": 1.0, "sigma": 1.0}, {"complexity": 1.0, "sigma": 2.0}]
    scenario = {"name": "x", "channel_rate_bits": 9000, "streams": streams}
    with pytest.raises(ConfigError, match="unique"):
        parse_scenario_document({"schema_version": 1, "scenarios": [scenario, dict(scenario)]})


PACK_BIASES = {
    "A": [0.5, 2.0],
    "B": [2.0, 0.5, 1.0, 0.5, 2.0],
    "C": [1.0, 2.0, 0.5, 1.0],
    "D": [0.5, 0.5, 2.0, 2.0],
    "E": [2.0, 1.0, 0.5],
    "F": [1.0, 0.5, 2.0],
}


def test_biases_per_scenario_over_the_pack():
    document = {
        "schema_version": 1,
        "pack": "six-class",
        "complexity": {"kind": "biased-oracle", "biases": PACK_BIASES},
    }
    sf = parse_scenario_document(document)
    for spec in sf.scenarios:
        cm = sf.complexity_for(spec.name)
        assert cm.kind is ComplexityKind.BIASED_ORACLE
        assert cm.biases == tuple(PACK_BIASES[spec.name])


def test_biases_per_scenario_must_cover_every_scenario():
    biases = {name: values for name, values in PACK_BIASES.items() if name != "E"}
    document = {
        "schema_version": 1,
        "pack": "six-class",
        "complexity": {"kind": "biased-oracle", "biases": biases},
    }
    with pytest.raises(ConfigError, match="scenario 'E'"):
        parse_scenario_document(document)


def test_biases_per_scenario_checks_each_length():
    biases = dict(PACK_BIASES, B=[0.5, 2.0])
    document = {
        "schema_version": 1,
        "pack": "six-class",
        "complexity": {"kind": "biased-oracle", "biases": biases},
    }
    with pytest.raises(ConfigError, match="needs 5 biases for scenario 'B', got 2"):
        parse_scenario_document(document)


def test_biases_for_unknown_scenario(tmp_path):
    text = MINIMAL + (
        "complexity:\n  kind: biased-oracle\n  biases:\n"
        "    pair: [2.0, 0.5]\n    other: [1.0, 1.0]\n"
    )
    with pytest.raises(ConfigError, match="other"):
        load_scenario_file(_write(tmp_path, text))


def test_single_bias_list_applies_to_every_scenario(tmp_path):
    text = MINIMAL + "complexity:\n  kind: biased-oracle\n  biases: [2.0, 0.5]\n"
    sf = load_scenario_file(_write(tmp_path, text))
    assert sf.complexity_for("pair").biases == (2.0, 0.5)
