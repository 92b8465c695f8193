from fractions import Fraction

import numpy as np
import pytest

from freecomp.errors import MeasureFileError
from freecomp.io import (
    RecordWriter,
    ResultRecord,
    dump_measure,
    inputs_hash,
    load_experiment,
    load_measure,
    parse_matrix,
    parse_measure,
    read_records,
)
from freecomp.rmt.sampling import XBuilder
from freecomp.subordination.measure import MeasureSpec, SmoothKind


@pytest.mark.parametrize("name", ["semicircle", "bernoulli", "mixture"])
def test_measure_files_are_canonical(measures_dir, name):
    path = measures_dir / f"{name}.yaml"
    assert dump_measure(load_measure(path)) == path.read_text()


def test_loaded_measures(measures_dir):
    mixture = load_measure(measures_dir / "mixture.yaml")
    assert [a.location for a in mixture.atoms] == [-1, 0, 2]
    assert mixture.moments(2) == (Fraction(1, 4), Fraction(5, 4))
    semicircle = load_measure(measures_dir / "semicircle.yaml")
    assert semicircle.smooth[0].kind is SmoothKind.SEMICIRCLE


def test_values_are_written_exactly():
    mu = MeasureSpec.atomic(("0.5", "-3/6"), (Fraction(1, 3), Fraction(2, 3)), name="halves")
    text = dump_measure(mu)
    assert "1/2" in text and "-1/2" in text and "2/3" in text
    assert parse_measure(text) == mu


def test_support_is_ignored_on_load():
    text = (
        "name: s\n"
        "smooth:\n"
        "- kind: semicircle\n"
        "  params: ['0', '1']\n"
        "  support: [-100.0, 100.0]\n"
    )
    assert parse_measure(text).support_interval == (-2.0, 2.0)


def test_error_names_line_and_field():
    text = "schema_version: 1\nname: bad\natoms:\n- x: '1'\n  w: one\n"
    with pytest.raises(MeasureFileError) as e:
        parse_measure(text)
    assert str(e.value).startswith("<string>:5: field 'atoms.0.w'")


def test_unknown_fields_are_rejected():
    with pytest.raises(MeasureFileError) as e:
        parse_measure("name: bad\ncolour: blue\n", "bad.yaml")
    assert "colour" in str(e.value)
    assert str(e.value).startswith("bad.yaml:2:")


def test_mass_errors_are_file_errors():
    text = "name: light\natoms:\n- {x: '0', w: 1/2}\n- {x: '1', w: 1/4}\n"
    with pytest.raises(MeasureFileError) as e:
        parse_measure(text, "light.yaml")
    assert str(e.value).startswith("light.yaml:")


def test_yaml_syntax_errors():
    with pytest.raises(MeasureFileError) as e:
        parse_measure("name: x\natoms: [\n", "broken.yaml")
    assert "invalid YAML" in str(e.value)
    with pytest.raises(MeasureFileError):
        parse_measure("- just\n- a list\n")
    with pytest.raises(MeasureFileError):
        load_measure("does/not/exist.yaml")


def test_parse_matrix():
    assert np.array_equal(parse_matrix("2i, 0; 1, 3i"), np.array([[2j, 0], [1, 3j]]))
    assert parse_matrix("2i").shape == (1, 1)
    with pytest.raises(ValueError):
        parse_matrix("1, 2; 3")


def test_load_experiment(experiments_dir, measures_dir):
    experiment = load_experiment(experiments_dir / "semicircle-n2.conf")
    assert experiment.id == "semicircle-n2"
    assert experiment.sizes == (200, 400, 800)
    assert experiment.compression_alpha == Fraction(1, 2)
    assert experiment.measure == (measures_dir / "semicircle.yaml").resolve()
    assert experiment.epsilon_values == [1.0, 0.5, 0.25, 0.125, 0.0]
    assert np.array_equal(experiment.beta_matrix, np.array([[2j, 0], [1, 3j]]))
    envelope = experiment.envelope()
    assert (envelope.c, envelope.c_prime) == (0.5, 5.0)


def write_conf(tmp_path, body):
    path = tmp_path / "run.conf"
    path.write_text("[experiment]\nid = tiny\nbuilder = gue\nseed = 1\nsizes = 20\nsamples = 2\n" + body)
    return path


def test_experiment_time_or_alpha(tmp_path):
    experiment = load_experiment(write_conf(tmp_path, "t = 3\n"))
    assert experiment.compression_alpha == Fraction(1, 3)
    assert experiment.builder is XBuilder.GUE
    assert experiment.measure is None
    with pytest.raises(MeasureFileError) as e:
        load_experiment(write_conf(tmp_path, "t = 3\nalpha = 1/3\n"))
    assert "exactly one of alpha and t" in str(e.value)
    with pytest.raises(MeasureFileError):
        load_experiment(write_conf(tmp_path, ""))


@pytest.mark.parametrize(
    "body, field",
    [
        ("alpha = 1/2\nchecks = freeness, magic\n", "checks"),
        ("alpha = 1/2\nbeta = 1, 2; 3\n", "beta"),
        ("alpha = 1/2\nflavour = mild\n", "flavour"),
        ("alpha = 1/2\nschema_version = 2\n", "schema_version"),
    ],
)
def test_experiment_field_errors(tmp_path, body, field):
    with pytest.raises(MeasureFileError) as e:
        load_experiment(write_conf(tmp_path, body))
    assert f"field '{field}" in str(e.value)


def test_quantile_builder_needs_a_measure(tmp_path):
    path = tmp_path / "q.conf"
    path.write_text("[experiment]\nid = q\nseed = 1\nsizes = 20\nsamples = 2\nalpha = 1/2\n")
    with pytest.raises(MeasureFileError):
        load_experiment(path)


def test_inputs_hash_is_canonical():
    assert inputs_hash({"a": 1, "b": [1, 2]}) == inputs_hash({"b": [1, 2], "a": 1})
    assert inputs_hash({"a": 1}) != inputs_hash({"a": 2})
    assert len(inputs_hash("x")) == 64


def test_records(tmp_path):
    path = tmp_path / "out" / "records.jsonl"
    writer = RecordWriter(path)
    first = ResultRecord(
        experiment="e",
        inputs_hash=inputs_hash({"size": 10}),
        check="matricial",
        size=10,
        residuals={"identity": 0.125, "margin": None},
        bound=0.5,
        passed=True,
        wall_time=1.5,
    )
    second = first.model_copy(update={"check": "freeness", "passed": False, "wall_time": 0.25})
    writer.write(first)
    writer.write(second)
    assert not writer.passed
    assert read_records(path) == [first, second]
    assert "wall_time" not in first.numeric_fields()
    assert first.numeric_fields() == first.model_copy(update={"wall_time": 9.0}).numeric_fields()


def test_records_in_memory():
    writer = RecordWriter()
    writer.write(ResultRecord(experiment="e", inputs_hash="h", check="c", passed=True))
    assert writer.passed
    assert len(writer.records) == 1


def test_schema_version_read_from_ini(tmp_path):
    # configparser hands every value over as a string
    path = tmp_path / "sorted.conf"
    path.write_text(
        "[experiment]\nschema_version = 1\nid = s\nbuilder = gue\nseed = 1\nsizes = 80, 20, 40\nsamples = 2\nalpha = 1/2\n"
    )
    experiment = load_experiment(path)
    assert experiment.schema_version == 1
    assert experiment.sizes == (20, 40, 80)
