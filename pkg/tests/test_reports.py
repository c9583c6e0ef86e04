import json

import numpy as np
import pytest

from conidx.density import SeqWindow
from conidx.harness import run_index_experiment
from conidx.reports import (
    ConfigError,
    SequenceCache,
    build_run_report,
    emit_csv,
    emit_report,
    parse_config,
)

MINIMAL = {
    "schema_version": 1,
    "experiment": "lagrange1d",
    "theta": {"rational": [1, 3]},
    "window": 300,
}


def make_config(**overrides):
    doc = dict(MINIMAL)
    doc.update(overrides)
    return json.dumps(doc)


def test_parse_minimal_config():
    cfg = parse_config(make_config())
    assert cfg.experiment == "lagrange1d"
    assert cfg.specs["theta"].q == 3
    assert cfg.window == 300
    assert cfg.tol == 0.03


def test_parse_round_trip():
    cfg = parse_config(make_config(d=0.25, epsilon=0.04, tol=0.01, checkpoints=12))
    again = parse_config(json.dumps(cfg.to_json_dict()))
    assert again == cfg


def test_parse_rejects_unknown_fields():
    with pytest.raises(ConfigError, match="unknown field"):
        parse_config(make_config(bogus=1))


def test_parse_rejects_s_below_one():
    doc = {"schema_version": 1, "experiment": "shepard1d",
           "x0": {"rational": [1, 2]}, "window": 100, "s": 0.5}
    with pytest.raises(ConfigError, match="s must be >= 1"):
        parse_config(json.dumps(doc))


def test_parse_rejects_unknown_irrational_listing_presets():
    doc = {"schema_version": 1, "experiment": "shepard1d",
           "x0": {"irrational": "sqrt3"}, "window": 100}
    with pytest.raises(ConfigError, match="presets:"):
        parse_config(json.dumps(doc))


def test_parse_rejects_zero_denominator():
    with pytest.raises(ConfigError, match="q must be nonzero"):
        parse_config(make_config(theta={"rational": [1, 0]}))


def test_parse_collects_all_violations():
    doc = {"schema_version": 7, "experiment": "shepard2d", "window": 0,
           "s": 0.2, "extra": True, "x0": {"irrational": "nope"}}
    with pytest.raises(ConfigError) as err:
        parse_config(json.dumps(doc))
    text = str(err.value)
    for needle in ("schema_version", "window", "s must be", "extra", "nope", "y0"):
        assert needle in text


def test_parse_rejects_invalid_json():
    with pytest.raises(ConfigError, match="invalid JSON"):
        parse_config("{not json")


def test_parse_rejects_misplaced_spec_fields():
    with pytest.raises(ConfigError, match="does not apply"):
        parse_config(make_config(x0={"rational": [1, 2]}))


def test_emit_csv_dim1(tmp_path):
    win = SeqWindow.from_values_1d(np.array([0.5, 1.0, -0.25]))
    path = tmp_path / "w.csv"
    emit_csv(win, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "n,value"
    assert len(lines) == 4
    assert lines[3] == "3,-0.25"


def test_emit_csv_dim2_product(tmp_path):
    win = SeqWindow.from_product(np.array([2.0, 3.0]), np.array([0.5, 0.25]))
    path = tmp_path / "w.csv"
    emit_csv(win, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "n,m,value"
    assert len(lines) == 5
    assert lines[1] == "1,1,1"
    assert lines[4] == "2,2,0.75"


def test_emit_csv_deterministic(tmp_path):
    win = SeqWindow.from_values_1d(np.linspace(0.0, 1.0, 57) ** 3)
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_csv(win, p1)
    emit_csv(win, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_report_schema_and_emission(tmp_path):
    cfg = parse_config(make_config())
    result = run_index_experiment(cfg.to_experiment_spec())
    report = build_run_report(cfg, result, runtime_ms=12.5)
    path = tmp_path / "report.json"
    emit_report(report, path)
    doc = json.loads(path.read_text())
    assert set(doc) == {"config", "targets", "residual_mass", "runtime_ms", "version"}
    assert doc["config"]["experiment"] == "lagrange1d"
    entry = doc["targets"][0]
    assert set(entry) >= {"target", "epsilon", "estimate", "predicted", "verdict"}
    assert set(entry["estimate"]) == {"checkpoints", "ratios", "lower", "upper"}
    assert all(e["verdict"] == "pass" for e in doc["targets"])


def test_cache_round_trip(tmp_path):
    cfg = parse_config(make_config())
    spec = cfg.to_experiment_spec()
    cache = SequenceCache(tmp_path / "cache")
    assert cache.load(spec) is None
    cold = run_index_experiment(spec)
    cache.store(spec, cold.window)
    warm_window = cache.load(spec)
    assert warm_window is not None
    np.testing.assert_array_equal(warm_window.values, cold.window.values)
    warm = run_index_experiment(spec, window=warm_window)
    cold_report = build_run_report(cfg, cold, 0.0).to_json()
    warm_report = build_run_report(cfg, warm, 0.0).to_json()
    assert cold_report == warm_report


def test_cache_key_separates_parameters(tmp_path):
    cfg_a = parse_config(make_config())
    cfg_b = parse_config(make_config(window=301))
    cache = SequenceCache(tmp_path)
    assert cache.key(cfg_a.to_experiment_spec()) != cache.key(cfg_b.to_experiment_spec())


def test_cache_product_windows(tmp_path):
    doc = {"schema_version": 1, "experiment": "shepard2d",
           "x0": {"rational": [1, 2]}, "y0": {"rational": [1, 2]},
           "s": 2.0, "window": 60}
    cfg = parse_config(json.dumps(doc))
    spec = cfg.to_experiment_spec()
    cache = SequenceCache(tmp_path)
    result = run_index_experiment(spec)
    cache.store(spec, result.window)
    loaded = cache.load(spec)
    np.testing.assert_array_equal(loaded.factors[0], result.window.factors[0])
    np.testing.assert_array_equal(loaded.factors[1], result.window.factors[1])
    assert len(cache.entries()) == 1
    assert cache.clear() == 1
    assert cache.entries() == []
