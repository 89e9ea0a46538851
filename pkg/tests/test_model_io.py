"""Model serialization round-trips and format guards."""

import json

import numpy as np
import pytest

from kelmocc.model_io import (
    FORMAT_VERSION,
    load_model,
    model_from_dict,
    model_to_dict,
    save_model,
)
from kelmocc.occ import HyperParams, predict, train
from kelmocc.variance import LaplacianSpec


def fitted_model(kind="vaakelm", seed=0):
    x = np.random.default_rng(seed).normal(loc=1.0, size=(20, 3))
    hyper = HyperParams(c=2.0, delta=0.05, laplacian=LaplacianSpec(kind="intra", k=2))
    if kind in ("ockelm", "aakelm"):
        hyper = HyperParams(c=2.0, delta=0.05)
    return train(kind, x, hyper, seed=seed), x


def test_round_trip_preserves_every_field(tmp_path):
    model, _ = fitted_model()
    path = tmp_path / "model.json"
    save_model(model, path)
    loaded = load_model(path)
    assert loaded.kind == model.kind
    assert np.array_equal(loaded.train_x, model.train_x)
    assert np.array_equal(loaded.beta, model.beta)
    assert loaded.theta == model.theta
    assert loaded.kernel == model.kernel
    assert np.array_equal(loaded.norm.mean, model.norm.mean)
    assert np.array_equal(loaded.norm.std, model.norm.std)
    assert loaded.hyper == model.hyper


@pytest.mark.parametrize("kind", ["ockelm", "aakelm", "vockelm", "vaakelm"])
def test_loaded_model_predicts_bit_identically(tmp_path, kind):
    model, x = fitted_model(kind=kind, seed=3)
    path = tmp_path / "model.json"
    save_model(model, path)
    loaded = load_model(path)
    query = np.random.default_rng(4).normal(size=(10, 3))
    original = predict(model, query)
    replayed = predict(loaded, query)
    assert [p.score for p in original] == [p.score for p in replayed]
    assert [p.label for p in original] == [p.label for p in replayed]


def test_saving_twice_writes_identical_bytes(tmp_path):
    model, _ = fitted_model(seed=5)
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    save_model(model, first)
    save_model(load_model(first), second)
    assert first.read_bytes() == second.read_bytes()


def test_saved_file_is_sorted_json_with_version(tmp_path):
    model, _ = fitted_model(seed=6)
    path = tmp_path / "model.json"
    save_model(model, path)
    payload = json.loads(path.read_text(encoding="utf-8"))
    assert payload["format_version"] == FORMAT_VERSION
    assert list(payload) == sorted(payload)


def test_newer_format_version_is_refused(tmp_path):
    model, _ = fitted_model(seed=7)
    payload = model_to_dict(model)
    payload["format_version"] = FORMAT_VERSION + 1
    with pytest.raises(ValueError, match="newer than the supported"):
        model_from_dict(payload)


def test_missing_or_bad_version_is_refused():
    with pytest.raises(ValueError, match="format_version"):
        model_from_dict({"kind": "ockelm"})
    with pytest.raises(ValueError, match="format_version"):
        model_from_dict({"format_version": "one"})


def test_corrupt_json_is_reported_as_a_parse_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(ValueError, match="cannot parse model file"):
        load_model(path)


def test_non_object_payload_is_refused(tmp_path):
    path = tmp_path / "list.json"
    path.write_text("[1, 2, 3]", encoding="utf-8")
    with pytest.raises(ValueError, match="JSON object"):
        load_model(path)


def test_dict_round_trip_without_files():
    model, _ = fitted_model(seed=8)
    rebuilt = model_from_dict(model_to_dict(model))
    assert rebuilt.hyper.laplacian == LaplacianSpec(kind="intra", k=2)
    assert np.array_equal(rebuilt.beta, model.beta)
