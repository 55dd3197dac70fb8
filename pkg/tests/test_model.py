import json

import numpy as np
import pytest

from classsplom.data import generate_gaussian_blobs
from classsplom.errors import DataError
from classsplom.evaluation import confusion_from_counts
from classsplom.model import (
    ClassSplomModel,
    build_model,
    default_palette,
    export_model_json,
    load_model_json,
    model_to_json,
)

from .test_evaluation import TABLE1


@pytest.fixture(scope="module")
def model():
    rng = np.random.default_rng(5)
    ds = generate_gaussian_blobs(rng.normal(size=(5, 4)) * 2, [1] * 5, 10, seed=0,
                                 class_names=["EGY", "GLF", "LAV", "MSA", "NOR"])
    return build_model(ds, B=6, seed=1, confusion=confusion_from_counts(TABLE1), config={"seed": 1})


def _assert_models_close(m1, m2):
    assert m1.class_names == m2.class_names and m1.palette == m2.palette
    for e1, e2 in zip(m1.pairs, m2.pairs):
        assert e1.pair == e2.pair
        for attr in ("axis1", "axis2"):
            np.testing.assert_allclose(getattr(e1.projection, attr).direction,
                                       getattr(e2.projection, attr).direction, atol=1e-12)
        np.testing.assert_allclose(e1.projection.coords, e2.projection.coords, atol=1e-12)
        np.testing.assert_array_equal(e1.projection.point_class, e2.projection.point_class)
        s1, s2 = e1.summary, e2.summary
        assert abs(s1.aucba - s2.aucba) <= 1e-12 and abs(s1.aucba_std - s2.aucba_std) <= 1e-12
        np.testing.assert_allclose(s1.observed.points, s2.observed.points, atol=1e-12)
        for c1, c2 in zip(s1.bootstrap_curves, s2.bootstrap_curves):
            np.testing.assert_allclose(c1.points, c2.points, atol=1e-12)
            assert c1.auc == c2.auc
    np.testing.assert_array_equal(m1.confusion.counts, m2.confusion.counts)


def test_json_round_trip(model, tmp_path):
    export_model_json(model, tmp_path / "m.json")
    back = load_model_json(tmp_path / "m.json")
    _assert_models_close(model, back)
    # Full double precision: the text round-trips exactly.
    assert model_to_json(back) == model_to_json(model)


def test_json_schema(model, tmp_path):
    d = json.loads(model_to_json(model))
    assert {"classes", "palette", "pairs", "confusion", "config"} <= d.keys()
    assert len(d["pairs"]) == 10
    keys = {"class_a", "class_b", "axis1", "axis2", "coords", "observed_roc",
            "bootstrap_aucs", "aucba", "aucba_std"}
    for p in d["pairs"]:
        assert keys <= p.keys()
        assert p["class_a"] < p["class_b"]
        assert len(p["bootstrap_aucs"]) == 6
    prc = [round(v * 100, 1) for v in d["confusion"]["precision"]]
    assert prc == [50.3, 55.8, 46.9, 77.0, 83.4]


def test_model_requires_all_pairs(model):
    with pytest.raises(DataError):
        ClassSplomModel(model.class_names, model.palette, model.pairs[:-1])
    with pytest.raises(DataError):
        ClassSplomModel(model.class_names, ("#000000",) * 5, model.pairs)


def test_build_model_parallel_identical():
    ds = generate_gaussian_blobs(np.eye(4, 5) * 3, [1] * 4, 10, seed=0)
    assert model_to_json(build_model(ds, B=5, jobs=1)) == model_to_json(build_model(ds, B=5, jobs=4))


def test_default_palette_extends_distinctly():
    pal = default_palette(25)
    assert len(set(pal)) == 25 and pal[:10] == default_palette(10)


def test_load_model_json_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(DataError):
        load_model_json(p)
    p.write_text('{"classes": []}')
    with pytest.raises(DataError):
        load_model_json(p)
