import json
import math
from pathlib import Path

import numpy as np
import pytest

import argutopo
from argutopo.common.errors import StageError
from argutopo.pipeline.config import RunConfig
from argutopo.pipeline.run import analyze, direction_seed, run_baseline, run_both, run_wde
from argutopo.text_embedding.formats import load_model
from argutopo.text_embedding.model import EmbeddingModel

DATA = Path(argutopo.__file__).parent / "data"
TOY_MODEL = DATA / "toy_model.txt"
TEXTS = sorted((DATA / "texts").glob("*.txt"))


@pytest.fixture(scope="module")
def toy_model():
    return load_model(TOY_MODEL, "glove-text")


@pytest.fixture
def config():
    return RunConfig.from_yaml_defaults(model_path=str(TOY_MODEL))


def six_word_model():
    rng = np.random.default_rng(6)
    words = ["there", "is", "no", "way", "they", "win"]
    return EmbeddingModel.from_mapping({w: rng.standard_normal(3) for w in words})


def test_toy_model_covers_reference_texts(toy_model, config):
    assert len(toy_model) == 50
    assert len(TEXTS) == 3
    for path in TEXTS:
        report = run_both(config, path.read_text(encoding="utf-8"), toy_model, text_name=path.stem)
        assert report.tokens["oov"] == []
        assert report.tokens["kept"] == report.tokens["count"]
        assert report.delay["D"] >= 1 and report.delay["tau"] >= 1


def test_both_mode_is_deterministic(toy_model, config):
    text = TEXTS[0].read_text(encoding="utf-8")
    first = run_both(config, text, toy_model).to_json()
    second = run_both(RunConfig.from_yaml_defaults(model_path=str(TOY_MODEL)), text, toy_model).to_json()
    assert first == second


def test_model_loaded_from_config_path(config):
    text = TEXTS[1].read_text(encoding="utf-8")
    assert run_wde(config, text).to_json() == run_wde(config, text, load_model(TOY_MODEL, "glove-text")).to_json()


def test_report_layout(toy_model, config):
    report = run_both(config, TEXTS[1].read_text(encoding="utf-8"), toy_model, text_name="circular")
    data = json.loads(report.to_json())
    assert list(data)[:4] == ["text", "config_hash", "config", "tokens"]
    assert set(data["diagrams"]) == {"baseline", "wde"}
    assert "timing" not in data
    for diagram in data["diagrams"].values():
        assert diagram["metadata"]["config_hash"] == report.config_hash
    assert data["diagrams"]["baseline"]["metadata"]["n_points"] == report.tokens["kept"]
    assert data["diagrams"]["wde"]["metadata"]["n_points"] == report.delay["points"]
    assert [s["noise_threshold"] for s in data["stats"]["wde"]] == [0.05, 0.1, 0.25]


def test_fixed_parameters_follow_count_law():
    config = RunConfig.from_yaml_defaults(tau=2, dim=2)
    report = run_wde(config, "There is no way they win, camel.", six_word_model())
    assert report.tokens["kept"] == 6
    assert report.tokens["oov"] == [{"position": 6, "token": "camel"}]
    assert report.delay["points"] == 6 - 2
    assert len(report.diagrams["wde"].in_dimension(0)) > 0


def test_one_token_baseline():
    report = run_baseline(RunConfig.from_yaml_defaults(), "win", six_word_model())
    points = report.diagrams["baseline"].points
    assert [(p.dim, p.birth, p.death) for p in points] == [(0, 0.0, math.inf)]
    assert "wde" not in report.diagrams


def test_too_short_text_names_tokens_and_parameters():
    config = RunConfig.from_yaml_defaults(tau=2, dim=2)
    with pytest.raises(StageError) as excinfo:
        run_wde(config, "there is no", six_word_model())
    assert excinfo.value.stage == "select_parameters"
    assert excinfo.value.exit_code == 3
    assert "3 in-vocabulary tokens" in str(excinfo.value)
    assert "D=2, tau=2" in str(excinfo.value)


def test_oov_fail_is_a_data_error():
    config = RunConfig.from_yaml_defaults(oov="fail")
    with pytest.raises(StageError) as excinfo:
        run_both(config, "there is a camel", six_word_model())
    assert excinfo.value.stage == "embed_tokens"
    assert excinfo.value.exit_code == 2


def test_missing_model_path():
    with pytest.raises(StageError) as excinfo:
        run_wde(RunConfig.from_yaml_defaults(), "there is no way")
    assert excinfo.value.stage == "load_model"


def test_echo_reproduces_report(toy_model, config):
    text = TEXTS[2].read_text(encoding="utf-8")
    report = run_both(config, text, toy_model)
    rebuilt = RunConfig.from_echo(json.loads(report.to_json())["config"])
    assert run_both(rebuilt, text, toy_model).to_json() == report.to_json()


def test_mode_dispatch(toy_model, config):
    text = TEXTS[0].read_text(encoding="utf-8")
    assert set(analyze(config.replace(mode="wde"), text, toy_model).diagrams) == {"wde"}
    assert set(analyze(config.replace(mode="baseline"), text, toy_model).diagrams) == {"baseline"}


def test_direction_seeds(config):
    assert direction_seed(config, 5) == config.seed
    per_text = config.replace(direction="per-text", seed=10)
    assert [direction_seed(per_text, i) for i in range(3)] == [10, 11, 12]
    assert direction_seed(per_text.replace(seed=2**64 - 1), 1) == 0


def test_replicates_and_timing(toy_model, config):
    text = TEXTS[1].read_text(encoding="utf-8")
    report = run_wde(config.replace(replicates=3, record_timing=True), text, toy_model)
    runs = report.replicates["runs"]
    assert [r["seed"] for r in runs] == [0, 1, 2]
    assert "median_max_h1_persistence" in report.replicates
    assert "rips_persistence" in report.timing
    assert "timing" in report.to_dict()


def test_images_in_report(toy_model, config):
    report = run_wde(config.replace(image=True, image_resolution=(4, 5)), TEXTS[0].read_text(encoding="utf-8"), toy_model)
    images = report.images["wde"]
    assert [image.dim for image in images] == [0, 1]
    assert images[0].resolution == (4, 5)
    assert np.array(report.to_dict()["images"]["wde"][1]["pixels"]).shape == (4, 5)
