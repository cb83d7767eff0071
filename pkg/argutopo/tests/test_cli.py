import json
from pathlib import Path

import numpy as np
import pytest

import argutopo
from argutopo.features.images import PersistenceImage
from argutopo.pipeline.cli import main
from argutopo.signal.series import PointCloud, TimeSeries, write_cloud_csv, write_series_csv

DATA = Path(argutopo.__file__).parent / "data"
TOY_MODEL = str(DATA / "toy_model.txt")
TEXTS = [str(p) for p in sorted((DATA / "texts").glob("*.txt"))]


def analyze(out_dir, *extra):
    return main(["analyze", "--model", TOY_MODEL, "--mode", "both", "--seed", "3", "--out", str(out_dir), *extra, *TEXTS])


def test_analyze_is_reproducible(tmp_path):
    assert analyze(tmp_path / "a") == 0
    assert analyze(tmp_path / "b", "--jobs", "1") == 0
    for text in TEXTS:
        name = f"{Path(text).stem}.report.json"
        first = (tmp_path / "a" / name).read_bytes()
        assert first == (tmp_path / "b" / name).read_bytes()
        report = json.loads(first)
        assert report["config"]["seed"] == 3
        assert {"D", "tau"} <= set(report["delay"])
        assert report["tokens"]["oov"] == []
        assert (tmp_path / "a" / f"{Path(text).stem}.wde.diagram.json").exists()


def test_analyze_writes_plots_and_images(tmp_path):
    assert analyze(tmp_path, "--plot", "--image", "--image-resolution", "3", "3") == 0
    stem = Path(TEXTS[0]).stem
    assert (tmp_path / f"{stem}.baseline.svg").read_text(encoding="utf-8").count("<svg") == 1
    assert len((tmp_path / f"{stem}.wde.h1.image.csv").read_text().splitlines()) == 3
    assert json.loads((tmp_path / f"{stem}.wde.h1.image.json").read_text())["resolution"] == [3, 3]


def test_usage_errors_exit_1(tmp_path):
    with pytest.raises(SystemExit) as excinfo:
        main(["analyze", "--mode", "everything", TEXTS[0]])
    assert excinfo.value.code == 1
    with pytest.raises(SystemExit) as excinfo:
        main([])
    assert excinfo.value.code == 1
    assert main(["analyze", "--model", TOY_MODEL, "--tau", "abc", TEXTS[0]]) == 1
    assert main(["analyze", "--model", str(tmp_path / "missing.txt"), TEXTS[0]]) == 1
    assert main(["analyze", TEXTS[0]]) == 1


def test_data_errors_exit_2(tmp_path):
    broken = tmp_path / "broken.txt"
    broken.write_text("a 1 2\nb 1\n")
    assert main(["analyze", "--model", str(broken), "--out", str(tmp_path), TEXTS[0]]) == 2
    assert main(["analyze", "--model", TOY_MODEL, "--out", str(tmp_path), str(tmp_path / "nope.txt")]) == 2


def test_numerical_errors_exit_3(tmp_path):
    short = tmp_path / "short.txt"
    short.write_text("there is no way")
    code = main(["analyze", "--model", TOY_MODEL, "--tau", "2", "--dim", "3", "--out", str(tmp_path), str(short)])
    assert code == 3


def test_persistence_command(tmp_path):
    write_cloud_csv(PointCloud(np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)), tmp_path / "square.csv")
    code = main(["persistence", "--input", str(tmp_path / "square.csv"), "--out", str(tmp_path / "d.json"),
                 "--plot", str(tmp_path / "d.svg")])
    assert code == 0
    diagram = json.loads((tmp_path / "d.json").read_text())
    assert [p for p in diagram["points"] if p["dim"] == 1] == [{"dim": 1, "birth": 1.0, "death": 1.4142135623730951}]
    assert (tmp_path / "d.svg").exists()


def test_persistence_command_bad_csv(tmp_path):
    (tmp_path / "ragged.csv").write_text("1,2\n3\n")
    assert main(["persistence", "--input", str(tmp_path / "ragged.csv")]) == 2


def test_delay_params_command(tmp_path):
    write_series_csv(TimeSeries(np.sin(2 * np.pi * np.arange(400) / 40)), tmp_path / "sine.csv")
    assert main(["delay-params", "--input", str(tmp_path / "sine.csv"), "--out", str(tmp_path / "p.json")]) == 0
    result = json.loads((tmp_path / "p.json").read_text())
    assert result["D"] == 2
    assert abs(result["tau"] - 8) <= 1


def test_image_command(tmp_path):
    write_cloud_csv(PointCloud(np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)), tmp_path / "square.csv")
    main(["persistence", "--input", str(tmp_path / "square.csv"), "--out", str(tmp_path / "d.json")])
    code = main(["image", "--input", str(tmp_path / "d.json"), "--dim", "1", "--resolution", "4", "6",
                 "--out", str(tmp_path / "img.csv")])
    assert code == 0
    rows = (tmp_path / "img.csv").read_text().splitlines()
    assert len(rows) == 4 and len(rows[0].split(",")) == 6
    assert main(["image", "--input", str(tmp_path / "d.json"), "--sigma", "-1"]) == 1


def test_config_file_replaces_defaults(tmp_path):
    config = tmp_path / "run.yaml"
    config.write_text(f"run:\n  model_path: {TOY_MODEL}\n  mode: wde\n  seed: 9\n")
    assert main(["--config", str(config), "analyze", "--out", str(tmp_path), TEXTS[0]]) == 0
    report = json.loads((tmp_path / f"{Path(TEXTS[0]).stem}.report.json").read_text())
    assert report["config"]["seed"] == 9
    assert set(report["diagrams"]) == {"wde"}
    assert main(["--config", str(tmp_path / "absent.yaml"), "analyze", TEXTS[0]]) == 1


def test_analyze_image_files_match_the_image_writer(tmp_path):
    assert analyze(tmp_path / "run", "--image", "--image-resolution", "4", "5") == 0
    stem = Path(TEXTS[0]).stem
    report = json.loads((tmp_path / "run" / f"{stem}.report.json").read_text())
    for entry in report["images"]["wde"]:
        image = PersistenceImage(
            np.array(entry["pixels"]),
            entry["sigma"],
            (tuple(entry["extent"]["birth"]), tuple(entry["extent"]["persistence"])),
            entry["weight"],
            entry["dim"],
        )
        image.write(tmp_path / "expected.csv")
        written = tmp_path / "run" / f"{stem}.wde.h{image.dim}.image.csv"
        assert written.read_text() == (tmp_path / "expected.csv").read_text()
        assert written.with_suffix(".json").read_text() == (tmp_path / "expected.json").read_text()
