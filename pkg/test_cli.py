import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from numpy.testing import assert_array_equal

import straincast
from dataset import load_csv
from evaluation import PredictionTable, read_predictions, write_predictions
from experiments import predict_run, train_model
from lstm import NetworkConfig
from model_store import load as load_artifact
from training import TrainConfig
from utils.errors import NumericDivergenceError

SMALL = ["--source", "loc1", "--target", "loc3", "--hidden", "4", "--dense", "4", "--window", "10",
         "--epochs", "2", "--batch-size", "64"]


@pytest.fixture
def run_csv(tmp_path):
    path = tmp_path / "run.csv"
    assert straincast.main(["simulate", "--train", "test", "--speed", "50", "--seed", "1", "--out", str(path)]) == 0
    return path


@pytest.fixture
def model(tmp_path, run_csv):
    path = tmp_path / "m.json"
    assert straincast.main(["train", "--data", str(run_csv), "--seed", "7", "--out", str(path)] + SMALL) == 0
    return path


class TestSimulate:
    def test_writes_channels(self, run_csv):
        run = load_csv(run_csv)
        assert len(run.labels) >= 2
        assert run.meta.train_type == "test"

    def test_prints_channel_summary(self, tmp_path, capsys):
        straincast.main(["simulate", "--speed", "50", "--out", str(tmp_path / "r.csv")])
        out = capsys.readouterr().out
        assert "loc1: length=" in out and "min=" in out and "max=" in out

    def test_same_flags_same_bytes(self, tmp_path, run_csv):
        again = tmp_path / "again.csv"
        straincast.main(["simulate", "--train", "test", "--speed", "50", "--seed", "1", "--out", str(again)])
        assert again.read_bytes() == run_csv.read_bytes()

    @pytest.mark.parametrize("argv", [
        ["simulate", "--speed", "0", "--out", "x.csv"],
        ["simulate", "--speed", "-5", "--out", "x.csv"],
        ["simulate", "--train", "freight", "--speed", "50", "--out", "x.csv"],
        ["simulate", "--out", "x.csv"],
        ["launch"],
        [],
    ])
    def test_usage_errors(self, argv, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert straincast.main(argv) == 1
        assert not (tmp_path / "x.csv").exists()

    def test_seed_from_environment(self, tmp_path, monkeypatch):
        monkeypatch.setenv("STRAINCAST_SEED", "1")
        env = tmp_path / "env.csv"
        flag = tmp_path / "flag.csv"
        straincast.main(["simulate", "--speed", "50", "--out", str(env)])
        straincast.main(["simulate", "--speed", "50", "--seed", "1", "--out", str(flag)])
        assert env.read_bytes() == flag.read_bytes()

    def test_config_file_overrides(self, tmp_path, monkeypatch):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"sim": {"noise_fraction": 0.0}}))
        monkeypatch.setenv("STRAINCAST_CONFIG", str(cfg))
        out = tmp_path / "quiet.csv"
        straincast.main(["simulate", "--speed", "50", "--out", str(out)])
        assert load_csv(out).channel("loc1")[0] == 0.0

    def test_unknown_config_key_is_usage_error(self, tmp_path, monkeypatch):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"sim": {"wind": 3}}))
        monkeypatch.setenv("STRAINCAST_CONFIG", str(cfg))
        assert straincast.main(["simulate", "--speed", "50", "--out", str(tmp_path / "o.csv")]) == 1


class TestTrain:
    def test_writes_artifact_and_report(self, model, capsys):
        artifact = load_artifact(model)
        assert artifact.network.lstm_hidden_sizes == [4]
        assert artifact.network.window_size == 10
        assert artifact.seed == 7
        report = json.loads(model.with_suffix(".report.json").read_text())
        assert len(report["epochs"]) == 2
        assert report["final"]["target"] == "loc3"
        assert {"rmse", "accuracy_percent", "n"} <= report["final"].keys()

    def test_identical_invocations_identical_artifacts(self, tmp_path, run_csv, model):
        again = tmp_path / "again.json"
        straincast.main(["train", "--data", str(run_csv), "--seed", "7", "--out", str(again)] + SMALL)
        assert again.read_bytes() == model.read_bytes()
        report = model.with_suffix(".report.json").read_bytes()
        assert again.with_suffix(".report.json").read_bytes() == report
        assert b'"seconds"' not in report

    def test_case1_preset_shapes(self, tmp_path, run_csv):
        out = tmp_path / "case1.json"
        assert straincast.main(["train", "--preset", "case1", "--data", str(run_csv), "--seed", "7",
                                "--out", str(out), "--epochs", "1"]) == 0
        network = load_artifact(out).network
        assert (network.lstm_hidden_sizes, network.dense_hidden, network.window_size) == ([20], 30, 50)

    def test_case4_preset_shapes(self, tmp_path, run_csv):
        out = tmp_path / "case4.json"
        assert straincast.main(["train", "--preset", "case4", "--data", str(run_csv), "--seed", "7",
                                "--out", str(out), "--epochs", "1"]) == 0
        artifact = load_artifact(out)
        assert artifact.network.lstm_hidden_sizes == [80, 60]
        assert artifact.network.window_size == 60
        assert artifact.target_label == "loc4"

    def test_missing_channel_lists_available(self, tmp_path, run_csv, capsys):
        argv = ["train", "--data", str(run_csv), "--out", str(tmp_path / "m.json"),
                "--source", "loc1", "--target", "loc9", "--epochs", "1"]
        assert straincast.main(argv) == 2
        assert "loc1, loc2, loc3, loc4, loc5" in capsys.readouterr().err

    def test_needs_preset_or_channels(self, tmp_path, run_csv):
        assert straincast.main(["train", "--data", str(run_csv), "--out", str(tmp_path / "m.json")]) == 1

    def test_undecodable_csv_is_a_data_error(self, tmp_path, capsys):
        data = tmp_path / "latin.csv"
        data.write_bytes(b"# dt=0.025\nloc1,loc3\n1,2\n\xff\xfe,4\n")
        assert straincast.main(["train", "--data", str(data), "--source", "loc1", "--target", "loc3",
                                "--out", str(tmp_path / "m.json")]) == 2
        assert "UTF-8" in capsys.readouterr().err

    def test_missing_data_file(self, tmp_path):
        assert straincast.main(["train", "--preset", "case1", "--data", str(tmp_path / "none.csv"),
                                "--out", str(tmp_path / "m.json")]) == 2

    def test_divergence_exit_code(self, tmp_path, run_csv, monkeypatch):
        def diverge(*args, **kwargs):
            raise NumericDivergenceError("epoch 1, batch 0: non-finite loss")
        monkeypatch.setattr(straincast, "train_model", diverge)
        assert straincast.main(["train", "--preset", "case1", "--data", str(run_csv),
                                "--out", str(tmp_path / "m.json")]) == 3


class TestPredict:
    def test_rows_follow_windowing_law(self, tmp_path, run_csv, model):
        out = tmp_path / "pred.csv"
        assert straincast.main(["predict", "--model", str(model), "--data", str(run_csv), "--out", str(out)]) == 0
        table = read_predictions(out)
        assert len(table) == load_csv(run_csv).length - 10 + 1
        assert table.has_target
        assert table.index[0] == 9

    def test_loaded_artifact_matches_in_memory_model(self, tmp_path, run_csv):
        run = load_csv(run_csv)
        network = NetworkConfig(lstm_hidden_sizes=[4], dense_hidden=4, window_size=10)
        artifact, _, _ = train_model(run, network, TrainConfig(epochs=2, batch_size=64, seed=7),
                                     "loc1", "loc3", created_at="1970-01-01T00:00:00+00:00",
                                     show_progress=False)
        in_memory = predict_run(artifact, run)

        model = tmp_path / "m.json"
        straincast.main(["train", "--data", str(run_csv), "--seed", "7", "--out", str(model)] + SMALL)
        out = tmp_path / "pred.csv"
        straincast.main(["predict", "--model", str(model), "--data", str(run_csv), "--out", str(out)])
        assert_array_equal(read_predictions(out).predicted, in_memory.predicted)

    def test_missing_source_channel(self, tmp_path, model, capsys):
        data = tmp_path / "other.csv"
        data.write_text("# dt=0.025\nloc3,loc4\n" + "".join(f"{i},{i}\n" for i in range(30)))
        assert straincast.main(["predict", "--model", str(model), "--data", str(data),
                                "--out", str(tmp_path / "p.csv")]) == 2
        assert "'loc1'" in capsys.readouterr().err

    def test_corrupt_artifact_seed(self, tmp_path, run_csv, model, capsys):
        doc = json.loads(model.read_text())
        doc["seed"] = "seven"
        model.write_text(json.dumps(doc))
        assert straincast.main(["predict", "--model", str(model), "--data", str(run_csv),
                                "--out", str(tmp_path / "p.csv")]) == 2
        assert "seed: " in capsys.readouterr().err

    def test_window_longer_than_series(self, tmp_path, model):
        data = tmp_path / "short.csv"
        data.write_text("# dt=0.025\nloc1\n" + "".join(f"{i}\n" for i in range(5)))
        assert straincast.main(["predict", "--model", str(model), "--data", str(data),
                                "--out", str(tmp_path / "p.csv")]) == 2


class TestEvaluate:
    def test_perfect_predictions(self, tmp_path, capsys):
        path = tmp_path / "pred.csv"
        t = np.array([1.0, -2.0, 3.5])
        write_predictions(PredictionTable(index=np.arange(3), time_s=np.arange(3) * 0.025, predicted=t, target=t), path)
        assert straincast.main(["evaluate", "--predictions", str(path)]) == 0
        assert "RMSE=0.000 microstrain, Accuracy=100.000%" in capsys.readouterr().out

    def test_appends_to_report(self, tmp_path, run_csv, model, capsys):
        report = model.with_suffix(".report.json")
        assert straincast.main(["evaluate", "--model", str(model), "--data", str(run_csv),
                                "--report", str(report)]) == 0
        line = capsys.readouterr().out.strip().splitlines()[-1]
        assert line.startswith("RMSE=") and line.endswith("%")
        evaluations = json.loads(report.read_text())["evaluations"]
        assert len(evaluations) == 1
        assert f"RMSE={evaluations[0]['rmse']:.3f} microstrain" in line

    def test_no_target_column(self, tmp_path):
        path = tmp_path / "pred.csv"
        write_predictions(PredictionTable(index=np.arange(2), time_s=np.zeros(2), predicted=np.ones(2)), path)
        assert straincast.main(["evaluate", "--predictions", str(path)]) == 2

    def test_needs_an_input(self):
        assert straincast.main(["evaluate"]) == 1


class TestReport:
    def test_svg_and_csv(self, tmp_path, run_csv, model):
        pred = tmp_path / "pred.csv"
        straincast.main(["predict", "--model", str(model), "--data", str(run_csv), "--out", str(pred)])
        svg, csv = tmp_path / "plot.svg", tmp_path / "plot.csv"
        assert straincast.main(["report", "--predictions", str(pred), "--svg", str(svg), "--csv", str(csv)]) == 0

        root = ET.fromstring(svg.read_text())
        ns = "{http://www.w3.org/2000/svg}"
        polylines = root.findall(f".//{ns}polyline")
        assert len(polylines) == 2
        texts = [t.text for t in root.iter(f"{ns}text")]
        for label in ("time (s)", "strain (microstrain)", "Target", "Predicted"):
            assert label in texts
        n = len(read_predictions(pred))
        assert len(csv.read_text().splitlines()) == n + 1

        first = svg.read_bytes()
        straincast.main(["report", "--predictions", str(pred), "--svg", str(svg), "--csv", str(csv)])
        assert svg.read_bytes() == first

    def test_default_paths(self, tmp_path, run_csv, model):
        pred = tmp_path / "pred.csv"
        straincast.main(["predict", "--model", str(model), "--data", str(run_csv), "--out", str(pred)])
        straincast.main(["report", "--predictions", str(pred)])
        assert (tmp_path / "pred.svg").exists()
        assert (tmp_path / "pred.plot.csv").exists()

    def test_empty_predictions(self, tmp_path):
        pred = tmp_path / "pred.csv"
        pred.write_text("index,time_s,predicted_microstrain,target_microstrain\n")
        assert straincast.main(["report", "--predictions", str(pred)]) == 2

    def test_undecodable_predictions(self, tmp_path):
        pred = tmp_path / "pred.csv"
        pred.write_bytes(b"index,time_s,predicted_microstrain,target_microstrain\n0,0.0,\xff,1.0\n")
        assert straincast.main(["report", "--predictions", str(pred)]) == 2

    def test_needs_predictions_or_run(self, tmp_path, run_csv):
        assert straincast.main(["report"]) == 1
        assert straincast.main(["report", "--run", str(run_csv), "--predictions", str(run_csv)]) == 1

    def test_run_channels(self, tmp_path, run_csv):
        svg = tmp_path / "channels.svg"
        assert straincast.main(["report", "--run", str(run_csv), "--svg", str(svg)]) == 0
        root = ET.fromstring(svg.read_text())
        ns = "{http://www.w3.org/2000/svg}"
        labels = load_csv(run_csv).labels
        assert len(root.findall(f".//{ns}polyline")) == len(labels)
        texts = [t.text for t in root.iter(f"{ns}text")]
        for label in labels + ["time (s)", "strain (microstrain)"]:
            assert label in texts

        first = svg.read_bytes()
        straincast.main(["report", "--run", str(run_csv), "--svg", str(svg)])
        assert svg.read_bytes() == first

    def test_run_default_path(self, tmp_path, run_csv):
        assert straincast.main(["report", "--run", str(run_csv)]) == 0
        assert (tmp_path / "run.svg").exists()
