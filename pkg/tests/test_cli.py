import json
from fractions import Fraction

import pytest

from triway import to_fraction
from triway.cli import main


def run_cli(*args):
    return main(list(args))


@pytest.fixture
def pipeline_dir(tmp_path, tweets_path, embeddings_path):
    """Run extract + train once into a temp workspace."""
    features = tmp_path / "features.csv"
    model = tmp_path / "model.json"
    assert run_cli(
        "extract",
        "--annotations", str(tweets_path),
        "--embeddings", str(embeddings_path),
        "--dim", "10", "--vocab-size", "8",
        "--features", str(features),
    ) == 0
    assert run_cli(
        "train",
        "--features", str(features),
        "--model", str(model),
        "--step", "0.25",
    ) == 0
    return tmp_path


def test_extract_writes_twenty_rows(pipeline_dir):
    lines = (pipeline_dir / "features.csv").read_text().splitlines()
    assert len(lines) == 21
    assert lines[0] == "id,s_np,s_qp,c_nern,b_voc,label"


def test_extract_is_deterministic(pipeline_dir, tweets_path, embeddings_path, tmp_path):
    again = tmp_path / "again.csv"
    run_cli("extract", "--annotations", str(tweets_path),
            "--embeddings", str(embeddings_path),
            "--dim", "10", "--vocab-size", "8", "--features", str(again))
    assert again.read_bytes() == (pipeline_dir / "features.csv").read_bytes()
    assert (tmp_path / "again.meta.json").read_bytes() == \
        (pipeline_dir / "features.meta.json").read_bytes()


def test_extract_missing_embeddings_exits_2(tmp_path, tweets_path, capsys):
    code = run_cli("extract", "--annotations", str(tweets_path),
                   "--embeddings", str(tmp_path / "nope.txt"),
                   "--features", str(tmp_path / "f.csv"))
    assert code == 2
    assert "nope.txt" in capsys.readouterr().err


def test_extract_reports_fallback_counts(tmp_path, tweets_path, embeddings_path, capsys):
    run_cli("extract", "--annotations", str(tweets_path),
            "--embeddings", str(embeddings_path),
            "--dim", "10", "--vocab-size", "8",
            "--features", str(tmp_path / "f.csv"))
    out = capsys.readouterr().out
    assert "extracted 20 records" in out
    assert "s_qp fallbacks: 11" in out  # the 11 fixture tweets without a clause


def test_train_outputs_valid_thresholds(pipeline_dir):
    model = json.loads((pipeline_dir / "model.json").read_text())
    alpha = to_fraction(model["thresholds"]["alpha"])
    beta = to_fraction(model["thresholds"]["beta"])
    assert 0 <= beta < alpha <= 1
    assert model["universe"] == 20
    assert (pipeline_dir / "model.trace.json").is_file()


def test_train_is_deterministic(pipeline_dir, tmp_path):
    model2 = tmp_path / "model2.json"
    run_cli("train", "--features", str(pipeline_dir / "features.csv"),
            "--meta", str(pipeline_dir / "features.meta.json"),
            "--model", str(model2), "--step", "0.25")
    assert model2.read_bytes() == (pipeline_dir / "model.json").read_bytes()


def test_train_custom_initial_thresholds_and_bins(pipeline_dir, tmp_path):
    model_path = tmp_path / "custom.json"
    code = run_cli("train", "--features", str(pipeline_dir / "features.csv"),
                   "--meta", str(pipeline_dir / "features.meta.json"),
                   "--model", str(model_path),
                   "--alpha0", "0.9", "--beta0", "0.1",
                   "--bins", "3", "--step", "0.2")
    assert code == 0
    model = json.loads(model_path.read_text())
    assert model["breaks_np"]["k"] == 3
    trace = json.loads(model_path.with_suffix(".trace.json").read_text())
    assert trace["rounds"][0]["initial"] == {"alpha": "0.9", "beta": "0.1"}
    alpha = to_fraction(model["thresholds"]["alpha"])
    beta = to_fraction(model["thresholds"]["beta"])
    assert beta >= Fraction(1, 10) and alpha <= Fraction(9, 10)


def test_train_rejects_inverted_initial_thresholds(pipeline_dir, capsys):
    code = run_cli("train", "--features", str(pipeline_dir / "features.csv"),
                   "--meta", str(pipeline_dir / "features.meta.json"),
                   "--model", str(pipeline_dir / "m3.json"),
                   "--alpha0", "0.1", "--beta0", "0.9")
    assert code == 2
    assert "beta" in capsys.readouterr().err


def test_train_rejects_zero_step(pipeline_dir, capsys):
    code = run_cli("train", "--features", str(pipeline_dir / "features.csv"),
                   "--model", str(pipeline_dir / "m2.json"), "--step", "0")
    assert code == 2
    assert "step" in capsys.readouterr().err


def test_train_rejects_single_record(tmp_path, capsys):
    features = tmp_path / "one.csv"
    features.write_text("id,s_np,s_qp,c_nern,b_voc,label\nx,0.1,0.2,-1,0,1\n")
    (tmp_path / "one.meta.json").write_text("{}")
    code = run_cli("train", "--features", str(features),
                   "--model", str(tmp_path / "m.json"))
    assert code == 2
    assert "at least 2" in capsys.readouterr().err


def test_classify_emits_decisions(pipeline_dir, capsys):
    out = pipeline_dir / "decisions.csv"
    code = run_cli("classify", "--features", str(pipeline_dir / "features.csv"),
                   "--model", str(pipeline_dir / "model.json"),
                   "--decisions", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "id,decision"
    assert len(lines) == 21
    verdicts = {line.split(",")[1] for line in lines[1:]}
    assert verdicts <= {"Satirical", "Legitimate", "Deferred"}


def test_evaluate_text_report(pipeline_dir, capsys):
    code = run_cli("evaluate", "--features", str(pipeline_dir / "features.csv"),
                   "--model", str(pipeline_dir / "model.json"), "--pawlak")
    assert code == 0
    out = capsys.readouterr().out
    assert "GTRS" in out and "Pawlak" in out


def test_evaluate_json_schema_and_identity(pipeline_dir, capsys):
    code = run_cli("evaluate", "--features", str(pipeline_dir / "features.csv"),
                   "--model", str(pipeline_dir / "model.json"), "--json")
    assert code == 0
    stdout = capsys.readouterr().out
    payload = json.loads(stdout[stdout.index("{"):])
    assert set(payload) == {"alpha", "beta", "accuracy", "coverage",
                            "modified_accuracy", "counts"}
    # modified accuracy recomputed externally from the reported numbers
    expected = payload["accuracy"] * payload["coverage"] + \
        0.5 * (1 - payload["coverage"])
    assert payload["modified_accuracy"] == pytest.approx(expected, abs=1e-12)


def test_evaluate_pawlak_pure_class_accuracy(pipeline_dir, capsys):
    run_cli("evaluate", "--features", str(pipeline_dir / "features.csv"),
            "--model", str(pipeline_dir / "model.json"), "--pawlak", "--json")
    stdout = capsys.readouterr().out
    payload = json.loads(stdout[stdout.index("{"):])
    assert payload["pawlak"]["alpha"] == 1.0
    assert payload["pawlak"]["accuracy"] == 1.0
    assert payload["pawlak"]["counts"]["bnd"] == 8  # the two mixed groups defer


def test_evaluate_report_file_matches_stdout(pipeline_dir, capsys):
    report = pipeline_dir / "report.json"
    run_cli("evaluate", "--features", str(pipeline_dir / "features.csv"),
            "--model", str(pipeline_dir / "model.json"), "--json",
            "--report", str(report))
    stdout = capsys.readouterr().out
    payload_out = json.loads(stdout[stdout.index("{"):stdout.rindex("}") + 1])
    assert payload_out == json.loads(report.read_text())


def test_config_file_and_flag_precedence(tmp_path, tweets_path, embeddings_path,
                                         monkeypatch, capsys):
    cfg = tmp_path / "triway.cfg"
    cfg.write_text(
        "# pipeline\n"
        f"annotations = {tweets_path}\n"
        f"embeddings = {embeddings_path}\n"
        "dim = 10\n"
        "vocab-size = 4\n"
        f"features = {tmp_path / 'from_cfg.csv'}\n"
    )
    monkeypatch.setenv("TRIWAY_CONFIG", str(cfg))
    assert run_cli("extract", "--vocab-size", "8") == 0
    out = capsys.readouterr().out
    assert "vocab_size = 8" in out  # flag beats config file
    assert (tmp_path / "from_cfg.csv").is_file()


def test_config_file_unknown_key_rejected(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("bogus = 1\n")
    monkeypatch.setenv("TRIWAY_CONFIG", str(cfg))
    assert run_cli("extract") == 2
    assert "bogus" in capsys.readouterr().err
