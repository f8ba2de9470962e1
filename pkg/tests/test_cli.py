import json
import os

from udscheme.cli import main
from udscheme.conllu import read_conllu_file, write_conllu_file

from synth import synth_corpus
from test_harness import write_config, write_treebank


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_transform_command(tmp_path, capsys):
    src = str(tmp_path / "in.conllu")
    dst = str(tmp_path / "out.conllu")
    write_conllu_file(src, synth_corpus(10))
    code, out = run(
        capsys, "transform", "--input", src, "--output", dst,
        "--transformation", "det",
    )
    assert code == 0
    stats = json.loads(out)
    assert stats["changed"] is True and stats["arcs_rewritten"] > 0
    assert os.path.exists(dst)
    assert len(read_conllu_file(dst)) == 10


def test_transform_copula_label_override(tmp_path, capsys):
    src = str(tmp_path / "in.conllu")
    dst = str(tmp_path / "out.conllu")
    write_conllu_file(src, synth_corpus(10))
    code, out = run(
        capsys, "transform", "--input", src, "--output", dst,
        "--transformation", "copula", "--copula-noun-labels", "det,amod",
    )
    assert code == 0
    assert json.loads(out)["changed"] is True


def test_train_parse_evaluate_roundtrip(tmp_path, capsys):
    train_p = str(tmp_path / "train.conllu")
    test_p = str(tmp_path / "test.conllu")
    model_p = str(tmp_path / "model.txt")
    pred_p = str(tmp_path / "pred.conllu")
    write_conllu_file(train_p, synth_corpus(30))
    write_conllu_file(test_p, synth_corpus(10, seed=777))
    code, _ = run(
        capsys, "train", "--train", train_p, "--model", model_p,
        "--epochs", "3", "--seed", "1",
    )
    assert code == 0 and os.path.exists(model_p)
    code, _ = run(capsys, "parse", "--model", model_p, "--input", test_p,
                  "--output", pred_p)
    assert code == 0
    code, out = run(capsys, "evaluate", "--gold", test_p, "--pred", pred_p)
    assert code == 0
    scores = json.loads(out)
    assert 0.0 <= scores["uas"] <= 100.0
    assert scores["correct"] <= scores["total"]


def test_metrics_command_json_and_tsv(tmp_path, capsys):
    src = str(tmp_path / "in.conllu")
    write_conllu_file(src, synth_corpus(10))
    code, out = run(capsys, "metrics", "--input", src)
    assert code == 0
    fields = json.loads(out)
    assert set(fields) == {
        "distance",
        "predictability_bits",
        "derivation_perplexity",
        "derivation_complexity",
    }
    code, out = run(capsys, "metrics", "--input", src, "--out", "tsv")
    assert code == 0
    header, values = out.splitlines()
    assert header.split("\t")[0] == "distance"
    assert len(values.split("\t")) == 4


def test_experiment_command(tmp_path, capsys):
    paths = write_treebank(tmp_path, n_train=20, n_dev=5, n_test=5)
    out_dir = str(tmp_path / "out")
    cfg = write_config(tmp_path, paths, out_dir, seeds="1",
                       transformations="det case")
    code, out = run(capsys, "experiment", "--config", cfg)
    assert code == 0
    summary = json.loads(out.splitlines()[-1])
    assert summary["rows"] == 2
    assert os.path.exists(os.path.join(out_dir, "summary.json"))
