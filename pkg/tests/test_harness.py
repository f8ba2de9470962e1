import json
import os

import pytest

from udscheme.conllu import write_conllu_file
from udscheme.harness import (
    ExperimentConfig,
    TreebankSpec,
    emit_reports,
    load_config,
    run_experiment,
)
from udscheme.parsing.perceptron import Hyperparameters
from udscheme.transform import Transformation

from synth import synth_corpus


def write_treebank(tmp_path, lang="xx", n_train=30, n_dev=6, n_test=10):
    paths = {}
    for split, n, seed in (("train", n_train, 1), ("dev", n_dev, 2), ("test", n_test, 3)):
        p = str(tmp_path / ("%s-%s.conllu" % (lang, split)))
        write_conllu_file(p, synth_corpus(n, seed=seed * 1000))
        paths[split] = p
    return paths


def write_config(tmp_path, paths, out_dir, seeds="1 2", transformations=None):
    lines = [
        "[experiment]",
        "seeds = %s" % seeds,
        "output_dir = %s" % out_dir,
    ]
    if transformations:
        lines.append("transformations = %s" % transformations)
    lines += [
        "[parser]",
        "epochs = 2",
        "[treebank:xx]",
        "train = %s" % paths["train"],
        "dev = %s" % paths["dev"],
        "test = %s" % paths["test"],
    ]
    cfg = tmp_path / "exp.ini"
    cfg.write_text("\n".join(lines) + "\n")
    return str(cfg)


def test_load_config(tmp_path):
    paths = write_treebank(tmp_path)
    cfg_path = write_config(tmp_path, paths, str(tmp_path / "out"))
    cfg = load_config(cfg_path)
    assert cfg.seeds == [1, 2]
    assert cfg.hp.epochs == 2
    assert [t.value for t in cfg.transformations] == [
        t.value for t in Transformation
    ]
    assert cfg.treebanks[0].language == "xx"


def test_load_config_rejects_duplicate_seeds(tmp_path):
    paths = write_treebank(tmp_path)
    cfg_path = write_config(tmp_path, paths, str(tmp_path / "out"), seeds="1 1")
    with pytest.raises(ValueError):
        load_config(cfg_path)


def test_load_config_rejects_missing_files(tmp_path):
    paths = write_treebank(tmp_path)
    os.remove(paths["dev"])
    cfg_path = write_config(tmp_path, paths, str(tmp_path / "out"))
    with pytest.raises(FileNotFoundError):
        load_config(cfg_path)


def read_all(root):
    out = {}
    for dirpath, _, files in os.walk(root):
        for name in files:
            p = os.path.join(dirpath, name)
            with open(p, "rb") as f:
                out[os.path.relpath(p, root)] = f.read()
    return out


def test_full_grid_run_cache_and_reports(tmp_path):
    paths = write_treebank(tmp_path)
    out_dir = str(tmp_path / "out")
    cfg = load_config(write_config(tmp_path, paths, out_dir))

    report = run_experiment(cfg)
    assert len(report.rows) == len(Transformation)
    assert not report.errors
    # 2 UD-side trainings (shared) + 2 per non-excluded transformation
    active = [r for r in report.rows if not r.excluded]
    assert report.trainings_executed == 2 + 2 * len(active)
    emit_reports(report, out_dir)

    expected = [
        "rows.tsv",
        os.path.join("tables", "ud_wins.tsv"),
        os.path.join("tables", "top_positive.tsv"),
        os.path.join("tables", "top_negative.tsv"),
        os.path.join("tables", "coherence.tsv"),
        "hist.tsv",
        "hist.svg",
        "summary.json",
    ]
    for rel in expected:
        assert os.path.exists(os.path.join(out_dir, rel)), rel

    with open(os.path.join(out_dir, "summary.json")) as f:
        summary = json.load(f)
    assert summary["rows"] == len(report.rows)
    assert summary["positive_diffs"] + summary["negative_diffs"] <= len(active)

    # histogram bins sum to the number of non-excluded rows
    with open(os.path.join(out_dir, "hist.tsv")) as f:
        bins = [line.split("\t") for line in f.read().splitlines()[1:]]
    assert sum(int(b[2]) for b in bins) == len(active)

    before = read_all(out_dir)

    # rerun: nothing trains, reports byte-identical
    report2 = run_experiment(cfg)
    assert report2.trainings_executed == 0
    assert report2.summary == report.summary
    emit_reports(report2, out_dir)
    assert read_all(out_dir) == before


def test_noop_transformation_is_excluded(tmp_path):
    # a corpus with no mwe/goeswith arcs: the MWE cell must be excluded
    corpus = [s for s in synth_corpus(20) if all(
        t.deprel not in ("mwe", "goeswith") for t in s.tokens
    )]
    for split in ("train", "dev", "test"):
        write_conllu_file(str(tmp_path / ("%s.conllu" % split)), corpus)
    cfg = ExperimentConfig(
        treebanks=[TreebankSpec(
            "yy",
            str(tmp_path / "train.conllu"),
            str(tmp_path / "dev.conllu"),
            str(tmp_path / "test.conllu"),
        )],
        transformations=[Transformation.MWE],
        seeds=[1],
        hp=Hyperparameters(epochs=1),
        output_dir=str(tmp_path / "out"),
    )
    report = run_experiment(cfg)
    assert len(report.rows) == 1
    assert report.rows[0].excluded
    # excluded cells train nothing beyond the shared UD side
    assert report.trainings_executed == 1


def test_broken_treebank_recorded_not_fatal(tmp_path):
    good = write_treebank(tmp_path)
    bad = str(tmp_path / "bad.conllu")
    with open(bad, "w") as f:
        f.write("1\tonly\ttwo\tcolumns\n\n")
    cfg = ExperimentConfig(
        treebanks=[
            TreebankSpec("bad", bad, bad, bad),
            TreebankSpec("xx", good["train"], good["dev"], good["test"]),
        ],
        transformations=[Transformation.DET],
        seeds=[1],
        hp=Hyperparameters(epochs=1),
        output_dir=str(tmp_path / "out"),
    )
    report = run_experiment(cfg)
    assert any(lang == "bad" for lang, _, _ in report.errors)
    assert any(r.language == "xx" for r in report.rows)


def test_empty_rows_emit_without_failure(tmp_path):
    from udscheme.harness import ExperimentReport

    report = ExperimentReport()
    report.summary = {"rows": 0}
    out_dir = str(tmp_path / "out")
    os.makedirs(out_dir)
    written = emit_reports(report, out_dir)
    assert any(p.endswith("hist.svg") for p in written)
