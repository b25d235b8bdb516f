"""End-to-end pipeline behavior and the command-line surface."""

import filecmp
import json
from pathlib import Path

import numpy as np
import pytest

from paratok import load_config, load_matrix, run_pipeline, save_matrix
from paratok.cli import main
from paratok.errors import StageFailure

from conftest import FIXTURE_DIR


def tree_bytes(root: Path) -> dict[str, bytes]:
    return {
        str(p.relative_to(root)): p.read_bytes()
        for p in sorted(root.rglob("*")) if p.is_file()
    }


@pytest.fixture(scope="module")
def pipeline_out(tmp_path_factory):
    out = tmp_path_factory.mktemp("pipeline") / "out"
    config = load_config(FIXTURE_DIR / "config.json", output_dir=out)
    vset, report = run_pipeline(config)
    return out, vset, report


class TestPipeline:
    def test_builds_and_round_trips(self, pipeline_out):
        out, vset, _ = pipeline_out
        from paratok import decode, dispatch_encode
        enc = dispatch_encode(vset, "[HA]", "ruwa shinkafa")
        assert decode(vset.vocabs["ha"], enc.ids) == "ruwa shinkafa"

    def test_outputs_exist(self, pipeline_out):
        out, _, _ = pipeline_out
        for rel in ("pivot.vocab", "mono/en.vocab", "mono/ha.vocab",
                    "lexicons/ha.tsv", "parallel/manifest.json",
                    "parallel/en.vocab", "parallel/ha.vocab", "parallel/aligned.mask",
                    "reports/category_report.json", "reports/coverage.json",
                    "reports/alignment_stats.json"):
            assert (out / rel).is_file(), rel

    def test_rerun_is_byte_identical(self, pipeline_out, tmp_path):
        out, _, _ = pipeline_out
        again = tmp_path / "again"
        config = load_config(FIXTURE_DIR / "config.json", output_dir=again)
        run_pipeline(config)
        assert tree_bytes(out) == tree_bytes(again)

    def test_stage_failure_is_prefixed(self, tmp_path):
        (tmp_path / "en.txt").write_text("", encoding="utf-8")
        (tmp_path / "ha.txt").write_text("ruwa\n", encoding="utf-8")
        (tmp_path / "provider.tsv").write_text("en\tha\tx\ty\n", encoding="utf-8")
        (tmp_path / "config.json").write_text(json.dumps({
            "languages": [
                {"code": "en", "corpus": "en.txt"},
                {"code": "ha", "corpus": "ha.txt"},
            ],
            "pivot": "en",
            "lexicon": "provider.tsv",
            "vocab_cap": 60,
            "char_subset": 5,
        }), encoding="utf-8")
        config = load_config(tmp_path / "config.json", output_dir=tmp_path / "out")
        with pytest.raises(StageFailure) as info:
            run_pipeline(config)
        assert str(info.value).startswith("train-pivot:")


class TestCliStages:
    """Each subcommand reproduces the pipeline's corresponding artifact."""

    def test_train_mono_matches_pipeline(self, pipeline_out, tmp_path):
        out, _, _ = pipeline_out
        target = tmp_path / "en.vocab"
        rc = main(["train-mono", "--corpus", str(FIXTURE_DIR / "en.txt"),
                   "--out", str(target), "--cap", "400"])
        assert rc == 0
        assert target.read_bytes() == (out / "pivot.vocab").read_bytes()

    def test_align_matches_pipeline(self, pipeline_out, tmp_path):
        out, _, _ = pipeline_out
        words = tmp_path / "words.txt"
        # words input: the classify stage's Word rows, in vocabulary order
        from paratok import Vocabulary, word_type_tokens
        pivot = Vocabulary.load(out / "pivot.vocab")
        words.write_text("\n".join(word_type_tokens(pivot)) + "\n", encoding="utf-8")
        target = tmp_path / "ha.tsv"
        rc = main(["align", "--words", str(words),
                   "--lexicon", str(FIXTURE_DIR / "provider.tsv"),
                   "--src", "en", "--tgt", "ha",
                   "--tgt-corpus", str(FIXTURE_DIR / "ha.txt"),
                   "--out", str(target)])
        assert rc == 0
        assert target.read_bytes() == (out / "lexicons" / "ha.tsv").read_bytes()

    def test_build_parallel_matches_pipeline(self, pipeline_out, tmp_path):
        out, _, _ = pipeline_out
        target = tmp_path / "parallel"
        rc = main(["build-parallel",
                   "--pivot-vocab", str(out / "pivot.vocab"),
                   "--lexicon-dir", str(out / "lexicons"),
                   "--mono-dir", str(out / "mono"),
                   "--out", str(target),
                   "--pivot", "en", "--languages", "en,ha",
                   "--language-tags", "[EN],[HA]",
                   "--cap", "400", "--char-subset", "30"])
        assert rc == 0
        cmp = filecmp.dircmp(target, out / "parallel")
        assert not cmp.diff_files and not cmp.left_only and not cmp.right_only

    def test_run_via_cli_matches_api(self, pipeline_out, tmp_path, capsys):
        out, _, _ = pipeline_out
        target = tmp_path / "cli_out"
        rc = main(["run", "--config", str(FIXTURE_DIR / "config.json"),
                   "--out", str(target)])
        assert rc == 0
        assert tree_bytes(target) == tree_bytes(out)


class TestCliCommands:
    def test_encode_decode_round_trip(self, pipeline_out, capsys):
        out, _, _ = pipeline_out
        rc = main(["encode", "--set", str(out / "parallel"), "--lang", "[HA]",
                   "--text", "ruwa shinkafa"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out.strip())
        assert set(payload) == {"ids", "attention_mask", "type_ids", "language_id"}
        assert payload["language_id"] == 1
        rc = main(["decode", "--set", str(out / "parallel"), "--lang", "[HA]",
                   "--ids", ",".join(map(str, payload["ids"]))])
        assert rc == 0
        assert capsys.readouterr().out.strip() == "ruwa shinkafa"

    def test_classify_tsv(self, pipeline_out, capsys):
        out, _, _ = pipeline_out
        rc = main(["classify", "--vocab", str(out / "pivot.vocab")])
        assert rc == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "[PAD]\tSpecial"
        assert any(line == "water\tWord" for line in lines)

    def test_metrics_fertility_csv(self, pipeline_out, capsys):
        out, _, _ = pipeline_out
        rc = main(["metrics", "fertility", "--set", str(out / "parallel"),
                   "--corpus", str(FIXTURE_DIR / "corpus.tsv")])
        assert rc == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "metric,tokenizer,language,value"
        assert len(lines) == 3
        for line in lines[1:]:
            value = float(line.split(",")[-1])
            assert value >= 1.0

    def test_metrics_parity_reference_is_one(self, pipeline_out, capsys):
        out, _, _ = pipeline_out
        rc = main(["metrics", "parity", "--set", str(out / "parallel"),
                   "--corpus", str(FIXTURE_DIR / "corpus.tsv"),
                   "--reference", "ha", "--langs", "ha"])
        assert rc == 0
        value = float(capsys.readouterr().out.splitlines()[1].split(",")[-1])
        assert value == 1.0

    def test_metrics_unk(self, pipeline_out, capsys):
        out, _, _ = pipeline_out
        rc = main(["metrics", "unk", "--set", str(out / "parallel"),
                   "--corpus", str(FIXTURE_DIR / "corpus.tsv")])
        assert rc == 0
        lines = capsys.readouterr().out.splitlines()
        assert all(int(line.split(",")[-1]) == 0 for line in lines[1:])

    def test_xsim_and_pca_commands(self, tmp_path, capsys):
        rng = np.random.default_rng(5)
        M = rng.normal(size=(6, 8)).astype(np.float32)
        src, tgt = tmp_path / "src.bin", tmp_path / "tgt.bin"
        save_matrix(M, src, lang="en")
        save_matrix(M, tgt, lang="ha")
        rc = main(["xsim", "--src", str(src), "--tgt", str(tgt)])
        assert rc == 0
        line = capsys.readouterr().out.splitlines()[1]
        assert line.split(",")[-1] == "0.000000"

        rc = main(["pca", "--embeddings", str(src), str(tgt), "--out",
                   str(tmp_path / "pca.csv")])
        assert rc == 0
        lines = (tmp_path / "pca.csv").read_text().splitlines()
        assert lines[0] == "label,pc1,pc2"
        assert len(lines) == 13

    def test_compose_and_cpt_init_commands(self, pipeline_out, tmp_path):
        out, vset, _ = pipeline_out
        tables = tmp_path / "tables.bin"
        rc = main(["init-tables", "--set", str(out / "parallel"),
                   "--d", "16", "--max-len", "32", "--seed", "1",
                   "--out", str(tables)])
        assert rc == 0
        composed = tmp_path / "composed.bin"
        rc = main(["compose", "--tables", str(tables), "--set", str(out / "parallel"),
                   "--lang", "[HA]", "--text", "ruwa shinkafa",
                   "--variant", "add-to-all", "--out", str(composed)])
        assert rc == 0
        matrix, header = load_matrix(composed)
        assert header["variant"] == "add-to-all"
        assert matrix.shape[1] == 16

        old_table = tmp_path / "old.bin"
        rng = np.random.default_rng(2)
        save_matrix(rng.normal(size=(vset.size, 8)).astype(np.float32), old_table)
        new_table = tmp_path / "new.bin"
        rc = main(["cpt-init", "--old-vocab", str(out / "parallel" / "en.vocab"),
                   "--old-table", str(old_table), "--set", str(out / "parallel"),
                   "--mode", "parallel", "--out", str(new_table)])
        assert rc == 0
        matrix, _ = load_matrix(new_table)
        assert matrix.shape == (vset.size, 8)

    def test_exit_codes(self, tmp_path, capsys):
        # I/O error: missing vocabulary file
        assert main(["classify", "--vocab", str(tmp_path / "absent.vocab")]) == 3
        err = capsys.readouterr().err
        assert "FileNotFound" in err
        # validation error: unknown language token
        out = tmp_path / "p"
        config = load_config(FIXTURE_DIR / "config.json", output_dir=tmp_path / "o")
        run_pipeline(config)
        rc = main(["encode", "--set", str(tmp_path / "o" / "parallel"),
                   "--lang", "[XX]", "--text", "x"])
        assert rc == 2
        assert "UnknownLanguageToken" in capsys.readouterr().err
