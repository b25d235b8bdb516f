"""End-to-end build: train pivot, classify, align, train monolinguals, assemble.

Every stage writes its artifacts under the output directory through atomic
renames, and each artifact is byte-identical across reruns on the same
inputs. The CLI subcommands call the same stage functions, so a subcommand
run from a prior stage's files reproduces the pipeline's output exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .corpus import PipelineConfig, atomic_write_text, ingest_corpus
from .errors import StageFailure
from .lexicon import BilingualLexicon, TranslationProvider, TsvProvider, align_word_tokens, alignment_coverage
from .parallel import ParallelVocabSet, alignment_stats, build_parallel_set, save_parallel_set
from .scripts import ScriptProfile
from .taxonomy import category_report, word_type_tokens
from .wordpiece import Vocabulary, train_wordpiece

PIVOT_VOCAB_NAME = "pivot.vocab"
MONO_DIR = "mono"
LEXICON_DIR = "lexicons"
PARALLEL_DIR = "parallel"
REPORT_DIR = "reports"


@dataclass
class PipelineReport:
    """Summary emitted next to the built vocabulary set."""

    category_report: dict
    coverage: dict[str, dict[str, float]]
    lexicon_status_counts: dict[str, dict[str, int]]
    stats: dict

    def to_json_dict(self) -> dict:
        return {
            "category_report": self.category_report,
            "coverage": self.coverage,
            "lexicon_status_counts": self.lexicon_status_counts,
            "alignment_stats": self.stats,
        }


def _stage(name: str):
    def wrap(fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except StageFailure:
            raise
        except Exception as exc:
            raise StageFailure(name, exc) from exc
    return wrap


def _lexicon_tsv(lexicon: BilingualLexicon) -> str:
    return "\n".join(
        "\t".join([e.source, e.target or "", e.back or "", e.status.value])
        for e in lexicon.entries.values()
    ) + "\n"


def train_language(config: PipelineConfig, code: str) -> Vocabulary:
    """Train one language's monolingual vocabulary from its corpus."""
    lines = ingest_corpus(config.spec_for(code).corpus)
    return train_wordpiece(
        lines,
        vocab_cap=config.vocab_cap,
        min_pair_frequency=config.min_pair_frequency,
        lowercase=config.lowercase,
    )


def align_language(config: PipelineConfig, pivot_vocab: Vocabulary,
                   provider: TranslationProvider, code: str) -> BilingualLexicon:
    """Align the pivot's word-type tokens into one target language."""
    profile = ScriptProfile.from_corpus(ingest_corpus(config.spec_for(code).corpus))
    words = word_type_tokens(pivot_vocab)
    return align_word_tokens(words, provider, config.pivot, code, target_profile=profile)


def run_pipeline(config: PipelineConfig) -> tuple[ParallelVocabSet, PipelineReport]:
    """Execute the full build and write all artifacts under the output dir.

    Stage errors propagate wrapped in StageFailure with the stage name.
    """
    config.validate()
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    for sub in (MONO_DIR, LEXICON_DIR, PARALLEL_DIR, REPORT_DIR):
        (out / sub).mkdir(exist_ok=True)

    pivot_vocab = _stage("train-pivot")(train_language, config, config.pivot)
    atomic_write_text(out / PIVOT_VOCAB_NAME, "\n".join(pivot_vocab.tokens) + "\n")

    report = _stage("classify")(category_report, pivot_vocab)
    atomic_write_text(out / REPORT_DIR / "category_report.json",
                      json.dumps(report.to_json_dict(), indent=2, sort_keys=True) + "\n")

    provider = _stage("align")(TsvProvider, config.lexicon)
    lexicons: dict[str, BilingualLexicon] = {}
    for code in config.codes:
        if code == config.pivot:
            continue
        lexicon = _stage(f"align[{code}]")(align_language, config, pivot_vocab, provider, code)
        atomic_write_text(out / LEXICON_DIR / f"{code}.tsv", _lexicon_tsv(lexicon))
        lexicons[code] = lexicon

    mono_vocabs: dict[str, Vocabulary] = {config.pivot: pivot_vocab}
    for code in config.codes:
        if code == config.pivot:
            continue
        vocab = _stage(f"train-mono[{code}]")(train_language, config, code)
        mono_vocabs[code] = vocab
    for code in config.codes:
        atomic_write_text(out / MONO_DIR / f"{code}.vocab",
                          "\n".join(mono_vocabs[code].tokens) + "\n")

    vocab_set = _stage("build-parallel")(
        build_parallel_set,
        pivot_vocab,
        lexicons,
        mono_vocabs,
        pivot=config.pivot,
        languages=config.codes,
        language_tags=config.tags,
        cap=config.vocab_cap,
        char_subset=config.char_subset,
    )
    save_parallel_set(vocab_set, out / PARALLEL_DIR)

    coverage = {
        code: alignment_coverage(lexicons[code], pivot_vocab) for code in sorted(lexicons)
    }
    status_counts = {code: lexicons[code].status_counts() for code in sorted(lexicons)}
    stats = alignment_stats(vocab_set)
    pipeline_report = PipelineReport(
        category_report=report.to_json_dict(),
        coverage=coverage,
        lexicon_status_counts=status_counts,
        stats=stats,
    )
    atomic_write_text(out / REPORT_DIR / "coverage.json",
                      json.dumps(coverage, indent=2, sort_keys=True) + "\n")
    atomic_write_text(out / REPORT_DIR / "lexicon_status_counts.json",
                      json.dumps(status_counts, indent=2, sort_keys=True) + "\n")
    atomic_write_text(out / REPORT_DIR / "alignment_stats.json",
                      json.dumps(stats, indent=2, sort_keys=True) + "\n")
    return vocab_set, pipeline_report
