"""Command-line surface tying the pipeline together.

Exit codes: 0 ok, 2 validation, 3 I/O, 4 stage failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import errors
from .corpus import atomic_write_text, ingest_corpus, load_config
from .embeddings import (
    ComposeVariant,
    CptMode,
    compose,
    cpt_init_new_embeddings,
    init_tables,
    load_matrix,
    load_tables,
    save_matrix,
    save_tables,
)
from .lexicon import BilingualLexicon, TsvProvider, align_word_tokens
from .metrics import (
    MonoTokenizer,
    ParallelCorpus,
    ParallelSetTokenizer,
    PerLanguageTokenizer,
    fertility,
    metrics_csv,
    parity,
    pca_csv,
    pca_project,
    unk_count,
    xsim_error_rate,
)
from .parallel import build_parallel_set, dispatch_encode, load_parallel_set, save_parallel_set
from .pipeline import run_pipeline
from .scripts import ScriptProfile
from .taxonomy import classify
from .wordpiece import Vocabulary, decode, encode, train_wordpiece

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_STAGE = 4

_VALIDATION_ERRORS = (errors.ValidationError, errors.UnknownLanguageToken,
                      errors.CapTooSmall, errors.CapExceededBySpecials, ValueError)
_IO_ERRORS = (FileNotFoundError, IsADirectoryError, PermissionError, errors.NotUtf8Fatal)


def _error_name(exc: Exception) -> str:
    name = type(exc).__name__
    return {"FileNotFoundError": "FileNotFound"}.get(name, name)


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        atomic_write_text(args.out, text)
    else:
        sys.stdout.write(text)


def _load_vocab(path: str) -> Vocabulary:
    if not Path(path).is_file():
        raise FileNotFoundError(f"no such vocabulary file: {path}")
    return Vocabulary.load(path)


def _tokenizer_handle(args):
    """Build the tokenizer named by --set / --vocab / --mono-dir."""
    chosen = [name for name in ("set", "vocab", "mono_dir") if getattr(args, name, None)]
    if len(chosen) != 1:
        raise errors.ValidationError("pass exactly one of --set, --vocab, --mono-dir")
    if args.set:
        return ParallelSetTokenizer(load_parallel_set(args.set), name=Path(args.set).name)
    if args.vocab:
        return MonoTokenizer(_load_vocab(args.vocab), name=Path(args.vocab).name)
    mono_dir = Path(args.mono_dir)
    vocabs = {p.stem.split(".")[0]: Vocabulary.load(p) for p in sorted(mono_dir.glob("*.vocab"))}
    if not vocabs:
        raise FileNotFoundError(f"no *.vocab files in {mono_dir}")
    return PerLanguageTokenizer(vocabs, name=mono_dir.name)


# ---------------------------------------------------------------------------
# Subcommand implementations.

def cmd_train_mono(args) -> int:
    lines = ingest_corpus(args.corpus)
    vocab = train_wordpiece(
        lines,
        vocab_cap=args.cap,
        min_pair_frequency=args.min_pair_frequency,
        lowercase=not args.no_lowercase,
    )
    atomic_write_text(args.out, "\n".join(vocab.tokens) + "\n")
    return EXIT_OK


def cmd_classify(args) -> int:
    vocab = _load_vocab(args.vocab)
    tags = args.language_tags.split(",") if args.language_tags else ()
    lines = [f"{token}\t{classify(token, vocab, tags).value}" for token in vocab.tokens]
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_align(args) -> int:
    words = [line for line in ingest_corpus(args.words)]
    provider = TsvProvider(args.lexicon)
    profile = None
    if args.tgt_corpus:
        profile = ScriptProfile.from_corpus(ingest_corpus(args.tgt_corpus))
    lexicon = align_word_tokens(words, provider, args.src, args.tgt, target_profile=profile)
    text = "\n".join(
        "\t".join([e.source, e.target or "", e.back or "", e.status.value])
        for e in lexicon.entries.values()
    ) + "\n"
    _emit(args, text)
    return EXIT_OK


def cmd_build_parallel(args) -> int:
    pivot_vocab = _load_vocab(args.pivot_vocab)
    languages = args.languages.split(",")
    lexicons = {}
    mono_vocabs = {}
    for code in languages:
        if code != args.pivot:
            lex_path = Path(args.lexicon_dir) / f"{code}.tsv"
            if not lex_path.is_file():
                raise errors.MissingLexicon(f"no lexicon file {lex_path}")
            lexicons[code] = BilingualLexicon.load_tsv(lex_path, src_lang=args.pivot, tgt_lang=code)
        mono_path = Path(args.mono_dir) / f"{code}.vocab"
        if not mono_path.is_file():
            raise errors.MissingMonolingualVocab(f"no vocabulary file {mono_path}")
        mono_vocabs[code] = Vocabulary.load(mono_path)
    tags = args.language_tags.split(",") if args.language_tags else None
    vocab_set = build_parallel_set(
        pivot_vocab, lexicons, mono_vocabs,
        pivot=args.pivot, languages=languages, language_tags=tags,
        cap=args.cap, char_subset=args.char_subset,
    )
    save_parallel_set(vocab_set, args.out)
    return EXIT_OK


def _iter_texts(args) -> list[str]:
    if args.text is not None:
        return [args.text]
    return ingest_corpus(args.input)


def cmd_encode(args) -> int:
    out_lines = []
    if args.set:
        vocab_set = load_parallel_set(args.set)
        for text in _iter_texts(args):
            enc = dispatch_encode(vocab_set, args.lang, text)
            out_lines.append(json.dumps(enc.to_json_dict()))
    else:
        vocab = _load_vocab(args.vocab)
        for text in _iter_texts(args):
            out_lines.append(json.dumps(encode(vocab, text).to_json_dict()))
    _emit(args, "\n".join(out_lines) + "\n")
    return EXIT_OK


def cmd_decode(args) -> int:
    if args.set:
        vocab_set = load_parallel_set(args.set)
        vocab = vocab_set.vocabs[vocab_set.lang_for_tag(args.lang)]
    else:
        vocab = _load_vocab(args.vocab)
    ids = [int(part) for part in args.ids.split(",") if part != ""]
    _emit(args, decode(vocab, ids) + "\n")
    return EXIT_OK


def cmd_metrics(args) -> int:
    if args.metric == "parity" and not args.reference:
        raise errors.ValidationError("parity requires --reference")
    tokenizer = _tokenizer_handle(args)
    corpus = ParallelCorpus.from_tsv(args.corpus)
    langs = args.langs.split(",") if args.langs else corpus.languages
    rows = []
    if args.metric == "fertility":
        for lang in langs:
            value = fertility(tokenizer, corpus.column(lang), lang,
                              na_if_unk_majority=args.na_on_unk_majority)
            rows.append(("fertility", tokenizer.name, lang, value))
    elif args.metric == "parity":
        for lang in langs:
            value = parity(tokenizer, corpus, lang, args.reference,
                           corpus_level=args.corpus_level)
            rows.append(("parity", tokenizer.name, lang, value))
    else:
        for lang in langs:
            value = unk_count(tokenizer, corpus.column(lang), lang)
            rows.append(("unk", tokenizer.name, lang, value))
    _emit(args, metrics_csv(rows))
    return EXIT_OK


def cmd_xsim(args) -> int:
    src, src_header = load_matrix(args.src)
    tgt, tgt_header = load_matrix(args.tgt)
    value = xsim_error_rate(src, tgt, k=args.k)
    rows = [("xsim_error_rate",
             f"{src_header.get('lang') or Path(args.src).stem}->{tgt_header.get('lang') or Path(args.tgt).stem}",
             "", value)]
    _emit(args, metrics_csv(rows))
    return EXIT_OK


def cmd_pca(args) -> int:
    matrices = []
    labels = []
    for path in args.embeddings:
        matrix, header = load_matrix(path)
        matrices.append(matrix)
        labels.extend([header.get("lang") or Path(path).stem] * matrix.shape[0])
    stacked = np.vstack(matrices)
    coords = pca_project(stacked, out_dims=args.out_dims)
    _emit(args, pca_csv(coords, labels))
    return EXIT_OK


def cmd_init_tables(args) -> int:
    vocab_set = load_parallel_set(args.set)
    tables = init_tables(vocab_set.size, len(vocab_set.languages),
                         d=args.d, max_len=args.max_len, seed=args.seed)
    save_tables(tables, args.out)
    return EXIT_OK


def cmd_compose(args) -> int:
    tables = load_tables(args.tables)
    vocab_set = load_parallel_set(args.set)
    enc = dispatch_encode(vocab_set, args.lang, args.text)
    variant = ComposeVariant(args.variant)
    mask = vocab_set.aligned_mask if variant is ComposeVariant.ADD_TO_UNALIGNED_ONLY else None
    composed = compose(tables, enc, variant, aligned_mask=mask)
    save_matrix(composed.matrix, args.out, lang=args.lang, seed=tables.seed,
                variant=variant.value)
    return EXIT_OK


def cmd_cpt_init(args) -> int:
    old_vocab = _load_vocab(args.old_vocab)
    old_table, _ = load_matrix(args.old_table)
    vocab_set = load_parallel_set(args.set)
    new_table = cpt_init_new_embeddings(old_vocab, old_table, vocab_set,
                                        mode=CptMode(args.mode))
    save_matrix(new_table, args.out, seed=None, variant=None)
    return EXIT_OK


def cmd_run(args) -> int:
    config = load_config(args.config, output_dir=args.out)
    _, report = run_pipeline(config)
    sys.stdout.write(json.dumps(report.to_json_dict(), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser.

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paratok",
        description="Index-aligned per-language WordPiece tokenizers and their evaluation metrics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train-mono", help="train a WordPiece vocabulary from a line corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--cap", type=int, default=30_522)
    p.add_argument("--min-pair-frequency", type=int, default=2)
    p.add_argument("--no-lowercase", action="store_true")
    p.set_defaults(func=cmd_train_mono)

    p = sub.add_parser("classify", help="emit token<TAB>category for every vocabulary entry")
    p.add_argument("--vocab", required=True)
    p.add_argument("--language-tags", default="", help="comma-separated identity tokens, e.g. [EN],[HA]")
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("align", help="translate and filter word-type tokens into a lexicon TSV")
    p.add_argument("--words", required=True, help="file with one source token per line")
    p.add_argument("--lexicon", required=True, help="4-column provider TSV (src, tgt, token, translation)")
    p.add_argument("--src", required=True)
    p.add_argument("--tgt", required=True)
    p.add_argument("--tgt-corpus", help="target-language corpus for the script profile")
    p.add_argument("--out")
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("build-parallel", help="assemble the index-aligned vocabulary set")
    p.add_argument("--pivot-vocab", required=True)
    p.add_argument("--lexicon-dir", required=True)
    p.add_argument("--mono-dir", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--pivot", required=True)
    p.add_argument("--languages", required=True, help="comma-separated codes, pivot included")
    p.add_argument("--language-tags", default="")
    p.add_argument("--cap", type=int, default=30_522)
    p.add_argument("--char-subset", type=int, default=1_000)
    p.set_defaults(func=cmd_build_parallel)

    p = sub.add_parser("encode", help="encode text to one JSON object per line")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--set", help="parallel set directory")
    group.add_argument("--vocab", help="single vocabulary file")
    p.add_argument("--lang", help="language identity token, e.g. [HA] (with --set)")
    p.add_argument("--text")
    p.add_argument("--input", help="file with one text per line")
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode a comma-separated id list back to text")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--set")
    group.add_argument("--vocab")
    p.add_argument("--lang")
    p.add_argument("--ids", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("metrics", help="fertility / parity / unk over a parallel corpus TSV")
    p.add_argument("metric", choices=["fertility", "parity", "unk"])
    p.add_argument("--corpus", required=True)
    p.add_argument("--set")
    p.add_argument("--vocab")
    p.add_argument("--mono-dir")
    p.add_argument("--langs", default="", help="comma-separated subset of corpus languages")
    p.add_argument("--reference", default="", help="reference language for parity")
    p.add_argument("--corpus-level", action="store_true",
                   help="parity over summed counts instead of the per-sentence mean")
    p.add_argument("--na-on-unk-majority", action="store_true",
                   help="report NA when over half the words are pure UNK")
    p.add_argument("--out")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("xsim", help="margin-based bitext retrieval error rate")
    p.add_argument("--src", required=True)
    p.add_argument("--tgt", required=True)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--out")
    p.set_defaults(func=cmd_xsim)

    p = sub.add_parser("pca", help="project embedding files to CSV coordinates")
    p.add_argument("--embeddings", nargs="+", required=True)
    p.add_argument("--out-dims", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=cmd_pca)

    p = sub.add_parser("init-tables", help="create seeded embedding tables for a set")
    p.add_argument("--set", required=True)
    p.add_argument("--d", type=int, default=64)
    p.add_argument("--max-len", type=int, default=128)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_init_tables)

    p = sub.add_parser("compose", help="compose the summed input representation for one text")
    p.add_argument("--tables", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--lang", required=True)
    p.add_argument("--text", required=True)
    p.add_argument("--variant", default="add-to-all",
                   choices=[v.value for v in ComposeVariant])
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("cpt-init", help="initialize new token embeddings from an old table")
    p.add_argument("--old-vocab", required=True)
    p.add_argument("--old-table", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--mode", default="single", choices=[m.value for m in CptMode])
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_cpt_init)

    p = sub.add_parser("run", help="run the full pipeline from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", help="output directory override")
    p.set_defaults(func=cmd_run)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except errors.StageFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STAGE
    except _IO_ERRORS as exc:
        print(f"error: {_error_name(exc)}: {exc}", file=sys.stderr)
        return EXIT_IO
    except _VALIDATION_ERRORS as exc:
        print(f"error: {_error_name(exc)}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except errors.ParatokError as exc:
        print(f"error: {_error_name(exc)}: {exc}", file=sys.stderr)
        return EXIT_STAGE


if __name__ == "__main__":
    sys.exit(main())
