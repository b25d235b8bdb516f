"""Toy-scale input representation: token + segment + position + language sums.

Tables are seeded, reproducible float32 matrices; composition upcasts to
float64 so the arithmetic identities hold to tight tolerances. Also houses
the continual-pretraining initializer that averages old constituent-subword
rows for each new vocabulary entry.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, IdOutOfRange, PositionOverflow, ZeroDimension
from .parallel import ParallelVocabSet
from .wordpiece import Encoding, Vocabulary, segment_word

DEFAULT_DIM = 64
DEFAULT_MAX_LEN = 128
INIT_STD = 0.02


class ComposeVariant(Enum):
    PREPEND_LANG_TOKEN = "prepend-lang-token"
    ADD_TO_ALL = "add-to-all"
    ADD_TO_UNALIGNED_ONLY = "add-to-unaligned-only"


class CptMode(Enum):
    SINGLE_LANG = "single"
    PARALLEL_ALL_LANGS = "parallel"


@dataclass(frozen=True)
class EmbeddingTables:
    """Token/segment/position/language embedding matrices (float32)."""

    token: np.ndarray
    segment: np.ndarray
    position: np.ndarray
    language: np.ndarray
    d: int
    seed: int

    @property
    def vocab_size(self) -> int:
        return self.token.shape[0]

    @property
    def max_len(self) -> int:
        return self.position.shape[0]

    @property
    def num_languages(self) -> int:
        return self.language.shape[0]


@dataclass(frozen=True)
class ComposedInput:
    """One composed input matrix: row per position (plus one when prepending)."""

    matrix: np.ndarray
    variant: ComposeVariant


def init_tables(vocab_size: int, num_languages: int, *, d: int = DEFAULT_DIM,
                max_len: int = DEFAULT_MAX_LEN, seed: int = 0) -> EmbeddingTables:
    """Draw all four tables from one seeded generator, std 0.02.

    Identical arguments produce bitwise-identical tables. Draw order is
    token, segment, position, language.

    Raises:
        ZeroDimension: any requested dimension is < 1.
    """
    for name, value in (("vocab_size", vocab_size), ("num_languages", num_languages),
                        ("d", d), ("max_len", max_len)):
        if value < 1:
            raise ZeroDimension(f"{name} must be >= 1, got {value}")
    rng = np.random.default_rng(seed)

    def draw(rows: int) -> np.ndarray:
        return rng.normal(0.0, INIT_STD, size=(rows, d)).astype(np.float32)

    return EmbeddingTables(
        token=draw(vocab_size),
        segment=draw(2),
        position=draw(max_len),
        language=draw(num_languages),
        d=d,
        seed=seed,
    )


def compose(tables: EmbeddingTables, enc: Encoding, variant: ComposeVariant,
            aligned_mask: Sequence[bool] | None = None) -> ComposedInput:
    """Sum the embedding terms per position under the chosen variant.

    add-to-all: row_i = token[ids_i] + segment[type_i] + position[i] +
    language[lang], the language row broadcast to every position.
    prepend-lang-token: the language embedding alone forms row 0; the token
    rows follow at shifted positions without a language term.
    add-to-unaligned-only: the language term is added only where the id's
    aligned-mask entry is false (mask required).

    Raises:
        IdOutOfRange: a token id, type id, or the language id exceeds its table.
        PositionOverflow: the sequence does not fit the position table.
    """
    m = len(enc.ids)
    ids = np.asarray(enc.ids, dtype=np.intp)
    type_ids = np.asarray(enc.type_ids, dtype=np.intp)
    if m and (ids.min() < 0 or ids.max() >= tables.vocab_size):
        raise IdOutOfRange(f"token ids must lie in [0, {tables.vocab_size})")
    if m and (type_ids.min() < 0 or type_ids.max() >= tables.segment.shape[0]):
        raise IdOutOfRange("type ids must be 0 or 1")
    if not 0 <= enc.language_id < tables.num_languages:
        raise IdOutOfRange(f"language id {enc.language_id} exceeds table of "
                           f"{tables.num_languages} languages")

    token = tables.token.astype(np.float64)[ids]
    segment = tables.segment.astype(np.float64)[type_ids]
    position = tables.position.astype(np.float64)
    lang_row = tables.language.astype(np.float64)[enc.language_id]

    if variant is ComposeVariant.PREPEND_LANG_TOKEN:
        if m + 1 > tables.max_len:
            raise PositionOverflow(f"{m} ids + language token exceed max_len {tables.max_len}")
        out = np.empty((m + 1, tables.d), dtype=np.float64)
        out[0] = lang_row
        out[1:] = token + segment + position[1:m + 1]
        return ComposedInput(out, variant)

    if m > tables.max_len:
        raise PositionOverflow(f"{m} ids exceed max_len {tables.max_len}")
    base = token + segment + position[:m]
    if variant is ComposeVariant.ADD_TO_ALL:
        return ComposedInput(base + lang_row, variant)
    if variant is ComposeVariant.ADD_TO_UNALIGNED_ONLY:
        if aligned_mask is None:
            raise ValueError("add-to-unaligned-only requires the aligned mask")
        unaligned = np.array([not aligned_mask[i] for i in enc.ids], dtype=bool)
        out = base.copy()
        out[unaligned] += lang_row
        return ComposedInput(out, variant)
    raise ValueError(f"unknown variant {variant!r}")


def _surface_row(surface: str, old_vocab: Vocabulary, table: np.ndarray,
                 unk_id: int) -> np.ndarray:
    """Mean of the old-vocabulary rows for one new token's surface form."""
    if surface in old_vocab:
        return table[old_vocab.token_to_id(surface)]
    word = surface.lower() if old_vocab.lowercase else surface
    piece_ids = segment_word(old_vocab, word)
    if not piece_ids:
        return table[unk_id]
    return table[piece_ids].mean(axis=0)


def cpt_init_new_embeddings(old_vocab: Vocabulary, old_token_table: np.ndarray,
                            new_set: ParallelVocabSet,
                            mode: CptMode = CptMode.SINGLE_LANG) -> np.ndarray:
    """Initialize a token table for a new vocabulary from an old one.

    single: each new token (the pivot language's surface form) is segmented
    by the old tokenizer and its row is the mean of the constituent rows;
    tokens present verbatim are copied, unsegmentable ones get the UNK row.
    parallel: the per-language surface forms at each index are averaged the
    same way, then pooled across languages.

    Raises:
        DimensionMismatch: the old table's row count differs from the old vocabulary.
    """
    table = np.asarray(old_token_table, dtype=np.float64)
    if table.ndim != 2 or table.shape[0] != len(old_vocab):
        raise DimensionMismatch(
            f"old table has shape {table.shape}, expected ({len(old_vocab)}, d)")
    unk_id = old_vocab.special_ids["UNK"]
    size = new_set.size
    out = np.empty((size, table.shape[1]), dtype=np.float64)
    if mode is CptMode.SINGLE_LANG:
        vocab = new_set.vocabs[new_set.pivot]
        for i in range(size):
            out[i] = _surface_row(vocab.tokens[i], old_vocab, table, unk_id)
        return out
    if mode is CptMode.PARALLEL_ALL_LANGS:
        for i in range(size):
            pooled = [
                _surface_row(new_set.vocabs[lang].tokens[i], old_vocab, table, unk_id)
                for lang in new_set.languages
            ]
            out[i] = np.mean(pooled, axis=0)
        return out
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# Serialization: one JSON header line, then flat little-endian float32 data.

def _write_blob(path: str | os.PathLike, header: dict, arrays: Sequence[np.ndarray]) -> None:
    payload = b"".join(np.ascontiguousarray(a, dtype="<f4").tobytes() for a in arrays)
    with open(path, "wb") as fh:
        fh.write(json.dumps(header, sort_keys=True).encode("utf-8") + b"\n")
        fh.write(payload)


def _read_blob(path: str | os.PathLike) -> tuple[dict, np.ndarray]:
    with open(path, "rb") as fh:
        header = json.loads(fh.readline().decode("utf-8"))
        flat = np.frombuffer(fh.read(), dtype="<f4")
    return header, flat


def save_tables(tables: EmbeddingTables, path: str | os.PathLike) -> None:
    header = {
        "kind": "tables",
        "vocab_size": tables.vocab_size,
        "segments": 2,
        "max_len": tables.max_len,
        "languages": tables.num_languages,
        "d": tables.d,
        "seed": tables.seed,
        "variant": None,
    }
    _write_blob(path, header, [tables.token, tables.segment, tables.position, tables.language])


def load_tables(path: str | os.PathLike) -> EmbeddingTables:
    header, flat = _read_blob(path)
    if header.get("kind") != "tables":
        raise ValueError(f"{path} does not hold embedding tables")
    d = header["d"]
    shapes = [(header["vocab_size"], d), (header["segments"], d),
              (header["max_len"], d), (header["languages"], d)]
    arrays = []
    offset = 0
    for rows, cols in shapes:
        n = rows * cols
        arrays.append(flat[offset:offset + n].reshape(rows, cols).copy())
        offset += n
    if offset != flat.size:
        raise ValueError(f"{path}: payload size does not match header")
    token, segment, position, language = arrays
    return EmbeddingTables(token=token, segment=segment, position=position,
                           language=language, d=d, seed=header["seed"])


def save_matrix(matrix: np.ndarray, path: str | os.PathLike, *,
                lang: str | None = None, seed: int | None = None,
                variant: str | None = None) -> None:
    """Persist one [n x d] matrix (sentence embeddings, composed inputs...)."""
    matrix = np.asarray(matrix)
    header = {
        "kind": "matrix",
        "rows": int(matrix.shape[0]),
        "d": int(matrix.shape[1]),
        "lang": lang,
        "seed": seed,
        "variant": variant,
    }
    _write_blob(path, header, [matrix])


def load_matrix(path: str | os.PathLike) -> tuple[np.ndarray, dict]:
    header, flat = _read_blob(path)
    if header.get("kind") != "matrix":
        raise ValueError(f"{path} does not hold a matrix")
    rows, d = header["rows"], header["d"]
    if rows * d != flat.size:
        raise ValueError(f"{path}: payload size does not match header")
    return flat.reshape(rows, d).copy(), header
