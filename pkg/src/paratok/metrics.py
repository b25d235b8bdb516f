"""Tokenization-quality and cross-lingual-alignment metrics.

Fertility (tokens per word), parity (symmetric token-count ratio against a
reference language), UNK totals, margin-based bitext retrieval error, and a
small PCA. All kernels are pure; encodings exclude CLS/SEP from every count.
"""

from __future__ import annotations

import csv
import io
import os
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateZeroVector,
    NoWords,
    RankDeficient,
    ZeroTokenSentence,
)
from .parallel import ParallelVocabSet, dispatch_encode
from .wordpiece import Encoding, Vocabulary, encode

# Report fertility as unavailable when more than half the words are pure UNK
# (whole-script misses make tokens-per-word meaningless).
UNK_MAJORITY_THRESHOLD = 0.5


@dataclass(frozen=True)
class ParallelCorpus:
    """Rectangular grid of mutually parallel sentences, one column per language."""

    languages: list[str]
    sentences: list[list[str]]

    def __post_init__(self):
        width = len(self.languages)
        for i, row in enumerate(self.sentences):
            if len(row) != width:
                raise ValueError(f"row {i} has {len(row)} cells, expected {width}")
            for lang, cell in zip(self.languages, row):
                if cell.strip() == "":
                    raise ValueError(f"row {i} has an empty {lang} cell")

    def column(self, lang: str) -> list[str]:
        j = self.languages.index(lang)
        return [row[j] for row in self.sentences]

    def __len__(self) -> int:
        return len(self.sentences)

    @classmethod
    def from_tsv(cls, path: str | os.PathLike) -> "ParallelCorpus":
        """Header row = language codes; one tab-separated parallel row per line."""
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        if not lines:
            raise ValueError(f"{path} is empty")
        languages = lines[0].split("\t")
        sentences = [line.split("\t") for line in lines[1:] if line != ""]
        return cls(languages=languages, sentences=sentences)

    def to_tsv(self, path: str | os.PathLike) -> None:
        rows = ["\t".join(self.languages)] + ["\t".join(row) for row in self.sentences]
        Path(path).write_text("\n".join(rows) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# Tokenizer handles: one uniform encode(lang, text) surface for the three
# setups compared in the evaluation (shared, per-language, index-aligned).

class MonoTokenizer:
    """A single vocabulary applied to every language."""

    def __init__(self, vocab: Vocabulary, name: str = "mono"):
        self.vocab = vocab
        self.name = name

    def encode(self, lang: str | None, text: str) -> Encoding:
        return encode(self.vocab, text)

    def unk_id(self, lang: str | None = None) -> int:
        return self.vocab.special_ids["UNK"]


class PerLanguageTokenizer:
    """Independent monolingual vocabularies, one per language."""

    def __init__(self, vocabs: dict[str, Vocabulary], name: str = "per-language"):
        self.vocabs = dict(vocabs)
        self.name = name

    def encode(self, lang: str, text: str) -> Encoding:
        return encode(self.vocabs[lang], text)

    def unk_id(self, lang: str) -> int:
        return self.vocabs[lang].special_ids["UNK"]


class ParallelSetTokenizer:
    """Dispatching handle over an index-aligned vocabulary set."""

    def __init__(self, vocab_set: ParallelVocabSet, name: str = "parallel"):
        self.vocab_set = vocab_set
        self.name = name

    def encode(self, lang: str, text: str) -> Encoding:
        return dispatch_encode(self.vocab_set, self.vocab_set.tag_for(lang), text)

    def unk_id(self, lang: str) -> int:
        return self.vocab_set.vocabs[lang].special_ids["UNK"]


# ---------------------------------------------------------------------------
# Token-count metrics.

def _pure_unk_words(enc: Encoding, unk: int) -> int:
    return sum(
        1 for _, (start, end) in enc.word_spans
        if end - start == 1 and enc.ids[start] == unk
    )


def fertility(tokenizer, sentences: Iterable[str], lang: str | None = None,
              *, na_if_unk_majority: bool = False) -> float | None:
    """Average number of tokens per whitespace word over a corpus column.

    CLS/SEP are excluded; a word that degrades to UNK still counts as one
    token, so the result is always >= 1.0. With ``na_if_unk_majority`` the
    function returns None when more than half the words are pure UNK.

    Raises:
        NoWords: the column contains no words at all.
    """
    total_tokens = 0
    total_words = 0
    unk_words = 0
    unk = tokenizer.unk_id(lang)
    for sentence in sentences:
        enc = tokenizer.encode(lang, sentence)
        total_tokens += enc.num_content_ids
        total_words += enc.num_words
        unk_words += _pure_unk_words(enc, unk)
    if total_words == 0:
        raise NoWords("corpus column contains no words")
    if na_if_unk_majority and unk_words / total_words > UNK_MAJORITY_THRESHOLD:
        return None
    return total_tokens / total_words


def parity(tokenizer, corpus: ParallelCorpus, lang: str, reference: str,
           *, corpus_level: bool = False) -> float:
    """Symmetric token-count ratio between a language and a reference.

    Per parallel row the ratio max(c_l, c_r) / min(c_l, c_r) is computed over
    non-special token counts and averaged, so the score is >= 1.0 and equals
    1.0 exactly when every row matches. ``corpus_level=True`` instead takes
    the single ratio of summed counts (an alternative aggregate; the default
    is the per-sentence mean).

    Raises:
        ZeroTokenSentence: some sentence encodes to zero non-special tokens.
    """
    counts_l = []
    counts_r = []
    for row_l, row_r in zip(corpus.column(lang), corpus.column(reference)):
        c_l = tokenizer.encode(lang, row_l).num_content_ids
        c_r = tokenizer.encode(reference, row_r).num_content_ids
        if c_l == 0 or c_r == 0:
            raise ZeroTokenSentence(
                f"a {lang if c_l == 0 else reference} sentence encodes to zero tokens")
        counts_l.append(c_l)
        counts_r.append(c_r)
    if corpus_level:
        s_l, s_r = sum(counts_l), sum(counts_r)
        return max(s_l, s_r) / min(s_l, s_r)
    ratios = [max(a, b) / min(a, b) for a, b in zip(counts_l, counts_r)]
    return float(np.mean(ratios))


def unk_count(tokenizer, sentences: Iterable[str], lang: str | None = None) -> int:
    """Total UNK occurrences when encoding the column."""
    unk = tokenizer.unk_id(lang)
    total = 0
    for sentence in sentences:
        total += sum(1 for i in tokenizer.encode(lang, sentence).ids if i == unk)
    return total


# ---------------------------------------------------------------------------
# Margin-based bitext retrieval.

@dataclass(frozen=True)
class EmbeddingMatrix:
    """Sentence vectors for one language column."""

    rows: np.ndarray
    lang: str = ""


def _as_rows(m) -> np.ndarray:
    if isinstance(m, EmbeddingMatrix):
        m = m.rows
    return np.asarray(m, dtype=np.float64)


def margin_scores(src, tgt, k: int = 4) -> np.ndarray:
    """Ratio-margin score matrix between two row-aligned embedding sets.

    score(x, y) = cos(x, y) / ((sum of x's k nearest target cosines +
    sum of y's k nearest source cosines) / (2k)); k is clamped to n - 1.

    Raises:
        DegenerateZeroVector: some row is all-zero.
    """
    S = _as_rows(src)
    T = _as_rows(tgt)
    if S.shape[0] < 2 or T.shape[0] < 2:
        raise ValueError("need at least 2 rows on each side")
    if S.shape[1] != T.shape[1]:
        raise ValueError("embedding widths differ")
    s_norm = np.linalg.norm(S, axis=1)
    t_norm = np.linalg.norm(T, axis=1)
    if np.any(s_norm == 0) or np.any(t_norm == 0):
        raise DegenerateZeroVector("an embedding row is all-zero")
    cos = (S / s_norm[:, None]) @ (T / t_norm[:, None]).T
    k_eff = min(k, S.shape[0] - 1, T.shape[0] - 1)
    # Sum of the k largest cosines per row (x against all targets) and per
    # column (y against all sources).
    top_src = np.sort(cos, axis=1)[:, -k_eff:].sum(axis=1)
    top_tgt = np.sort(cos, axis=0)[-k_eff:, :].sum(axis=0)
    denom = (top_src[:, None] + top_tgt[None, :]) / (2.0 * k_eff)
    return cos / denom


def xsim_error_rate(src, tgt, k: int = 4) -> float:
    """Percentage of rows whose margin-scored nearest neighbor is not the
    gold (same-index) row. Ties break toward the lower index.

    Raises:
        DegenerateZeroVector: some row is all-zero.
    """
    S = _as_rows(src)
    T = _as_rows(tgt)
    if S.shape[0] != T.shape[0]:
        raise ValueError("source and target must have the same number of rows")
    scores = margin_scores(S, T, k)
    retrieved = scores.argmax(axis=1)  # argmax returns the first (lowest) max index
    errors = int(np.sum(retrieved != np.arange(S.shape[0])))
    return 100.0 * errors / S.shape[0]


# ---------------------------------------------------------------------------
# PCA.

def pca_project(points, out_dims: int = 2) -> np.ndarray:
    """Project onto the top principal components of the covariance matrix.

    Components are ordered by descending eigenvalue; each eigenvector is
    sign-fixed so its largest-magnitude coordinate is positive. The variance
    (ddof=1) of output column j equals eigenvalue j. When fewer than
    ``out_dims`` eigenvalues are nonzero a RankDeficient warning is issued
    and the remaining columns are zero-filled.
    """
    X = np.asarray(points, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError("points must be a 2-D matrix")
    n, d = X.shape
    if n < 2:
        raise ValueError("need at least 2 points")
    if not 1 <= out_dims <= min(n, d):
        raise ValueError(f"out_dims must lie in [1, {min(n, d)}]")
    centered = X - X.mean(axis=0)
    cov = centered.T @ centered / (n - 1)
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(-eigvals, kind="stable")
    eigvals = eigvals[order]
    eigvecs = eigvecs[:, order]
    tol = max(n, d) * np.finfo(np.float64).eps * max(abs(eigvals[0]), 1e-300)
    rank = int(np.sum(eigvals > tol))
    if rank < out_dims:
        warnings.warn(RankDeficient(
            f"only {rank} nonzero eigenvalues for {out_dims} requested components; "
            "remaining columns are zero-filled"))
    for j in range(out_dims):
        col = eigvecs[:, j]
        lead = int(np.argmax(np.abs(col)))
        if col[lead] < 0:
            eigvecs[:, j] = -col
    out = centered @ eigvecs[:, :out_dims]
    if rank < out_dims:
        out[:, rank:] = 0.0
    return out


# ---------------------------------------------------------------------------
# CSV emission, keyed (metric, tokenizer, language).

def metrics_csv(rows: Sequence[tuple]) -> str:
    """Render (metric, tokenizer, language, value) rows; None becomes NA."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["metric", "tokenizer", "language", "value"])
    for metric, tokenizer, language, value in rows:
        writer.writerow([metric, tokenizer, language,
                         "NA" if value is None else f"{value:.6f}" if isinstance(value, float) else value])
    return buf.getvalue()


def pca_csv(coords: np.ndarray, labels: Sequence[str]) -> str:
    """Render projected coordinates with one label per row."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    dims = coords.shape[1]
    writer.writerow(["label"] + [f"pc{j + 1}" for j in range(dims)])
    for label, row in zip(labels, coords):
        writer.writerow([label] + [f"{v:.8f}" for v in row])
    return buf.getvalue()
