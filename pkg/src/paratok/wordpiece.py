"""WordPiece vocabulary training and greedy longest-match-first segmentation.

A :class:`Vocabulary` is an ordered list of token strings whose list position
is the token id. Training builds one from a line corpus; :func:`encode` and
:func:`decode` move between text and id sequences. Both objects are immutable
after construction and safe to share across threads.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .errors import CapTooSmall, EmptyCorpus, IndexOutOfRange

SPECIAL_ROLES = ("PAD", "UNK", "CLS", "SEP", "MASK")
SPECIAL_TOKENS = ("[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]")

DEFAULT_VOCAB_CAP = 30_522
CONTINUATION_PREFIX = "##"

# Words longer than this map straight to UNK; guards pathological inputs.
MAX_INPUT_WORD_LENGTH = 100


class Vocabulary:
    """Ordered token -> id map with the five special roles resolved.

    The serialized form is one token per line (UTF-8), so the 0-based line
    number is the id. Special tokens appear as their bracketed literals.

    The ``lowercase`` flag records the normalization the vocabulary was
    trained with; it is not part of the file format, so loading a file
    assumes the default (uncased).
    """

    def __init__(self, tokens: Iterable[str], *, continuation_prefix: str = CONTINUATION_PREFIX,
                 lowercase: bool = True):
        self.tokens: tuple[str, ...] = tuple(tokens)
        self.continuation_prefix = continuation_prefix
        self.lowercase = lowercase
        self._ids: dict[str, int] = {}
        for i, tok in enumerate(self.tokens):
            if tok in self._ids:
                raise ValueError(f"duplicate token {tok!r} at indices {self._ids[tok]} and {i}")
            self._ids[tok] = i
        missing = [lit for lit in SPECIAL_TOKENS if lit not in self._ids]
        if missing:
            raise ValueError(f"vocabulary lacks special tokens: {missing}")
        self.special_ids: dict[str, int] = {
            role: self._ids[lit] for role, lit in zip(SPECIAL_ROLES, SPECIAL_TOKENS)
        }

    @property
    def size(self) -> int:
        return len(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self._ids

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Vocabulary)
                and self.tokens == other.tokens
                and self.continuation_prefix == other.continuation_prefix)

    def token_to_id(self, token: str) -> int:
        return self._ids[token]

    def id_to_token(self, idx: int) -> str:
        if not 0 <= idx < len(self.tokens):
            raise IndexOutOfRange(f"id {idx} outside vocabulary of size {len(self.tokens)}")
        return self.tokens[idx]

    def save(self, path: str | os.PathLike) -> None:
        Path(path).write_text("\n".join(self.tokens) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | os.PathLike, *, lowercase: bool = True) -> "Vocabulary":
        text = Path(path).read_text(encoding="utf-8")
        return cls((line for line in text.splitlines() if line != ""), lowercase=lowercase)


@dataclass(frozen=True)
class Encoding:
    """Token ids plus masks for one input text.

    ``word_spans`` records, per whitespace word, the half-open id range it
    produced; the spans partition the non-special ids in order.
    """

    ids: list[int]
    attention_mask: list[int]
    type_ids: list[int]
    language_id: int = 0
    word_spans: list[tuple[int, tuple[int, int]]] = field(default_factory=list)

    def __post_init__(self):
        if not (len(self.ids) == len(self.attention_mask) == len(self.type_ids)):
            raise ValueError("ids, attention_mask and type_ids must have equal length")

    def to_json_dict(self) -> dict:
        """Wire format: one JSON object per encoding."""
        return {
            "ids": list(self.ids),
            "attention_mask": list(self.attention_mask),
            "type_ids": list(self.type_ids),
            "language_id": self.language_id,
        }

    @property
    def num_words(self) -> int:
        return len(self.word_spans)

    @property
    def num_content_ids(self) -> int:
        """Count of ids covered by word spans (everything except CLS/SEP)."""
        return sum(end - start for _, (start, end) in self.word_spans)


def _normalize(text: str, lowercase: bool) -> list[str]:
    if lowercase:
        text = text.lower()
    return text.split()


def train_wordpiece(corpus: Iterable[str], *, vocab_cap: int = DEFAULT_VOCAB_CAP,
                    min_pair_frequency: int = 2, lowercase: bool = True) -> Vocabulary:
    """Train a WordPiece vocabulary from a line corpus.

    Pre-tokenization splits on Unicode whitespace only; punctuation stays
    attached to its word. Every character seen in the corpus enters the
    vocabulary in both bare and continuation-prefixed form, then pairs are
    merged greedily by the score count(ab) / (count(a) * count(b)) until the
    cap is reached or no pair clears ``min_pair_frequency``. Scores are
    compared exactly (as rationals) and ties break lexicographically on the
    pair, so the result is deterministic for a fixed corpus and config.

    Args:
        corpus: iterable of text lines.
        vocab_cap: maximum vocabulary size, specials included.
        min_pair_frequency: minimum adjacent-pair count for a merge.
        lowercase: lowercase the corpus before counting.

    Returns:
        The trained :class:`Vocabulary`.

    Raises:
        EmptyCorpus: no non-empty line in the corpus.
        CapTooSmall: the cap cannot hold the alphabet plus specials.
    """
    if min_pair_frequency < 1:
        raise ValueError("min_pair_frequency must be >= 1")
    word_freq: Counter[str] = Counter()
    for line in corpus:
        for word in _normalize(line, lowercase):
            word_freq[word] += 1
    if not word_freq:
        raise EmptyCorpus("corpus yields no non-empty line")

    alphabet = sorted({ch for word in word_freq for ch in word})
    char_tokens = sorted(alphabet + [CONTINUATION_PREFIX + ch for ch in alphabet])
    if vocab_cap < len(SPECIAL_TOKENS) + len(char_tokens):
        raise CapTooSmall(
            f"cap {vocab_cap} cannot hold {len(char_tokens)} character tokens "
            f"plus {len(SPECIAL_TOKENS)} specials"
        )

    tokens: list[str] = list(SPECIAL_TOKENS) + char_tokens
    token_set = set(tokens)

    # Current segmentation of every distinct word: first char bare, rest prefixed.
    pieces: dict[str, list[str]] = {
        w: [w[0]] + [CONTINUATION_PREFIX + ch for ch in w[1:]] for w in word_freq
    }

    while len(tokens) < vocab_cap:
        pair_counts: Counter[tuple[str, str]] = Counter()
        piece_counts: Counter[str] = Counter()
        for word, freq in word_freq.items():
            ps = pieces[word]
            for p in ps:
                piece_counts[p] += freq
            for a, b in zip(ps, ps[1:]):
                pair_counts[(a, b)] += freq

        best_pair: tuple[str, str] | None = None
        best_score: Fraction | None = None
        for pair, count in pair_counts.items():
            if count < min_pair_frequency:
                continue
            a, b = pair
            score = Fraction(count, piece_counts[a] * piece_counts[b])
            if (best_score is None or score > best_score
                    or (score == best_score and pair < best_pair)):
                best_pair, best_score = pair, score
        if best_pair is None:
            break

        a, b = best_pair
        merged = a + b[len(CONTINUATION_PREFIX):]
        if merged not in token_set:
            tokens.append(merged)
            token_set.add(merged)
        for word, ps in pieces.items():
            if len(ps) < 2:
                continue
            out: list[str] = []
            i = 0
            while i < len(ps):
                if i + 1 < len(ps) and ps[i] == a and ps[i + 1] == b:
                    out.append(merged)
                    i += 2
                else:
                    out.append(ps[i])
                    i += 1
            pieces[word] = out

    return Vocabulary(tokens, lowercase=lowercase)


def segment_word(vocab: Vocabulary, word: str,
                 *, max_word_length: int = MAX_INPUT_WORD_LENGTH) -> list[int] | None:
    """Greedy longest-match-first segmentation of a single word.

    Word-initial positions match only non-continuation entries, later
    positions only continuation entries; special tokens never match text.
    Returns None when some remainder is unmatchable (or the word is empty or
    overlong), in which case the caller maps the whole word to UNK.
    """
    if not word or len(word) > max_word_length:
        return None
    prefix = vocab.continuation_prefix
    specials = set(SPECIAL_TOKENS)
    out: list[int] = []
    i = 0
    while i < len(word):
        match_end = -1
        match_token = None
        for j in range(len(word), i, -1):
            sub = word[i:j]
            if i > 0:
                sub = prefix + sub
            elif sub.startswith(prefix):
                continue
            if sub in vocab and sub not in specials:
                match_end, match_token = j, sub
                break
        if match_token is None:
            return None
        out.append(vocab.token_to_id(match_token))
        i = match_end
    return out


def encode(vocab: Vocabulary, text: str, *, language_id: int = 0) -> Encoding:
    """Encode text as [CLS] + greedy segmentation + [SEP].

    Unmatchable words degrade to a single UNK id; there is no error path.
    """
    cls_id = vocab.special_ids["CLS"]
    sep_id = vocab.special_ids["SEP"]
    unk_id = vocab.special_ids["UNK"]
    ids = [cls_id]
    spans: list[tuple[int, tuple[int, int]]] = []
    for wi, word in enumerate(_normalize(text, vocab.lowercase)):
        start = len(ids)
        piece_ids = segment_word(vocab, word)
        if piece_ids is None:
            ids.append(unk_id)
        else:
            ids.extend(piece_ids)
        spans.append((wi, (start, len(ids))))
    ids.append(sep_id)
    n = len(ids)
    return Encoding(ids, [1] * n, [0] * n, language_id, spans)


def decode(vocab: Vocabulary, ids: Sequence[int]) -> str:
    """Invert encoding: drop specials, glue continuation pieces, join words.

    Raises:
        IndexOutOfRange: any id outside the vocabulary.
    """
    special_indices = set(vocab.special_ids.values())
    prefix = vocab.continuation_prefix
    words: list[str] = []
    for idx in ids:
        token = vocab.id_to_token(idx)
        if idx in special_indices:
            continue
        if token.startswith(prefix) and words:
            words[-1] += token[len(prefix):]
        elif token.startswith(prefix):
            words.append(token[len(prefix):])
        else:
            words.append(token)
    return " ".join(words)
