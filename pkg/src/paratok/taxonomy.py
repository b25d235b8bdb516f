"""Vocabulary entry classification and category proportion reporting.

Every entry falls into exactly one category. Four of them (subword, short
word, number, word) carry the reported proportions; specials, language tags
and the shared character block are bookkeeping refinements reported next to
them but excluded from the four-way fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Collection

from .errors import NotInVocabulary
from .wordpiece import SPECIAL_TOKENS, Vocabulary


class TokenCategory(Enum):
    SPECIAL = "Special"
    LANGUAGE_TAG = "LanguageTag"
    SUBWORD = "Subword"
    NUMBER = "Number"
    SHORT_WORD = "ShortWord"
    WORD = "Word"
    # Refinement used by the parallel-vocabulary builder for the shared
    # character block; classify() itself never produces it (a bare
    # single-character token counts as ShortWord).
    CHARACTER = "Character"


PAPER_CATEGORIES = (
    TokenCategory.SUBWORD,
    TokenCategory.SHORT_WORD,
    TokenCategory.NUMBER,
    TokenCategory.WORD,
)


def classify(token: str, vocab_context: Vocabulary,
             language_tags: Collection[str] = ()) -> TokenCategory:
    """Classify one vocabulary entry.

    Precedence: Special > LanguageTag > Subword > Number > ShortWord > Word.
    A three-character all-digit token is therefore Number, never ShortWord.
    Length is measured in Unicode scalar values. Only decimal digits count
    as numeric; mixed alphanumerics fall through to ShortWord/Word.

    Args:
        token: an entry of ``vocab_context``.
        vocab_context: the vocabulary the token belongs to.
        language_tags: registered language-identity tokens (e.g. "[HA]").

    Raises:
        NotInVocabulary: the token is not an entry of the vocabulary.
    """
    if token not in vocab_context:
        raise NotInVocabulary(f"{token!r} is not a vocabulary entry")
    if token in SPECIAL_TOKENS:
        return TokenCategory.SPECIAL
    if token in set(language_tags):
        return TokenCategory.LANGUAGE_TAG
    if token.startswith(vocab_context.continuation_prefix):
        return TokenCategory.SUBWORD
    if token and all(ch.isdecimal() for ch in token):
        return TokenCategory.NUMBER
    if len(token) < 4:
        return TokenCategory.SHORT_WORD
    return TokenCategory.WORD


@dataclass(frozen=True)
class CategoryReport:
    """Counts for every category plus fractions over the four reported ones."""

    counts: dict[TokenCategory, int]
    fractions: dict[TokenCategory, float]
    degenerate: bool

    def to_json_dict(self) -> dict:
        return {
            "counts": {cat.value: n for cat, n in sorted(self.counts.items(), key=lambda kv: kv[0].value)},
            "fractions": {cat.value: f for cat, f in sorted(self.fractions.items(), key=lambda kv: kv[0].value)},
            "degenerate": self.degenerate,
        }


def category_report(vocab: Vocabulary,
                    language_tags: Collection[str] = ()) -> CategoryReport:
    """Count entries per category and compute the four-way proportions.

    Fractions are taken over subword/short-word/number/word entries only;
    specials and language tags are counted but carry no fraction. An empty
    four-way population yields all-zero fractions and the degenerate flag.
    """
    counts = {cat: 0 for cat in TokenCategory}
    for token in vocab.tokens:
        counts[classify(token, vocab, language_tags)] += 1
    total = sum(counts[cat] for cat in PAPER_CATEGORIES)
    degenerate = total == 0
    fractions = {
        cat: (0.0 if degenerate else counts[cat] / total) for cat in PAPER_CATEGORIES
    }
    return CategoryReport(counts=counts, fractions=fractions, degenerate=degenerate)


def word_type_tokens(vocab: Vocabulary,
                     language_tags: Collection[str] = ()) -> list[str]:
    """All Word-category entries in vocabulary index order."""
    return [t for t in vocab.tokens
            if classify(t, vocab, language_tags) is TokenCategory.WORD]
