"""Bilingual lexicon construction with back-translation filtering.

Word-type source tokens are translated through a pluggable provider; targets
are validated (single token, clean script, no control characters) and kept
only when the back-translation recovers the source token. Every source token
keeps an entry regardless of outcome, so nothing is silently dropped.
"""

from __future__ import annotations

import os
import unicodedata
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Mapping, Protocol, Sequence

from .errors import ProviderFailure
from .scripts import ScriptProfile
from .wordpiece import SPECIAL_TOKENS


class LexiconStatus(Enum):
    ACCEPTED = "Accepted"
    REJECTED_MULTIWORD = "RejectedMultiword"
    REJECTED_MALFORMED = "RejectedMalformed"
    REJECTED_BACKTRANSLATION = "RejectedBacktranslation"
    MISSING = "Missing"


@dataclass(frozen=True)
class LexiconEntry:
    source: str
    target: str | None
    back: str | None
    status: LexiconStatus


class TranslationProvider(Protocol):
    """Anything that can translate a single token between two languages.

    Must be deterministic for fixed inputs within one run. Returns None when
    it has no translation.
    """

    def translate(self, token: str, src_lang: str, tgt_lang: str) -> str | None:
        ...


class MappingProvider:
    """In-memory provider backed by {(src, tgt): {token: translation}}."""

    def __init__(self, tables: Mapping[tuple[str, str], Mapping[str, str]]):
        self._tables = {pair: dict(table) for pair, table in tables.items()}

    def translate(self, token: str, src_lang: str, tgt_lang: str) -> str | None:
        return self._tables.get((src_lang, tgt_lang), {}).get(token)


class TsvProvider:
    """File-backed provider; offline stand-in for a live translation service.

    File format: four tab-separated columns per line,
    ``src_lang<TAB>tgt_lang<TAB>token<TAB>translation``. Lines starting with
    '#' and blank lines are skipped. Later duplicates override earlier ones.
    """

    def __init__(self, path: str | os.PathLike):
        self._tables: dict[tuple[str, str], dict[str, str]] = {}
        for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise ValueError(f"{path}:{lineno}: expected 4 tab-separated columns")
            src, tgt, token, translation = parts
            self._tables.setdefault((src, tgt), {})[token] = translation
        self.path = str(path)

    def translate(self, token: str, src_lang: str, tgt_lang: str) -> str | None:
        return self._tables.get((src_lang, tgt_lang), {}).get(token)


@dataclass
class BilingualLexicon:
    """Validated source -> target token map for one language pair."""

    src_lang: str
    tgt_lang: str
    entries: dict[str, LexiconEntry]

    def accepted(self) -> list[LexiconEntry]:
        return [e for e in self.entries.values() if e.status is LexiconStatus.ACCEPTED]

    def status_counts(self) -> dict[str, int]:
        counts = {status.value: 0 for status in LexiconStatus}
        for e in self.entries.values():
            counts[e.status.value] += 1
        return counts

    def save_tsv(self, path: str | os.PathLike) -> None:
        """One line per entry: source, target, back, status (empty for None)."""
        lines = []
        for e in self.entries.values():
            lines.append("\t".join([e.source, e.target or "", e.back or "", e.status.value]))
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def load_tsv(cls, path: str | os.PathLike, *, src_lang: str = "",
                 tgt_lang: str = "") -> "BilingualLexicon":
        entries: dict[str, LexiconEntry] = {}
        for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            if line == "":
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise ValueError(f"{path}:{lineno}: expected 4 tab-separated columns")
            source, target, back, status = parts
            entries[source] = LexiconEntry(
                source=source,
                target=target or None,
                back=back or None,
                status=LexiconStatus(status),
            )
        return cls(src_lang=src_lang, tgt_lang=tgt_lang, entries=entries)


def _is_malformed(target: str, profile: ScriptProfile | None) -> bool:
    if any(lit in target for lit in SPECIAL_TOKENS):
        return True
    if profile is not None:
        return not profile.allows(target)
    # Without a profile only control characters disqualify.
    return any(unicodedata.category(ch) in ("Cc", "Cf") for ch in target)


def align_word_tokens(source_words: Sequence[str], provider: TranslationProvider,
                      src: str, tgt: str, *,
                      target_profile: ScriptProfile | None = None) -> BilingualLexicon:
    """Translate and validate each source token, producing a full lexicon.

    Per token: missing/empty translation -> Missing; internal whitespace ->
    RejectedMultiword; control characters, bracketed specials, or letters
    outside the target script profile -> RejectedMalformed; otherwise the
    target is translated back and Accepted iff the case-folded back-
    translation equals the source token.

    Args:
        source_words: tokens to align (callers pass Word-category entries).
        provider: translation provider, consulted in both directions.
        src: source language code.
        tgt: target language code.
        target_profile: script profile of the target language, or None to
            skip the script part of the malformed check.

    Raises:
        ProviderFailure: the provider raised; carries the offending token.
    """
    entries: dict[str, LexiconEntry] = {}
    for word in source_words:
        try:
            target = provider.translate(word, src, tgt)
        except Exception as exc:  # noqa: BLE001 - contract: wrap and attribute
            raise ProviderFailure(word, exc) from exc
        if target is None or target == "":
            entries[word] = LexiconEntry(word, None, None, LexiconStatus.MISSING)
            continue
        if any(ch.isspace() for ch in target):
            entries[word] = LexiconEntry(word, target, None, LexiconStatus.REJECTED_MULTIWORD)
            continue
        if _is_malformed(target, target_profile):
            entries[word] = LexiconEntry(word, target, None, LexiconStatus.REJECTED_MALFORMED)
            continue
        try:
            back = provider.translate(target, tgt, src)
        except Exception as exc:  # noqa: BLE001
            raise ProviderFailure(target, exc) from exc
        if back is not None and back.casefold() == word.casefold():
            status = LexiconStatus.ACCEPTED
        else:
            status = LexiconStatus.REJECTED_BACKTRANSLATION
        entries[word] = LexiconEntry(word, target, back, status)
    return BilingualLexicon(src_lang=src, tgt_lang=tgt, entries=entries)


def alignment_coverage(lexicon: BilingualLexicon, full_vocab) -> dict[str, float]:
    """Fraction of Word tokens, and of all non-special entries, that aligned.

    ``word_type_fraction`` divides Accepted entries by the number of Word
    tokens (the lexicon's sources); ``total_fraction`` divides by all
    vocabulary entries except the five specials.
    """
    accepted = len(lexicon.accepted())
    n_words = len(lexicon.entries)
    non_special = sum(1 for t in full_vocab.tokens if t not in SPECIAL_TOKENS)
    return {
        "word_type_fraction": accepted / n_words if n_words else 0.0,
        "total_fraction": accepted / non_special if non_special else 0.0,
    }
