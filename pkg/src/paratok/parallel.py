"""Index-aligned per-language vocabulary sets and the dispatching runtime.

Each language gets a vocabulary of identical size assembled in priority
order: special tokens, language-identity tokens, the pivot's word-type block
(translations share the pivot token's index), a shared single-character
block from the pivot, then monolingual fill. A per-index mask records which
slots are semantically shared across all languages.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from .errors import (
    CapExceededBySpecials,
    MissingLexicon,
    MissingMonolingualVocab,
    UnknownLanguageToken,
)
from .lexicon import BilingualLexicon, LexiconStatus
from .taxonomy import word_type_tokens
from .wordpiece import DEFAULT_VOCAB_CAP, SPECIAL_TOKENS, Encoding, Vocabulary, encode

DEFAULT_CHAR_SUBSET = 1_000

MANIFEST_NAME = "manifest.json"
MASK_NAME = "aligned.mask"


def language_tag(code: str) -> str:
    """Bracketed two-letter identity token for a language code, e.g. "ha" -> "[HA]"."""
    return "[" + code[:2].upper() + "]"


@dataclass
class ParallelVocabSet:
    """k index-aligned vocabularies plus alignment bookkeeping."""

    languages: list[str]
    language_tags: list[str]
    pivot: str
    vocabs: dict[str, Vocabulary]
    aligned_mask: list[bool]
    cap: int
    char_subset: int
    filler_counts: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        sizes = {lang: len(v) for lang, v in self.vocabs.items()}
        if len(set(sizes.values())) > 1:
            raise ValueError(f"vocabularies differ in size: {sizes}")
        if self.pivot not in self.languages:
            raise ValueError(f"pivot {self.pivot!r} not in languages {self.languages}")
        if len(self.aligned_mask) != self.size:
            raise ValueError("aligned_mask length must equal vocabulary size")

    @property
    def size(self) -> int:
        return len(self.vocabs[self.pivot])

    def tag_for(self, lang: str) -> str:
        return self.language_tags[self.languages.index(lang)]

    def lang_for_tag(self, tag: str) -> str:
        try:
            return self.languages[self.language_tags.index(tag)]
        except ValueError:
            raise UnknownLanguageToken(
                f"{tag!r} is not one of the registered language tokens {self.language_tags}"
            ) from None

    def aligned_count(self) -> int:
        return sum(self.aligned_mask)


def build_parallel_set(pivot_vocab: Vocabulary,
                       lexicons: Mapping[str, BilingualLexicon],
                       mono_vocabs: Mapping[str, Vocabulary],
                       *,
                       pivot: str,
                       languages: Sequence[str] | None = None,
                       language_tags: Sequence[str] | None = None,
                       cap: int = DEFAULT_VOCAB_CAP,
                       char_subset: int = DEFAULT_CHAR_SUBSET) -> ParallelVocabSet:
    """Assemble the index-aligned vocabulary set.

    Per-language assembly order: (1) the five specials, (2) one identity
    token per language at the same index everywhere, (3) the pivot's
    word-type tokens, where each non-pivot language places its Accepted
    translation at the same index or reserves the slot, (4) the pivot's
    first ``char_subset`` single-character tokens, shared verbatim, (5)
    reserved slots filled from each language's monolingual vocabulary in
    index order, then remaining monolingual entries appended with duplicates
    removed. All vocabularies are truncated to a common size <= cap.

    A slot is marked aligned only when every language holds an Accepted
    translation there. A translation colliding with a token already placed
    in that language falls back to monolingual fill and the slot is
    unaligned. Languages whose monolingual vocabulary runs out receive
    synthetic "[unusedN]" fillers so indices stay stable.

    Raises:
        MissingLexicon: a non-pivot language has no lexicon.
        MissingMonolingualVocab: a non-pivot language has no monolingual vocabulary.
        CapExceededBySpecials: cap < specials + language tokens.
    """
    langs = list(languages) if languages is not None else [pivot] + sorted(
        l for l in lexicons if l != pivot)
    if pivot not in langs:
        raise ValueError(f"pivot {pivot!r} not in languages {langs}")
    tags = list(language_tags) if language_tags is not None else [language_tag(l) for l in langs]
    if len(tags) != len(langs) or len(set(tags)) != len(tags):
        raise ValueError("language tags must be unique and one per language")
    non_pivot = [l for l in langs if l != pivot]
    for lang in non_pivot:
        if lang not in lexicons:
            raise MissingLexicon(f"no lexicon for language {lang!r}")
        if lang not in mono_vocabs:
            raise MissingMonolingualVocab(f"no monolingual vocabulary for {lang!r}")

    head = list(SPECIAL_TOKENS) + tags
    if cap < len(head):
        raise CapExceededBySpecials(
            f"cap {cap} cannot hold {len(SPECIAL_TOKENS)} specials + {len(tags)} language tokens")

    columns: dict[str, list[str | None]] = {lang: list(head) for lang in langs}
    used: dict[str, set[str]] = {lang: set(head) for lang in langs}
    reserved: dict[str, list[int]] = {lang: [] for lang in langs}
    aligned: list[bool] = [False] * len(head)

    # (3) word-type block, pivot vocabulary order.
    for token in word_type_tokens(pivot_vocab):
        if len(columns[pivot]) >= cap:
            break
        if token in used[pivot]:
            continue
        index = len(columns[pivot])
        columns[pivot].append(token)
        used[pivot].add(token)
        row_aligned = True
        for lang in non_pivot:
            entry = lexicons[lang].entries.get(token)
            target = entry.target if entry is not None and entry.status is LexiconStatus.ACCEPTED else None
            if target is not None and target not in used[lang]:
                columns[lang].append(target)
                used[lang].add(target)
            else:
                columns[lang].append(None)
                reserved[lang].append(index)
                row_aligned = False
        aligned.append(row_aligned)

    # (4) shared character block from the pivot.
    char_tokens = [t for t in pivot_vocab.tokens
                   if len(t) == 1 and t not in SPECIAL_TOKENS][:char_subset]
    for ch in char_tokens:
        if len(columns[pivot]) >= cap:
            break
        index = len(columns[pivot])
        for lang in langs:
            if ch in used[lang]:
                columns[lang].append(None)
                reserved[lang].append(index)
            else:
                columns[lang].append(ch)
                used[lang].add(ch)
        aligned.append(False)

    # (5) fill reserved slots, then append the monolingual tail.
    filler_counts = {lang: 0 for lang in langs}
    for lang in langs:
        mono = mono_vocabs.get(lang, pivot_vocab if lang == pivot else None)
        assert mono is not None  # guarded above
        # One iterator for fills and tail: tokens skipped while filling were
        # already placed, so the tail would skip them anyway.
        supply = (t for t in mono.tokens if t not in SPECIAL_TOKENS)
        for index in reserved[lang]:
            token = next((t for t in supply if t not in used[lang]), None)
            if token is None:
                n = index
                while f"[unused{n}]" in used[lang]:
                    n += 1
                token = f"[unused{n}]"
            columns[lang][index] = token
            used[lang].add(token)
            filler_counts[lang] += 1
        for token in supply:
            if len(columns[lang]) >= cap:
                break
            if token in used[lang]:
                continue
            columns[lang].append(token)
            used[lang].add(token)

    size = min(len(columns[lang]) for lang in langs)
    aligned = (aligned + [False] * size)[:size]
    vocabs = {
        lang: Vocabulary(columns[lang][:size], lowercase=pivot_vocab.lowercase)
        for lang in langs
    }
    return ParallelVocabSet(
        languages=langs,
        language_tags=tags,
        pivot=pivot,
        vocabs=vocabs,
        aligned_mask=aligned,
        cap=cap,
        char_subset=char_subset,
        filler_counts=filler_counts,
    )


def dispatch_encode(vocab_set: ParallelVocabSet, lang_token: str, text: str) -> Encoding:
    """Encode with the vocabulary the language token selects.

    The language token only routes the call and sets ``language_id``; it is
    never emitted as an input id.

    Raises:
        UnknownLanguageToken: the token is not registered in the set.
    """
    lang = vocab_set.lang_for_tag(lang_token)
    return encode(vocab_set.vocabs[lang], text,
                  language_id=vocab_set.languages.index(lang))


def alignment_stats(vocab_set: ParallelVocabSet) -> dict:
    """Aligned-index fraction and per-language monolingual fill counts."""
    size = vocab_set.size
    return {
        "aligned_fraction": vocab_set.aligned_count() / size if size else 0.0,
        "per_language_fill": dict(vocab_set.filler_counts),
    }


def save_parallel_set(vocab_set: ParallelVocabSet, directory: str | os.PathLike) -> None:
    """Write manifest.json, one vocab file per language, and aligned.mask."""
    from .corpus import atomic_write_text  # local import avoids a cycle

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    manifest = {
        "languages": vocab_set.languages,
        "language_tags": vocab_set.language_tags,
        "pivot": vocab_set.pivot,
        "cap": vocab_set.cap,
        "char_subset": vocab_set.char_subset,
        "size": vocab_set.size,
        "aligned_count": vocab_set.aligned_count(),
        "filler_counts": vocab_set.filler_counts,
    }
    atomic_write_text(directory / MANIFEST_NAME,
                      json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    for lang in vocab_set.languages:
        atomic_write_text(directory / f"{lang}.vocab",
                          "\n".join(vocab_set.vocabs[lang].tokens) + "\n")
    atomic_write_text(directory / MASK_NAME,
                      "\n".join("1" if b else "0" for b in vocab_set.aligned_mask) + "\n")


def load_parallel_set(directory: str | os.PathLike) -> ParallelVocabSet:
    directory = Path(directory)
    manifest_path = directory / MANIFEST_NAME
    if not manifest_path.is_file():
        raise FileNotFoundError(f"no {MANIFEST_NAME} in {directory}")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    vocabs = {
        lang: Vocabulary.load(directory / f"{lang}.vocab")
        for lang in manifest["languages"]
    }
    mask_text = (directory / MASK_NAME).read_text(encoding="utf-8")
    mask = [line == "1" for line in mask_text.splitlines() if line != ""]
    return ParallelVocabSet(
        languages=list(manifest["languages"]),
        language_tags=list(manifest["language_tags"]),
        pivot=manifest["pivot"],
        vocabs=vocabs,
        aligned_mask=mask,
        cap=manifest["cap"],
        char_subset=manifest["char_subset"],
        filler_counts=dict(manifest.get("filler_counts", {})),
    )
