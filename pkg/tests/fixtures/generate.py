"""Regenerate the bundled two-language fixture (deterministic).

Run from the repository root:  python3 tests/fixtures/generate.py

Produces a small English-like pivot corpus, a word-by-word counterpart
corpus, a two-direction provider table with deliberately broken entries
(multiword, wrong script, control character, back-translation mismatch,
missing), a parallel corpus TSV for the metrics, and the pipeline config.
"""

import json
import random
from pathlib import Path

HERE = Path(__file__).parent

# Clean pairs: translate forward and back to the same word.
ACCEPTED = {
    "water": "ruwa",
    "rice": "shinkafa",
    "house": "gida",
    "moon": "wata",
    "fire": "wuta",
    "child": "yaro",
    "woman": "mace",
    "book": "littafi",
    "road": "hanya",
    "horse": "doki",
    "bird": "tsuntsu",
    "farmer": "manomi",
    "night": "dare",
    "rain": "ruwansama",
    "food": "abinci",
    "eyes": "idanu",
    "hand": "hannu",
    "tree": "itace",
    "stone": "dutse",
    "milk": "madara",
    "salt": "gishiri",
    "journey": "tafiya",
    "village": "kauye",
    "teacher": "malami",
    "grain": "hatsi",
}

# Deliberately broken provider entries; the corpus mapping stays clean.
MULTIWORD = {"river": "kogin ruwa"}
WRONG_SCRIPT = {"market": "σoko"}       # Greek sigma in a Latin profile
CONTROL_CHAR = {"paper": "takarda\x07"}
BACKTRANSLATION = {"bank": "banki"}           # banki translates back to "shore"
MISSING = ["window"]                          # no provider entry at all

# Word-by-word corpus mapping (always a single clean word).
CORPUS_MAP = dict(ACCEPTED)
CORPUS_MAP.update({
    "river": "kogi",
    "market": "kasuwa",
    "paper": "takarda",
    "bank": "banki",
    "window": "taga",
    # connective short words (exempt from translation by length)
    "the": "ta",
    "and": "da",
    "in": "ina",
    "big": "babba",
    # digit tokens stay identical across languages
    "1920": "1920",
    "2024": "2024",
})


def main() -> None:
    rng = random.Random(20240817)
    words = list(CORPUS_MAP)
    # frequent function words first, content words with decaying weight
    weights = [6 if w in ("the", "and", "in") else max(1, 30 - i) for i, w in enumerate(words)]

    def sentence() -> tuple[str, str]:
        n = rng.randint(3, 8)
        chosen = rng.choices(words, weights=weights, k=n)
        return " ".join(chosen), " ".join(CORPUS_MAP[w] for w in chosen)

    en_lines, ha_lines = [], []
    for _ in range(200):
        en, ha = sentence()
        en_lines.append(en)
        ha_lines.append(ha)
    (HERE / "en.txt").write_text("\n".join(en_lines) + "\n", encoding="utf-8")
    (HERE / "ha.txt").write_text("\n".join(ha_lines) + "\n", encoding="utf-8")

    rows = ["en\tha"]
    for _ in range(40):
        en, ha = sentence()
        rows.append(f"{en}\t{ha}")
    (HERE / "corpus.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")

    provider_rows = []
    for src, tgt in sorted(ACCEPTED.items()):
        provider_rows.append(f"en\tha\t{src}\t{tgt}")
        provider_rows.append(f"ha\ten\t{tgt}\t{src}")
    for src, tgt in sorted({**MULTIWORD, **WRONG_SCRIPT, **CONTROL_CHAR}.items()):
        provider_rows.append(f"en\tha\t{src}\t{tgt}")
    for src, tgt in sorted(BACKTRANSLATION.items()):
        provider_rows.append(f"en\tha\t{src}\t{tgt}")
        provider_rows.append(f"ha\ten\t{tgt}\tshore")
    (HERE / "provider.tsv").write_text("\n".join(provider_rows) + "\n", encoding="utf-8")

    config = {
        "languages": [
            {"code": "en", "tag": "[EN]", "corpus": "en.txt"},
            {"code": "ha", "tag": "[HA]", "corpus": "ha.txt"},
        ],
        "pivot": "en",
        "lexicon": "provider.tsv",
        "vocab_cap": 400,
        "char_subset": 30,
        "min_pair_frequency": 2,
        "lowercase": True,
        "seed": 0,
        "output_dir": "out",
    }
    (HERE / "config.json").write_text(json.dumps(config, indent=2) + "\n", encoding="utf-8")
    print(f"wrote fixture under {HERE}")


if __name__ == "__main__":
    main()
