# Compare the three tokenizer setups on the fixture's parallel corpus:
# one shared vocabulary, independent per-language vocabularies, and the
# index-aligned parallel set.

from pathlib import Path
from tempfile import TemporaryDirectory

from paratok import (
    MonoTokenizer,
    ParallelCorpus,
    ParallelSetTokenizer,
    PerLanguageTokenizer,
    fertility,
    ingest_corpus,
    load_config,
    metrics_csv,
    parity,
    run_pipeline,
    train_wordpiece,
    unk_count,
)

FIXTURE = Path(__file__).parent.parent / "tests" / "fixtures"
corpus = ParallelCorpus.from_tsv(FIXTURE / "corpus.tsv")

with TemporaryDirectory() as tmp:
    config = load_config(FIXTURE / "config.json", output_dir=tmp)
    vset, _ = run_pipeline(config)

# shared baseline: one vocabulary trained on both corpora concatenated
shared_lines = ingest_corpus(FIXTURE / "en.txt") + ingest_corpus(FIXTURE / "ha.txt")
shared = MonoTokenizer(train_wordpiece(shared_lines, vocab_cap=400), name="shared")

per_lang = PerLanguageTokenizer(
    {"en": train_wordpiece(ingest_corpus(FIXTURE / "en.txt"), vocab_cap=400),
     "ha": train_wordpiece(ingest_corpus(FIXTURE / "ha.txt"), vocab_cap=400)},
    name="monolingual",
)
parallel = ParallelSetTokenizer(vset, name="parallel")

rows = []
for tok in (shared, per_lang, parallel):
    for lang in corpus.languages:
        rows.append(("fertility", tok.name, lang,
                     fertility(tok, corpus.column(lang), lang)))
        rows.append(("parity", tok.name, lang, parity(tok, corpus, lang, "ha")))
        rows.append(("unk", tok.name, lang, unk_count(tok, corpus.column(lang), lang)))

print(metrics_csv(rows))
print("lower fertility = more compact; parity 1.0 = identical counts per row")
