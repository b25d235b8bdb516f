# Input representation: sum token, segment, position, and language
# embeddings, compare the three composition variants, and initialize a new
# token table from an old one by averaging constituent-subword rows.

from pathlib import Path
from tempfile import TemporaryDirectory

import numpy as np

from paratok import (
    ComposeVariant,
    CptMode,
    compose,
    cpt_init_new_embeddings,
    dispatch_encode,
    init_tables,
    load_config,
    run_pipeline,
)

FIXTURE = Path(__file__).parent.parent / "tests" / "fixtures"

with TemporaryDirectory() as tmp:
    config = load_config(FIXTURE / "config.json", output_dir=tmp)
    vset, _ = run_pipeline(config)

tables = init_tables(vset.size, len(vset.languages), d=16, max_len=32, seed=0)
enc = dispatch_encode(vset, "[HA]", "ruwa shinkafa gida")
print(f"encoding has {len(enc.ids)} ids, language_id={enc.language_id}")

for variant in ComposeVariant:
    mask = vset.aligned_mask if variant is ComposeVariant.ADD_TO_UNALIGNED_ONLY else None
    out = compose(tables, enc, variant, aligned_mask=mask)
    print(f"{variant.value:<24} -> matrix {out.matrix.shape}")

# broadcast check: removing the language row from every position recovers
# the language-free composition
full = compose(tables, enc, ComposeVariant.ADD_TO_ALL).matrix
lang_row = tables.language.astype(np.float64)[enc.language_id]
no_lang = type(tables)(token=tables.token, segment=tables.segment,
                       position=tables.position,
                       language=np.zeros_like(tables.language),
                       d=tables.d, seed=tables.seed)
bare = compose(no_lang, enc, ComposeVariant.ADD_TO_ALL).matrix
print("broadcast residual:", np.max(np.abs((full - lang_row) - bare)))

# continual-pretraining initialization: treat the pivot vocabulary as the
# "old" model and initialize rows for the whole parallel set
old_vocab = vset.vocabs[vset.pivot]
old_table = np.random.default_rng(1).normal(0, 0.02, size=(len(old_vocab), 16))
for mode in CptMode:
    new_table = cpt_init_new_embeddings(old_vocab, old_table, vset, mode=mode)
    print(f"cpt {mode.value:<9} new table {new_table.shape}, "
          f"row norm mean {np.linalg.norm(new_table, axis=1).mean():.4f}")
