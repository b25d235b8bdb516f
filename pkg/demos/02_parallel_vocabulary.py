# Build the two-language index-aligned set from the bundled fixture and
# show that accepted translations share vocabulary indices.

from pathlib import Path
from tempfile import TemporaryDirectory

from paratok import dispatch_encode, load_config, run_pipeline

FIXTURE = Path(__file__).parent.parent / "tests" / "fixtures"

with TemporaryDirectory() as tmp:
    config = load_config(FIXTURE / "config.json", output_dir=tmp)
    vset, report = run_pipeline(config)

    print(f"languages: {vset.languages}  pivot: {vset.pivot}")
    print(f"size: {vset.size} entries per language, "
          f"{vset.aligned_count()} indices aligned")
    print("lexicon outcomes:", report.lexicon_status_counts["ha"])
    print("coverage:", {k: round(v, 4) for k, v in report.coverage["ha"].items()})

    en, ha = vset.vocabs["en"], vset.vocabs["ha"]
    print("\nsample aligned rows (same index, two surface forms):")
    shown = 0
    for idx, shared in enumerate(vset.aligned_mask):
        if shared and shown < 6:
            print(f"  {idx:4d}  en={en.tokens[idx]:<10} ha={ha.tokens[idx]}")
            shown += 1

    # the language token picks the tokenizer and is never emitted as an id
    enc_en = dispatch_encode(vset, "[EN]", "rice")
    enc_ha = dispatch_encode(vset, "[HA]", "shinkafa")
    print("\n'rice' under [EN]:     ", enc_en.ids, " language_id", enc_en.language_id)
    print("'shinkafa' under [HA]: ", enc_ha.ids, " language_id", enc_ha.language_id)
    print("word position id equal:", enc_en.ids[1] == enc_ha.ids[1])
