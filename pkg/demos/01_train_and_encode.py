# Train a tiny WordPiece vocabulary and walk one sentence through
# encode -> ids -> decode.

from paratok import decode, encode, train_wordpiece

corpus = [
    "the farmer waters the rice",
    "the rice needs water",
    "water the rice every night",
    "the farmer rests at night",
] * 5  # repeat so every pair clears the merge threshold

vocab = train_wordpiece(corpus, vocab_cap=120, min_pair_frequency=2)
print(f"trained {len(vocab)} tokens; first entries: {vocab.tokens[:12]}")

# every character appears in bare and continuation form; frequent words
# merge all the way up to whole-word tokens
for token in ("water", "rice", "farmer"):
    print(f"  {token!r} in vocabulary: {token in vocab}")

enc = encode(vocab, "The farmer waters the rice")
print("ids:            ", enc.ids)
print("tokens:         ", [vocab.id_to_token(i) for i in enc.ids])
print("word spans:     ", enc.word_spans)
print("decoded:        ", decode(vocab, enc.ids))

# a word the vocabulary cannot cover degrades to a single UNK id
enc = encode(vocab, "the farmer visited kyoto")
print("with OOV word:  ", [vocab.id_to_token(i) for i in enc.ids])
