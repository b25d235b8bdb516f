"""Per-language WordPiece tokenizers whose vocabularies are index-aligned
across languages, plus the tokenization-quality and cross-lingual-alignment
metrics used to evaluate them."""

from . import errors
from .corpus import LanguageSpec, PipelineConfig, ingest_corpus, load_config
from .embeddings import (
    ComposeVariant,
    ComposedInput,
    CptMode,
    EmbeddingTables,
    compose,
    cpt_init_new_embeddings,
    init_tables,
    load_matrix,
    load_tables,
    save_matrix,
    save_tables,
)
from .lexicon import (
    BilingualLexicon,
    LexiconEntry,
    LexiconStatus,
    MappingProvider,
    TranslationProvider,
    TsvProvider,
    align_word_tokens,
    alignment_coverage,
)
from .metrics import (
    EmbeddingMatrix,
    MonoTokenizer,
    ParallelCorpus,
    ParallelSetTokenizer,
    PerLanguageTokenizer,
    fertility,
    margin_scores,
    metrics_csv,
    parity,
    pca_csv,
    pca_project,
    unk_count,
    xsim_error_rate,
)
from .parallel import (
    ParallelVocabSet,
    alignment_stats,
    build_parallel_set,
    dispatch_encode,
    language_tag,
    load_parallel_set,
    save_parallel_set,
)
from .pipeline import PipelineReport, run_pipeline
from .scripts import ScriptProfile, script_of
from .taxonomy import CategoryReport, TokenCategory, category_report, classify, word_type_tokens
from .wordpiece import (
    SPECIAL_TOKENS,
    Encoding,
    Vocabulary,
    decode,
    encode,
    segment_word,
    train_wordpiece,
)

__version__ = "0.1.0"

__all__ = [
    "BilingualLexicon",
    "CategoryReport",
    "ComposeVariant",
    "ComposedInput",
    "CptMode",
    "EmbeddingMatrix",
    "EmbeddingTables",
    "Encoding",
    "LanguageSpec",
    "LexiconEntry",
    "LexiconStatus",
    "MappingProvider",
    "MonoTokenizer",
    "ParallelCorpus",
    "ParallelSetTokenizer",
    "ParallelVocabSet",
    "PerLanguageTokenizer",
    "PipelineConfig",
    "PipelineReport",
    "SPECIAL_TOKENS",
    "ScriptProfile",
    "TokenCategory",
    "TranslationProvider",
    "TsvProvider",
    "Vocabulary",
    "align_word_tokens",
    "alignment_coverage",
    "alignment_stats",
    "build_parallel_set",
    "category_report",
    "classify",
    "compose",
    "cpt_init_new_embeddings",
    "decode",
    "dispatch_encode",
    "encode",
    "errors",
    "fertility",
    "ingest_corpus",
    "init_tables",
    "language_tag",
    "load_config",
    "load_matrix",
    "load_parallel_set",
    "load_tables",
    "margin_scores",
    "metrics_csv",
    "parity",
    "pca_csv",
    "pca_project",
    "run_pipeline",
    "save_matrix",
    "save_parallel_set",
    "save_tables",
    "script_of",
    "segment_word",
    "train_wordpiece",
    "unk_count",
    "word_type_tokens",
    "xsim_error_rate",
]
