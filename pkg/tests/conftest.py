"""Shared fixtures: tiny vocabularies and the bundled two-language corpus."""

from pathlib import Path

import pytest

from paratok import SPECIAL_TOKENS, Vocabulary

FIXTURE_DIR = Path(__file__).parent / "fixtures"


def make_vocab(extra_tokens, **kwargs) -> Vocabulary:
    """Specials plus the given entries, in order."""
    return Vocabulary(list(SPECIAL_TOKENS) + list(extra_tokens), **kwargs)


@pytest.fixture
def toy_vocab() -> Vocabulary:
    return make_vocab(["un", "##able", "able", "run", "##s", "a", "##a", "##b", "b"])


@pytest.fixture
def fixture_dir() -> Path:
    return FIXTURE_DIR
