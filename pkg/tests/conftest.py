# -*- coding: utf-8 -*-
"""Wspólne dane testowe"""

import pytest

from utils.dataset import DEFAULT_VOCABULARY, generate, split
from utils.sllm_logic import load_lexicon
from views.prove_view import DEFAULT_LEXICON


@pytest.fixture(scope="session")
def discourse_lexicon():
    return load_lexicon(DEFAULT_LEXICON)


@pytest.fixture(scope="session")
def entries():
    return generate(DEFAULT_VOCABULARY)


@pytest.fixture(scope="session")
def splits(entries):
    return split(entries, seed=0)


@pytest.fixture
def entry_by_sentence(entries):
    index = {e.sentence: e for e in entries}
    return index.__getitem__
