import random

import pytest

import builders


@pytest.fixture(scope="session")
def dfa_corpus():
    """Sixty random trimmed automata, half binary, half ternary."""
    rng = random.Random(20260819)
    corpus = [builders.random_trimmed(rng, max_states=6, k=2) for _ in range(30)]
    corpus += [builders.random_trimmed(rng, max_states=6, k=3) for _ in range(30)]
    return corpus


@pytest.fixture(scope="session")
def fad_corpus():
    return builders.corpus_antidictionaries()
