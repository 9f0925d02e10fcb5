import os
import sys

import numpy as np
import pytest

SRC = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "src")
if SRC not in sys.path:
    sys.path.insert(0, SRC)

from midicoth.utils.corpus import corpus_path  # noqa: E402

SAMPLE_TEXT = (
    b"Alice was beginning to get very tired of sitting by her sister on the bank, "
    b"and of having nothing to do: once or twice she had peeped into the book her "
    b"sister was reading, but it had no pictures or conversations in it, 'and what "
    b"is the use of a book,' thought Alice 'without pictures or conversations?' "
    b"So she was considering in her own mind (as well as she could, for the hot day "
    b"made her feel very sleepy and stupid), whether the pleasure of making a "
    b"daisy-chain would be worth the trouble of getting up and picking the daisies."
)


@pytest.fixture
def sample_text() -> bytes:
    return SAMPLE_TEXT


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def corpus_bytes(name: str) -> bytes:
    """Contents of a corpus file, or skip the calling test."""
    p = corpus_path(name)
    if p is None:
        pytest.skip(f"corpus file {name} not found")
    with open(p, "rb") as f:
        return f.read()


@pytest.fixture
def corpus():
    return corpus_bytes
