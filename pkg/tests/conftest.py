import functools
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from artinlab.workspace import load_workspace  # noqa: E402

CORPUS = os.path.join(os.path.dirname(__file__), "..", "src", "artinlab", "corpus")
CORPUS_NAMES = sorted(f[:-3] for f in os.listdir(CORPUS) if f.endswith(".ws"))
# the rational copy of the aba algebra is slow; most suites skip it
FAST_CORPUS = [n for n in CORPUS_NAMES if n != "aba_q"]


def corpus_path(name: str) -> str:
    return os.path.join(CORPUS, name + ".ws")


@functools.lru_cache(maxsize=None)
def corpus(name: str):
    return load_workspace(corpus_path(name))


@pytest.fixture
def a2():
    return corpus("a2")
