"""Shared fixtures and random-word helpers for the test suite."""

from __future__ import annotations

import random
from importlib import resources

import pytest

from cgtoolkit import fileio
from cgtoolkit.library import group_library
from cgtoolkit.words import Alphabet, Word, cyclic_reduce


def data_text(name: str) -> str:
    return (resources.files("cgtoolkit") / "data" / name).read_text()


def random_reduced_word(rng: random.Random, rank: int, length: int,
                        lo: int = 1) -> Word:
    """A freely reduced word of exactly `length` letters over generators
    lo-1 .. lo-1+rank-1 (1-based letters lo..lo+rank-1)."""
    letters: list[int] = []
    choices = [s * i for i in range(lo, lo + rank) for s in (1, -1)]
    while len(letters) < length:
        x = rng.choice(choices)
        if letters and letters[-1] == -x:
            continue
        letters.append(x)
    return Word(letters, _reduced=True)


def random_cyclic_word(rng: random.Random, rank: int, length: int) -> Word:
    """A nonempty cyclically reduced word of at most `length` letters."""
    while True:
        core, _ = cyclic_reduce(random_reduced_word(rng, rank, length))
        if core:
            return core


def naive_max_pieces(rset) -> dict[Word, int]:
    """Independent all-pairs oracle: for every closure word, the longest
    common prefix with any distinct closure word."""
    words = rset.sorted_words()
    best = {w: 0 for w in words}
    for i, u in enumerate(words):
        for v in words[i + 1:]:
            lcp = 0
            for a, b in zip(u.letters, v.letters):
                if a != b:
                    break
                lcp += 1
            if lcp > best[u]:
                best[u] = lcp
            if lcp > best[v]:
                best[v] = lcp
    return best


@pytest.fixture(scope="session")
def library():
    return group_library()


@pytest.fixture(scope="session")
def genus2():
    return fileio.parse_presentation(data_text("genus2.pres"))


@pytest.fixture(scope="session")
def torus():
    return fileio.parse_presentation(data_text("torus.pres"))


@pytest.fixture(scope="session")
def double_hnn():
    return fileio.parse_hnn(data_text("double_hnn.hnn"))


ABC = Alphabet(["a", "b", "c"])
