"""
Binary Word Operations Module

This module provides the word representation shared by the whole toolkit
(finite words over {0,1}, 0 = right move, 1 = up move), run-length
decomposition, factor extraction and k-balance checking.
"""

import itertools
import logging
from typing import List, NamedTuple, NewType, Set

import numpy as np

logger = logging.getLogger(__name__)

# A word is its ASCII '0'/'1' text: immutable, hashable, O(1) indexing.
Word = NewType("Word", str)

EMPTY = Word("")
ALPHABET = ("0", "1")


class TangentWordsError(Exception):
    """Base class of every domain error raised by the toolkit."""


class InvalidCharacter(TangentWordsError):
    def __init__(self, position: int, char: str = ""):
        self.position = position
        self.char = char
        super().__init__(f"invalid character {char!r} at position {position}")


class LengthOutOfRange(TangentWordsError):
    def __init__(self, n: int, length: int):
        self.n = n
        self.length = length
        super().__init__(f"factor length {n} outside 0..{length}")


class Run(NamedTuple):
    letter: int
    length: int


def parse_word(text: str) -> Word:
    """
    Parse the textual form of a word.

    Args:
        text (str): characters '0' and '1' only; the empty string is the empty word

    Returns:
        Word: the parsed word

    Raises:
        InvalidCharacter: at the first position holding anything else
    """
    for position, char in enumerate(text):
        if char not in ALPHABET:
            raise InvalidCharacter(position, char)
    return Word(text)


def all_words(n: int):
    """Yield every word of length n in lexicographic order."""
    for letters in itertools.product(ALPHABET, repeat=n):
        yield Word("".join(letters))


def runs(w: Word) -> List[Run]:
    """Maximal-run decomposition of w, e.g. 0010 -> [(0,2), (1,1), (0,1)]."""
    return [Run(int(letter), len(list(group))) for letter, group in itertools.groupby(w)]


def inner_runs(w: Word, letter: int) -> List[Run]:
    """Runs of `letter` touching neither end of w."""
    decomposition = runs(w)
    return [run for run in decomposition[1:-1] if run.letter == letter]


def join_runs(decomposition: List[Run]) -> Word:
    """Concatenate a run decomposition back into a word."""
    return Word("".join(str(run.letter) * run.length for run in decomposition))


def ones(w: Word) -> int:
    return w.count("1")


def factors(w: Word, n: int) -> Set[Word]:
    """
    All distinct factors of length n.

    Args:
        w (Word): the word
        n (int): factor length, 0 <= n <= |w|

    Returns:
        set: the length-n factors; {""} when n == 0
    """
    if n < 0 or n > len(w):
        raise LengthOutOfRange(n, len(w))
    return {Word(w[i:i + n]) for i in range(len(w) - n + 1)}


def _prefix_ones(w: Word) -> np.ndarray:
    bits = np.frombuffer(w.encode("ascii"), dtype=np.uint8) - ord("0")
    return np.concatenate(([0], np.cumsum(bits, dtype=np.int64)))


def is_k_balanced(w: Word, k: int) -> bool:
    """
    Check that any two factors of equal length differ by at most k ones.

    For each window length m the ones-count of every window comes from the
    prefix sums; the word is k-balanced iff max - min <= k for every m.

    Args:
        w (Word): the word
        k (int): balance bound, k >= 1

    Returns:
        bool: True iff w is k-balanced
    """
    if k < 1:
        raise ValueError(f"balance bound must be positive, got {k}")
    if len(w) < 2:
        return True
    prefix = _prefix_ones(w)
    for m in range(1, len(w)):
        window = prefix[m:] - prefix[:-m]
        if int(window.max() - window.min()) > k:
            return False
    return True
