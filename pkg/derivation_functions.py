"""
Desubstitution and Membership Module

This module implements the desubstitution map (remove one letter per run of
the non-isolated letter), its accelerated form, the derivated word d(w),
the morphisms sigma0/sigma1, and the membership predicates for balanced,
tangent and analytic tangent words.
"""

import functools
import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from automata_functions import is_diagonal, is_non_oscillating_diagonal
from word_functions import EMPTY, TangentWordsError, Word, inner_runs

logger = logging.getLogger(__name__)


class NotDesubstitutable(TangentWordsError):
    def __init__(self, w: Word):
        self.word = w
        super().__init__(f"{w!r} contains both 00 and 11")


class EmptyWord(TangentWordsError):
    def __init__(self):
        super().__init__("the empty word cannot be desubstituted")


class NoInnerRun(TangentWordsError):
    def __init__(self, w: Word, letter: int):
        self.word = w
        self.letter = letter
        super().__init__(f"{w!r} has no inner run of {letter}")


class RemovalRule(Enum):
    REMOVED_ZEROS = "removed_zeros"
    REMOVED_ONES = "removed_ones"

    @property
    def letter(self) -> str:
        return "0" if self is RemovalRule.REMOVED_ZEROS else "1"


class MorphismId(Enum):
    SIGMA0 = "sigma0"
    SIGMA1 = "sigma1"


MORPHISM_IMAGES = {
    MorphismId.SIGMA0: {"0": "0", "1": "10"},
    MorphismId.SIGMA1: {"0": "01", "1": "1"},
}

_MORPHISM_TABLES = {m: str.maketrans(images) for m, images in MORPHISM_IMAGES.items()}

# One letter off every maximal run of the letter.
_ONE_PER_RUN = {
    "0": re.compile(r"0(0*)"),
    "1": re.compile(r"1(1*)"),
}


@dataclass(frozen=True)
class DerivationStep:
    input: Word
    rule: RemovalRule
    output: Word
    repeat: int = 1


@dataclass(frozen=True)
class DerivationTrace:
    steps: Tuple[DerivationStep, ...]
    final: Word

    @property
    def words(self) -> Tuple[Word, ...]:
        """Every word on the way, input first, d(w) last."""
        if not self.steps:
            return (self.final,)
        return (self.steps[0].input,) + tuple(step.output for step in self.steps)


def is_derivated(w: Word) -> bool:
    """True when delta no longer applies: w is empty or holds both 00 and 11."""
    return not w or ("00" in w and "11" in w)


def removal_rule(w: Word, tie_break: int = 0) -> RemovalRule:
    """
    Pick the letter delta removes.

    Args:
        w (Word): nonempty word
        tie_break (int): letter removed when w holds neither 00 nor 11 (if present in w)

    Returns:
        RemovalRule: the rule that applies
    """
    if not w:
        raise EmptyWord()
    has_zeros = "00" in w
    has_ones = "11" in w
    if has_zeros and has_ones:
        raise NotDesubstitutable(w)
    if has_zeros:
        return RemovalRule.REMOVED_ZEROS
    if has_ones:
        return RemovalRule.REMOVED_ONES
    preferred = str(tie_break)
    letter = preferred if preferred in w else ("1" if preferred == "0" else "0")
    return RemovalRule.REMOVED_ZEROS if letter == "0" else RemovalRule.REMOVED_ONES


def desubstitute(w: Word, tie_break: int = 0) -> DerivationStep:
    """
    One application of delta.

    Args:
        w (Word): word to desubstitute
        tie_break (int): letter removed from alternating words (default 0)

    Returns:
        DerivationStep: input, rule used and output

    Raises:
        EmptyWord: if w is empty
        NotDesubstitutable: if w contains both 00 and 11
    """
    rule = removal_rule(w, tie_break)
    output = Word(_ONE_PER_RUN[rule.letter].sub(r"\1", w))
    return DerivationStep(w, rule, output)


def desubstitute_accelerated(w: Word, tie_break: int = 0) -> DerivationStep:
    """
    Remove min(m, run length) letters from every run of the non-isolated
    letter, leading and trailing runs included, where m is the length of
    its shortest inner run. Equals m applications of delta as long as no
    intermediate word is alternating.

    Raises:
        NoInnerRun: the non-isolated letter has no inner run; use desubstitute()
    """
    rule = removal_rule(w, tie_break)
    letter = rule.letter
    inner = inner_runs(w, int(letter))
    if not inner:
        raise NoInnerRun(w, int(letter))
    m = min(run.length for run in inner)
    pattern = re.compile(f"{letter}{{1,{m}}}({letter}*)")
    output = Word(pattern.sub(r"\1", w))
    return DerivationStep(w, rule, output, repeat=m)


def derive(w: Word, accelerated: bool = False) -> DerivationTrace:
    """
    Iterate delta until the word is empty or contains both 00 and 11.

    Args:
        w (Word): starting word
        accelerated (bool): use the accelerated step whenever an inner run exists

    Returns:
        DerivationTrace: every step and the derivated word d(w)
    """
    steps = []
    current = w
    while not is_derivated(current):
        step = None
        if accelerated:
            try:
                step = desubstitute_accelerated(current)
            except NoInnerRun:
                logger.debug(f"No inner run in {current!r}, single delta step")
        if step is None:
            step = desubstitute(current)
        logger.debug(f"delta x{step.repeat} ({step.rule.value}): {step.input} -> {step.output}")
        steps.append(step)
        current = step.output
    return DerivationTrace(tuple(steps), current)


@functools.lru_cache(maxsize=1 << 18)
def derivated_word(w: Word) -> Word:
    """d(w) without recording the trace."""
    current = w
    while not is_derivated(current):
        current = Word(_ONE_PER_RUN[removal_rule(current).letter].sub(r"\1", current))
    return current


def apply_morphism(m: MorphismId, w: Word) -> Word:
    """Letterwise image of w under sigma0 (0->0, 1->10) or sigma1 (0->01, 1->1)."""
    return Word(w.translate(_MORPHISM_TABLES[m]))


def is_balanced(w: Word) -> bool:
    return derivated_word(w) == EMPTY


def is_tangent(w: Word) -> bool:
    return is_diagonal(derivated_word(w))


def is_analytic_tangent(w: Word) -> bool:
    return is_non_oscillating_diagonal(derivated_word(w))
