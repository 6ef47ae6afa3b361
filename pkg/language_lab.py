#!/usr/bin/env python3
"""
Language Lab
Brute-force ground truth for the word languages: enumeration by length,
complexity profiles, bispecial classification and census, the inclusion
chain audit and the two-balanced-pieces split check.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Tuple

from automata_functions import is_thin_diagonal
from derivation_functions import is_analytic_tangent, is_balanced, is_tangent
from toolkit_config import enumeration_cap, get_toolkit_config
from word_functions import EMPTY, TangentWordsError, Word, all_words, is_k_balanced

logger = logging.getLogger(__name__)

# Prefix depth at which the language tree is split between worker processes
PARALLEL_SPLIT_DEPTH = 10


class CapExceeded(TangentWordsError):
    def __init__(self, n: int, cap: int):
        self.n = n
        self.cap = cap
        super().__init__(f"length {n} exceeds the enumeration cap {cap} (set TW_ENUM_CAP to raise it)")


class ChainViolation(TangentWordsError):
    def __init__(self, word: Word, pair: Tuple["LanguageId", "LanguageId"]):
        self.word = word
        self.pair = pair
        super().__init__(f"{word!r} is in {pair[0].name} but not in {pair[1].name}")


class LanguageKind(Enum):
    BALANCED = "balanced"
    ANALYTIC = "analytic"
    TANGENT = "tangent"
    K_BALANCED = "k_balanced"


@dataclass(frozen=True)
class LanguageId:
    kind: LanguageKind
    k: int = 1

    @property
    def name(self) -> str:
        if self.kind is LanguageKind.K_BALANCED:
            return f"{self.k}balanced"
        return self.kind.value

    @classmethod
    def parse(cls, text: str) -> "LanguageId":
        """Parse 'balanced', 'analytic', 'tangent' or '<k>balanced'."""
        text = text.strip().lower()
        for kind in (LanguageKind.BALANCED, LanguageKind.ANALYTIC, LanguageKind.TANGENT):
            if text == kind.value:
                return cls(kind)
        if text.endswith("balanced") and text[:-len("balanced")].isdigit():
            k = int(text[:-len("balanced")])
            if k >= 1:
                return K_BALANCED(k)
        raise ValueError(f"unknown language {text!r}")


BALANCED = LanguageId(LanguageKind.BALANCED)
ANALYTIC = LanguageId(LanguageKind.ANALYTIC)
TANGENT = LanguageId(LanguageKind.TANGENT)


def K_BALANCED(k: int) -> LanguageId:
    if k < 1:
        raise ValueError(f"balance bound must be positive, got {k}")
    return LanguageId(LanguageKind.K_BALANCED, k)


INCLUSION_CHAIN = (BALANCED, ANALYTIC, TANGENT, K_BALANCED(2))


class BispecialClass(Enum):
    NOT_BISPECIAL = "not_bispecial"
    WEAK = "weak"
    ORDINARY = "ordinary"
    STRONG = "strong"


EXTENSION_CLASSES = {2: BispecialClass.WEAK, 3: BispecialClass.ORDINARY, 4: BispecialClass.STRONG}


@dataclass
class ComplexityProfile:
    language: LanguageId
    values: List[int]
    differences: List[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.differences:
            self.differences = [b - a for a, b in zip(self.values, self.values[1:])]


@dataclass
class BispecialCensus:
    language: LanguageId
    n: int
    weak: List[Word] = field(default_factory=list)
    ordinary: List[Word] = field(default_factory=list)
    strong: List[Word] = field(default_factory=list)

    @property
    def wb(self) -> int:
        return len(self.weak)

    @property
    def sb(self) -> int:
        return len(self.strong)

    @property
    def ordinary_count(self) -> int:
        return len(self.ordinary)


@dataclass
class InclusionAuditReport:
    n_max: int
    chain: Tuple[str, ...]
    witnesses: Dict[str, Optional[Word]]
    counts: Dict[int, Dict[str, int]]
    gap_counts: Dict[int, int]


def member(L: LanguageId, w: Word) -> bool:
    """Membership dispatch for the four language families."""
    if L.kind is LanguageKind.BALANCED:
        return is_balanced(w)
    if L.kind is LanguageKind.ANALYTIC:
        return is_analytic_tangent(w)
    if L.kind is LanguageKind.TANGENT:
        return is_tangent(w)
    return is_k_balanced(w, L.k)


def _extend(L: LanguageId, level: List[Word]) -> List[Word]:
    # sorted input, letters tried in order -> sorted output
    return [Word(w + a) for w in level for a in "01" if member(L, Word(w + a))]


def _grow_subtree(L: LanguageId, seeds: List[Word], n: int) -> List[Word]:
    level = seeds
    for _ in range(n - len(seeds[0]) if seeds else 0):
        level = _extend(L, level)
    return level


def iter_levels(L: LanguageId, n_max: int, cap: Optional[int] = None) -> Iterator[Tuple[int, List[Word]]]:
    """Yield (n, sorted members of length n) for n = 0..n_max by prefix extension."""
    cap = enumeration_cap(cap)
    if n_max > cap:
        raise CapExceeded(n_max, cap)
    level = [EMPTY]
    yield 0, level
    for n in range(1, n_max + 1):
        level = _extend(L, level)
        logger.debug(f"{L.name}: {len(level)} words of length {n}")
        yield n, level


def enumerate_words(L: LanguageId, n: int, cap: Optional[int] = None,
                    workers: Optional[int] = None) -> List[Word]:
    """
    Members of L of length n, lexicographically sorted.

    The language is factorial, so only members are extended. With more than
    one worker the tree is split at a fixed prefix depth and the subtrees are
    grown in separate processes; the merged result is identical to the
    single-process one.

    Args:
        L (LanguageId): the language
        n (int): word length, at most the enumeration cap
        cap (int): enumeration cap (default TW_ENUM_CAP)
        workers (int): worker processes (default TW_WORKERS)

    Returns:
        list: sorted members of length n
    """
    cap = enumeration_cap(cap)
    if n < 0:
        raise ValueError(f"negative length {n}")
    if n > cap:
        raise CapExceeded(n, cap)
    workers = workers if workers is not None else get_toolkit_config()["workers"]

    if workers <= 1 or n <= PARALLEL_SPLIT_DEPTH:
        for length, level in iter_levels(L, n, cap):
            if length == n:
                return level

    seeds = enumerate_words(L, PARALLEL_SPLIT_DEPTH, cap, workers=1)
    chunk = max(1, -(-len(seeds) // workers))
    batches = [seeds[i:i + chunk] for i in range(0, len(seeds), chunk)]
    logger.info(f"{L.name}: growing {len(seeds)} prefixes to length {n} on {workers} workers")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_grow_subtree, [L] * len(batches), batches, [n] * len(batches))
        merged = [w for part in parts for w in part]
    return sorted(merged)


def complexity_profile(L: LanguageId, n_max: int, cap: Optional[int] = None) -> ComplexityProfile:
    """p_0..p_{n_max} by enumeration, with first differences."""
    values = [len(level) for _, level in iter_levels(L, n_max, cap)]
    logger.info(f"{L.name}: complexity up to {n_max} = {values}")
    return ComplexityProfile(L, values)


def extension_count(L: LanguageId, w: Word) -> int:
    return sum(member(L, Word(a + w + b)) for a in "01" for b in "01")


def classify_bispecial(L: LanguageId, w: Word) -> BispecialClass:
    """
    Classify w by its two-sided extensions in L.

    Returns:
        BispecialClass: NOT_BISPECIAL unless 0w, 1w, w0 and w1 are all in L;
        otherwise WEAK/ORDINARY/STRONG for 2/3/4 extensions awb in L
    """
    if not all(member(L, Word(v)) for v in ("0" + w, "1" + w, w + "0", w + "1")):
        return BispecialClass.NOT_BISPECIAL
    return EXTENSION_CLASSES.get(extension_count(L, w), BispecialClass.NOT_BISPECIAL)


def bispecial_census(L: LanguageId, n: int, cap: Optional[int] = None) -> BispecialCensus:
    """Classify every member of L of length n."""
    cap = enumeration_cap(cap)
    if n > cap - 2:
        raise CapExceeded(n + 2, cap)
    census = BispecialCensus(L, n)
    buckets = {
        BispecialClass.WEAK: census.weak,
        BispecialClass.ORDINARY: census.ordinary,
        BispecialClass.STRONG: census.strong,
    }
    for w in enumerate_words(L, n, cap):
        kind = classify_bispecial(L, w)
        if kind in buckets:
            buckets[kind].append(w)
    logger.info(f"{L.name}: n={n} sb={census.sb} ordinary={census.ordinary_count} wb={census.wb}")
    return census


def thin_diagonal_parity_census(L: LanguageId, n_max: int,
                                cap: Optional[int] = None) -> Dict[int, Dict[str, int]]:
    """
    Class counts of the thin-diagonal bispecials of each length.

    Returns:
        dict: n -> {"strong": count, "ordinary": count, "weak": count}
    """
    pattern = {}
    for n in range(n_max + 1):
        census = bispecial_census(L, n, cap)
        pattern[n] = {
            "strong": sum(map(is_thin_diagonal, census.strong)),
            "ordinary": sum(map(is_thin_diagonal, census.ordinary)),
            "weak": sum(map(is_thin_diagonal, census.weak)),
        }
    return pattern


def inclusion_audit(n_max: int, cap: Optional[int] = None) -> InclusionAuditReport:
    """
    Check BALANCED ⊆ ANALYTIC ⊆ TANGENT ⊆ 2-BALANCED on every word up to n_max.

    Returns:
        InclusionAuditReport: the lexicographically least shortest strictness
        witness per inclusion, per-length class counts, and the per-length
        count of 2-balanced words that are not tangent

    Raises:
        ChainViolation: a word in a smaller class is missing from the next one
    """
    cap = enumeration_cap(cap)
    if n_max > cap:
        raise CapExceeded(n_max, cap)
    pairs = list(zip(INCLUSION_CHAIN, INCLUSION_CHAIN[1:]))
    witnesses: Dict[str, Optional[Word]] = {f"{big.name}_not_{small.name}": None for small, big in pairs}
    counts: Dict[int, Dict[str, int]] = {}
    gap_counts: Dict[int, int] = {}

    for n in range(n_max + 1):
        tally = {L.name: 0 for L in INCLUSION_CHAIN}
        for w in all_words(n):
            flags = [member(L, w) for L in INCLUSION_CHAIN]
            for (small, big), inside_small, inside_big in zip(pairs, flags, flags[1:]):
                if inside_small and not inside_big:
                    logger.error(f"Inclusion {small.name} <= {big.name} broken by {w!r}")
                    raise ChainViolation(w, (small, big))
                key = f"{big.name}_not_{small.name}"
                if inside_big and not inside_small and witnesses[key] is None:
                    witnesses[key] = w
            for L, flag in zip(INCLUSION_CHAIN, flags):
                tally[L.name] += flag
        counts[n] = tally
        gap_counts[n] = tally[K_BALANCED(2).name] - tally[TANGENT.name]

    return InclusionAuditReport(
        n_max=n_max,
        chain=tuple(L.name for L in INCLUSION_CHAIN),
        witnesses=witnesses,
        counts=counts,
        gap_counts=gap_counts,
    )


def splits_into_two_balanced(w: Word) -> Tuple[bool, Optional[int]]:
    """Smallest i with w[:i] and w[i:] both balanced, if any."""
    for i in range(len(w) + 1):
        if is_balanced(Word(w[:i])) and is_balanced(Word(w[i:])):
            return True, i
    return False, None


def split_counterexamples(n_max: int, cap: Optional[int] = None) -> List[Word]:
    """Analytic tangent words up to n_max that are not a product of two balanced words."""
    return [
        w
        for _, level in iter_levels(ANALYTIC, n_max, cap)
        for w in level
        if not splits_into_two_balanced(w)[0]
    ]
