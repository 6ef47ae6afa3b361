"""
Closed-Form Counting Module

This module provides the arithmetic side of the complexity study: Euler's
totient, Lipatov's balanced complexity, the analytic/tangent complexity
formulas both as printed and as rederived from the geometric count of strong
bispecial factors, the double-sum that turns bispecial counts into
complexity, and the reconciliation report that compares all of them with
enumerated ground truth.
"""

import functools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence

import numpy as np
from sympy import divisors as sympy_divisors
from sympy import totient as sympy_totient

from language_lab import ANALYTIC, TANGENT, LanguageId, bispecial_census, iter_levels
from toolkit_config import enumeration_cap
from word_functions import TangentWordsError

logger = logging.getLogger(__name__)


class DomainError(TangentWordsError):
    def __init__(self, n: int):
        self.n = n
        super().__init__(f"totient is defined for n >= 1, got {n}")


class ParityViolation(TangentWordsError):
    def __init__(self, n: int, total: int):
        self.n = n
        self.total = total
        super().__init__(f"inner sum {total} for n={n} is odd; the 1/2 factor does not cancel")


class InsufficientData(TangentWordsError):
    def __init__(self, needed: int, available: int):
        self.needed = needed
        self.available = available
        super().__init__(f"need {needed} bispecial counts, got {available}")


class ClosedFormVariant(Enum):
    PAPER_AS_PRINTED = "paper"
    GEOMETRIC_CANDIDATE = "candidate"


@functools.lru_cache(maxsize=None)
def totient(n: int) -> int:
    """
    Euler's totient phi(n) = #{1 <= k <= n : gcd(k, n) = 1}.

    Raises:
        DomainError: if n < 1
    """
    if n < 1:
        raise DomainError(n)
    return int(sympy_totient(n))


@functools.lru_cache(maxsize=None)
def divisors(n: int) -> tuple:
    return tuple(int(d) for d in sympy_divisors(n))


def lipatov_balanced(n: int) -> int:
    """p_n(B) = 1 + sum_{i=1..n} (n - i + 1) phi(i)."""
    return 1 + sum((n - i + 1) * totient(i) for i in range(1, n + 1))


def _analytic_summand(j: int, variant: ClosedFormVariant) -> int:
    if variant is ClosedFormVariant.PAPER_AS_PRINTED:
        return 2 * j - totient(j) - 1
    return 2 * j - totient(j) - 2


def _tangent_summand(j: int, variant: ClosedFormVariant) -> int:
    """Inner divisor sum of the tangent formula for segment length j; the formula halves the total."""
    if variant is ClosedFormVariant.PAPER_AS_PRINTED:
        return sum(totient(j) * 2 ** (j // d) for d in divisors(j) if d != 1)
    return sum(totient(d) * 2 ** (j // d) for d in divisors(j) if d != 1)


def prop3_analytic(n: int, variant: ClosedFormVariant) -> int:
    """p_n(T^omega) = 1 + n + sum_{i=1..n} sum_{j=2..i} summand(j)."""
    return 1 + n + sum(_analytic_summand(j, variant) for i in range(1, n + 1) for j in range(2, i + 1))


def prop3_tangent(n: int, variant: ClosedFormVariant) -> int:
    """
    p_n(T^inf) = 1 + n + 1/2 sum_{i=1..n} sum_{j=2..i} sum_{d|j, d!=1} f(j, d) 2^{j/d},
    with f(j, d) = phi(j) as printed and phi(d) for the geometric candidate.

    Raises:
        ParityViolation: if the triple sum is odd
    """
    total = sum(_tangent_summand(j, variant) for i in range(1, n + 1) for j in range(2, i + 1))
    if total % 2:
        raise ParityViolation(n, total)
    return 1 + n + total // 2


def candidate_sb(L: LanguageId, n: int) -> int:
    """
    Strong bispecial count of length n from the segments (p, q) with p + q = n + 2.

    ANALYTIC: one word per primitive segment, two per segment with interior
    lattice points. TANGENT: 2^(g-1) words per segment with gcd g.
    """
    total = n + 2
    if L == ANALYTIC:
        return totient(total) + 2 * (total - 1 - totient(total))
    if L == TANGENT:
        return sum(totient(d) * 2 ** (total // d - 1) for d in divisors(total) if d >= 2)
    raise ValueError(f"no geometric bispecial count for {L.name}")


def paper_sb(L: LanguageId, n: int) -> int:
    """Strong bispecial counts exactly as printed alongside the geometric argument."""
    total = n + 2
    if L == ANALYTIC:
        return totient(total) + 2 * (total - totient(total))
    if L == TANGENT:
        return sum(totient(total) * 2 ** (total // d - 1) for d in divisors(total) if d != 1)
    raise ValueError(f"no printed bispecial count for {L.name}")


def complexity_from_sb(sb: Sequence[int], n: int) -> int:
    """
    p_n = 1 + n + sum_{i=0..n-1} sum_{j=0..i-1} sb_j, with no weak bispecials.

    Raises:
        InsufficientData: if fewer than n - 1 counts are given
    """
    needed = max(0, n - 1)
    if len(sb) < needed:
        raise InsufficientData(needed, len(sb))
    return 1 + n + sum(sb[j] for i in range(n) for j in range(i))


@dataclass
class ReconciliationRow:
    n: int
    enum_analytic: int
    enum_tangent: int
    paper_analytic: int
    paper_tangent: int
    cand_analytic: int
    cand_tangent: int
    enum_sb_analytic: Optional[int]
    enum_sb_tangent: Optional[int]
    cand_sb_analytic: int
    cand_sb_tangent: int
    flags: Dict[str, bool] = field(default_factory=dict)


@dataclass
class ReconciliationReport:
    n_max: int
    rows: List[ReconciliationRow]

    def mismatches(self) -> List[str]:
        """One line per flagged cell, e.g. 'n=2 paper_analytic: 5 != 4'."""
        lines = []
        for row in self.rows:
            for column, matches in row.flags.items():
                if not matches:
                    lines.append(f"n={row.n} {column}: {_flag_detail(row, column)}")
        return lines

    def candidate_matches(self) -> bool:
        return all(matches for row in self.rows for column, matches in row.flags.items()
                   if column.startswith("cand"))


def _flag_detail(row: ReconciliationRow, column: str) -> str:
    reference = {
        "paper_analytic": ("paper_analytic", "enum_analytic"),
        "paper_tangent": ("paper_tangent", "enum_tangent"),
        "cand_analytic": ("cand_analytic", "enum_analytic"),
        "cand_tangent": ("cand_tangent", "enum_tangent"),
        "cand_sb_analytic": ("cand_sb_analytic", "enum_sb_analytic"),
        "cand_sb_tangent": ("cand_sb_tangent", "enum_sb_tangent"),
        "paper_sb_analytic": (None, "enum_sb_analytic"),
        "paper_sb_tangent": (None, "enum_sb_tangent"),
    }[column]
    if reference[0] is None:
        language = ANALYTIC if column.endswith("analytic") else TANGENT
        printed = paper_sb(language, row.n)
        return f"{printed} != {getattr(row, reference[1])}"
    return f"{getattr(row, reference[0])} != {getattr(row, reference[1])}"


def reconcile(n_max: int, cap: Optional[int] = None) -> ReconciliationReport:
    """
    Put enumerated complexities and bispecial counts next to both closed-form
    variants. Enumerated columns are the reference; a mismatching closed form
    is a finding, not a failure.

    Args:
        n_max (int): last length, at most the enumeration cap
        cap (int): enumeration cap (default TW_ENUM_CAP)

    Returns:
        ReconciliationReport: one row per n = 0..n_max
    """
    cap = enumeration_cap(cap)
    enum_analytic = [len(level) for _, level in iter_levels(ANALYTIC, n_max, cap)]
    enum_tangent = [len(level) for _, level in iter_levels(TANGENT, n_max, cap)]

    rows = []
    for n in range(n_max + 1):
        sb_known = n <= cap - 2
        row = ReconciliationRow(
            n=n,
            enum_analytic=enum_analytic[n],
            enum_tangent=enum_tangent[n],
            paper_analytic=prop3_analytic(n, ClosedFormVariant.PAPER_AS_PRINTED),
            paper_tangent=prop3_tangent(n, ClosedFormVariant.PAPER_AS_PRINTED),
            cand_analytic=prop3_analytic(n, ClosedFormVariant.GEOMETRIC_CANDIDATE),
            cand_tangent=prop3_tangent(n, ClosedFormVariant.GEOMETRIC_CANDIDATE),
            enum_sb_analytic=bispecial_census(ANALYTIC, n, cap).sb if sb_known else None,
            enum_sb_tangent=bispecial_census(TANGENT, n, cap).sb if sb_known else None,
            cand_sb_analytic=candidate_sb(ANALYTIC, n),
            cand_sb_tangent=candidate_sb(TANGENT, n),
        )
        row.flags = {
            "paper_analytic": row.paper_analytic == row.enum_analytic,
            "paper_tangent": row.paper_tangent == row.enum_tangent,
            "cand_analytic": row.cand_analytic == row.enum_analytic,
            "cand_tangent": row.cand_tangent == row.enum_tangent,
        }
        if sb_known:
            row.flags.update({
                "cand_sb_analytic": row.cand_sb_analytic == row.enum_sb_analytic,
                "cand_sb_tangent": row.cand_sb_tangent == row.enum_sb_tangent,
                "paper_sb_analytic": paper_sb(ANALYTIC, n) == row.enum_sb_analytic,
                "paper_sb_tangent": paper_sb(TANGENT, n) == row.enum_sb_tangent,
            })
        rows.append(row)

    report = ReconciliationReport(n_max, rows)
    flagged = report.mismatches()
    if flagged:
        logger.warning(f"{len(flagged)} closed-form cells disagree with enumeration up to n={n_max}")
    return report


@dataclass
class GrowthCheck:
    analytic_cubic_ratio: Dict[int, float]
    tangent_step2_ratio: Dict[int, float]


def growth_check(n_lo: int = 20, n_hi: int = 60) -> GrowthCheck:
    """
    Growth of the geometric closed forms: p_n(T^omega) / n^3 on [n_lo, n_hi]
    and p_{n+2}(T^inf) / p_n(T^inf) on [n_lo, n_hi - 2].
    """
    ns = np.arange(n_lo, n_hi + 1)
    analytic = np.array([prop3_analytic(int(n), ClosedFormVariant.GEOMETRIC_CANDIDATE) for n in ns], dtype=float)
    tangent = [prop3_tangent(int(n), ClosedFormVariant.GEOMETRIC_CANDIDATE) for n in ns]
    cubic = analytic / ns.astype(float) ** 3
    step2 = [tangent[i + 2] / tangent[i] for i in range(len(tangent) - 2)]
    return GrowthCheck(
        analytic_cubic_ratio={int(n): float(r) for n, r in zip(ns, cubic)},
        tangent_step2_ratio={int(n): float(r) for n, r in zip(ns[:-2], step2)},
    )
