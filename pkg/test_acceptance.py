#!/usr/bin/env python3
"""
End-to-end acceptance checks across the toolkit
"""

import math

from counting_functions import ClosedFormVariant, candidate_sb, lipatov_balanced, prop3_analytic, prop3_tangent, reconcile
from derivation_functions import derive, is_analytic_tangent, is_balanced, is_tangent
from geometry_functions import analytic_slalom_pair, segment_coding, slalom_bispecials
from language_lab import (
    ANALYTIC,
    BALANCED,
    TANGENT,
    bispecial_census,
    complexity_profile,
    inclusion_audit,
)
from word_functions import all_words, is_k_balanced


def test_worked_example_end_to_end():
    w = "100100010010010010001001000100"
    assert derive(w).final == derive(w, accelerated=True).final == "01100"
    assert is_analytic_tangent(w) and is_tangent(w) and not is_balanced(w)
    print("✅ worked example")


def test_membership_chain_exhaustive():
    for n in range(15):
        for w in all_words(n):
            b, a, t = is_balanced(w), is_analytic_tangent(w), is_tangent(w)
            assert (not b or a) and (not a or t) and (not t or is_k_balanced(w, 2)), w
    report = inclusion_audit(10)
    assert all(report.witnesses.values())
    print("✅ balanced ⊆ analytic ⊆ tangent ⊆ 2-balanced up to length 14")


def test_enumeration_against_closed_forms():
    balanced = complexity_profile(BALANCED, 14).values
    analytic = complexity_profile(ANALYTIC, 14).values
    tangent = complexity_profile(TANGENT, 14).values
    candidate = ClosedFormVariant.GEOMETRIC_CANDIDATE
    assert balanced == [lipatov_balanced(n) for n in range(15)]
    assert analytic == [prop3_analytic(n, candidate) for n in range(15)]
    assert tangent == [prop3_tangent(n, candidate) for n in range(15)]
    print(f"✅ p_14: balanced {balanced[-1]}, analytic {analytic[-1]}, tangent {tangent[-1]}")


def test_printed_formulas_are_findings():
    report = reconcile(12)
    assert report.candidate_matches()
    flagged = {line.split(":")[0] for line in report.mismatches()}
    assert "n=2 paper_analytic" in flagged
    assert "n=4 paper_tangent" in flagged
    assert "n=3 paper_tangent" not in flagged
    print(f"✅ reconcile: {len(flagged)} printed cells disagree with enumeration")


def test_geometric_bispecial_counts():
    for n in range(11):
        total = n + 2
        primitive = [(p, total - p) for p in range(1, total) if math.gcd(p, total - p) == 1]
        composite = [(p, total - p) for p in range(1, total) if math.gcd(p, total - p) > 1]
        tangent_words = {segment_coding(p, q) for p, q in primitive}
        analytic_words = set(tangent_words)
        for p, q in composite:
            tangent_words.update(slalom_bispecials(p, q))
            analytic_words.update(analytic_slalom_pair(p, q))
        assert len(tangent_words) == candidate_sb(TANGENT, n)
        assert len(analytic_words) == candidate_sb(ANALYTIC, n)
        assert set(bispecial_census(TANGENT, n).strong) == tangent_words
        assert set(bispecial_census(ANALYTIC, n).strong) == analytic_words
    print("✅ strong bispecials = segment codings + slalom words (n <= 10)")


if __name__ == "__main__":
    print("🧪 Acceptance")
    print("=" * 40)
    test_worked_example_end_to_end()
    test_membership_chain_exhaustive()
    test_enumeration_against_closed_forms()
    test_printed_formulas_are_findings()
    test_geometric_bispecial_counts()
    print("\n🎉 All acceptance checks passed")
