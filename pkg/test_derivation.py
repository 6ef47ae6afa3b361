#!/usr/bin/env python3
"""
Tests for desubstitution, derivated words and membership predicates
"""

from derivation_functions import (
    EmptyWord,
    MorphismId,
    NoInnerRun,
    NotDesubstitutable,
    RemovalRule,
    apply_morphism,
    derivated_word,
    derive,
    desubstitute,
    desubstitute_accelerated,
    is_analytic_tangent,
    is_balanced,
    is_derivated,
    is_tangent,
)
from automata_functions import is_diagonal
from language_lab import TANGENT, bispecial_census, classify_bispecial
from word_functions import all_words, is_k_balanced

WORKED_EXAMPLE = "100100010010010010001001000100"


def test_desubstitute():
    step = desubstitute("0010")
    assert step.rule is RemovalRule.REMOVED_ZEROS
    assert step.output == "01"
    assert desubstitute("1111").output == "111"
    assert desubstitute("10010").output == "101"
    print("✅ desubstitute")


def test_desubstitute_errors():
    try:
        desubstitute("0011")
        assert False, "expected NotDesubstitutable"
    except NotDesubstitutable as e:
        assert e.word == "0011"
    try:
        desubstitute("")
        assert False, "expected EmptyWord"
    except EmptyWord:
        pass
    print("✅ desubstitute errors")


def test_tie_break():
    assert desubstitute("0101").output == "11"
    assert desubstitute("0101", tie_break=1).output == "00"
    # letter missing from the word: the other one is removed
    assert desubstitute("1", tie_break=0).rule is RemovalRule.REMOVED_ONES
    for n in range(1, 9):
        for w in all_words(n):
            if "00" in w or "11" in w:
                continue
            assert derivated_word(desubstitute(w, 0).output) == ""
            assert derivated_word(desubstitute(w, 1).output) == ""
    print("✅ alternating words reach the empty word under either tie-break")


def test_accelerated():
    step = desubstitute_accelerated("10010")
    assert step.output == "11"
    assert step.repeat == 2
    try:
        desubstitute_accelerated("001")
        assert False, "expected NoInnerRun"
    except NoInnerRun as e:
        assert e.letter == 0
    print("✅ desubstitute_accelerated")


def test_accelerated_matches_repeated_delta():
    """Accelerated step = m single steps when no intermediate word is alternating"""
    for n in range(1, 13):
        for w in all_words(n):
            if is_derivated(w):
                continue
            try:
                fast = desubstitute_accelerated(w)
            except NoInnerRun:
                continue
            current, alternating_seen = w, False
            for _ in range(fast.repeat):
                if "00" not in current and "11" not in current:
                    alternating_seen = True
                current = desubstitute(current).output
            if not alternating_seen:
                assert current == fast.output, w
    print("✅ accelerated step equals repeated delta")


def test_acceleration_through_alternating_word():
    assert desubstitute_accelerated("0110").output == "00"
    assert desubstitute(desubstitute("0110").output).output == "1"
    assert derive("0110", accelerated=True).final == derive("0110").final == ""
    print("✅ both routes reach the empty word")


def test_worked_example():
    trace = derive(WORKED_EXAMPLE)
    assert trace.final == "01100"
    assert trace.words[1] == "101001010101001010010"
    assert "110111101101" in trace.words

    fast = derive(WORKED_EXAMPLE, accelerated=True)
    assert fast.final == "01100"
    assert [step.output for step in fast.steps] == ["110111101101", "01100"]
    assert [step.repeat for step in fast.steps] == [2, 2]

    assert is_analytic_tangent(WORKED_EXAMPLE)
    assert is_tangent(WORKED_EXAMPLE)
    assert not is_balanced(WORKED_EXAMPLE)
    print("✅ worked example derives to 01100")


def test_derive_empty_and_derivated():
    assert derive("").final == ""
    assert derive("").steps == ()
    assert derive("0011").final == "0011"
    assert derive("0011").words == ("0011",)
    assert derivated_word("0101") == ""
    print("✅ derive edge cases")


def test_membership():
    assert is_balanced("0101")
    assert not is_balanced("0011")
    assert is_analytic_tangent("0011")
    assert is_tangent("0110100110")
    assert not is_analytic_tangent("0110100110")
    assert is_tangent("001100") and not is_analytic_tangent("001100")
    assert is_tangent("110011") and not is_analytic_tangent("110011")
    assert not is_tangent("00011")
    print("✅ membership predicates")


def test_balanced_matches_one_balance():
    for n in range(17):
        for w in all_words(n):
            assert is_balanced(w) == is_k_balanced(w, 1), w
    print("✅ d(w) = empty iff w is 1-balanced, all words up to length 16")


def test_morphisms():
    assert apply_morphism(MorphismId.SIGMA0, "01") == "010"
    assert apply_morphism(MorphismId.SIGMA1, "01") == "011"
    assert apply_morphism(MorphismId.SIGMA0, "") == ""
    for n in range(1, 9):
        for w in all_words(n):
            if w.startswith("1"):
                assert desubstitute(apply_morphism(MorphismId.SIGMA0, w)).output == w
            if w.startswith("0") and "1" in w:
                assert desubstitute(apply_morphism(MorphismId.SIGMA1, w)).output == w
    print("✅ delta undoes sigma0 / sigma1")


def test_delta_keeps_bispecial_class():
    """A non-diagonal bispecial desubstitutes to a bispecial of the same class"""
    checked = 0
    for n in range(11):
        census = bispecial_census(TANGENT, n)
        for w in census.strong + census.ordinary:
            if is_diagonal(w):
                continue
            kind = classify_bispecial(TANGENT, w)
            assert classify_bispecial(TANGENT, desubstitute(w).output) is kind, w
            checked += 1
    assert checked > 0
    print(f"✅ delta keeps the bispecial class ({checked} words)")


if __name__ == "__main__":
    print("🧪 Derivation")
    print("=" * 40)
    test_desubstitute()
    test_desubstitute_errors()
    test_tie_break()
    test_accelerated()
    test_accelerated_matches_repeated_delta()
    test_acceleration_through_alternating_word()
    test_worked_example()
    test_derive_empty_and_derivated()
    test_membership()
    test_balanced_matches_one_balance()
    test_morphisms()
    test_delta_keeps_bispecial_class()
    print("\n🎉 All derivation tests passed")
