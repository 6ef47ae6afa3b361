"""
Partial Automata Module

Partially defined deterministic automata in which every state is both
initial and accepting, the built-in diagonal (3 states) and
non-oscillating (8 states) recognizers, and the thin-diagonal refinement.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from word_functions import Word

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunRecord:
    start_state: str
    visited_states: FrozenSet[str]
    accepted: bool
    final_state: Optional[str] = None


@dataclass(frozen=True)
class PartialDFA:
    """
    A partial transition table where every state is initial and accepting.

    A word is recognized when at least one start state admits a fully
    defined path labelled by the word.
    """
    name: str
    states: Tuple[str, ...]
    transitions: Dict[Tuple[str, int], str] = field(hash=False)

    def __post_init__(self):
        for (state, letter), target in self.transitions.items():
            if state not in self.states or target not in self.states:
                raise ValueError(f"{self.name}: transition {state}-{letter}->{target} uses an unknown state")
            if letter not in (0, 1):
                raise ValueError(f"{self.name}: letter {letter!r} is not binary")

    @property
    def state_count(self) -> int:
        return len(self.states)

    def step(self, state: str, letter: int) -> Optional[str]:
        return self.transitions.get((state, letter))

    def run_from(self, start: str, w: Word) -> RunRecord:
        """Follow w from one start state, recording the states visited."""
        state = start
        visited = {start}
        for char in w:
            state = self.step(state, int(char))
            if state is None:
                return RunRecord(start, frozenset(visited), False)
            visited.add(state)
        return RunRecord(start, frozenset(visited), True, state)

    def runs(self, w: Word) -> List[RunRecord]:
        """One record per start state, in state order."""
        return [self.run_from(start, w) for start in self.states]


def recognizes(a: PartialDFA, w: Word) -> bool:
    """
    Subset simulation: start from all states, drop the ones whose
    transition is undefined, accept iff something survives.
    """
    alive = set(a.states)
    for char in w:
        letter = int(char)
        alive = {a.transitions[(s, letter)] for s in alive if (s, letter) in a.transitions}
        if not alive:
            return False
    return True


DIAGONAL = PartialDFA(
    name="diagonal",
    states=("D1", "D2", "D3"),
    transitions={
        ("D1", 0): "D2",
        ("D2", 1): "D1",
        ("D2", 0): "D3",
        ("D3", 1): "D2",
    },
)

# U1..U4: top row left to right, L1..L4: bottom row; L1 is the bottom-left state.
NON_OSCILLATING = PartialDFA(
    name="non-oscillating",
    states=("U1", "U2", "U3", "U4", "L1", "L2", "L3", "L4"),
    transitions={
        ("L1", 0): "U1",
        ("U1", 1): "L1",
        ("U1", 0): "U2",
        ("U2", 1): "U3",
        ("U3", 0): "U2",
        ("U3", 1): "U4",
        ("U4", 0): "L4",
        ("L4", 1): "U4",
        ("L1", 1): "L2",
        ("L2", 0): "L3",
        ("L3", 1): "L2",
        ("L3", 0): "L4",
    },
)


def is_diagonal(w: Word) -> bool:
    return recognizes(DIAGONAL, w)


def is_thin_diagonal(w: Word) -> bool:
    """True iff some successful run of the diagonal automaton visits at most two states."""
    return any(record.accepted and len(record.visited_states) <= 2 for record in DIAGONAL.runs(w))


def is_non_oscillating_diagonal(w: Word) -> bool:
    return recognizes(NON_OSCILLATING, w)
