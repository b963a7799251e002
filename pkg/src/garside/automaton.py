"""The finite-state acceptor for reduced coset representatives.

The automaton reads words over the symmetric alphabet of non-trivial
simples. It has one state per letter plus a start state and an absorbing
sink; every state except the sink accepts. The transitions encode the local
greedy conditions together with the initial reducedness tests, so the
accepted language maps bijectively onto the transversal, letter count equal
to element length. Letters are actual simples, so every transition predicate
is a table lookup and the whole machine is a dense integer table, built
eagerly and cached per (table, parabolic) pair.
"""

from __future__ import annotations

import dataclasses
import weakref
from typing import Iterable, Sequence

from .errors import DomainError, StructureError
from .kernel import (
    Element,
    GarsideTable,
    SignedLetter,
    format_letter,
    greedy_letters,
    normalize,
)
from .parabolic import ParabolicData

START = 0
SINK = 1


@dataclasses.dataclass(eq=False)
class CosetAutomaton:
    """Deterministic complete automaton over the signed simple alphabet."""

    table: GarsideTable
    parabolic: ParabolicData
    alphabet: tuple[SignedLetter, ...]
    transition: list[int]  # flat: state * len(alphabet) + letter -> state
    letter_index: dict[SignedLetter, int]

    @property
    def n_states(self) -> int:
        return 2 + len(self.alphabet)

    def state_of_letter(self, letter: SignedLetter) -> int:
        return 2 + self.letter_index[letter]

    def accepted(self, state: int) -> bool:
        return state != SINK

    def step(self, state: int, letter: SignedLetter) -> int:
        idx = self.letter_index.get(letter)
        if idx is None:
            raise DomainError(f"unknown letter {letter!r}")
        return self.transition[state * len(self.alphabet) + idx]

    def run(self, word: Iterable[SignedLetter]) -> int:
        state = START
        for letter in word:
            state = self.step(state, letter)
        return state

    def accepts(self, word: Iterable[SignedLetter]) -> bool:
        return self.accepted(self.run(word))

    def state_name(self, state: int) -> str:
        if state == START:
            return "x0"
        if state == SINK:
            return "x1"
        return format_letter(self.table, self.alphabet[state - 2])


_cache: "weakref.WeakKeyDictionary[GarsideTable, dict[int, CosetAutomaton]]" = (
    weakref.WeakKeyDictionary()
)


def build_automaton(table: GarsideTable, p: ParabolicData) -> CosetAutomaton:
    """Populate the transition table from the six letter-pair rules."""
    if p.table is not table:
        raise StructureError("parabolic data belongs to a different table")
    per_table = _cache.setdefault(table, {})
    cached = per_table.get(p.delta_sub)
    if cached is not None:
        return cached

    unit = table.unit
    delta = table.delta
    d_sub = p.delta_sub
    omega = p.omega
    simples = [s for s in range(table.n_simples) if s != unit]
    alphabet: tuple[SignedLetter, ...] = tuple(
        [(s, 1) for s in simples] + [(s, -1) for s in simples]
    )
    letter_index = {letter: i for i, letter in enumerate(alphabet)}
    n_letters = len(alphabet)
    transition = [SINK] * ((2 + n_letters) * n_letters)

    def admit_initial(letter: SignedLetter) -> bool:
        v, sign = letter
        if sign == 1:
            return table.meet_l(v, d_sub) == unit
        if v == delta:
            return True
        sv = table.sigma(v)
        return table.meet_l(sv, d_sub) == unit and not table.left_divides(omega, sv)

    def admit(prev: SignedLetter, nxt: SignedLetter) -> bool:
        u, es = prev
        v, et = nxt
        if es == 1 and et == 1:
            return table.meet_l(table.sigma(u), v) == unit
        if es == 1 and et == -1:
            return False
        if es == -1 and et == 1:
            return table.meet_l(u, v) == unit
        return table.meet_l(table.sigma(v), u) == unit

    for j, letter in enumerate(alphabet):
        if admit_initial(letter):
            transition[START * n_letters + j] = 2 + j
    for i, prev in enumerate(alphabet):
        base = (2 + i) * n_letters
        for j, nxt in enumerate(alphabet):
            if admit(prev, nxt):
                transition[base + j] = 2 + j

    aut = CosetAutomaton(
        table=table,
        parabolic=p,
        alphabet=alphabet,
        transition=transition,
        letter_index=letter_index,
    )
    per_table[p.delta_sub] = aut
    return aut


def enumerate_accepted(aut: CosetAutomaton, n: int) -> list[tuple[SignedLetter, ...]]:
    """All accepted words of length exactly n, lexicographic by letter index."""
    if n < 0:
        raise DomainError("word length must be non-negative")
    n_letters = len(aut.alphabet)
    out: list[tuple[SignedLetter, ...]] = []
    word: list[SignedLetter] = []

    def walk(state: int, remaining: int) -> None:
        if remaining == 0:
            out.append(tuple(word))
            return
        base = state * n_letters
        for j in range(n_letters):
            target = aut.transition[base + j]
            if target == SINK:
                continue
            word.append(aut.alphabet[j])
            walk(target, remaining - 1)
            word.pop()

    walk(START, n)
    return out


def word_to_element(aut: CosetAutomaton, word: Sequence[SignedLetter]) -> Element:
    """Evaluate a word to its canonical group element."""
    return normalize(aut.table, word)


def element_to_word(aut: CosetAutomaton, theta: Element) -> tuple[SignedLetter, ...]:
    """The accepted word spelling a transversal element.

    The word is the left greedy normal form read with inverse letters first;
    elements outside the transversal have no accepted spelling and are
    refused.
    """
    from .cosets import is_hn_reduced

    if not is_hn_reduced(theta, aut.parabolic):
        raise DomainError("element is not a reduced coset representative")
    word = greedy_letters(theta)
    if not aut.accepts(word):
        raise StructureError("normal form word rejected by the automaton")
    return word


# -- exports -----------------------------------------------------------------


def transition_table_text(aut: CosetAutomaton) -> str:
    """Plain listing, one `state letter -> state` line per transition."""
    lines = []
    for state in range(aut.n_states):
        for j, letter in enumerate(aut.alphabet):
            target = aut.transition[state * len(aut.alphabet) + j]
            lines.append(
                f"{aut.state_name(state)} {format_letter(aut.table, letter)} "
                f"-> {aut.state_name(target)}"
            )
    return "\n".join(lines) + "\n"


def dot_text(aut: CosetAutomaton) -> str:
    """Graphviz source; sink edges are omitted for readability."""
    def node_id(state: int) -> str:
        return f"s{state}"

    lines = ["digraph coset_automaton {", "  rankdir=LR;"]
    order = [START]
    order.extend(2 + j for j, (s, e) in enumerate(aut.alphabet) if e == 1)
    order.extend(2 + j for j, (s, e) in enumerate(aut.alphabet) if e == -1)
    order.append(SINK)
    for state in order:
        shape = "doublecircle" if aut.accepted(state) else "circle"
        lines.append(
            f'  {node_id(state)} [label="{aut.state_name(state)}", shape={shape}];'
        )
    for state in range(aut.n_states):
        if state == SINK:
            continue
        for j, letter in enumerate(aut.alphabet):
            target = aut.transition[state * len(aut.alphabet) + j]
            if target == SINK:
                continue
            label = format_letter(aut.table, letter)
            lines.append(f'  {node_id(state)} -> {node_id(target)} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
