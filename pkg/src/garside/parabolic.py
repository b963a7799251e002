"""Parabolic substructures and their tail calculus.

A parabolic substructure is selected by one balanced simple d; its divisors
generate the parabolic subgroup H and submonoid N. This module validates the
choice (balance, divisor closure) and provides the machinery the transversal
is built from: the N-tail of a positive element, N-reducedness, the
complement w = d^-1 D, the twisted complements w_i = phi^(1-i)(w) and their
products d_k = w_1 ... w_k (which satisfy delta_sub^k * d_k = D^k exactly).
"""

from __future__ import annotations

import dataclasses

from .errors import DomainError, StructureError
from .kernel import (
    Element,
    GarsideTable,
    identity,
    invert,
    meet_with_simple,
    multiply,
    simple,
    strip_left_simple,
)


@dataclasses.dataclass(frozen=True, eq=False)
class ParabolicData:
    """A validated parabolic substructure (H, N, delta_sub).

    ``improper`` flags the degenerate choice delta_sub = D, where H is the
    whole group. It is accepted everywhere but callers that need a proper
    subgroup (the unbounded-projection certificate) refuse it.
    """

    table: GarsideTable
    delta_sub: int
    div_delta: frozenset[int]
    omega: int
    phi_sub: dict[int, int]
    improper: bool

    def __hash__(self):
        return hash((id(self.table), self.delta_sub))

    def __eq__(self, other):
        if not isinstance(other, ParabolicData):
            return NotImplemented
        return self.table is other.table and self.delta_sub == other.delta_sub

    @property
    def div_sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.div_delta))

    def generator_simples(self) -> tuple[int, ...]:
        """Non-trivial simples of the substructure, the generators of H."""
        return tuple(s for s in self.div_sorted if s != self.table.unit)

    def delta_element(self) -> Element:
        return simple(self.table, self.delta_sub)

    def omega_element(self) -> Element:
        return simple(self.table, self.omega)

    def __repr__(self):
        return f"ParabolicData(delta={self.table.display(self.delta_sub)})"


def make_parabolic(table: GarsideTable, delta_sub: int) -> ParabolicData:
    """Validate delta_sub and assemble the parabolic data.

    Rejects the trivial choice (the unit), unbalanced simples and divisor
    sets that are not closed under the simple product. Conjugation by
    delta_sub must permute the divisors; anything else means the table or
    the choice is corrupt.
    """
    table.check_simple(delta_sub)
    if delta_sub == table.unit:
        raise StructureError("parabolic: delta must not be the unit")

    n = table.n_simples
    left = {u for u in range(n) if table.left_divides(u, delta_sub)}
    right = {u for u in range(n) if table.right_divides(u, delta_sub)}
    if left != right:
        raise StructureError(
            f"parabolic: {table.display(delta_sub)} is not balanced"
        )
    div = left

    for u in div:
        for v in div:
            w = table.product(u, v)
            if w is not None and w not in div:
                raise StructureError(
                    "parabolic: divisor closure fails at "
                    f"{table.display(u)} * {table.display(v)} = {table.display(w)}"
                )

    omega = table.sigma(delta_sub)

    d_elt = simple(table, delta_sub)
    d_inv = invert(d_elt)
    phi_sub: dict[int, int] = {}
    for u in sorted(div):
        conj = multiply(multiply(d_elt, simple(table, u)), d_inv)
        if conj.is_identity:
            phi_sub[u] = table.unit
            continue
        if conj.delta_power == 0 and len(conj.body) == 1:
            image = conj.body[0]
        elif conj.delta_power == 1 and not conj.body:
            image = table.delta
        else:
            raise StructureError(
                f"parabolic: conjugate of {table.display(u)} is not simple"
            )
        if image not in div:
            raise StructureError(
                f"parabolic: conjugation does not preserve the divisors at {table.display(u)}"
            )
        phi_sub[u] = image
    if sorted(phi_sub.values()) != sorted(div):
        raise StructureError("parabolic: conjugation is not a bijection of the divisors")

    return ParabolicData(
        table=table,
        delta_sub=delta_sub,
        div_delta=frozenset(div),
        omega=omega,
        phi_sub=phi_sub,
        improper=delta_sub == table.delta,
    )


# -- tails ------------------------------------------------------------------


def tail_split(a: Element, p: ParabolicData) -> tuple[Element, Element]:
    """Split a positive element as a = b * c with b the N-tail, c N-reduced.

    Works by iterated head stripping: while the meet of the remainder with
    delta_sub is non-trivial, peel it off into b. Each step removes positive
    grade, so the loop terminates.
    """
    if a.delta_power < 0:
        raise DomainError("tail_split requires a positive element")
    t = p.table
    b = identity(t)
    c = a
    while True:
        x = meet_with_simple(c, p.delta_sub)
        if x == t.unit:
            return b, c
        b = multiply(b, simple(t, x))
        c = strip_left_simple(c, x)


def tail(a: Element, p: ParabolicData) -> Element:
    """The N-tail of a positive element."""
    return tail_split(a, p)[0]


def is_n_reduced(a: Element, p: ParabolicData) -> bool:
    """Whether a positive element has trivial meet with delta_sub."""
    if a.delta_power < 0:
        raise DomainError("is_n_reduced requires a positive element")
    return meet_with_simple(a, p.delta_sub) == p.table.unit


# -- twisted complements ------------------------------------------------------


def omega_i(p: ParabolicData, i: int) -> int:
    """The simple w_i = phi^(1-i)(w); w_1 is the complement itself."""
    if i < 1:
        raise DomainError("omega index starts at 1")
    return p.table.phi_pow(p.omega, 1 - i)


def d_k(p: ParabolicData, k: int) -> Element:
    """The product w_1 w_2 ... w_k; equal to delta_sub^-k * D^k."""
    if k < 0:
        raise DomainError("d_k requires k >= 0")
    out = identity(p.table)
    for i in range(1, k + 1):
        out = multiply(out, simple(p.table, omega_i(p, i)))
    return out


def conjugate_by_delta_sub(p: ParabolicData, x: Element, k: int = 1) -> Element:
    """delta_sub^k * x * delta_sub^-k, for elements of H."""
    d = p.delta_element() ** k
    return multiply(multiply(d, x), invert(d))


# -- membership ---------------------------------------------------------------


def element_in_subgroup(x: Element, p: ParabolicData) -> bool:
    """Whether x lies in the parabolic subgroup H.

    Both positive parts of the left orthogonal form of an H-element have all
    their greedy factors among the divisors of delta_sub, and conversely, so
    the test is a scan of two factor sequences.
    """
    from .kernel import left_orthogonal

    b, a = left_orthogonal(x)
    for part in (b, a):
        for u in part.positive_factors():
            if u not in p.div_delta:
                return False
    return True


def positive_in_submonoid(a: Element, p: ParabolicData) -> bool:
    """Whether a positive element lies in N (all greedy factors divide delta_sub)."""
    if a.delta_power < 0:
        raise DomainError("positive_in_submonoid requires a positive element")
    return all(u in p.div_delta for u in a.positive_factors())


def subgroup_length(x: Element, p: ParabolicData) -> int:
    """Word length of an H-element over the divisors of delta_sub.

    For elements of H this equals the ambient word length: the orthogonal
    parts lie in N and their greedy factor counts agree in both structures.
    """
    if not element_in_subgroup(x, p):
        raise DomainError("subgroup_length requires an element of H")
    return x.length()
