"""Brute-force reference computations used by tests and `verify`.

Everything here recomputes results from definitions rather than from the
kernel's algorithms: greedy heads are found by exhaustive search over all
simples, divisor sets by recursive enumeration, coset partitions by pairwise
subgroup-membership tests, lengths by breadth-first search. The only kernel
facilities the oracles rely on are the raw tables and canonical Element
equality (ball searches use Element multiplication as the edge relation;
the word-level normal form below never does, so the kernel normaliser is
validated against a fully independent path first).

These functions are deliberately naive. They are budget guarded and meant
for desk-scale radii only.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable, Sequence

from .budget import Budget, ensure_budget
from .errors import DomainError, StructureError
from .kernel import Element, GarsideTable, SignedLetter, identity, invert, multiply, simple

Key = tuple[int, tuple[int, ...]]


# -- word-level divisibility and greedy forms (kernel-free) -----------------


def simple_divides_word(table: GarsideTable, s: int, word: Sequence[int]) -> bool:
    """Whether the simple s left-divides the product of the word's simples.

    Folds the classical recursion s <= u * w  iff  u\\(s v u) <= w over the
    word, using only meet, join and quotient lookups.
    """
    cur = s
    for u in word:
        j = table.join_l(cur, u)
        cur = table.lquot(u, j)
    return cur == table.unit


def word_quotient(table: GarsideTable, s: int, word: Sequence[int]) -> list[int]:
    """A word for s^-1 * (product of word); requires s to divide it."""
    out: list[int] = []
    cur = s
    for u in word:
        j = table.join_l(cur, u)
        out.append(table.lquot(cur, j))
        cur = table.lquot(u, j)
    if cur != table.unit:
        raise DomainError("simple does not left-divide the word")
    return [u for u in out if u != table.unit]


def word_divides_word(table: GarsideTable, p: Sequence[int], w: Sequence[int]) -> bool:
    """Whether the product of p left-divides the product of w (both positive)."""
    rest = [u for u in w if u != table.unit]
    for s in p:
        if s == table.unit:
            continue
        if not simple_divides_word(table, s, rest):
            return False
        rest = word_quotient(table, s, rest)
    return True


def greedy_word(table: GarsideTable, word: Sequence[int]) -> list[int]:
    """Left greedy normal form of a positive word, by definition.

    Each head is the maximal simple divisor of the remaining word, found by
    scanning every simple; no local transfer rule is involved. Leading D
    factors appear explicitly in the output.
    """
    rest = [u for u in word if u != table.unit]
    out: list[int] = []
    while rest:
        divisors = [
            s
            for s in range(table.n_simples)
            if s != table.unit and simple_divides_word(table, s, rest)
        ]
        head = max(divisors, key=lambda s: table.grade[s])
        for s in divisors:
            if not table.left_divides(s, head):
                raise StructureError("simple divisors of a word have no maximum")
        out.append(head)
        rest = word_quotient(table, head, rest)
    return out


def canonical_key(table: GarsideTable, letters: Iterable[SignedLetter], tail_delta: int = 0) -> Key:
    """Oracle canonical form (delta power, greedy body) of a signed word."""
    factors: list[int] = []
    pre: list[int] = []
    for s, sign in letters:
        table.check_simple(s)
        if sign == 1:
            factors.append(s)
            pre.append(0)
        elif sign == -1:
            factors.append(table.phi(table.sigma(s)))
            pre.append(-1)
        else:
            raise StructureError(f"letter sign must be +1 or -1, got {sign!r}")
    power = tail_delta
    for i in range(len(factors) - 1, -1, -1):
        factors[i] = table.phi_pow(factors[i], -power)
        power += pre[i]
    normal = greedy_word(table, factors)
    d = 0
    while d < len(normal) and normal[d] == table.delta:
        d += 1
    return power + d, tuple(normal[d:])


def key_to_element(table: GarsideTable, key: Key) -> Element:
    return Element(table, key[0], key[1])


def element_letters(x: Element) -> list[SignedLetter]:
    """A signed word spelling the canonical form of x."""
    t = x.table
    sign = 1 if x.delta_power >= 0 else -1
    letters: list[SignedLetter] = [(t.delta, sign)] * abs(x.delta_power)
    letters.extend((u, 1) for u in x.body)
    return letters


# -- breadth-first search lengths -------------------------------------------


@dataclasses.dataclass
class BallIndex:
    """Exact word lengths over the symmetric simple alphabet, up to a radius."""

    table: GarsideTable
    radius: int
    dist: dict[Element, int]

    def elements_of_length(self, n: int) -> list[Element]:
        out = [x for x, d in self.dist.items() if d == n]
        out.sort(key=Element.sort_key)
        return out

    def __contains__(self, x: Element) -> bool:
        return x in self.dist

    def length(self, x: Element) -> int:
        try:
            return self.dist[x]
        except KeyError:
            raise DomainError("element outside the computed ball") from None


def generators(table: GarsideTable) -> list[Element]:
    """The symmetric generating set: every non-trivial simple, both signs."""
    gens = []
    for s in range(table.n_simples):
        if s == table.unit:
            continue
        g = simple(table, s)
        gens.append(g)
        gens.append(invert(g))
    return gens


def bfs_lengths(table: GarsideTable, radius: int, budget: Budget | None = None) -> BallIndex:
    """Distances from the identity in the Cayley graph, out to the radius."""
    budget = ensure_budget(budget)
    gens = generators(table)
    dist: dict[Element, int] = {identity(table): 0}
    frontier = [identity(table)]
    for step in range(1, radius + 1):
        nxt: list[Element] = []
        for x in frontier:
            for g in gens:
                budget.charge()
                y = multiply(x, g)
                if y not in dist:
                    dist[y] = step
                    nxt.append(y)
        frontier = nxt
    return BallIndex(table, radius, dist)


def subgroup_ball(
    table: GarsideTable,
    gen_simples: Iterable[int],
    radius: int,
    budget: Budget | None = None,
) -> dict[Element, int]:
    """BFS distances inside the subgroup generated by the given simples."""
    budget = ensure_budget(budget)
    gens = []
    for s in gen_simples:
        if s == table.unit:
            continue
        g = simple(table, s)
        gens.append(g)
        gens.append(invert(g))
    dist: dict[Element, int] = {identity(table): 0}
    frontier = [identity(table)]
    for step in range(1, radius + 1):
        nxt: list[Element] = []
        for x in frontier:
            for g in gens:
                budget.charge()
                y = multiply(x, g)
                if y not in dist:
                    dist[y] = step
                    nxt.append(y)
        frontier = nxt
    return dist


def positive_monoid_ball(
    table: GarsideTable,
    gen_simples: Iterable[int],
    max_grade: int,
    budget: Budget | None = None,
) -> set[Element]:
    """All products of the given simples with total grade up to max_grade."""
    budget = ensure_budget(budget)
    gens = [simple(table, s) for s in gen_simples if s != table.unit]

    def total_grade(x: Element) -> int:
        return x.delta_power * table.grade[table.delta] + sum(
            table.grade[u] for u in x.body
        )

    seen = {identity(table)}
    frontier = [identity(table)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                budget.charge()
                y = multiply(x, g)
                if y not in seen and total_grade(y) <= max_grade:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


# -- divisor sets, meets, joins, tails ---------------------------------------


def _positive_word(x: Element) -> list[int]:
    if x.delta_power < 0:
        raise DomainError("a positive element is required")
    return list(x.positive_factors())


def left_divisors(x: Element, budget: Budget | None = None) -> set[Element]:
    """All left divisors of a positive element, as canonical elements."""
    budget = ensure_budget(budget)
    t = x.table
    seen_words: set[Key] = set()
    out: set[Element] = set()
    stack: list[tuple[tuple[int, ...], tuple[int, ...]]] = [((), tuple(_positive_word(x)))]
    while stack:
        prefix, rest = stack.pop()
        key = canonical_key(t, [(u, 1) for u in prefix])
        if key in seen_words:
            continue
        seen_words.add(key)
        out.add(key_to_element(t, key))
        for s in range(t.n_simples):
            if s == t.unit:
                continue
            budget.charge()
            if simple_divides_word(t, s, rest):
                stack.append((prefix + (s,), tuple(word_quotient(t, s, rest))))
    return out


def brute_meet(x: Element, y: Element, budget: Budget | None = None) -> Element:
    """Left meet of two positive elements via exhaustive divisor sets."""
    common = left_divisors(x, budget) & left_divisors(y, budget)
    t = x.table
    best = max(common, key=lambda d: (d.factor_count(), sum(t.grade[u] for u in d.positive_factors())))
    for d in common:
        if not word_divides_word(t, _positive_word(d), _positive_word(best)):
            raise StructureError("common divisors have no maximum")
    return best


def brute_join(x: Element, y: Element, budget: Budget | None = None) -> Element:
    """Left join of two positive elements via bounded multiple enumeration."""
    budget = ensure_budget(budget)
    t = x.table
    sup = max(x.factor_count(), y.factor_count())
    bound = t.grade[t.delta] * sup
    ball = positive_monoid_ball(t, t.atoms, bound, budget)
    xw = _positive_word(x)
    yw = _positive_word(y)
    common = [
        z
        for z in ball
        if word_divides_word(t, xw, _positive_word(z))
        and word_divides_word(t, yw, _positive_word(z))
    ]
    if not common:
        raise StructureError("no common multiple found within the grade bound")
    best = min(
        common,
        key=lambda z: (sum(t.grade[u] for u in z.positive_factors()), z.sort_key()),
    )
    for z in common:
        if not word_divides_word(t, _positive_word(best), _positive_word(z)):
            raise StructureError("common multiples have no minimum in the bound")
    return best


def brute_tail(x: Element, div_delta: Iterable[int], budget: Budget | None = None) -> Element:
    """Largest left divisor of a positive x inside the submonoid N.

    N membership is decided by generating the submonoid of the given simples
    up to the grade of x, straight from the definition.
    """
    budget = ensure_budget(budget)
    t = x.table
    max_grade = x.delta_power * t.grade[t.delta] + sum(t.grade[u] for u in x.body)
    n_ball = positive_monoid_ball(t, div_delta, max_grade, budget)
    candidates = left_divisors(x, budget) & n_ball
    best = max(
        candidates,
        key=lambda d: sum(t.grade[u] for u in d.positive_factors()),
    )
    for d in candidates:
        if not word_divides_word(t, _positive_word(d), _positive_word(best)):
            raise StructureError("N-divisors have no maximum")
    return best


# -- coset partitions --------------------------------------------------------


@dataclasses.dataclass
class CosetClass:
    """One right-coset intersected with the ball."""

    members: tuple[Element, ...]
    min_length: int
    boundary_contact: bool


@dataclasses.dataclass
class CosetPartition:
    table: GarsideTable
    radius: int
    classes: list[CosetClass]

    def class_of(self, x: Element) -> CosetClass:
        for cls in self.classes:
            if x in cls.members:
                return cls
        raise DomainError("element outside the partitioned ball")

    def counts_by_length(self, up_to: int) -> list[int]:
        out = [0] * (up_to + 1)
        for cls in self.classes:
            if cls.min_length <= up_to:
                out[cls.min_length] += 1
        return out


def brute_coset_partition(
    table: GarsideTable,
    div_delta: Iterable[int],
    radius: int,
    budget: Budget | None = None,
) -> CosetPartition:
    """Partition the ball into right-cosets of the subgroup H = <div_delta>.

    Starts from a union-find closure under left multiplication by the
    subgroup generators inside the ball, then repairs fragments by testing
    representatives pairwise with y * x^-1 in H, so each class is exactly
    one coset intersected with the ball and its min length is exact.
    """
    budget = ensure_budget(budget)
    gen_ids = [s for s in div_delta if s != table.unit]
    ball = bfs_lengths(table, radius, budget)
    elements = sorted(ball.dist, key=Element.sort_key)
    index = {x: i for i, x in enumerate(elements)}

    parent = list(range(len(elements)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    gens = []
    for s in gen_ids:
        g = simple(table, s)
        gens.append(g)
        gens.append(invert(g))

    contact = [False] * len(elements)
    for x, i in index.items():
        for g in gens:
            budget.charge()
            y = multiply(g, x)
            j = index.get(y)
            if j is None:
                contact[i] = True
            else:
                union(i, j)

    # Repair fragments: merge classes whose representatives differ by an
    # element of H. Membership is a lookup in an H-ball wide enough for any
    # quotient of two ball elements.
    h_ball = set(subgroup_ball(table, gen_ids, 2 * radius + 4, budget))
    reps = sorted({find(i) for i in range(len(elements))})
    for a_pos in range(len(reps)):
        for b_pos in range(a_pos + 1, len(reps)):
            i, j = reps[a_pos], reps[b_pos]
            if find(i) == find(j):
                continue
            budget.charge()
            q = multiply(elements[j], invert(elements[i]))
            if q in h_ball:
                union(i, j)

    groups: dict[int, list[int]] = {}
    for i in range(len(elements)):
        groups.setdefault(find(i), []).append(i)
    classes = []
    for members in groups.values():
        elems = tuple(sorted((elements[i] for i in members), key=Element.sort_key))
        classes.append(
            CosetClass(
                members=elems,
                min_length=min(ball.dist[e] for e in elems),
                boundary_contact=any(contact[i] for i in members),
            )
        )
    classes.sort(key=lambda c: (c.min_length, c.members[0].sort_key()))
    return CosetPartition(table, radius, classes)


def brute_projection(
    x: Element,
    div_delta: Iterable[int],
    radius: int,
    budget: Budget | None = None,
) -> tuple[set[Element], int]:
    """Nearest subgroup elements to x, scanning H out to the given radius.

    Returns (projection set, distance). The scan is the definition: every
    subgroup element in the ball competes directly, with no representative
    or completeness-bound shortcuts. Distances use the canonical length
    formula, which is validated against BFS separately.
    """
    budget = ensure_budget(budget)
    t = x.table
    gen_ids = [s for s in div_delta if s != t.unit]
    h_ball = subgroup_ball(t, gen_ids, radius, budget)
    best: dict[Element, int] = {}
    for beta in h_ball:
        budget.charge()
        best[beta] = multiply(invert(beta), x).length()
    dist = min(best.values())
    members = {beta for beta, d in best.items() if d == dist}
    return members, dist
