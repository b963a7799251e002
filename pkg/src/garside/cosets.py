"""Minimal-length coset representatives and projections onto a parabolic.

A group element is reduced for the right-coset structure when its right
D-form a * D^p has an N-reduced positive part and either p = 0, or p < 0 and
the complement w does not left-divide a. These reduced elements form a
transversal of H in G, one per right-coset, and each has minimal length in
its coset; `coset_representative` computes the representative
constructively. On top of that sit the metric operations: the set of
shortest elements of a coset, the projection of an element onto H, its
diameter, the fellow-projection audit and the certificate that projections
are unbounded.
"""

from __future__ import annotations

import dataclasses

from .budget import Budget, ensure_budget
from .errors import BudgetExceededError, DomainError, StructureError
from .kernel import (
    Element,
    conjugate_by_delta,
    delta_power,
    format_element,
    format_letter,
    has_left_divisor,
    identity,
    invert,
    multiply,
    simple,
    strip_left_simple,
)
from .parabolic import (
    ParabolicData,
    d_k,
    element_in_subgroup,
    is_n_reduced,
    tail_split,
)


def right_delta_positive_part(x: Element) -> Element:
    """The positive part a of the right D-form x = a * D^p."""
    return conjugate_by_delta(Element(x.table, 0, x.body), x.delta_power)


def is_hn_reduced(x: Element, p: ParabolicData) -> bool:
    """Membership test for the transversal, straight from the definition."""
    a = right_delta_positive_part(x)
    if not is_n_reduced(a, p):
        return False
    power = x.delta_power
    if power == 0:
        return True
    return power < 0 and not has_left_divisor(a, p.omega)


@dataclasses.dataclass(frozen=True)
class CosetKey:
    """Canonical label of a right-coset: its reduced representative."""

    rep: Element

    def length(self) -> int:
        return self.rep.length()


def coset_representative(x: Element, p: ParabolicData) -> Element:
    """The reduced representative of the coset H x.

    For x in the positive monoid it is the N-reduced part after stripping
    the tail. Otherwise write x = a * D^-q, strip the tail of a, and while
    the complement w still left-divides the remainder, absorb one factor of
    delta_sub into H (which lowers q by one) and strip again. The result is
    checked to be reduced and to differ from x by an element of H.
    """
    t = x.table
    if x.delta_power >= 0:
        theta = tail_split(x, p)[1]
    else:
        q = -x.delta_power
        c = tail_split(right_delta_positive_part(x), p)[1]
        while q >= 1 and has_left_divisor(c, p.omega):
            c = conjugate_by_delta(strip_left_simple(c, p.omega), 1)
            q -= 1
            c = tail_split(c, p)[1]
        theta = multiply(c, delta_power(t, -q))

    if not is_hn_reduced(theta, p):
        raise StructureError("coset representative failed the reducedness check")
    if not element_in_subgroup(multiply(x, invert(theta)), p):
        raise StructureError("coset representative left the coset")
    return theta


def coset_key(x: Element, p: ParabolicData) -> CosetKey:
    return CosetKey(coset_representative(x, p))


def coset_length(x: Element, p: ParabolicData) -> int:
    """Minimal word length over the coset H x."""
    return coset_representative(x, p).length()


# -- shortest coset elements and projections ---------------------------------


def _subgroup_ball(p: ParabolicData, radius: int, budget: Budget) -> dict[Element, int]:
    """BFS ball of H with distances, generators the divisors of delta_sub."""
    t = p.table
    gens: list[Element] = []
    for s in p.generator_simples():
        g = simple(t, s)
        gens.append(g)
        gens.append(invert(g))
    dist = {identity(t): 0}
    frontier = [identity(t)]
    for step in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for g in gens:
                budget.charge()
                y = multiply(x, g)
                if y not in dist:
                    dist[y] = step
                    nxt.append(y)
        frontier = nxt
    return dist


def min_set(
    x: Element,
    p: ParabolicData,
    search_bound: int | None = None,
    budget: Budget | None = None,
) -> list[Element]:
    """All shortest elements of the coset H x, sorted canonically.

    Every shortest element is beta * theta with theta the representative and
    beta in H; then lg(beta) <= lg(beta theta) + lg(theta^-1) = 2 lg(theta),
    so scanning the H-ball of radius 2 lg(theta) is complete. A smaller
    explicit bound is refused, a larger one only wastes time.
    """
    budget = ensure_budget(budget)
    theta = coset_representative(x, p)
    level = theta.length()
    needed = 2 * level
    if search_bound is None:
        search_bound = needed
    if search_bound < needed:
        raise BudgetExceededError(
            f"search bound {search_bound} is below the completeness bound {needed}",
            required=needed,
        )
    members = [
        cand
        for beta in _subgroup_ball(p, search_bound, budget)
        if (cand := multiply(beta, theta)).length() == level
    ]
    members = sorted(set(members), key=Element.sort_key)
    return members


@dataclasses.dataclass(frozen=True)
class ProjectionSet:
    """The nearest H-elements to a base element, with their common distance."""

    base: Element
    members: tuple[Element, ...]
    distance: int


def projection(
    x: Element,
    p: ParabolicData,
    search_bound: int | None = None,
    budget: Budget | None = None,
) -> ProjectionSet:
    """Projection of x onto H: x * gamma^-1 over the shortest coset elements.

    The map gamma -> x gamma^-1 is a bijection from the shortest elements of
    H x onto the projection set, so the sizes must agree; this is asserted.
    """
    shortest = min_set(x, p, search_bound, budget)
    members = sorted(
        {multiply(x, invert(g)) for g in shortest}, key=Element.sort_key
    )
    if len(members) != len(shortest):
        raise StructureError("projection map failed to be injective")
    return ProjectionSet(base=x, members=tuple(members), distance=coset_length(x, p))


def projection_diameter(
    x: Element,
    p: ParabolicData,
    search_bound: int | None = None,
    budget: Budget | None = None,
) -> int:
    """Largest pairwise distance within the projection of x onto H."""
    members = projection(x, p, search_bound, budget).members
    best = 0
    for i, b1 in enumerate(members):
        for b2 in members[i + 1 :]:
            best = max(best, multiply(invert(b1), b2).length())
    return best


# -- fellow projection audit --------------------------------------------------


@dataclasses.dataclass(frozen=True)
class AuditRow:
    """One audited triple: the best partner for beta across one edge."""

    alpha: Element
    letter: tuple[int, int]
    beta: Element
    best_partner: Element
    distance: int


@dataclasses.dataclass
class FellowAuditReport:
    """Outcome of the fellow-projection audit up to a length bound."""

    max_len: int
    bound: int
    k_observed: int
    witness: AuditRow | None
    rows: list[AuditRow]
    partial: bool

    @property
    def passed(self) -> bool:
        return not self.partial and self.k_observed <= self.bound

    def summary(self) -> str:
        state = "PASS" if self.passed else ("PARTIAL" if self.partial else "FAIL")
        return (
            f"fellow-projection audit: K_obs = {self.k_observed} "
            f"(bound {self.bound}), {len(self.rows)} rows, {state}"
        )


def fellow_projection_audit(
    p: ParabolicData,
    max_len: int,
    bound: int = 5,
    budget: Budget | None = None,
) -> FellowAuditReport:
    """Audit the fellow-projection property over a ball of the group.

    For every alpha of length at most max_len and every signed letter u,
    both directions of the edge (alpha, alpha u) are checked: each member of
    one projection set must have a partner in the other within the bound.
    The worst distance observed and its witness are reported. If the node
    budget runs out the report is returned flagged as partial.
    """
    budget = ensure_budget(budget)
    t = p.table
    letters = [(s, e) for s in range(t.n_simples) if s != t.unit for e in (1, -1)]

    rows: list[AuditRow] = []
    k_obs = 0
    witness: AuditRow | None = None
    partial = False

    proj_cache: dict[Element, tuple[Element, ...]] = {}

    def proj(alpha: Element) -> tuple[Element, ...]:
        got = proj_cache.get(alpha)
        if got is None:
            got = projection(alpha, p, budget=budget).members
            proj_cache[alpha] = got
        return got

    try:
        ball: list[Element] = [identity(t)]
        seen = {identity(t)}
        frontier = [identity(t)]
        for _ in range(max_len):
            nxt = []
            for xx in frontier:
                for s, e in letters:
                    budget.charge()
                    y = multiply(xx, simple(t, s) if e == 1 else invert(simple(t, s)))
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        ball.append(y)
            frontier = nxt
        ball.sort(key=Element.sort_key)

        audited: set[tuple[tuple, tuple]] = set()
        for alpha in ball:
            pa = proj(alpha)
            for letter in letters:
                s, e = letter
                step = simple(t, s) if e == 1 else invert(simple(t, s))
                alpha_u = multiply(alpha, step)
                pair_key = tuple(
                    sorted((alpha.sort_key(), alpha_u.sort_key()))
                )
                if pair_key in audited:
                    continue
                audited.add(pair_key)
                pb = proj(alpha_u)
                back = (s, -e)
                for base, letter_used, src, dst in (
                    (alpha, letter, pa, pb),
                    (alpha_u, back, pb, pa),
                ):
                    for beta in src:
                        budget.charge()
                        best_d = None
                        best_partner = None
                        for beta2 in dst:
                            d = multiply(invert(beta), beta2).length()
                            if best_d is None or d < best_d:
                                best_d = d
                                best_partner = beta2
                        row = AuditRow(base, letter_used, beta, best_partner, best_d)
                        rows.append(row)
                        if best_d > k_obs:
                            k_obs = best_d
                            witness = row
    except BudgetExceededError:
        partial = True

    return FellowAuditReport(
        max_len=max_len,
        bound=bound,
        k_observed=k_obs,
        witness=witness,
        rows=rows,
        partial=partial,
    )


def audit_rows_csv(report: FellowAuditReport) -> str:
    """Machine-readable audit rows: alpha, u, beta, best_beta_prime, distance."""
    lines = ["alpha,u,beta,best_beta_prime,distance"]
    for row in report.rows:
        t = row.alpha.table
        lines.append(
            ",".join(
                (
                    format_element(row.alpha),
                    format_letter(t, row.letter),
                    format_element(row.beta),
                    format_element(row.best_partner),
                    str(row.distance),
                )
            )
        )
    return "\n".join(lines) + "\n"


# -- unbounded projections ------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class UnboundedProjectionCertificate:
    """Witness that no bound K survives: an element whose projection spreads."""

    k: int
    element: Element
    contains_identity: bool
    contains_delta_neg: bool
    element_length: int
    spread: int

    @property
    def verified(self) -> bool:
        return (
            self.contains_identity
            and self.contains_delta_neg
            and self.element_length == self.k
            and self.spread == self.k
        )


def bounded_projection_witness(
    p: ParabolicData, k_bound: int, budget: Budget | None = None
) -> UnboundedProjectionCertificate:
    """Certificate that K-bounded projections fail, for K = k_bound.

    Uses the element d = w_1 ... w_(K+1): both the identity and
    delta_sub^-(K+1) lie in its projection, and those two are K+1 > K apart.
    The improper parabolic is refused (its complement is trivial and every
    d_k collapses to the identity).
    """
    if p.improper:
        raise DomainError(
            "the whole group has no proper projections; pick a proper parabolic"
        )
    if k_bound < 1:
        raise DomainError("the bound must be at least 1")
    budget = ensure_budget(budget)
    k = k_bound + 1
    d = d_k(p, k)
    proj = projection(d, p, budget=budget)
    one = identity(p.table)
    delta_neg = p.delta_element() ** (-k)
    spread = multiply(invert(one), delta_neg).length()
    cert = UnboundedProjectionCertificate(
        k=k,
        element=d,
        contains_identity=one in proj.members,
        contains_delta_neg=delta_neg in proj.members,
        element_length=d.length(),
        spread=spread,
    )
    if not cert.verified:
        raise StructureError("unbounded-projection certificate failed verification")
    return cert
