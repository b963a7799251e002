"""Garside structure tables and canonical group elements.

A Garside group is presented here by the finite lattice of divisors of its
Garside element D: a table of simple elements with a partial product, both
meet tables, the right complement map sigma (u * sigma(u) = D) and the
conjugation phi(u) = D u D^-1. All group-level computation (normal forms,
multiplication, inversion, length, the factored views) is driven by these
tables, so one kernel serves braid groups, dihedral Artin groups, free
abelian groups and user-supplied tables alike.

Elements are stored in a single canonical shape: a power of D followed by
the left greedy normal sequence of proper simple factors, with the D power
fully extracted. Two elements are equal iff their fields coincide, which
gives O(1) equality and hashing. Tables and elements are immutable after
construction and every operation is a pure function, so values can be
shared between threads without locks.
"""

from __future__ import annotations

import dataclasses
from enum import Enum
from math import gcd
from typing import Iterable, Sequence

from .errors import DomainError, StructureError

# A letter of the symmetric alphabet: (simple id, +1 or -1).
SignedLetter = tuple[int, int]


class GarsideTable:
    """Dense lookup tables over the simple elements of a Garside structure.

    The table knows nothing about where its simples came from; it only
    stores the finite combinatorics: the partial product (defined exactly
    when the product of two simples is again simple), the two meet tables,
    the complement sigma and the conjugation phi. Left and right quotient
    tables and the inverses of sigma and phi are derived at construction.

    ``grade`` is an additive length on simples (grade of a product is the
    sum of the grades whenever the product is defined). It exists for every
    table accepted by the validator and bounds the normalisation loops.
    """

    def __init__(
        self,
        name: str,
        simples: Sequence[str],
        unit: int,
        delta: int,
        atoms: Sequence[int],
        grade: Sequence[int],
        product: Sequence[int],
        meet_l: Sequence[int],
        meet_r: Sequence[int],
        sigma: Sequence[int],
        phi: Sequence[int],
    ):
        n = len(simples)
        if not (0 <= unit < n and 0 <= delta < n):
            raise StructureError("unit or delta index out of range")
        if n > 1 and unit == delta:
            raise StructureError("unit and delta must differ in a non-trivial table")
        if len(product) != n * n or len(meet_l) != n * n or len(meet_r) != n * n:
            raise StructureError("table sizes do not match the simple count")
        if len(sigma) != n or len(phi) != n or len(grade) != n:
            raise StructureError("unary table sizes do not match the simple count")

        self.name = name
        self.simples = list(simples)
        self.unit = unit
        self.delta = delta
        self.atoms = tuple(atoms)
        self.grade = list(grade)
        self._product = list(product)
        self._meet_l = list(meet_l)
        self._meet_r = list(meet_r)
        self._sigma = list(sigma)
        self._phi = list(phi)

        self._sigma_inv = _inverse_permutation(self._sigma, "sigma")
        self._phi_inv = _inverse_permutation(self._phi, "phi")

        # Quotient tables: _lquot[u][w] = v iff u*v = w, _rquot[v][w] = u
        # iff u*v = w. Uniqueness is cancellativity; conflicts are rejected.
        self._lquot = [-1] * (n * n)
        self._rquot = [-1] * (n * n)
        for u in range(n):
            base = u * n
            for v in range(n):
                w = self._product[base + v]
                if w < 0:
                    continue
                if self._lquot[base + w] not in (-1, v):
                    raise StructureError(
                        f"left cancellation fails at {self.simples[u]} * ? = {self.simples[w]}"
                    )
                self._lquot[base + w] = v
                if self._rquot[v * n + w] not in (-1, u):
                    raise StructureError(
                        f"right cancellation fails at ? * {self.simples[v]} = {self.simples[w]}"
                    )
                self._rquot[v * n + w] = u

        self._phi_order: int | None = None
        self._phi_pow_cache: dict[int, list[int]] = {}
        self._join_memo: dict[int, int] = {}
        self._reversed: GarsideTable | None = None

    # -- basic accessors ---------------------------------------------------

    @property
    def n_simples(self) -> int:
        return len(self.simples)

    def check_simple(self, u: int) -> None:
        if not (isinstance(u, int) and 0 <= u < len(self.simples)):
            raise StructureError(f"invalid simple id {u!r}")

    def display(self, u: int) -> str:
        return self.simples[u]

    def product(self, u: int, v: int) -> int | None:
        w = self._product[u * len(self.simples) + v]
        return None if w < 0 else w

    def meet_l(self, u: int, v: int) -> int:
        return self._meet_l[u * len(self.simples) + v]

    def meet_r(self, u: int, v: int) -> int:
        return self._meet_r[u * len(self.simples) + v]

    def left_divides(self, u: int, w: int) -> bool:
        """u <=_L w, both simple."""
        return self._meet_l[u * len(self.simples) + w] == u

    def right_divides(self, u: int, w: int) -> bool:
        """u <=_R w, both simple."""
        return self._meet_r[u * len(self.simples) + w] == u

    def lquot(self, u: int, w: int) -> int:
        """The v with u*v = w; requires u <=_L w."""
        v = self._lquot[u * len(self.simples) + w]
        if v < 0:
            raise StructureError(
                f"{self.simples[u]} does not left-divide {self.simples[w]}"
            )
        return v

    def rquot(self, v: int, w: int) -> int:
        """The u with u*v = w; requires v <=_R w."""
        u = self._rquot[v * len(self.simples) + w]
        if u < 0:
            raise StructureError(
                f"{self.simples[v]} does not right-divide {self.simples[w]}"
            )
        return u

    def sigma(self, u: int) -> int:
        return self._sigma[u]

    def sigma_inv(self, u: int) -> int:
        return self._sigma_inv[u]

    def phi(self, u: int) -> int:
        return self._phi[u]

    def phi_inv(self, u: int) -> int:
        return self._phi_inv[u]

    @property
    def phi_order(self) -> int:
        """Order of phi as a permutation of the simples."""
        if self._phi_order is None:
            order = 1
            n = len(self.simples)
            seen = [False] * n
            for start in range(n):
                if seen[start]:
                    continue
                length = 0
                u = start
                while not seen[u]:
                    seen[u] = True
                    u = self._phi[u]
                    length += 1
                order = order * length // gcd(order, length)
            self._phi_order = order
        return self._phi_order

    def phi_pow(self, u: int, k: int) -> int:
        """phi^k(u) with k reduced modulo the order of phi."""
        k %= self.phi_order
        if k == 0:
            return u
        table = self._phi_pow_cache.get(k)
        if table is None:
            table = list(range(len(self.simples)))
            for _ in range(k):
                table = [self._phi[x] for x in table]
            self._phi_pow_cache[k] = table
        return table[u]

    def join_l(self, u: int, v: int) -> int:
        """Least common upper bound of u, v for <=_L (memoised scan)."""
        n = len(self.simples)
        key = u * n + v
        best = self._join_memo.get(key)
        if best is not None:
            return best
        best = -1
        for w in range(n):
            if self.left_divides(u, w) and self.left_divides(v, w):
                if best < 0 or self.grade[w] < self.grade[best]:
                    best = w
        if best < 0:
            raise StructureError(
                f"no common upper bound for {self.simples[u]}, {self.simples[v]}"
            )
        for w in range(n):
            if self.left_divides(u, w) and self.left_divides(v, w):
                if not self.left_divides(best, w):
                    raise StructureError(
                        f"join of {self.simples[u]}, {self.simples[v]} is not unique"
                    )
        self._join_memo[key] = best
        self._join_memo[v * n + u] = best
        return best

    def reversed(self) -> "GarsideTable":
        """The opposite structure: products reversed, left and right swapped.

        The reversed table shares the underlying lists where possible and is
        cached, so right-handed computations (right greedy forms, right
        orthogonal forms) can reuse the left-handed machinery verbatim.
        """
        if self._reversed is None:
            n = len(self.simples)
            rev = GarsideTable.__new__(GarsideTable)
            rev.name = self.name + "~rev"
            rev.simples = self.simples
            rev.unit = self.unit
            rev.delta = self.delta
            rev.atoms = self.atoms
            rev.grade = self.grade
            rev._product = [
                self._product[v * n + u] for u in range(n) for v in range(n)
            ]
            rev._meet_l = self._meet_r
            rev._meet_r = self._meet_l
            rev._sigma = self._sigma_inv
            rev._sigma_inv = self._sigma
            rev._phi = self._phi_inv
            rev._phi_inv = self._phi
            rev._lquot = self._rquot
            rev._rquot = self._lquot
            rev._phi_order = self._phi_order
            rev._phi_pow_cache = {}
            rev._join_memo = {}
            rev._reversed = self
            self._reversed = rev
        return self._reversed

    def __repr__(self):
        return f"GarsideTable({self.name!r}, {len(self.simples)} simples)"


def _inverse_permutation(perm: list[int], what: str) -> list[int]:
    inv = [-1] * len(perm)
    for i, j in enumerate(perm):
        if not (0 <= j < len(perm)) or inv[j] != -1:
            raise StructureError(f"{what} is not a permutation of the simples")
        inv[j] = i
    return inv


# -- canonical elements ----------------------------------------------------


@dataclasses.dataclass(frozen=True, eq=False)
class Element:
    """A group element in canonical form D^delta_power * body.

    The body is the left greedy normal sequence of the D-free part: no
    factor is the unit or D, and sigma(u_i) meet u_{i+1} is trivial for all
    consecutive pairs. Construction checks this, so an Element can always
    be trusted to be canonical.
    """

    table: GarsideTable
    delta_power: int
    body: tuple[int, ...]

    def __post_init__(self):
        t = self.table
        for u in self.body:
            t.check_simple(u)
            if u == t.unit or u == t.delta:
                raise StructureError("body factors must be proper simples")
        for i in range(len(self.body) - 1):
            if t.meet_l(t.sigma(self.body[i]), self.body[i + 1]) != t.unit:
                raise StructureError("body is not left greedy")

    # Equality is canonical-form equality over the same table instance.
    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (
            self.table is other.table
            and self.delta_power == other.delta_power
            and self.body == other.body
        )

    def __hash__(self):
        return hash((id(self.table), self.delta_power, self.body))

    def sort_key(self):
        return (self.delta_power, self.body)

    @property
    def is_identity(self) -> bool:
        return self.delta_power == 0 and not self.body

    @property
    def is_positive(self) -> bool:
        """Whether the element lies in the positive monoid."""
        return self.delta_power >= 0

    def length(self) -> int:
        """Word length over the symmetric generating set of simples.

        Equals max(k + p, -p, k) for the canonical form D^p u_1..u_k.
        """
        k = len(self.body)
        p = self.delta_power
        return max(k + p, -p, k)

    def factor_count(self) -> int:
        """Number of greedy factors of a positive element, D powers included."""
        if self.delta_power < 0:
            raise DomainError("factor_count is defined for positive elements only")
        return self.delta_power + len(self.body)

    def positive_factors(self) -> tuple[int, ...]:
        """Greedy factor sequence of a positive element, leading D factors explicit."""
        if self.delta_power < 0:
            raise DomainError("positive_factors requires a positive element")
        return (self.table.delta,) * self.delta_power + self.body

    def __mul__(self, other: "Element") -> "Element":
        return multiply(self, other)

    def inverse(self) -> "Element":
        return invert(self)

    def __pow__(self, exp: int) -> "Element":
        acc = identity(self.table)
        if exp == 0:
            return acc
        base = self if exp > 0 else self.inverse()
        exp = abs(exp)
        while exp:
            if exp & 1:
                acc = acc * base
            exp >>= 1
            base = base * base
        return acc

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"<{format_element(self)}>"


def identity(table: GarsideTable) -> Element:
    return Element(table, 0, ())


def delta_power(table: GarsideTable, p: int) -> Element:
    return Element(table, p, ())


def simple(table: GarsideTable, u: int) -> Element:
    """The positive element given by one simple."""
    table.check_simple(u)
    if u == table.unit:
        return Element(table, 0, ())
    if u == table.delta:
        return Element(table, 1, ())
    return Element(table, 0, (u,))


# -- normalisation ---------------------------------------------------------


def _normalize_factors(table: GarsideTable, factors: list[int]) -> tuple[int, tuple[int, ...]]:
    """Left greedy normal form of a product of simples.

    Returns (d, body) with product = D^d * body, the body greedy and free of
    unit and D factors. Works by local head transfers, iterated in passes
    until stable; each effective transfer moves grade towards the front, so
    the pass count is bounded by len^2 * grade(D).
    """
    unit = table.unit
    delta = table.delta
    work = [f for f in factors if f != unit]
    if work:
        max_passes = len(work) * len(work) * max(table.grade[delta], 1) + 2
        for _ in range(max_passes):
            changed = False
            for i in range(len(work) - 1):
                u = work[i]
                v = work[i + 1]
                if u == delta or v == unit:
                    continue
                x = table.meet_l(table.sigma(u), v)
                if x != unit:
                    head = table.product(u, x)
                    if head is None:
                        raise StructureError("corrupt table: head product undefined")
                    work[i] = head
                    work[i + 1] = table.lquot(x, v)
                    changed = True
            if not changed:
                break
            work = [f for f in work if f != unit]
        else:
            raise StructureError("normalisation did not converge; corrupt table")
    d = 0
    while d < len(work) and work[d] == delta:
        d += 1
    return d, tuple(work[d:])


def _from_signed(table: GarsideTable, letters: Iterable[SignedLetter], tail_delta: int = 0) -> Element:
    """Canonical element of letters[0] ... letters[-1] * D^tail_delta.

    Negative letters are rewritten with u^-1 = D^-1 * phi(sigma(u)), then the
    D powers are commuted to the front with phi twists and the remaining
    positive sequence is normalised.
    """
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
    d, body = _normalize_factors(table, factors)
    return Element(table, power + d, body)


def normalize(table: GarsideTable, word: Iterable[SignedLetter]) -> Element:
    """Canonical form of a signed word over the simples."""
    return _from_signed(table, word)


def multiply(x: Element, y: Element) -> Element:
    if x.table is not y.table:
        raise StructureError("cannot multiply elements over different tables")
    t = x.table
    q = y.delta_power
    factors = [t.phi_pow(u, -q) for u in x.body]
    factors.extend(y.body)
    d, body = _normalize_factors(t, factors)
    return Element(t, x.delta_power + q + d, body)


def invert(x: Element) -> Element:
    t = x.table
    return _from_signed(
        t, [(u, -1) for u in reversed(x.body)], tail_delta=-x.delta_power
    )


def conjugate_by_delta(x: Element, k: int = 1) -> Element:
    """phi^k(x) = D^k x D^-k. Preserves greedy bodies factor by factor."""
    t = x.table
    return Element(t, x.delta_power, tuple(t.phi_pow(u, k) for u in x.body))


# -- head meets ------------------------------------------------------------


def head_simple(a: Element) -> int:
    """First greedy factor of a positive element (D if the D power is >= 1)."""
    if a.delta_power < 0:
        raise DomainError("head_simple requires a positive element")
    if a.delta_power >= 1:
        return a.table.delta
    return a.body[0] if a.body else a.table.unit


def meet_with_simple(a: Element, s: int) -> int:
    """Meet of a positive element with one simple.

    The meet of a positive element with any simple equals the meet of its
    first greedy factor with that simple, so this is a single table lookup.
    """
    a.table.check_simple(s)
    return a.table.meet_l(head_simple(a), s)


def has_left_divisor(a: Element, s: int) -> bool:
    """Whether the simple s left-divides the positive element a."""
    return meet_with_simple(a, s) == s


def strip_left_simple(a: Element, s: int) -> Element:
    """The positive element s^-1 * a; requires s to left-divide a."""
    if not has_left_divisor(a, s):
        raise DomainError(
            f"{a.table.display(s)} does not left-divide {format_element(a)}"
        )
    return multiply(invert(simple(a.table, s)), a)


# -- factored views --------------------------------------------------------


class Form(Enum):
    LEFT_GREEDY = "left-greedy"
    RIGHT_GREEDY = "right-greedy"
    LEFT_ORTHOGONAL = "left-orthogonal"
    RIGHT_ORTHOGONAL = "right-orthogonal"
    LEFT_DELTA = "left-delta"
    RIGHT_DELTA = "right-delta"


@dataclasses.dataclass(frozen=True)
class NormalFormView:
    """One of the six factored presentations of an element.

    Payload shapes by variant:
      LEFT_DELTA        (p, body)            element = D^p * body
      RIGHT_DELTA       (body, p)            element = body * D^p
      LEFT_ORTHOGONAL   (b, a) Elements      element = b^-1 * a, meet_L(a, b) = 1
      RIGHT_ORTHOGONAL  (a, b) Elements      element = a * b^-1, meet_R(a, b) = 1
      LEFT_GREEDY       (letters,)           signed letters, negatives first
      RIGHT_GREEDY      (letters,)           signed letters, positives first
    """

    table: GarsideTable
    variant: Form
    payload: tuple

    def remultiply(self) -> Element:
        """Rebuild the source element from the view."""
        t = self.table
        if self.variant is Form.LEFT_DELTA:
            p, body = self.payload
            return multiply(delta_power(t, p), _from_signed(t, [(u, 1) for u in body]))
        if self.variant is Form.RIGHT_DELTA:
            body, p = self.payload
            return multiply(_from_signed(t, [(u, 1) for u in body]), delta_power(t, p))
        if self.variant is Form.LEFT_ORTHOGONAL:
            b, a = self.payload
            return multiply(invert(b), a)
        if self.variant is Form.RIGHT_ORTHOGONAL:
            a, b = self.payload
            return multiply(a, invert(b))
        (letters,) = self.payload
        return _from_signed(t, letters)


def left_orthogonal(x: Element) -> tuple[Element, Element]:
    """The pair (b, a) with x = b^-1 * a, both positive, meeting trivially."""
    t = x.table
    if x.delta_power >= 0:
        return identity(t), x
    q = -x.delta_power
    body = x.body
    k = len(body)
    m = min(k, q)
    r = q - m
    vs = []
    for i in range(r + 1, q + 1):
        w = body[q - i]
        vs.append(t.sigma_inv(t.phi_pow(w, -i)))
    b = Element(t, r, tuple(vs))
    a = Element(t, 0, body[q:]) if k > q else identity(t)
    return b, a


def to_reversed(x: Element) -> Element:
    """The same group element, canonical over the reversed table."""
    t = x.table
    rt = t.reversed()
    p = x.delta_power
    ys = [t.phi_pow(u, p) for u in x.body]
    ys.reverse()
    d, body = _normalize_factors(rt, ys)
    return Element(rt, p + d, body)


def from_reversed(xr: Element) -> Element:
    """Translate an element of the reversed table back to the original."""
    rt = xr.table
    t = rt.reversed()
    zs = list(xr.body)
    zs.reverse()
    d, body = _normalize_factors(t, zs)
    q = xr.delta_power
    return Element(t, d + q, tuple(t.phi_pow(u, -q) for u in body))


def right_orthogonal(x: Element) -> tuple[Element, Element]:
    """The pair (a, b) with x = a * b^-1, both positive, right meet trivial."""
    xr = to_reversed(x)
    br, ar = left_orthogonal(xr)
    return from_reversed(ar), from_reversed(br)


def greedy_letters(x: Element) -> tuple[SignedLetter, ...]:
    """Left greedy normal form as signed letters, negative letters first."""
    b, a = left_orthogonal(x)
    neg = list(b.positive_factors())
    pos = list(a.positive_factors())
    letters = [(v, -1) for v in reversed(neg)]
    letters.extend((u, 1) for u in pos)
    return tuple(letters)


def right_greedy_letters(x: Element) -> tuple[SignedLetter, ...]:
    """Right greedy normal form as signed letters, positive letters first."""
    xr = to_reversed(x)
    br, ar = left_orthogonal(xr)
    neg = list(br.positive_factors())
    pos = list(ar.positive_factors())
    letters = [(v, -1) for v in reversed(neg)]
    letters.extend((u, 1) for u in pos)
    letters.reverse()
    return tuple(letters)


def view(x: Element, variant: Form) -> NormalFormView:
    """Compute one factored view of x; remultiplying restores x."""
    t = x.table
    if variant is Form.LEFT_DELTA:
        payload: tuple = (x.delta_power, x.body)
    elif variant is Form.RIGHT_DELTA:
        p = x.delta_power
        payload = (tuple(t.phi_pow(u, p) for u in x.body), p)
    elif variant is Form.LEFT_ORTHOGONAL:
        payload = left_orthogonal(x)
    elif variant is Form.RIGHT_ORTHOGONAL:
        payload = right_orthogonal(x)
    elif variant is Form.LEFT_GREEDY:
        payload = (greedy_letters(x),)
    elif variant is Form.RIGHT_GREEDY:
        payload = (right_greedy_letters(x),)
    else:
        raise DomainError(f"unknown view variant {variant!r}")
    return NormalFormView(t, variant, payload)


# -- formatting ------------------------------------------------------------


def format_letter(table: GarsideTable, letter: SignedLetter) -> str:
    s, sign = letter
    name = "D" if s == table.delta else table.display(s)
    return name if sign == 1 else f"{name}^-1"


def format_word(table: GarsideTable, letters: Sequence[SignedLetter]) -> str:
    if not letters:
        return "1"
    return ".".join(format_letter(table, l) for l in letters)


def format_element(x: Element) -> str:
    """Canonical printable form: D power first, then the body, dot separated."""
    t = x.table
    parts = []
    if x.delta_power == 1:
        parts.append("D")
    elif x.delta_power != 0:
        parts.append(f"D^{x.delta_power}")
    parts.extend(t.display(u) for u in x.body)
    return ".".join(parts) if parts else "1"
