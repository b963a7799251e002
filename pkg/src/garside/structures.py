"""Builders, loader and validator for Garside tables.

Three families are built in: braid groups on n strands (simples are the n!
permutation braids, D the half twist), dihedral Artin groups I2(m) (simples
are the alternating prefixes of the two relator words, 2m in total) and free
abelian groups Z^n (simples are the 2^n square-free monomials). User tables
come from a line-oriented text format documented in the README.

Every provider produces the same raw data, a list of simple names plus the
partial product, and a single completion routine derives grades, meets,
complements and conjugation from first principles. The validator re-checks
the lattice axioms on any table, built in or loaded.
"""

from __future__ import annotations

import dataclasses
import itertools
from typing import Sequence

from .errors import StructureError
from .kernel import GarsideTable

BRAID_ATOM_LETTERS = "abcdef"
ABELIAN_ATOM_LETTERS = ["x", "y", "z", "w"]


# -- generic completion ----------------------------------------------------


def _complete_table(
    name: str,
    simples: list[str],
    unit: int,
    delta: int,
    products: dict[tuple[int, int], int],
) -> GarsideTable:
    """Derive a full GarsideTable from names and the partial product.

    Divisibility, grades, meets, sigma and phi are all computed here; the
    providers only have to describe which products of simples are simple.
    Inconsistent inputs surface as StructureError, finer axiom violations
    are left to validate_table.
    """
    n = len(simples)
    product = [-1] * (n * n)
    for u in range(n):
        product[u * n + unit] = u
        product[unit * n + u] = u
    for (u, v), w in products.items():
        slot = u * n + v
        if product[slot] not in (-1, w):
            raise StructureError(
                f"conflicting products for {simples[u]} * {simples[v]}"
            )
        product[slot] = w

    # Divisibility among simples: u <=_L w iff some u*v = w (the cofactor of
    # a simple divisor is itself simple, so one product suffices).
    div_l = [0] * n  # bitset of left divisors of w
    div_r = [0] * n
    for u in range(n):
        for v in range(n):
            w = product[u * n + v]
            if w >= 0:
                div_l[w] |= 1 << u
                div_r[w] |= 1 << v

    # Grade = atom count, computed as the longest-chain fixed point: start
    # non-units at 1 and push each product up to the sum of its factors. On
    # a consistent table this converges to the additive length; the
    # validator rejects tables where additivity still fails afterwards.
    grade = [1] * n
    grade[unit] = 0
    for _ in range(n + 1):
        changed = False
        for (u, v), w in products.items():
            if u != unit and v != unit and grade[u] + grade[v] > grade[w]:
                grade[w] = grade[u] + grade[v]
                changed = True
        if not changed:
            break

    by_grade_desc = sorted(range(n), key=lambda s: -grade[s])

    def lattice_max(common: int, side: str) -> int:
        best = -1
        for w in by_grade_desc:
            if common >> w & 1:
                best = w
                break
        if best < 0:
            raise StructureError(f"{side}: no common divisor found")
        dominates = div_l[best] if side == "meet_l" else div_r[best]
        if common & ~dominates:
            raise StructureError(
                f"{side}: common divisors have no maximum (not a lattice)"
            )
        return best

    meet_l = [0] * (n * n)
    meet_r = [0] * (n * n)
    for u in range(n):
        for v in range(n):
            meet_l[u * n + v] = lattice_max(div_l[u] & div_l[v], "meet_l")
            meet_r[u * n + v] = lattice_max(div_r[u] & div_r[v], "meet_r")

    sigma = [-1] * n
    for u in range(n):
        for v in range(n):
            if product[u * n + v] == delta:
                if sigma[u] != -1:
                    raise StructureError(
                        f"complement of {simples[u]} is not unique"
                    )
                sigma[u] = v
        if sigma[u] < 0:
            raise StructureError(f"no complement: {simples[u]} * ? = delta")

    # phi = inverse of sigma o sigma (D = u sigma(u) applied twice).
    phi = [-1] * n
    for u in range(n):
        phi[sigma[sigma[u]]] = u
    if any(x < 0 for x in phi):
        raise StructureError("sigma is not a bijection")

    return GarsideTable(
        name=name,
        simples=simples,
        unit=unit,
        delta=delta,
        atoms=_find_atoms(n, unit, products),
        grade=grade,
        product=product,
        meet_l=meet_l,
        meet_r=meet_r,
        sigma=sigma,
        phi=phi,
    )


def _find_atoms(n: int, unit: int, products: dict[tuple[int, int], int]) -> tuple[int, ...]:
    decomposable = {
        w for (u, v), w in products.items() if u != unit and v != unit
    }
    return tuple(s for s in range(n) if s != unit and s not in decomposable)


# -- braid groups ----------------------------------------------------------


def build_braid(n: int) -> GarsideTable:
    """Classical Garside structure on the braid group with n strands.

    Simples are the n! permutation braids with D the half twist; products,
    meets and complements all derive from inversion counts. The n <= 7
    guard keeps the dense tables at desk scale.
    """
    if not (2 <= n <= 7):
        raise StructureError("braid strand count must be in 2..7")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    inv = [_inversions(p) for p in perms]
    ident = tuple(range(n))
    w0 = tuple(range(n - 1, -1, -1))

    names = [_braid_name(p, ident, w0) for p in perms]
    products: dict[tuple[int, int], int] = {}
    for iu, pu in enumerate(perms):
        if pu == ident:
            continue
        for iv, pv in enumerate(perms):
            if pv == ident:
                continue
            w = tuple(pv[pu[i]] for i in range(n))
            iw = index[w]
            if inv[iw] == inv[iu] + inv[iv]:
                products[(iu, iv)] = iw
    return _complete_table(
        f"braid:{n}", names, index[ident], index[w0], products
    )


def _inversions(p: Sequence[int]) -> int:
    return sum(
        1
        for i in range(len(p))
        for j in range(i + 1, len(p))
        if p[i] > p[j]
    )


def _braid_name(p: tuple[int, ...], ident: tuple[int, ...], w0: tuple[int, ...]) -> str:
    if p == ident:
        return "1"
    if p == w0:
        return "D"
    # Lexicographically least reduced word: repeatedly peel the smallest
    # descent as the first Artin letter.
    word = []
    cur = list(p)
    while cur != list(ident):
        i = next(k for k in range(len(cur) - 1) if cur[k] > cur[k + 1])
        word.append(BRAID_ATOM_LETTERS[i])
        cur[i], cur[i + 1] = cur[i + 1], cur[i]
    return "".join(word)


# -- dihedral Artin groups -------------------------------------------------


def build_dihedral(m: int) -> GarsideTable:
    """Garside structure on the dihedral Artin group I2(m).

    Simples are the unit, the 2(m-1) proper alternating words in s and t,
    and D, the alternating word of length m (both spellings coincide).
    """
    if not (3 <= m <= 50):
        raise StructureError("dihedral parameter must be in 3..50")

    def alt(first: str, length: int) -> str:
        other = "t" if first == "s" else "s"
        return "".join(first if i % 2 == 0 else other for i in range(length))

    names = ["1"]
    for length in range(1, m):
        names.append(alt("s", length))
        names.append(alt("t", length))
    names.append("D")
    index = {w: i for i, w in enumerate(names)}
    unit = index["1"]
    delta = index["D"]

    def simple_of(word: str) -> int | None:
        if len(word) == m:
            return delta
        return index.get(word)

    products: dict[tuple[int, int], int] = {}
    proper = [w for w in names if w not in ("1", "D")]
    for u in proper:
        for v in proper:
            if u[-1] == v[0]:
                continue
            if len(u) + len(v) > m:
                continue
            w = simple_of(u + v)
            if w is not None:
                products[(index[u], index[v])] = w
    return _complete_table(f"dihedral:{m}", names, unit, delta, products)


# -- free abelian groups ---------------------------------------------------


def build_free_abelian(n: int) -> GarsideTable:
    """Free abelian group Z^n with D the product of all generators.

    Simples are square-free monomials, indexed by subsets; products are
    defined on disjoint supports, the meet is intersection, sigma the
    complement and phi the identity.
    """
    if not (1 <= n <= 12):
        raise StructureError("abelian rank must be in 1..12")
    letters = (
        ABELIAN_ATOM_LETTERS[:n]
        if n <= len(ABELIAN_ATOM_LETTERS)
        else [f"x{i + 1}" for i in range(n)]
    )
    full = (1 << n) - 1

    def name_of(mask: int) -> str:
        if mask == 0:
            return "1"
        if mask == full:
            return "D"
        return "".join(letters[i] for i in range(n) if mask >> i & 1)

    names = [name_of(mask) for mask in range(1 << n)]
    products = {
        (u, v): u | v
        for u in range(1 << n)
        for v in range(1 << n)
        if u and v and not (u & v)
    }
    return _complete_table(f"abelian:{n}", names, 0, full, products)


# -- text format -----------------------------------------------------------


@dataclasses.dataclass
class StructureFile:
    """Parsed form of the plain-text structure format."""

    name: str
    simples: list[str]
    delta: str
    products: list[tuple[str, str, str]]


def parse_structure_text(text: str) -> StructureFile:
    """Parse the line-oriented structure format.

    Header lines `name:`, `simples:` (space separated) and `delta:` are
    followed by one `u v = w` product per line; `#` starts a comment. The
    name "1" is reserved for the unit and must be listed.
    """
    name = ""
    simples: list[str] | None = None
    delta: str | None = None
    products: list[tuple[str, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("name:"):
            name = line[len("name:"):].strip()
        elif line.startswith("simples:"):
            simples = line[len("simples:"):].split()
        elif line.startswith("delta:"):
            delta = line[len("delta:"):].strip()
        else:
            head, sep, w = line.partition("=")
            uv = head.split()
            if not sep or len(uv) != 2 or len(w.split()) != 1:
                raise StructureError(f"line {lineno}: expected `u v = w`, got {raw!r}")
            products.append((uv[0], uv[1], w.strip()))
    if simples is None:
        raise StructureError("missing simples: line")
    if delta is None:
        raise StructureError("missing delta: line")
    if len(set(simples)) != len(simples):
        raise StructureError("simple names are not unique")
    if "1" not in simples:
        raise StructureError('the unit must be listed under the reserved name "1"')
    if delta not in simples:
        raise StructureError(f"delta {delta!r} is not a listed simple")
    return StructureFile(name or "user", simples, delta, products)


def load_table(source: StructureFile | str) -> GarsideTable:
    """Build and validate a GarsideTable from a StructureFile or raw text."""
    sf = parse_structure_text(source) if isinstance(source, str) else source
    index = {s: i for i, s in enumerate(sf.simples)}
    products: dict[tuple[int, int], int] = {}
    for u, v, w in sf.products:
        for s in (u, v, w):
            if s not in index:
                raise StructureError(f"unknown simple {s!r} in product line")
        products[(index[u], index[v])] = index[w]
    table = _complete_table(sf.name, list(sf.simples), index["1"], index[sf.delta], products)
    violations = validate_table(table)
    if violations:
        raise StructureError(
            "table fails validation: " + "; ".join(violations[:5])
        )
    return table


def save_table(table: GarsideTable) -> str:
    """Emit the structure in the text format (unit products implied)."""
    lines = [f"name: {table.name}"]
    lines.append("simples: " + " ".join(table.simples))
    lines.append(f"delta: {table.simples[table.delta]}")
    n = table.n_simples
    for u in range(n):
        if u == table.unit:
            continue
        for v in range(n):
            if v == table.unit:
                continue
            w = table.product(u, v)
            if w is not None:
                lines.append(
                    f"{table.simples[u]} {table.simples[v]} = {table.simples[w]}"
                )
    return "\n".join(lines) + "\n"


# -- validation ------------------------------------------------------------


def validate_table(table: GarsideTable, max_violations: int = 20) -> list[str]:
    """Check the lattice axioms; an empty list means the table is valid.

    Verifies the unit laws, partial associativity, divisibility of every
    simple into D on both sides, the meet and join lattice conditions, the
    consistency of sigma and phi, cancellativity and the existence of an
    additive grading.
    """
    out: list[str] = []
    n = table.n_simples
    unit = table.unit
    delta = table.delta
    names = table.simples

    def report(msg: str) -> bool:
        out.append(msg)
        return len(out) >= max_violations

    # Unit laws.
    for u in range(n):
        if table.product(unit, u) != u or table.product(u, unit) != u:
            if report(f"unit-law: 1 * {names[u]} or {names[u]} * 1 wrong"):
                return out

    # Cancellativity of the product rows and columns.
    for u in range(n):
        seen: dict[int, int] = {}
        for v in range(n):
            w = table.product(u, v)
            if w is not None and w in seen:
                if report(f"cancellation: {names[u]} * x = {names[w]} twice"):
                    return out
            if w is not None:
                seen[w] = v

    # Partial associativity; a one-sided-defined triple is also an error.
    for u in range(n):
        for v in range(n):
            uv = table.product(u, v)
            for w in range(n):
                vw = table.product(v, w)
                left = table.product(uv, w) if uv is not None else None
                right = table.product(u, vw) if vw is not None else None
                if left is not None or right is not None:
                    if left != right:
                        if report(
                            "associativity: "
                            f"({names[u]} {names[v]}) {names[w]} != "
                            f"{names[u]} ({names[v]} {names[w]})"
                        ):
                            return out

    # Recompute divisibility from the product.
    div_l = [0] * n
    div_r = [0] * n
    for u in range(n):
        for v in range(n):
            w = table.product(u, v)
            if w is not None:
                div_l[w] |= 1 << u
                div_r[w] |= 1 << v

    full = (1 << n) - 1
    if div_l[delta] != full or div_r[delta] != full:
        report("balance: not every simple divides delta on both sides")

    # Meets must be the maxima of the common divisor sets; joins must exist.
    for u in range(n):
        for v in range(n):
            for side, div, meet in (
                ("meet_l", div_l, table.meet_l(u, v)),
                ("meet_r", div_r, table.meet_r(u, v)),
            ):
                common = div[u] & div[v]
                if not common >> meet & 1 or common & ~div[meet]:
                    if report(f"lattice-{side}: wrong meet of {names[u]}, {names[v]}"):
                        return out
    for u in range(n):
        for v in range(n):
            uppers = [w for w in range(n) if div_l[w] >> u & 1 and div_l[w] >> v & 1]
            least = [w for w in uppers if all(div_l[x] >> w & 1 for x in uppers)]
            if len(least) != 1:
                if report(f"lattice-join: {names[u]}, {names[v]} have no least upper bound"):
                    return out

    # Complement and conjugation consistency.
    if table.sigma(unit) != delta or table.sigma(delta) != unit:
        report("complement: sigma must swap the unit and delta")
    for u in range(n):
        if table.product(u, table.sigma(u)) != delta:
            if report(f"complement: {names[u]} * sigma({names[u]}) != delta"):
                return out
    for u in range(n):
        if table.phi(table.sigma(table.sigma(u))) != u:
            if report(f"phi: phi(sigma(sigma({names[u]}))) != {names[u]}"):
                return out
    if table.phi(unit) != unit or table.phi(delta) != delta:
        report("phi: must fix the unit and delta")
    for u in range(n):
        for v in range(n):
            w = table.product(u, v)
            pw = table.product(table.phi(u), table.phi(v))
            if (w is None) != (pw is None) or (w is not None and table.phi(w) != pw):
                if report(f"phi: not multiplicative at {names[u]}, {names[v]}"):
                    return out

    # Additive grading (implies Noetherianity for a finite table).
    if table.grade[unit] != 0:
        report("grading: unit must have grade 0")
    for u in range(n):
        if u != unit and table.grade[u] <= 0:
            if report(f"grading: {names[u]} must have positive grade"):
                return out
    for u in range(n):
        for v in range(n):
            w = table.product(u, v)
            if w is not None and table.grade[u] + table.grade[v] != table.grade[w]:
                if report(f"grading: not additive at {names[u]} * {names[v]}"):
                    return out

    return out


# -- isomorphism -----------------------------------------------------------


def tables_isomorphic(t1: GarsideTable, t2: GarsideTable) -> bool:
    """Whether a simple bijection preserves product, meets, sigma and phi."""
    n = t1.n_simples
    if n != t2.n_simples:
        return False
    if sorted(t1.grade) != sorted(t2.grade):
        return False

    order = sorted(range(n), key=lambda u: (t1.grade[u], t1.simples[u]))
    candidates = [
        [v for v in range(n) if t2.grade[v] == t1.grade[u]] for u in range(n)
    ]

    mapping = [-1] * n
    used = [False] * n

    def consistent(u: int, v: int) -> bool:
        if (u == t1.unit) != (v == t2.unit) or (u == t1.delta) != (v == t2.delta):
            return False
        for x in range(n):
            y = mapping[x]
            if y < 0:
                continue
            for a, b, c, d in ((u, x, v, y), (x, u, y, v)):
                p1 = t1.product(a, b)
                p2 = t2.product(c, d)
                if (p1 is None) != (p2 is None):
                    return False
                if p1 is not None and mapping[p1] not in (-1, p2):
                    return False
                m1 = mapping[t1.meet_l(a, b)]
                if m1 != -1 and m1 != t2.meet_l(c, d):
                    return False
                m1 = mapping[t1.meet_r(a, b)]
                if m1 != -1 and m1 != t2.meet_r(c, d):
                    return False
        s1 = mapping[t1.sigma(u)]
        if s1 != -1 and s1 != t2.sigma(v):
            return False
        p1 = mapping[t1.phi(u)]
        if p1 != -1 and p1 != t2.phi(v):
            return False
        return True

    def extend(pos: int) -> bool:
        if pos == n:
            return True
        u = order[pos]
        for v in candidates[u]:
            if used[v] or not consistent(u, v):
                continue
            mapping[u] = v
            used[v] = True
            if extend(pos + 1):
                return True
            mapping[u] = -1
            used[v] = False
        return False

    return extend(0)


# -- structure descriptor strings --------------------------------------------


def table_from_descriptor(descriptor: str) -> GarsideTable:
    """Build a table from a descriptor: braid:n, dihedral:m, abelian:n, file:path."""
    kind, sep, arg = descriptor.partition(":")
    if sep and kind in ("braid", "dihedral", "abelian"):
        try:
            value = int(arg)
        except ValueError:
            raise StructureError(f"bad structure parameter in {descriptor!r}") from None
        if kind == "braid":
            return build_braid(value)
        if kind == "dihedral":
            return build_dihedral(value)
        return build_free_abelian(value)
    path = arg if sep and kind == "file" else descriptor
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise StructureError(f"cannot read structure file {path!r}: {exc}") from None
    return load_table(text)
