import itertools

import pytest

from garside import kernel as K
from garside import oracle as O
from garside.budget import Budget
from garside.parabolic import make_parabolic
from garside.structures import build_braid, build_dihedral, build_free_abelian


class B3:
    """Braid group on 3 strands with the names used throughout the tests."""

    def __init__(self):
        self.table = build_braid(3)
        ids = {name: i for i, name in enumerate(self.table.simples)}
        self.one = ids["1"]
        self.a = ids["a"]
        self.b = ids["b"]
        self.ab = ids["ab"]
        self.ba = ids["ba"]
        self.D = ids["D"]

    def el(self, expr: str) -> K.Element:
        from garside.cli import parse_element

        return parse_element(self.table, expr)


@pytest.fixture(scope="session")
def b3() -> B3:
    return B3()


@pytest.fixture(scope="session")
def b3_parabolic(b3):
    return make_parabolic(b3.table, b3.a)


@pytest.fixture(scope="session")
def i24():
    return build_dihedral(4)


@pytest.fixture(scope="session")
def i24_parabolic(i24):
    return make_parabolic(i24, i24.simples.index("s"))


@pytest.fixture(scope="session")
def z2():
    return build_free_abelian(2)


@pytest.fixture(scope="session")
def b3_ball4(b3):
    return O.bfs_lengths(b3.table, 4, Budget(10**7))


@pytest.fixture(scope="session")
def i24_ball3(i24):
    return O.bfs_lengths(i24, 3, Budget(10**7))


def signed_letters(table):
    return [(s, e) for s in range(table.n_simples) if s != table.unit for e in (1, -1)]


def signed_words(table, max_len):
    letters = signed_letters(table)
    for length in range(max_len + 1):
        yield from itertools.product(letters, repeat=length)


def positives_up_to(ball, max_len):
    """Positive elements of word length at most max_len, from a ball index."""
    return [
        x
        for x, d in sorted(ball.dist.items(), key=lambda kv: kv[0].sort_key())
        if d <= max_len and x.delta_power >= 0
    ]
