from functools import lru_cache

import pytest

from wkl.quotient import build_quotient
from wkl.rootsys import WeylGroup, parse_cartan


@lru_cache(maxsize=None)
def group(name: str) -> WeylGroup:
    return WeylGroup(parse_cartan(name))


@lru_cache(maxsize=None)
def quotient(name: str, theta: tuple[int, ...]):
    return build_quotient(group(name), theta)


def el(W, *word):
    """Element from a 1-based word, e.g. el(W, 1, 2, 1) = s1 s2 s1."""
    return W.from_word([s - 1 for s in word])


@pytest.fixture
def A2():
    return group("A2")


@pytest.fixture
def A2_theta1():
    # Theta = {alpha_1}; cosets C0 = W_Theta, C1 (w^C = s1 s2), C2 (w^C = s1 s2 s1)
    return quotient("A2", (0,))


def all_thetas(rank: int):
    from itertools import combinations
    for k in range(rank + 1):
        yield from combinations(range(rank), k)


SMALL_TYPES = ("A1", "A2", "A3", "B2", "B3", "C3", "G2")
