"""Right cosets W_Theta w of a standard parabolic subgroup.

Cosets are indexed ``0..n-1`` in "whittaker-coset-order-v1": by length of the
longest representative, then ShortLex of its reduced word. Coset 0 is always
W_Theta itself.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .rootsys import WeylGroup


class Move(enum.Enum):
    EQUAL = "equal"
    UP = "up"
    DOWN = "down"


class CosetAction(NamedTuple):
    move: Move
    target: int  # the coset C s_alpha (equal to C itself for Move.EQUAL)


@dataclass(frozen=True)
class Coset:
    index: int
    w_min: int
    w_max: int
    max_length: int


def parse_theta(text: str, rank: int) -> frozenset[int]:
    """Parse ``"none"``, ``"all"`` or a comma list of 1-based generator numbers.

    Returns 0-based generator indices.
    """
    t = text.strip().lower()
    if t in ("none", "", "empty"):
        return frozenset()
    if t == "all":
        return frozenset(range(rank))
    out = set()
    for part in t.split(","):
        part = part.strip()
        if not part.isdigit():
            raise ValueError(f"bad theta entry {part!r}; expected generator numbers 1..{rank}")
        k = int(part)
        if not 1 <= k <= rank:
            raise ValueError(f"theta index {k} out of range 1..{rank}")
        out.add(k - 1)
    return frozenset(out)


def format_theta(theta: Iterable[int], rank: int) -> str:
    theta = sorted(theta)
    if not theta:
        return "none"
    if len(theta) == rank:
        return "all"
    return ",".join(str(s + 1) for s in theta)


@dataclass
class ParabolicQuotient:
    W: WeylGroup
    theta: frozenset[int]
    w_theta: int
    cosets: list[Coset]
    member_coset: list[int]
    actions: list[list[CosetAction]] = field(repr=False)
    # memo space for derived data (bar tables, Hecke algebra); filled lazily
    cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.cosets)

    @property
    def base(self) -> int:
        return 0

    def w_max(self, c: int) -> int:
        return self.cosets[c].w_max

    def w_min(self, c: int) -> int:
        return self.cosets[c].w_min

    def max_length(self, c: int) -> int:
        return self.cosets[c].max_length

    def coset_action(self, c: int, s: int) -> CosetAction:
        return self.actions[c][s]

    def coset_leq(self, c: int, d: int) -> bool:
        return self.W.bruhat_leq(self.cosets[c].w_max, self.cosets[d].w_max)

    def descent_generator(self, c: int, largest: bool = False) -> int | None:
        gens = range(self.W.rank - 1, -1, -1) if largest else range(self.W.rank)
        for s in gens:
            if self.actions[c][s].move is Move.DOWN:
                return s
        return None

    def layers(self) -> list[list[int]]:
        out: list[list[int]] = []
        for c in self.cosets:
            while len(out) <= c.max_length - self.cosets[0].max_length:
                out.append([])
            out[c.max_length - self.cosets[0].max_length].append(c.index)
        return out

    def theta_elements(self) -> list[int]:
        """Elements of W_Theta (the members of coset 0)."""
        return [w for w, c in enumerate(self.member_coset) if c == 0]


def longest_in_parabolic(W: WeylGroup, theta: Iterable[int]) -> int:
    theta = sorted(theta)
    w = 0
    grew = True
    while grew:
        grew = False
        for s in theta:
            sw = W.lmul[w][s]
            if W.length[sw] > W.length[w]:
                w, grew = sw, True
    return w


def build_quotient(W: WeylGroup, theta: Iterable[int]) -> ParabolicQuotient:
    theta = frozenset(theta)
    if any(not 0 <= s < W.rank for s in theta):
        raise ValueError(f"theta {sorted(theta)} not a subset of generators 0..{W.rank - 1}")
    length, lmul = W.length, W.lmul

    # strip left Theta-descents; elements are length sorted so sw is already resolved
    minrep = list(range(W.order))
    for w in range(W.order):
        for s in theta:
            sw = lmul[w][s]
            if length[sw] < length[w]:
                minrep[w] = minrep[sw]
                break

    w_theta = longest_in_parabolic(W, theta)
    reps = sorted(set(minrep))
    info = []
    for m in reps:
        wmax = W.mul(w_theta, m)
        if length[wmax] != length[w_theta] + length[m]:
            raise AssertionError(f"length not additive for w_theta * {W.words[m]}")
        info.append((length[wmax], W.words[wmax], m, wmax))
    info.sort()
    cosets = [Coset(i, m, wmax, ln) for i, (ln, _, m, wmax) in enumerate(info)]
    by_min = {c.w_min: c.index for c in cosets}
    member = [by_min[minrep[w]] for w in range(W.order)]

    actions = []
    for c in cosets:
        row = []
        for s in range(W.rank):
            u = W.rmul[c.w_max][s]
            d = member[u]
            if d == c.index:
                row.append(CosetAction(Move.EQUAL, d))
                continue
            if u != cosets[d].w_max:
                raise AssertionError(f"w^C s is not the longest element of C s (C={c.index}, s={s})")
            row.append(CosetAction(Move.UP if length[u] > c.max_length else Move.DOWN, d))
        actions.append(row)

    return ParabolicQuotient(W, theta, w_theta, cosets, member, actions)


def coset_action(Q: ParabolicQuotient, c: int, s: int) -> CosetAction:
    return Q.coset_action(c, s)


def coset_leq(Q: ParabolicQuotient, c: int, d: int) -> bool:
    return Q.coset_leq(c, d)


def descent_generator(Q: ParabolicQuotient, c: int, largest: bool = False) -> int | None:
    return Q.descent_generator(c, largest)
