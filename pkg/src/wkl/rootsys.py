"""Finite crystallographic root systems and their Weyl groups.

Generators are numbered 0..rank-1 in the Python API; this is Bourbaki node
numbering shifted down by one (the CLI and the file formats use 1-based
Bourbaki numbers). The Cartan matrix follows ``a[i][j] = <alpha_i, alpha_j^vee>``
so that ``s_j(alpha_i) = alpha_i - a[i][j] * alpha_j``.

Bourbaki diagrams used::

    A_n  1 - 2 - ... - n
    B_n  1 - 2 - ... - (n-1) => n        (alpha_n short)
    C_n  1 - 2 - ... - (n-1) <= n        (alpha_n long)
    D_n  1 - 2 - ... - (n-2) - (n-1), (n-2) - n
    E_n  1 - 3 - 4 - 5 - ... - n, 2 - 4
    F_4  1 - 2 => 3 - 4                  (alpha_1, alpha_2 long)
    G_2  1 <= 2                          (alpha_1 short)
"""

from __future__ import annotations

import re
import threading
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np

WEYL_ORDERS = {
    ("E", 6): 51840,
    ("E", 7): 2903040,
    ("E", 8): 696729600,
    ("F", 4): 1152,
    ("G", 2): 12,
}

# Above this order the full Bruhat matrix is not prefilled; queries fall back
# to the memoized lifting recursion.
BRUHAT_PREFILL_LIMIT = 6000


def weyl_group_order(letter: str, rank: int) -> int:
    from math import factorial

    if letter == "A":
        return factorial(rank + 1)
    if letter in "BC":
        return 2**rank * factorial(rank)
    if letter == "D":
        return 2 ** (rank - 1) * factorial(rank)
    return WEYL_ORDERS[(letter, rank)]


def _check_type(letter: str, rank: int) -> None:
    if letter not in "ABCDEFG" or len(letter) != 1:
        raise ValueError(f"unknown Cartan type letter {letter!r}; expected one of A,B,C,D,E,F,G")
    if not isinstance(rank, int) or rank < 1:
        raise ValueError(f"rank must be a positive integer, got {rank!r}")
    if letter in "BC" and rank < 2:
        raise ValueError(f"type {letter} requires rank >= 2, got {rank}")
    if letter == "D" and rank < 4:
        raise ValueError(f"type D requires rank >= 4, got {rank}")
    if letter == "E" and rank not in (6, 7, 8):
        raise ValueError(f"type E requires rank 6, 7 or 8, got {rank}")
    if letter == "F" and rank != 4:
        raise ValueError(f"type F requires rank 4, got {rank}")
    if letter == "G" and rank != 2:
        raise ValueError(f"type G requires rank 2, got {rank}")


def _gram(letter: str, n: int) -> list[list[int]]:
    # doubled inner products (alpha_i, alpha_j); short simply-laced roots have norm 2
    g = [[0] * n for _ in range(n)]

    def edge(i, j, v):
        g[i - 1][j - 1] = g[j - 1][i - 1] = v

    if letter in "ADE":
        for i in range(n):
            g[i][i] = 2
        if letter == "A":
            for i in range(1, n):
                edge(i, i + 1, -1)
        elif letter == "D":
            for i in range(1, n - 1):
                edge(i, i + 1, -1)
            edge(n - 2, n, -1)
        else:
            edge(1, 3, -1)
            edge(2, 4, -1)
            for i in range(3, n):
                edge(i, i + 1, -1)
    elif letter == "B":
        for i in range(n - 1):
            g[i][i] = 4
        g[n - 1][n - 1] = 2
        for i in range(1, n):
            edge(i, i + 1, -2)
    elif letter == "C":
        for i in range(n - 1):
            g[i][i] = 2
        g[n - 1][n - 1] = 4
        for i in range(1, n - 1):
            edge(i, i + 1, -1)
        edge(n - 1, n, -2)
    elif letter == "F":
        g[0][0] = g[1][1] = 4
        g[2][2] = g[3][3] = 2
        edge(1, 2, -2)
        edge(2, 3, -2)
        edge(3, 4, -1)
    elif letter == "G":
        g[0][0], g[1][1] = 2, 6
        edge(1, 2, -3)
    return g


@dataclass(frozen=True)
class CartanDatum:
    type_letter: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.type_letter}{self.rank}"

    @property
    def n_positive_roots(self) -> int:
        return len(self.positive_roots)

    @property
    def order(self) -> int:
        return weyl_group_order(self.type_letter, self.rank)


def _reflect(beta: Sequence[int], j: int, a) -> tuple[int, ...]:
    pairing = sum(beta[i] * a[i][j] for i in range(len(beta)))
    out = list(beta)
    out[j] -= pairing
    return tuple(out)


def build_root_system(type_letter: str, rank: int) -> CartanDatum:
    """Cartan matrix and positive roots (simple-root coordinates) of a finite type."""
    letter = type_letter.upper() if isinstance(type_letter, str) else type_letter
    _check_type(letter, rank)
    g = _gram(letter, rank)
    a = tuple(tuple(2 * g[i][j] // g[j][j] for j in range(rank)) for i in range(rank))

    simple = [tuple(int(i == k) for i in range(rank)) for k in range(rank)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for j in range(rank):
            gamma = _reflect(beta, j, a)
            if gamma not in seen and all(x >= 0 for x in gamma):
                seen.add(gamma)
                queue.append(gamma)
    positive = tuple(sorted(seen, key=lambda r: (sum(r), tuple(-x for x in r))))
    return CartanDatum(letter, rank, a, positive)


_CARTAN_RE = re.compile(r"^\s*([A-Za-z])\s*(\d+)\s*$")


def parse_cartan(text: str) -> CartanDatum:
    """Parse strings like ``"A3"`` or ``"f4"``."""
    m = _CARTAN_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse Cartan type {text!r}; expected e.g. A3, B2, F4")
    return build_root_system(m.group(1).upper(), int(m.group(2)))


class WeylGroup:
    """A fully enumerated finite Weyl group.

    Elements are integer handles ``0..order-1`` sorted by (length, ShortLex
    reduced word), so handle 0 is the identity and the last handle is the
    longest element. Internally an element is identified by the images of the
    simple roots (as indices into the root list).
    """

    def __init__(self, datum: CartanDatum, max_order: int = 10**6):
        self.datum = datum
        self.rank = datum.rank
        if datum.order > max_order:
            raise ValueError(
                f"{datum.name} has {datum.order} elements, above the enumeration limit {max_order}"
            )
        pos = list(datum.positive_roots)
        self.roots: list[tuple[int, ...]] = pos + [tuple(-x for x in r) for r in pos]
        self.n_pos = len(pos)
        self.root_index = {r: i for i, r in enumerate(self.roots)}
        a = datum.cartan_matrix
        r = self.rank
        self.simple_index = [self.root_index[tuple(int(i == k) for i in range(r))] for k in range(r)]
        # reflection_perm[s][i] = index of s(root_i)
        self.reflection_perm = [
            [self.root_index[_reflect(root, s, a)] for root in self.roots] for s in range(r)
        ]
        self._enumerate()
        self._bruhat_rows: np.ndarray | None = None
        self._bruhat_memo: dict[int, bool] = {}
        self._lock = threading.Lock()

    # -- enumeration -------------------------------------------------------

    def _enumerate(self) -> None:
        r = self.rank
        a = self.datum.cartan_matrix
        roots, rindex, n_pos = self.roots, self.root_index, self.n_pos
        refl = self.reflection_perm
        identity = tuple(self.simple_index)
        keys = [identity]
        index = {identity: 0}
        length = [0]
        rmul: list[list[int]] = []
        i = 0
        while i < len(keys):
            key = keys[i]
            row = []
            images = [roots[k] for k in key]
            for s in range(r):
                ws = tuple(
                    rindex[tuple(images[j][t] - a[j][s] * images[s][t] for t in range(r))]
                    for j in range(r)
                )
                h = index.get(ws)
                if h is None:
                    h = len(keys)
                    index[ws] = h
                    keys.append(ws)
                    length.append(length[i] + (1 if key[s] < n_pos else -1))
                    if len(keys) > self.datum.order:
                        raise RuntimeError(
                            f"enumeration of {self.datum.name} exceeded the known order {self.datum.order}"
                        )
                row.append(h)
            rmul.append(row)
            i += 1
        if len(keys) != self.datum.order:
            raise RuntimeError(f"enumerated {len(keys)} elements, expected {self.datum.order}")
        lmul = [[index[tuple(refl[s][k] for k in key)] for s in range(r)] for key in keys]

        # ShortLex normal forms: first letter is the smallest left descent.
        n = len(keys)
        by_len = sorted(range(n), key=length.__getitem__)
        word: list[tuple[int, ...] | None] = [None] * n
        for w in by_len:
            if length[w] == 0:
                word[w] = ()
                continue
            for s in range(r):
                sw = lmul[w][s]
                if length[sw] < length[w]:
                    word[w] = (s,) + word[sw]
                    break
        order = sorted(range(n), key=lambda w: (length[w], word[w]))
        new = [0] * n
        for k, w in enumerate(order):
            new[w] = k
        self.order = n
        self._keys = [keys[w] for w in order]
        self.length = [length[w] for w in order]
        self.words = [word[w] for w in order]
        self.rmul = [[new[x] for x in rmul[w]] for w in order]
        self.lmul = [[new[x] for x in lmul[w]] for w in order]
        self.right_descent_sets = [
            frozenset(s for s in range(r) if self.length[self.rmul[w][s]] < self.length[w]) for w in range(n)
        ]
        self.left_descent_sets = [
            frozenset(s for s in range(r) if self.length[self.lmul[w][s]] < self.length[w]) for w in range(n)
        ]
        self.identity = 0
        self.longest_element = n - 1
        self._inverse: list[int] | None = None

    # -- basic queries -------------------------------------------------------

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"WeylGroup({self.datum.name}, order={self.order})"

    def right_mul(self, w: int, s: int) -> int:
        return self.rmul[w][s]

    def left_mul(self, w: int, s: int) -> int:
        return self.lmul[w][s]

    def reduced_word(self, w: int) -> tuple[int, ...]:
        return self.words[w]

    def right_descents(self, w: int) -> frozenset[int]:
        return self.right_descent_sets[w]

    def left_descents(self, w: int) -> frozenset[int]:
        return self.left_descent_sets[w]

    def from_word(self, word: Sequence[int]) -> int:
        w = 0
        for s in word:
            w = self.rmul[w][s]
        return w

    def mul(self, x: int, y: int) -> int:
        for s in self.words[y]:
            x = self.rmul[x][s]
        return x

    def inverse(self, w: int) -> int:
        if self._inverse is None:
            self._inverse = [self.from_word(reversed(word)) for word in self.words]
        return self._inverse[w]

    def inversion_count(self, w: int) -> int:
        """Number of positive roots sent to negative roots by ``w``."""
        images = np.array([self.roots[k] for k in self._keys[w]])
        pos = np.array(self.roots[: self.n_pos])
        return int(((pos @ images).sum(axis=1) < 0).sum())

    def simple_root_images(self, w: int) -> list[tuple[int, ...]]:
        return [self.roots[k] for k in self._keys[w]]

    # -- Bruhat order ----------------------------------------------------------

    def prefill_bruhat(self) -> None:
        """Fill the full Bruhat matrix row by row.

        For w with right descent s, ``x <= w`` iff ``x <= ws`` or ``xs <= ws``.
        Handles are length-sorted, so ``ws`` is always filled before ``w``.
        """
        n = self.order
        rows = np.zeros((n, n), dtype=bool)
        rows[0, 0] = True
        cols = np.array(self.rmul, dtype=np.int64).T
        for w in range(1, n):
            s = min(self.right_descent_sets[w])
            u = self.rmul[w][s]
            rows[w] = rows[u] | rows[u][cols[s]]
        self._bruhat_rows = rows

    def bruhat_leq(self, v: int, w: int) -> bool:
        if self._bruhat_rows is None and self.order <= BRUHAT_PREFILL_LIMIT:
            with self._lock:
                if self._bruhat_rows is None:
                    self.prefill_bruhat()
        if self._bruhat_rows is not None:
            return bool(self._bruhat_rows[w, v])
        return self.bruhat_leq_recursive(v, w)

    def bruhat_leq_recursive(self, v: int, w: int) -> bool:
        """Lifting-property recursion with a memo table (no prefill)."""
        length, rmul = self.length, self.rmul
        memo = self._bruhat_memo
        n = self.order

        def leq(v: int, w: int) -> bool:
            if v == 0:
                return True
            if length[v] > length[w]:
                return False
            if length[v] == length[w]:
                return v == w
            key = v * n + w
            hit = memo.get(key)
            if hit is not None:
                return hit
            s = min(self.right_descent_sets[w])
            ws, vs = rmul[w][s], rmul[v][s]
            if length[vs] < length[v]:
                res = leq(vs, ws)
            else:
                res = leq(v, ws) or leq(vs, ws)
            memo[key] = res  # idempotent write
            return res

        return leq(v, w)

    def bruhat_subword_oracle(self, v: int, w: int) -> bool:
        """Exhaustive subword search on the ShortLex word of ``w``. Exponential."""
        word = self.words[w]
        target_len = self.length[v]
        for mask in product((0, 1), repeat=len(word)):
            if sum(mask) != target_len:
                continue
            x = 0
            for bit, s in zip(mask, word):
                if bit:
                    x = self.rmul[x][s]
            if x == v and self.length[x] == target_len:
                return True
        return False


def enumerate_group(datum: CartanDatum, max_order: int = 10**6) -> WeylGroup:
    return WeylGroup(datum, max_order=max_order)


def bruhat_leq(W: WeylGroup, v: int, w: int) -> bool:
    return W.bruhat_leq(v, w)


def bruhat_subword_oracle(W: WeylGroup, v: int, w: int) -> bool:
    return W.bruhat_subword_oracle(v, w)
