"""Independent reference computations used only by the tests."""

from __future__ import annotations

from functools import lru_cache

from wkl.laurent import LaurentPoly


def classical_kl(W) -> dict[tuple[int, int], dict[int, int]]:
    """Classical KL polynomials P_{x,w}(t) via the mu-recursion, as {(x, w): {deg: coeff}}.

    For s a left descent of w and v = s w:
      P_{x,w} = t^(1-c) P_{sx,v} + t^c P_{x,v} - sum_{z < v, sz < z} mu(z,v) t^((l(w)-l(z))/2) P_{x,z}
    with c = 1 if sx < x else 0.
    """
    n = W.order
    L = W.length
    leq = W.bruhat_subword_oracle if n <= 48 else W.bruhat_leq_recursive
    P: dict[tuple[int, int], dict[int, int]] = {}

    def get(x, w):
        return P.get((x, w), {})

    def add(acc, poly, shift, scale):
        for d, c in poly.items():
            acc[d + shift] = acc.get(d + shift, 0) + scale * c

    def mu(z, v):
        k = (L[v] - L[z] - 1)
        if k % 2:
            return 0
        return get(z, v).get(k // 2, 0)

    for w in range(n):
        if w == 0:
            P[(0, 0)] = {0: 1}
            continue
        s = min(W.left_descents(w))
        v = W.lmul[w][s]
        zs = [z for z in range(n) if L[z] < L[v] and W.lmul[z][s] < z and leq(z, v) and mu(z, v)]
        for x in range(n):
            if not leq(x, w):
                continue
            sx = W.lmul[x][s]
            c = 1 if L[sx] < L[x] else 0
            acc: dict[int, int] = {}
            add(acc, get(sx, v), 1 - c, 1)
            add(acc, get(x, v), c, 1)
            for z in zs:
                add(acc, get(x, z), (L[w] - L[z]) // 2, -mu(z, v))
            P[(x, w)] = {d: c for d, c in acc.items() if c}
    return P


def classical_to_here(poly: dict[int, int], lw: int, lx: int) -> LaurentPoly:
    """Classical P_{x,w}(t) -> q^(l(w)-l(x)) P_{x,w}(q^-2)."""
    return LaurentPoly({lw - lx - 2 * d: c for d, c in poly.items()})
