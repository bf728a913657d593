"""Hecke algebra, the antispherical module N^Theta and the delta-module H_Theta.

Conventions: the quadratic relation is ``(H_s + q)(H_s - q^-1) = 0`` and the
bar involution sends ``q -> q^-1``, ``H_w -> (H_{w^-1})^-1``. ``C_s = H_s + q``
is self-dual.

Module elements are sparse maps index -> LaurentPoly. H_Theta elements use
the delta basis indexed by cosets; N^Theta elements use the basis N_m over
minimal coset representatives, also indexed by coset.
"""

from __future__ import annotations

from typing import Iterator, Mapping

from .laurent import ONE, ZERO, LaurentPoly
from .quotient import Move, ParabolicQuotient
from .rootsys import WeylGroup

Q1 = LaurentPoly.monomial(1)
QM1 = LaurentPoly.monomial(-1)
Q_MINUS_QINV = LaurentPoly({1: 1, -1: -1})
QINV_MINUS_Q = LaurentPoly({1: -1, -1: 1})
Q_PLUS_QINV = LaurentPoly({1: 1, -1: 1})

DELTA = "delta"
NBASIS = "N"


def _accumulate(acc: dict[int, dict[int, int]], key: int, p: LaurentPoly, shift: int = 0, scale: int = 1):
    slot = acc.get(key)
    if slot is None:
        slot = acc[key] = {}
    for e, c in p.terms:
        e += shift
        slot[e] = slot.get(e, 0) + c * scale


def _freeze(acc: dict[int, dict[int, int]]) -> dict[int, LaurentPoly]:
    out = {}
    for k, coeffs in acc.items():
        p = LaurentPoly._from_dict(coeffs)
        if p:
            out[k] = p
    return out


class SparseVector:
    """Finitely supported map index -> LaurentPoly; zero entries are dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, LaurentPoly] | None = None):
        self.terms = {k: p for k, p in (terms or {}).items() if p}

    def _new(self, terms):
        return type(self)(terms)

    def _compatible(self, other) -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")

    def __getitem__(self, k: int) -> LaurentPoly:
        return self.terms.get(k, ZERO)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.terms))

    def items(self):
        return sorted(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other):
        self._compatible(other)
        acc: dict[int, dict[int, int]] = {}
        for k, p in self.terms.items():
            _accumulate(acc, k, p)
        for k, p in other.terms.items():
            _accumulate(acc, k, p)
        return self._new(_freeze(acc))

    def __neg__(self):
        return self._new({k: -p for k, p in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: LaurentPoly | int):
        if isinstance(c, int):
            c = LaurentPoly.constant(c)
        return self._new({k: p * c for k, p in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and self.terms == other.terms

    def __repr__(self) -> str:
        body = " + ".join(f"({p})*[{k}]" for k, p in self.items()) or "0"
        return f"{type(self).__name__}({body})"


class HeckeElement(SparseVector):
    """Coordinates in the standard basis {H_w}, keyed by group element handle."""

    @classmethod
    def basis(cls, w: int) -> "HeckeElement":
        return cls({w: ONE})


class AntisphericalElement(SparseVector):
    """Coset-indexed vector; ``basis`` is DELTA (H_Theta) or NBASIS (N^Theta)."""

    __slots__ = ("basis",)

    def __init__(self, terms=None, basis: str = DELTA):
        super().__init__(terms)
        if basis not in (DELTA, NBASIS):
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis

    def _new(self, terms):
        return AntisphericalElement(terms, self.basis)

    def _compatible(self, other) -> None:
        super()._compatible(other)
        if other.basis != self.basis:
            raise ValueError(f"cannot combine {self.basis}-basis and {other.basis}-basis elements")

    def __eq__(self, other) -> bool:
        return super().__eq__(other) and self.basis == other.basis

    @classmethod
    def delta(cls, c: int) -> "AntisphericalElement":
        return cls({c: ONE}, DELTA)

    @classmethod
    def N(cls, c: int) -> "AntisphericalElement":
        return cls({c: ONE}, NBASIS)


def _require(x: AntisphericalElement, basis: str) -> None:
    if not isinstance(x, AntisphericalElement) or x.basis != basis:
        got = getattr(x, "basis", type(x).__name__)
        raise ValueError(f"expected a {basis}-basis element, got {got}")


# ---------------------------------------------------------------------------
# Hecke algebra


class HeckeAlgebra:
    def __init__(self, W: WeylGroup):
        self.W = W
        self._bar_basis: dict[int, HeckeElement] = {0: HeckeElement.basis(0)}

    def H(self, w: int) -> HeckeElement:
        return HeckeElement.basis(w)

    def C(self, s: int) -> HeckeElement:
        return HeckeElement({self.W.from_word([s]): ONE, 0: Q1})

    def mul_gen(self, x: HeckeElement, s: int, side: str = "right") -> HeckeElement:
        """``x * H_s`` (side="right") or ``H_s * x`` (side="left")."""
        W = self.W
        table = W.rmul if side == "right" else W.lmul
        if side not in ("right", "left"):
            raise ValueError(f"side must be 'right' or 'left', got {side!r}")
        acc: dict[int, dict[int, int]] = {}
        for w, p in x.terms.items():
            ws = table[w][s]
            _accumulate(acc, ws, p)
            if W.length[ws] < W.length[w]:
                _accumulate(acc, w, p, shift=-1)
                _accumulate(acc, w, p, shift=1, scale=-1)
        return HeckeElement(_freeze(acc))

    def mul_word(self, x: HeckeElement, word, side: str = "right") -> HeckeElement:
        for s in word:
            x = self.mul_gen(x, s, side)
        return x

    def mul(self, x: HeckeElement, y: HeckeElement) -> HeckeElement:
        out = HeckeElement()
        for w, p in y.terms.items():
            out = out + self.mul_word(x, self.W.words[w]).scale(p)
        return out

    def bar_basis(self, w: int) -> HeckeElement:
        """bar(H_w), built along the ShortLex word: bar(X H_s) = bar(X)(H_s + q - q^-1)."""
        hit = self._bar_basis.get(w)
        if hit is not None:
            return hit
        word = self.W.words[w]
        s = word[-1]
        u = self.W.rmul[w][s]
        bu = self.bar_basis(u)
        res = self.mul_gen(bu, s) + bu.scale(Q_MINUS_QINV)
        self._bar_basis[w] = res
        return res

    def bar(self, x: HeckeElement) -> HeckeElement:
        acc: dict[int, dict[int, int]] = {}
        for w, p in x.terms.items():
            pb = p.bar()
            for v, r in self.bar_basis(w).terms.items():
                _accumulate(acc, v, pb * r)
        return HeckeElement(_freeze(acc))


def hecke_algebra(W: WeylGroup) -> HeckeAlgebra:
    # one instance per group so the bar memo is shared
    alg = getattr(W, "_hecke", None)
    if alg is None:
        alg = W._hecke = HeckeAlgebra(W)
    return alg


def hecke_mul_gen(W: WeylGroup, x: HeckeElement, s: int, side: str = "right") -> HeckeElement:
    return hecke_algebra(W).mul_gen(x, s, side)


def hecke_bar(W: WeylGroup, x: HeckeElement) -> HeckeElement:
    return hecke_algebra(W).bar(x)


# ---------------------------------------------------------------------------
# H_Theta in the delta basis


def t_alpha(Q: ParabolicQuotient, x: AntisphericalElement, s: int) -> AntisphericalElement:
    """Whittaker operator: Equal -> 0, Up -> q d_C + d_Cs, Down -> q^-1 d_C + d_Cs."""
    _require(x, DELTA)
    return AntisphericalElement(_t_raw(Q, x.terms, s, whittaker=True), DELTA)


def t_alpha_empty(Q: ParabolicQuotient, x: AntisphericalElement, s: int) -> AntisphericalElement:
    """Restriction of T^empty_alpha to the embedded H_Theta.

    Equal -> (q + q^-1) d_C, Up -> q d_C + d_Cs, Down -> q^-1 d_C + d_Cs.
    """
    _require(x, DELTA)
    return AntisphericalElement(_t_raw(Q, x.terms, s, whittaker=False), DELTA)


def _t_raw(Q: ParabolicQuotient, terms: Mapping[int, LaurentPoly], s: int, whittaker: bool) -> dict[int, LaurentPoly]:
    acc: dict[int, dict[int, int]] = {}
    actions = Q.actions
    for c, p in terms.items():
        move, d = actions[c][s]
        if move is Move.EQUAL:
            if not whittaker:
                _accumulate(acc, c, p, shift=1)
                _accumulate(acc, c, p, shift=-1)
            continue
        _accumulate(acc, c, p, shift=1 if move is Move.UP else -1)
        _accumulate(acc, d, p)
    return _freeze(acc)


def t_empty_on_group(W: WeylGroup, x: AntisphericalElement, s: int) -> AntisphericalElement:
    """T^empty_alpha on H_empty, indexed by group elements: q d_w + d_ws if ws > w, else q^-1 d_w + d_ws."""
    _require(x, DELTA)
    acc: dict[int, dict[int, int]] = {}
    for w, p in x.terms.items():
        ws = W.rmul[w][s]
        _accumulate(acc, w, p, shift=1 if W.length[ws] > W.length[w] else -1)
        _accumulate(acc, ws, p)
    return AntisphericalElement(_freeze(acc), DELTA)


def embed(Q: ParabolicQuotient, x: AntisphericalElement) -> AntisphericalElement:
    """d_C -> sum over v in W_Theta of q^l(v) d_{v w^C}; result is indexed by group element.

    Group handles coincide with coset indices of the Theta = empty quotient.
    """
    _require(x, DELTA)
    W = Q.W
    wt = Q.theta_elements()
    acc: dict[int, dict[int, int]] = {}
    for c, p in x.terms.items():
        wmax = Q.cosets[c].w_max
        for v in wt:
            _accumulate(acc, W.mul(v, wmax), p, shift=W.length[v])
    return AntisphericalElement(_freeze(acc), DELTA)


# ---------------------------------------------------------------------------
# N^Theta


def project_to_antispherical(Q: ParabolicQuotient, h: HeckeElement) -> AntisphericalElement:
    """1 (x) H_u = (-q)^l(t) N_m for u = t m, t in W_Theta, m minimal in its coset."""
    W = Q.W
    acc: dict[int, dict[int, int]] = {}
    for u, p in h.terms.items():
        c = Q.member_coset[u]
        k = W.length[u] - W.length[Q.cosets[c].w_min]
        _accumulate(acc, c, p, shift=k, scale=(-1) ** k)
    return AntisphericalElement(_freeze(acc), NBASIS)


def phi_to_N(Q: ParabolicQuotient, x: AntisphericalElement) -> AntisphericalElement:
    """d_C -> N_{w_Theta w^C} = N_{w_C}: a relabeling of the basis."""
    _require(x, DELTA)
    return AntisphericalElement(dict(x.terms), NBASIS)


def N_to_phi(Q: ParabolicQuotient, x: AntisphericalElement) -> AntisphericalElement:
    _require(x, NBASIS)
    return AntisphericalElement(dict(x.terms), DELTA)


def _n_step(Q: ParabolicQuotient, c: int, s: int) -> tuple[str, int]:
    # classify w s for w = w_C using the group data only
    W = Q.W
    w = Q.cosets[c].w_min
    ws = W.rmul[w][s]
    d = Q.member_coset[ws]
    if d == c:
        return "same", c
    if Q.cosets[d].w_min != ws:
        raise AssertionError(f"w_C s is not minimal in its coset (C={c}, s={s})")
    return ("up" if W.length[ws] > W.length[w] else "down"), d


def n_act_cs(Q: ParabolicQuotient, x: AntisphericalElement, s: int) -> AntisphericalElement:
    """Right action of C_s = H_s + q on N^Theta."""
    _require(x, NBASIS)
    acc: dict[int, dict[int, int]] = {}
    for c, p in x.terms.items():
        kind, d = _n_step(Q, c, s)
        if kind == "same":
            continue
        _accumulate(acc, c, p, shift=1 if kind == "up" else -1)
        _accumulate(acc, d, p)
    return AntisphericalElement(_freeze(acc), NBASIS)


def n_act_hs(Q: ParabolicQuotient, x: AntisphericalElement, s: int) -> AntisphericalElement:
    """Right action of H_s on N^Theta."""
    _require(x, NBASIS)
    acc: dict[int, dict[int, int]] = {}
    for c, p in x.terms.items():
        kind, d = _n_step(Q, c, s)
        if kind == "same":
            _accumulate(acc, c, p, shift=1, scale=-1)
        elif kind == "up":
            _accumulate(acc, d, p)
        else:
            _accumulate(acc, d, p)
            _accumulate(acc, c, p, shift=-1)
            _accumulate(acc, c, p, shift=1, scale=-1)
    return AntisphericalElement(_freeze(acc), NBASIS)


def _bar_N_table(Q: ParabolicQuotient, method: str) -> dict[int, dict[int, LaurentPoly]]:
    key = ("bar_N", method)
    table = Q.cache.get(key)
    if table is None:
        table = Q.cache[key] = {Q.base: {Q.base: ONE}}
    return table


def bar_N(Q: ParabolicQuotient, c: int, method: str = "recursive") -> dict[int, LaurentPoly]:
    """bar(N_{w_C}) as a coset-indexed dict.

    ``recursive`` works inside N^Theta: with m = m' s reduced (m' is again
    minimal), bar(N_m) = bar(N_m') (H_s + q - q^-1). ``hecke`` projects
    bar(H_m) computed in the full Hecke algebra.
    """
    table = _bar_N_table(Q, method)
    hit = table.get(c)
    if hit is not None:
        return hit
    W = Q.W
    m = Q.cosets[c].w_min
    if method == "hecke":
        res = project_to_antispherical(Q, hecke_algebra(W).bar_basis(m)).terms
    elif method == "recursive":
        s = W.words[m][-1]
        prev = Q.member_coset[W.rmul[m][s]]
        bp = AntisphericalElement(bar_N(Q, prev, method), NBASIS)
        res = (n_act_hs(Q, bp, s) + bp.scale(Q_MINUS_QINV)).terms
    else:
        raise ValueError(f"unknown bar method {method!r}")
    table[c] = res
    return res


def antispherical_bar(Q: ParabolicQuotient, x: AntisphericalElement, method: str = "recursive") -> AntisphericalElement:
    _require(x, NBASIS)
    acc: dict[int, dict[int, int]] = {}
    for c, p in x.terms.items():
        pb = p.bar()
        for d, r in bar_N(Q, c, method).items():
            _accumulate(acc, d, pb * r)
    return AntisphericalElement(_freeze(acc), NBASIS)


def is_self_dual(Q: ParabolicQuotient, x: AntisphericalElement, method: str = "recursive") -> bool:
    _require(x, DELTA)
    n = phi_to_N(Q, x)
    return antispherical_bar(Q, n, method) == n
