"""Whittaker Kazhdan-Lusztig polynomials, their Theta = empty specialization,
the generalized-Verma variant and the composition-multiplicity matrices.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .heckemod import DELTA, AntisphericalElement, _t_raw
from .laurent import ONE, ZERO, LaurentPoly
from .quotient import ParabolicQuotient, build_quotient
from .rootsys import WeylGroup

log = logging.getLogger(__name__)

WHITTAKER = "whittaker"
GVERMA = "gverma"


class KLRecursionError(AssertionError):
    """The recursion produced an entry that a correct implementation never produces."""


@dataclass
class KLTable:
    quotient: ParabolicQuotient
    phi: list[dict[int, LaurentPoly]]
    kind: str = WHITTAKER
    descents: list[int | None] = field(default_factory=list)
    # c_D for D < C in  T(phi(C s)) = phi(C) + sum c_D phi(D)
    certificates: list[dict[int, int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.phi)

    def P(self, c: int, d: int) -> LaurentPoly:
        return self.phi[c].get(d, ZERO)

    def phi_element(self, c: int) -> AntisphericalElement:
        return AntisphericalElement(self.phi[c], DELTA)

    def entries(self):
        """Nonzero (c, d, P_cd), sorted by c then d."""
        for c, row in enumerate(self.phi):
            for d in sorted(row):
                yield c, d, row[d]

    def negative_certificates(self) -> list[tuple[int, int, int]]:
        return [(c, d, v) for c, cert in enumerate(self.certificates) for d, v in cert.items() if v < 0]

    def copy(self) -> "KLTable":
        return KLTable(self.quotient, [dict(r) for r in self.phi], self.kind,
                       list(self.descents), [dict(r) for r in self.certificates])


def _recursion(Q: ParabolicQuotient, whittaker: bool, largest: bool) -> KLTable:
    n = len(Q)
    phi: list[dict[int, LaurentPoly] | None] = [None] * n
    descents: list[int | None] = [None] * n
    certs: list[dict[int, int]] = [{} for _ in range(n)]
    phi[0] = {0: ONE}
    # every phi(C) only reads phi(D) from strictly lower layers
    for layer in Q.layers()[1:]:
        for c in layer:
            s = Q.descent_generator(c, largest=largest)
            if s is None:
                raise KLRecursionError(f"coset {c} above the minimum has no descent")
            below = Q.actions[c][s].target
            descents[c] = s
            acc: dict[int, dict[int, int]] = {}
            for d, p in _t_raw(Q, phi[below], s, whittaker).items():
                acc[d] = dict(p.terms)
            for d in sorted(acc, reverse=True):
                if d == c:
                    continue
                c0 = acc[d].get(0, 0)
                if not c0:
                    continue
                certs[c][d] = c0
                for e, p in phi[d].items():
                    slot = acc.get(e)
                    if slot is None:
                        slot = acc[e] = {}
                    for k, v in p.terms:
                        slot[k] = slot.get(k, 0) - c0 * v
            row = {}
            for d, coeffs in acc.items():
                p = LaurentPoly._from_dict(coeffs)
                if p:
                    row[d] = p
            if row.get(c) != ONE:
                raise KLRecursionError(
                    f"coefficient of delta_C is {row.get(c, ZERO)} (C={c}, alpha={s}), expected 1"
                )
            for d, p in row.items():
                if d != c and not p.in_qZq():
                    raise KLRecursionError(f"P(C={c}, D={d}) = {p} not in qZ[q] (alpha={s})")
                if d > c:
                    raise KLRecursionError(f"P(C={c}, D={d}) nonzero above the diagonal (alpha={s})")
            phi[c] = row
    table = KLTable(Q, phi, WHITTAKER if whittaker else GVERMA, descents, certs)
    neg = table.negative_certificates()
    if neg and whittaker:
        log.info("negative recursion coefficients observed: %s", neg[:5])
    return table


def compute_whittaker_kl(Q: ParabolicQuotient, largest_descent: bool = False) -> KLTable:
    return _recursion(Q, whittaker=True, largest=largest_descent)


def compute_generalized_verma(Q: ParabolicQuotient, largest_descent: bool = False) -> KLTable:
    return _recursion(Q, whittaker=False, largest=largest_descent)


def compute_ordinary_kl(W: WeylGroup, largest_descent: bool = False) -> KLTable:
    """Theta = empty: coset indices are group element handles."""
    Q = getattr(W, "_empty_quotient", None)
    if Q is None:
        Q = W._empty_quotient = build_quotient(W, ())
    return compute_whittaker_kl(Q, largest_descent)


@dataclass
class MultiplicityMatrix:
    lam: list[list[int]]
    mu: list[list[int]]

    def __len__(self) -> int:
        return len(self.lam)


def unitriangular_inverse(lam: list[list[int]]) -> list[list[int]]:
    """Exact inverse of a lower unitriangular integer matrix by forward substitution."""
    n = len(lam)
    for i in range(n):
        if lam[i][i] != 1 or any(lam[i][j] for j in range(i + 1, n)):
            raise ValueError(f"row {i} is not lower unitriangular")
    rows: list[dict[int, int]] = []
    for i in range(n):
        row = {i: 1}
        for k in range(i):
            a = lam[i][k]
            if a:
                for j, v in rows[k].items():
                    row[j] = row.get(j, 0) - a * v
        rows.append({j: v for j, v in row.items() if v})
    out = [[0] * n for _ in range(n)]
    for i, row in enumerate(rows):
        for j, v in row.items():
            out[i][j] = v
    return out


def multiplicities(table: KLTable) -> MultiplicityMatrix:
    if table.kind != WHITTAKER:
        raise ValueError("multiplicities are defined for Whittaker tables")
    n = len(table)
    lam = [[0] * n for _ in range(n)]
    for c, d, p in table.entries():
        lam[c][d] = p.eval_int(-1)
    return MultiplicityMatrix(lam, unitriangular_inverse(lam))
