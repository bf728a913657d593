"""Cross-checks of computed tables against independent Hecke-algebra identities."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable

from .heckemod import _t_raw, is_self_dual, phi_to_N, antispherical_bar
from .klcore import GVERMA, WHITTAKER, KLTable, compute_generalized_verma, compute_whittaker_kl
from .laurent import ONE, ZERO, LaurentPoly
from .quotient import Move


@dataclass
class CheckResult:
    name: str
    passed: bool
    millis: float
    counterexample: dict | None = None
    violations: int = 0

    def to_json(self) -> dict:
        out = {"status": "pass" if self.passed else "fail", "millis": round(self.millis, 3)}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
            out["violations"] = self.violations
        return out


@dataclass
class VerificationReport:
    checks: dict[str, CheckResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        self.checks.update(other.checks)
        return self

    def to_json(self) -> dict:
        return {name: c.to_json() for name, c in self.checks.items()}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    def lines(self) -> list[str]:
        return [
            f"{name}: {'PASS' if c.passed else 'FAIL'} ({c.millis:.1f} ms)"
            + ("" if c.passed else f" {json.dumps(c.counterexample)}")
            for name, c in self.checks.items()
        ]


def _run(name: str, body: Callable[[], tuple[dict | None, int]]) -> VerificationReport:
    t0 = time.perf_counter()
    first, count = body()
    ms = (time.perf_counter() - t0) * 1000
    return VerificationReport({name: CheckResult(name, first is None, ms, first, count)})


def _words(Q, c):
    return {"coset": c, "max_word": [s + 1 for s in Q.W.words[Q.cosets[c].w_max]]}


def _poly_dict(terms: dict[int, LaurentPoly]) -> dict[str, str]:
    return {str(k): str(p) for k, p in sorted(terms.items())}


def check_structural(table: KLTable) -> VerificationReport:
    """Unit diagonal, support on D <= C, P in qZ[q] below the diagonal, parity, nonnegativity."""
    Q = table.quotient

    def body():
        first, count = None, 0

        def bad(kind, c, d, p):
            nonlocal first, count
            count += 1
            if first is None:
                first = {"violation": kind, "C": _words(Q, c), "D": _words(Q, d), "poly": str(p)}

        for c, row in enumerate(table.phi):
            if row.get(c) != ONE:
                bad("diagonal", c, c, row.get(c, ZERO))
            lc = Q.cosets[c].max_length
            for d, p in row.items():
                if d == c or not p:
                    continue
                if not Q.coset_leq(d, c):
                    bad("triangularity", c, d, p)
                if not p.in_qZq():
                    bad("qZ[q]", c, d, p)
                if not p.parity_check(lc - Q.cosets[d].max_length):
                    bad("parity", c, d, p)
                if table.kind == WHITTAKER and any(v < 0 for _, v in p.terms):
                    bad("nonnegativity", c, d, p)
        return first, count

    return _run("structural", body)


def check_selfduality(table: KLTable, method: str = "recursive") -> VerificationReport:
    """Every phi(C) is fixed by the bar involution of N^Theta."""
    Q = table.quotient

    def body():
        first, count = None, 0
        for c in range(len(table)):
            x = table.phi_element(c)
            if not is_self_dual(Q, x, method):
                count += 1
                if first is None:
                    image = antispherical_bar(Q, phi_to_N(Q, x), method)
                    first = {"C": _words(Q, c), "phi": _poly_dict(x.terms), "bar": _poly_dict(image.terms)}
        return first, count

    return _run("selfduality", body)


def reconstruct_certificate(table: KLTable, c: int, s: int) -> dict[int, int] | None:
    """Integers c_D with T(phi(C s)) = phi(C) + sum_{D<C} c_D phi(D), or None if none exist.

    Peels off the top remaining coset each step; phi(D) has 1 at D and only
    lower cosets below it, so the coefficient there must be an integer constant.
    """
    Q = table.quotient
    below = Q.actions[c][s].target
    rest: dict[int, LaurentPoly] = dict(_t_raw(Q, table.phi[below], s, table.kind == WHITTAKER))
    for e, p in table.phi[c].items():
        rest[e] = rest.get(e, ZERO) - p
    coeffs: dict[int, int] = {}
    while True:
        rest = {e: p for e, p in rest.items() if p}
        if not rest:
            return coeffs
        top = max(rest)
        p = rest[top]
        if top >= c or p.terms[0][0] != 0 or len(p.terms) != 1:
            return None
        k = p.terms[0][1]
        coeffs[top] = k
        for e, r in table.phi[top].items():
            rest[e] = rest.get(e, ZERO) - r.scalar_mul(k)


def check_certificate(table: KLTable) -> VerificationReport:
    """For every C and every descent alpha, T(phi(C s)) is phi(C) plus an integer
    combination of lower phi(D); recorded coefficients must match the reconstruction."""
    Q = table.quotient

    def body():
        first, count = None, 0
        for c in range(1, len(table)):
            for s in range(Q.W.rank):
                if Q.actions[c][s].move is not Move.DOWN:
                    continue
                got = reconstruct_certificate(table, c, s)
                recorded = None
                if table.certificates and table.descents and table.descents[c] == s:
                    recorded = table.certificates[c]
                if got is None or (recorded is not None and got != recorded):
                    count += 1
                    if first is None:
                        first = {"C": _words(Q, c), "alpha": s + 1, "reconstructed": got, "recorded": recorded}
        return first, count

    return _run("certificate", body)


def check_uniqueness(table: KLTable) -> VerificationReport:
    """Recompute with the largest-index descent and compare every polynomial."""
    Q = table.quotient
    compute = compute_whittaker_kl if table.kind == WHITTAKER else compute_generalized_verma

    def body():
        other = compute(Q, largest_descent=True)
        first, count = None, 0
        for c in range(len(table)):
            if table.phi[c] != other.phi[c]:
                count += 1
                if first is None:
                    first = {"C": _words(Q, c), "smallest": _poly_dict(table.phi[c]),
                             "largest": _poly_dict(other.phi[c])}
        return first, count

    return _run("uniqueness", body)


def check_duality_formula(whittaker: KLTable, ordinary: KLTable) -> VerificationReport:
    """P_CD = sum over v in W_Theta of (-q)^l(v) P_{w_C, v w_D}, over all pairs (C, D)."""
    Q = whittaker.quotient
    W = Q.W
    if ordinary.quotient.W is not W or ordinary.quotient.theta:
        raise ValueError("the ordinary table must come from the Theta = empty quotient of the same group")
    wt = Q.theta_elements()

    def body():
        first, count = None, 0
        for c in range(len(Q)):
            x = Q.cosets[c].w_min
            row = ordinary.phi[x]
            for d in range(len(Q)):
                y = Q.cosets[d].w_min
                acc: dict[int, int] = {}
                for v in wt:
                    p = row.get(W.mul(v, y))
                    if p is None:
                        continue
                    k = W.length[v]
                    for e, a in p.terms:
                        acc[e + k] = acc.get(e + k, 0) + a * (-1) ** k
                rhs = LaurentPoly(acc)
                lhs = whittaker.P(c, d)
                if lhs != rhs:
                    count += 1
                    if first is None:
                        first = {"C": _words(Q, c), "D": _words(Q, d), "P": str(lhs), "sum": str(rhs)}
        return first, count

    return _run("duality", body)


def inversion_matrix(whittaker: KLTable) -> list[dict[int, LaurentPoly]]:
    """Rows of Q with Q_CD = (-1)^(l(w^C)+l(w^D)) P(coset(w^D w0), coset(w^C w0))."""
    Q = whittaker.quotient
    W = Q.W
    w0 = W.longest_element
    flip = [Q.member_coset[W.mul(c.w_max, w0)] for c in Q.cosets]
    rows: list[dict[int, LaurentPoly]] = [{} for _ in range(len(Q))]
    # P(D', C') nonzero with D' = flip(D), C' = flip(C)
    inv = {f: c for c, f in enumerate(flip)}
    for dp, row in enumerate(whittaker.phi):
        d = inv[dp]
        for cp, p in row.items():
            c = inv[cp]
            sign = (-1) ** (Q.cosets[c].max_length + Q.cosets[d].max_length)
            rows[c][d] = p.scalar_mul(sign)
    return rows


def check_inversion(whittaker: KLTable, gverma: KLTable) -> VerificationReport:
    """(P' matrix) . (Q matrix) = identity over Z[q, q^-1]."""
    Q = whittaker.quotient
    if gverma.quotient.W is not Q.W or gverma.quotient.theta != Q.theta:
        raise ValueError("both tables must be built on the same quotient")

    def body():
        qrows = inversion_matrix(whittaker)
        first, count = None, 0
        for c in range(len(Q)):
            acc: dict[int, dict[int, int]] = {}
            for e, p in gverma.phi[c].items():
                for d, r in qrows[e].items():
                    slot = acc.setdefault(d, {})
                    for k, v in (p * r).terms:
                        slot[k] = slot.get(k, 0) + v
            for d in range(len(Q)):
                got = LaurentPoly(acc.get(d, {}))
                want = ONE if c == d else ZERO
                if got != want:
                    count += 1
                    if first is None:
                        first = {"C": _words(Q, c), "D": _words(Q, d), "product": str(got), "expected": str(want)}
        return first, count

    return _run("inversion", body)


def check_gverma_consistency(gverma: KLTable, ordinary: KLTable) -> VerificationReport:
    """P'(C, D) equals the ordinary P(w^C, w^D) for every pair."""
    Q = gverma.quotient

    def body():
        first, count = None, 0
        for c in range(len(Q)):
            row = ordinary.phi[Q.cosets[c].w_max]
            for d in range(len(Q)):
                want = row.get(Q.cosets[d].w_max, ZERO)
                if gverma.P(c, d) != want:
                    count += 1
                    if first is None:
                        first = {"C": _words(Q, c), "D": _words(Q, d), "gverma": str(gverma.P(c, d)),
                                 "ordinary": str(want)}
        return first, count

    return _run("gverma", body)


ALL_CHECKS = ("structural", "selfduality", "certificate", "uniqueness", "duality", "inversion", "gverma")


def run_checks(whittaker: KLTable, checks=ALL_CHECKS, ordinary: KLTable | None = None,
               gverma: KLTable | None = None) -> VerificationReport:
    """Run the named checks; the ordinary and gverma tables are computed on demand."""
    from .klcore import compute_ordinary_kl

    Q = whittaker.quotient
    report = VerificationReport()
    unknown = set(checks) - set(ALL_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    if ordinary is None and {"duality", "gverma"} & set(checks):
        ordinary = compute_ordinary_kl(Q.W)
    if gverma is None and {"inversion", "gverma"} & set(checks):
        gverma = compute_generalized_verma(Q)
    for name in checks:
        if name == "structural":
            report.merge(check_structural(whittaker))
        elif name == "selfduality":
            report.merge(check_selfduality(whittaker))
        elif name == "certificate":
            report.merge(check_certificate(whittaker))
        elif name == "uniqueness":
            report.merge(check_uniqueness(whittaker))
        elif name == "duality":
            report.merge(check_duality_formula(whittaker, ordinary))
        elif name == "inversion":
            report.merge(check_inversion(whittaker, gverma))
        elif name == "gverma":
            report.merge(check_gverma_consistency(gverma, ordinary))
    return report
