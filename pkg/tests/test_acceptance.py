"""Acceptance criteria, one test each. Every test prints a single PASS/FAIL line.

All comparisons are exact. Runtime limits are checked against wall-clock time
of the work done inside the test.
"""

import resource
import sys
import time
from functools import lru_cache

import pytest

from conftest import all_thetas, el, group, quotient
from wkl.export import export_table
from wkl.klcore import compute_generalized_verma, compute_ordinary_kl, compute_whittaker_kl, multiplicities
from wkl.laurent import ONE, Q as q, ZERO, LaurentPoly
from wkl.quotient import build_quotient
from wkl.rootsys import WeylGroup, parse_cartan
from wkl.verify import (
    ALL_CHECKS,
    check_certificate,
    check_duality_formula,
    check_gverma_consistency,
    check_inversion,
    check_selfduality,
    check_structural,
    check_uniqueness,
)
from wkl.heckemod import is_self_dual

SWEEP3 = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"]
SWEEP6 = ["A1", "A2", "A3", "B2", "B3", "G2"]


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            sys.stdout.write(f"\nCRITERION {n}: {'PASS' if ok else 'FAIL'} {detail}\n")
        assert ok, detail
    return emit


@lru_cache(maxsize=None)
def whittaker(name, theta):
    return compute_whittaker_kl(quotient(name, theta))


@lru_cache(maxsize=None)
def gverma(name, theta):
    return compute_generalized_verma(quotient(name, theta))


def sweep(names):
    return [(n, th) for n in names for th in all_thetas(group(n).rank)]


def test_c1_full_theta(report):
    t0 = time.perf_counter()
    bad = []
    for name in ["A1", "A2", "A3", "B2", "B3", "C3", "G2"]:
        W = WeylGroup(parse_cartan(name))
        T = compute_whittaker_kl(build_quotient(W, range(W.rank)))
        if T.phi != [{0: ONE}] or multiplicities(T).mu != [[1]]:
            bad.append(name)
    dt = time.perf_counter() - t0
    report(1, not bad and dt < 1.0, f"theta=all gives [1] and mu=[1] on rank<=3 types; failures={bad} ({dt:.3f}s < 1s)")


def test_c2_a2_theta1(report):
    t0 = time.perf_counter()
    Qt = build_quotient(WeylGroup(parse_cartan("A2")), (0,))
    T = compute_whittaker_kl(Qt)
    mu = multiplicities(T).mu
    ok = (T.P(1, 0) == q and T.P(2, 1) == q and T.P(2, 0) == ZERO
          and all(mu[i + 1][i] == 1 for i in range(2))
          and all(is_self_dual(Qt, T.phi_element(c)) for c in range(3)))
    dt = time.perf_counter() - t0
    report(2, ok and dt < 1.0,
           f"A2 theta=1: P10={T.P(1, 0)} P21={T.P(2, 1)} P20={T.P(2, 0)} mu={mu} ({dt:.3f}s < 1s)")


def test_c3_structural(report):
    t0 = time.perf_counter()
    bad = [(n, th) for n, th in sweep(SWEEP3) if not check_structural(whittaker(n, th)).passed]
    dt = time.perf_counter() - t0
    report(3, not bad and dt < 30, f"structural suite on {len(sweep(SWEEP3))} (type, theta); failures={bad} ({dt:.2f}s < 30s)")


def test_c4_selfduality(report):
    cases = sweep(SWEEP3)
    tables = [whittaker(n, th) for n, th in cases]
    t0 = time.perf_counter()
    bad = [c for c, T in zip(cases, tables) if not check_selfduality(T).passed]
    dt = time.perf_counter() - t0
    report(4, not bad and dt < 60, f"every phi(C) bar-invariant on {len(cases)} cases; failures={bad} ({dt:.2f}s < 60s)")


def test_c5_uniqueness(report):
    bad = []
    for n, th in sweep(SWEEP3):
        Qt = quotient(n, th)
        a = export_table(whittaker(n, th))
        b = export_table(compute_whittaker_kl(Qt, largest_descent=True))
        if a != b or not check_uniqueness(whittaker(n, th)).passed:
            bad.append((n, th))
    report(5, not bad, f"largest-descent recursion byte-identical on {len(sweep(SWEEP3))} cases; failures={bad}")


def test_c6_duality_and_inversion(report):
    t0 = time.perf_counter()
    bad = []
    for n, th in sweep(SWEEP6):
        T = whittaker(n, th)
        O = compute_ordinary_kl(group(n))
        if not check_duality_formula(T, O).passed:
            bad.append(("duality", n, th))
        if not check_inversion(T, gverma(n, th)).passed:
            bad.append(("inversion", n, th))
    dt = time.perf_counter() - t0
    report(6, not bad and dt < 120, f"duality formula and inversion on {len(sweep(SWEEP6))} cases; failures={bad} ({dt:.2f}s < 120s)")


def test_c7_gverma(report):
    bad = [(n, th) for n, th in sweep(SWEEP6)
           if not check_gverma_consistency(gverma(n, th), compute_ordinary_kl(group(n))).passed]
    report(7, not bad, f"P'(C,D) = P(w^C, w^D) on {len(sweep(SWEEP6))} cases; failures={bad}")


def test_c8_ordinary(report):
    W = group("A2")
    T = compute_ordinary_kl(W)
    a2_ok = all(
        T.P(w, v) == (LaurentPoly.monomial(W.length[w] - W.length[v]) if W.bruhat_leq(v, w) else ZERO)
        for w in range(W.order) for v in range(W.order)
    )
    W3 = group("A3")
    T3 = compute_ordinary_kl(W3)
    two_term = [(w, v, p) for w, v, p in T3.entries() if len(p.terms) >= 2]
    w, v, p = two_term[0] if two_term else (None, None, None)
    witness = (f"w={''.join('s%d' % (s + 1) for s in W3.words[w])} v={''.join('s%d' % (s + 1) for s in W3.words[v]) or 'e'}"
               f" P={p}") if two_term else "none"
    ok = a2_ok and bool(two_term) and T3.P(el(W3, 2, 1, 3, 2), el(W3, 2)) == q ** 3 + q
    report(8, ok, f"A2 ordinary = q^(l(w)-l(v)): {a2_ok}; A3 two-term entries: {len(two_term)}, first {witness}")


@pytest.mark.slow
def test_c9_f4_scale(report):
    t0 = time.perf_counter()
    W = WeylGroup(parse_cartan("F4"))
    Qt = build_quotient(W, (0,))
    T = compute_whittaker_kl(Qt)
    multiplicities(T)
    checks = [check_structural(T), check_selfduality(T), check_uniqueness(T)]
    dt = time.perf_counter() - t0
    rss_gb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 2 ** 20
    ok = all(c.passed for c in checks) and dt < 600 and rss_gb < 4
    report(9, ok, f"F4 theta=1 ({len(Qt)} cosets): pipeline + structural/selfduality/uniqueness "
                  f"{dt:.1f}s < 600s, peak RSS {rss_gb:.2f} GB < 4 GB")


def test_c10_negative_controls(report):
    Qt = quotient("A2", (0,))
    T, G = compute_whittaker_kl(Qt), compute_generalized_verma(Qt)
    O = compute_ordinary_kl(group("A2"))

    def bump(table, c, d, extra):
        t = table.copy()
        t.phi[c][d] = t.P(c, d) + extra
        return t

    runs = {
        "structural": check_structural(bump(T, 1, 0, q ** 2)),
        "selfduality": check_selfduality(bump(T, 2, 1, q ** 3)),
        "certificate": check_certificate(bump(T, 2, 1, q ** 3)),
        "uniqueness": check_uniqueness(bump(T, 2, 1, q ** 3)),
        "duality": check_duality_formula(bump(T, 2, 0, q ** 2), O),
        "inversion": check_inversion(bump(T, 1, 0, q ** 3), G),
        "gverma": check_gverma_consistency(bump(G, 1, 0, q ** 3), O),
    }
    caught = []
    for name, rep in runs.items():
        res = rep.checks[name]
        payload = rep.to_json()[name]
        if not res.passed and payload["status"] == "fail" and payload.get("counterexample"):
            caught.append(name)
    ok = sorted(caught) == sorted(ALL_CHECKS)
    report(10, ok, f"corrupted tables rejected with counterexamples by {len(caught)}/{len(ALL_CHECKS)} checks")
