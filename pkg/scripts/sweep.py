"""Run every verification check on every Theta for a list of types.

    python3 scripts/sweep.py                 # A1-A3, B2, B3, C3, G2, D4
    python3 scripts/sweep.py A4 B4 --checks structural,selfduality

Prints one line per (type, theta) and a summary; exits 1 on any failure.
"""

import argparse
import itertools
import sys
import time
from dataclasses import dataclass, field

from wkl.klcore import compute_ordinary_kl, compute_whittaker_kl
from wkl.quotient import build_quotient, format_theta
from wkl.rootsys import WeylGroup, parse_cartan
from wkl.verify import ALL_CHECKS, run_checks


@dataclass
class SweepConfig:
    types: list[str] = field(default_factory=lambda: ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4"])
    checks: tuple[str, ...] = ALL_CHECKS


def run(cfg: SweepConfig) -> int:
    failures = 0
    for name in cfg.types:
        t0 = time.perf_counter()
        W = WeylGroup(parse_cartan(name))
        ordinary = compute_ordinary_kl(W) if {"duality", "gverma"} & set(cfg.checks) else None
        for k in range(W.rank + 1):
            for theta in itertools.combinations(range(W.rank), k):
                t1 = time.perf_counter()
                T = compute_whittaker_kl(build_quotient(W, theta))
                rep = run_checks(T, cfg.checks, ordinary=ordinary)
                top = max((c for row in T.phi for p in row.values() for _, c in p.terms), default=1)
                status = "ok" if rep.passed else "FAIL"
                neg = len(T.negative_certificates())
                print(f"{name:3} theta={format_theta(theta, W.rank):8} cosets={len(T):5} "
                      f"max_coeff={top:3} neg_certs={neg} {status} {time.perf_counter() - t1:7.2f}s")
                if not rep.passed:
                    failures += 1
                    print("   " + "\n   ".join(rep.lines()))
        print(f"{name}: {time.perf_counter() - t0:.2f}s total")
    print(f"{failures} failing (type, theta) pairs")
    return 1 if failures else 0


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("types", nargs="*")
    p.add_argument("--checks", default="all")
    a = p.parse_args()
    cfg = SweepConfig()
    if a.types:
        cfg.types = a.types
    if a.checks != "all":
        cfg.checks = tuple(a.checks.split(","))
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
