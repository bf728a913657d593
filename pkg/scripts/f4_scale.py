"""Timing and memory for the full pipeline on F4 (or another type).

    python3 scripts/f4_scale.py --theta 1
    python3 scripts/f4_scale.py --theta none --skip-selfduality    # ordinary F4 table
"""

import argparse
import resource
import time
from dataclasses import dataclass

from wkl.klcore import compute_whittaker_kl, multiplicities
from wkl.quotient import build_quotient, parse_theta
from wkl.rootsys import WeylGroup, parse_cartan
from wkl.verify import check_selfduality, check_structural, check_uniqueness


@dataclass
class ScaleConfig:
    cartan: str = "F4"
    theta: str = "1"
    selfduality: bool = True


def stage(label, fn):
    t0 = time.perf_counter()
    out = fn()
    rss = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 2 ** 10
    print(f"{label:14} {time.perf_counter() - t0:8.2f}s   peak rss {rss:8.1f} MB")
    return out


def run(cfg: ScaleConfig) -> None:
    W = stage("enumerate", lambda: WeylGroup(parse_cartan(cfg.cartan)))
    Q = stage("quotient", lambda: build_quotient(W, parse_theta(cfg.theta, W.rank)))
    T = stage("recursion", lambda: compute_whittaker_kl(Q))
    stage("multiplicity", lambda: multiplicities(T))
    print(f"{cfg.cartan} theta={cfg.theta}: {len(Q)} cosets, {sum(len(r) for r in T.phi)} nonzero entries, "
          f"max coefficient {max(c for r in T.phi for p in r.values() for _, c in p.terms)}")
    checks = [("structural", check_structural), ("uniqueness", check_uniqueness)]
    if cfg.selfduality:
        checks.insert(1, ("selfduality", check_selfduality))
    for name, fn in checks:
        rep = stage(name, lambda: fn(T))
        print(f"  -> {'pass' if rep.passed else 'FAIL'}")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--cartan", default="F4")
    p.add_argument("--theta", default="1")
    p.add_argument("--skip-selfduality", action="store_true")
    a = p.parse_args()
    run(ScaleConfig(a.cartan, a.theta, not a.skip_selfduality))


if __name__ == "__main__":
    main()
