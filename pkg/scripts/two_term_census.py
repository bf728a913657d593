"""List ordinary KL entries with more than one term, e.g. for A3 or B3."""

import sys

from wkl.klcore import compute_ordinary_kl
from wkl.rootsys import WeylGroup, parse_cartan


def word(W, w):
    return "".join(f"s{s + 1}" for s in W.words[w]) or "e"


def main(name="A3"):
    W = WeylGroup(parse_cartan(name))
    T = compute_ordinary_kl(W)
    rows = [(w, v, p) for w, v, p in T.entries() if len(p.terms) > 1]
    for w, v, p in rows:
        print(f"P({word(W, w)}, {word(W, v)}) = {p}")
    print(f"{name}: {len(rows)} entries with two or more terms out of {sum(len(r) for r in T.phi)} nonzero")


if __name__ == "__main__":
    main(*sys.argv[1:])
