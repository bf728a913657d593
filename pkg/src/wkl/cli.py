"""Command-line front end.

    wkl table  --cartan A2 --theta 1 --format json
    wkl kl     --cartan A3 --format csv
    wkl gverma --cartan B3 --theta 1,2
    wkl mult   --cartan A2 --theta 1 --format csv
    wkl verify --cartan A2 --theta none --checks all

Generators are numbered 1..rank following Bourbaki (see ``wkl.rootsys``).
``--theta`` takes a comma list of generator numbers, ``none`` or ``all``.
Exit status: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import warnings
from dataclasses import dataclass, replace

from . import __version__
from .export import FORMATS, cache_get, cache_put, export_table, parse_table
from .klcore import GVERMA, WHITTAKER, KLTable, compute_generalized_verma, compute_whittaker_kl, multiplicities
from .quotient import build_quotient, format_theta, parse_theta
from .rootsys import WeylGroup, parse_cartan
from .verify import ALL_CHECKS, check_structural, run_checks

log = logging.getLogger("wkl")

COMMANDS = ("table", "kl", "gverma", "mult", "verify")
CACHE_ENV = "WKL_CACHE_DIR"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class JobSpec:
    command: str
    cartan: str
    theta: frozenset[int] = frozenset()
    checks: tuple[str, ...] = ALL_CHECKS
    fmt: str = "json"
    output: str | None = None
    cache_dir: str | None = None

    @property
    def rank(self) -> int:
        return int(self.cartan[1:])

    def canonical(self) -> str:
        """Cache key: command, type and theta (plus checks for verify); no I/O options."""
        parts = [self.command, f"cartan={self.cartan}", f"theta={format_theta(self.theta, self.rank)}"]
        if self.command == "verify":
            parts.append("checks=" + ",".join(self.checks))
        return " ".join(parts)

    @classmethod
    def from_canonical(cls, text: str) -> "JobSpec":
        command, *fields = text.split()
        kv = dict(f.split("=", 1) for f in fields)
        return make_spec(command, kv["cartan"], kv["theta"], kv.get("checks", "all"))


def make_spec(command: str, cartan: str, theta: str = "none", checks: str = "all", fmt: str = "json",
              output: str | None = None, cache_dir: str | None = None) -> JobSpec:
    if command not in COMMANDS:
        raise UsageError(f"unknown command {command!r}")
    try:
        datum = parse_cartan(cartan)
        th = parse_theta(theta, datum.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if command == "kl" and th:
        raise UsageError("kl computes ordinary (theta = none) polynomials; drop --theta")
    if checks.strip().lower() == "all":
        chk = ALL_CHECKS
    else:
        chk = tuple(c.strip() for c in checks.split(",") if c.strip())
        bad = [c for c in chk if c not in ALL_CHECKS]
        if bad or not chk:
            raise UsageError(f"unknown checks {bad}; choose from {', '.join(ALL_CHECKS)} or all")
    if fmt not in FORMATS:
        raise UsageError(f"unknown format {fmt!r}")
    if command == "verify" and fmt == "csv":
        raise UsageError("verify reports are json or text")
    return JobSpec(command, datum.name, th, chk, fmt, output, cache_dir)


def _table_key(kind: str, spec: JobSpec) -> str:
    return replace(spec, command="gverma" if kind == GVERMA else "table").canonical()


def load_or_compute(spec: JobSpec, kind: str, W: WeylGroup) -> KLTable:
    Q = build_quotient(W, spec.theta)
    compute = compute_whittaker_kl if kind == WHITTAKER else compute_generalized_verma
    if not spec.cache_dir:
        return compute(Q)
    key = _table_key(kind, spec)
    raw = cache_get(spec.cache_dir, key)
    if raw is not None:
        try:
            table = parse_table(raw, kind=kind, quotient=Q)
            if check_structural(table).passed:
                log.debug("cache hit %s", key)
                return table
            warnings.warn(f"cached table for {key!r} failed structural checks; recomputing", stacklevel=2)
        except (ValueError, KeyError, TypeError) as exc:
            warnings.warn(f"unreadable cached table for {key!r} ({exc}); recomputing", stacklevel=2)
    table = compute(Q)
    try:
        cache_put(spec.cache_dir, key, export_table(table, "json"))
    except OSError as exc:
        warnings.warn(f"could not write cache entry: {exc}", stacklevel=2)
    return table


def run(spec: JobSpec) -> tuple[int, bytes]:
    """Execute a job; returns (exit status, output bytes). Output is also written if requested."""
    W = WeylGroup(parse_cartan(spec.cartan))
    status = 0
    if spec.command in ("table", "kl"):
        out = export_table(load_or_compute(spec, WHITTAKER, W), spec.fmt)
    elif spec.command == "gverma":
        out = export_table(load_or_compute(spec, GVERMA, W), spec.fmt)
    elif spec.command == "mult":
        table = load_or_compute(spec, WHITTAKER, W)
        out = export_table(multiplicities(table), spec.fmt, quotient=table.quotient)
    else:
        table = load_or_compute(spec, WHITTAKER, W)
        ordinary = None
        if {"duality", "gverma"} & set(spec.checks):
            ordinary = load_or_compute(replace(spec, theta=frozenset()), WHITTAKER, W)
        gverma = None
        if {"inversion", "gverma"} & set(spec.checks):
            gverma = load_or_compute(spec, GVERMA, W)
        report = run_checks(table, spec.checks, ordinary=ordinary, gverma=gverma)
        out = report.dumps().encode() if spec.fmt == "json" else ("\n".join(report.lines()) + "\n").encode()
        status = 0 if report.passed else 1
    if spec.output:
        with open(spec.output, "wb") as fh:
            fh.write(out)
    return status, out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="wkl",
        description="Whittaker Kazhdan-Lusztig polynomials and multiplicities for finite Weyl groups.",
        epilog="Generator numbers follow Bourbaki node numbering: B_n has alpha_n short, C_n has alpha_n "
               "long, D_n branches at n-2, E_n has alpha_2 attached to alpha_4, F_4 is 1-2=>3-4, "
               "G_2 has alpha_1 short.",
    )
    p.add_argument("--version", action="version", version=f"wkl {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    helps = {
        "table": "Whittaker KL polynomials P_CD",
        "kl": "ordinary KL polynomials (theta = none)",
        "gverma": "generalized-Verma KL polynomials P'_CD",
        "mult": "multiplicity matrix mu = (P_CD(-1))^-1",
        "verify": "run cross-checks; exit 1 if any fails",
    }
    for name in COMMANDS:
        sp = sub.add_parser(name, help=helps[name])
        sp.add_argument("--cartan", required=True, help='Cartan type, e.g. "A3", "F4"')
        sp.add_argument("--theta", default="none", help='"none", "all" or comma list like 1,3 (default none)')
        sp.add_argument("--format", dest="fmt", default="json",
                        help=f"one of {', '.join(FORMATS)}")
        sp.add_argument("--output", "-o", help="output file (default stdout)")
        sp.add_argument("--cache-dir", default=os.environ.get(CACHE_ENV),
                        help=f"table cache directory (default ${CACHE_ENV})")
        if name == "verify":
            sp.add_argument("--checks", default="all", help=f"comma list of {', '.join(ALL_CHECKS)}, or all")
        sp.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        spec = make_spec(args.command, args.cartan, args.theta, getattr(args, "checks", "all"),
                         args.fmt, args.output, args.cache_dir)
        if spec.output:
            # fail before computing anything if the destination is unwritable
            with open(spec.output, "ab"):
                pass
        status, out = run(spec)
    except UsageError as exc:
        print(f"wkl: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"wkl: error: {exc}", file=sys.stderr)
        return 2
    if not spec.output:
        sys.stdout.buffer.write(out)
        sys.stdout.flush()
    return status


if __name__ == "__main__":
    sys.exit(main())
