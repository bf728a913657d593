"""Wire formats for tables and the on-disk cache.

JSON layout (coset order "whittaker-coset-order-v1", 1-based generator numbers)::

    {"cartan": "A2", "theta": [1], "order": "whittaker-coset-order-v1",
     "cosets": [{"i": 0, "min_word": [], "max_word": [1], "max_len": 1}, ...],
     "entries": [{"c": 1, "d": 0, "poly": {"1": 1}}, ...]}

Multiplicity matrices replace "entries" by dense "lambda" and "mu" rows.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import os
import tempfile
import warnings
from pathlib import Path

from .klcore import WHITTAKER, KLTable, MultiplicityMatrix
from .laurent import LaurentPoly, format_poly, parse_poly
from .quotient import ParabolicQuotient, build_quotient
from .rootsys import WeylGroup, parse_cartan

log = logging.getLogger(__name__)

ORDER_TAG = "whittaker-coset-order-v1"
CACHE_VERSION = "wkl-cache-v1"
FORMATS = ("json", "csv", "text")


def _header(Q: ParabolicQuotient) -> dict:
    W = Q.W
    return {
        "cartan": W.datum.name,
        "theta": [s + 1 for s in sorted(Q.theta)],
        "order": ORDER_TAG,
        "cosets": [
            {"i": c.index, "min_word": [s + 1 for s in W.words[c.w_min]],
             "max_word": [s + 1 for s in W.words[c.w_max]], "max_len": c.max_length}
            for c in Q.cosets
        ],
    }


def _dumps(obj) -> bytes:
    return (json.dumps(obj, separators=(",", ":")) + "\n").encode()


def table_to_json(table: KLTable) -> dict:
    out = _header(table.quotient)
    out["entries"] = [{"c": c, "d": d, "poly": p.to_json()} for c, d, p in table.entries()]
    return out


def mult_to_json(Q: ParabolicQuotient, m: MultiplicityMatrix) -> dict:
    out = _header(Q)
    out["lambda"] = m.lam
    out["mu"] = m.mu
    return out


def _grid_rows(n: int, cell) -> list[list[str]]:
    return [[str(c)] + [cell(c, d) for d in range(n)] for c in range(n)]


def _csv(n: int, cell) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + [str(d) for d in range(n)])
    w.writerows(_grid_rows(n, cell))
    return buf.getvalue().encode()


def _text(title: str, n: int, cell) -> bytes:
    rows = [["C\\D"] + [str(d) for d in range(n)]] + _grid_rows(n, cell)
    widths = [max(len(r[i]) for r in rows) for i in range(n + 1)]
    lines = [title] + ["  ".join(v.rjust(widths[i]) for i, v in enumerate(r)).rstrip() for r in rows]
    return ("\n".join(lines) + "\n").encode()


def export_table(obj, fmt: str = "json", quotient: ParabolicQuotient | None = None) -> bytes:
    """Serialize a KLTable or a MultiplicityMatrix (the latter needs ``quotient``)."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
    if isinstance(obj, KLTable):
        n = len(obj)
        if fmt == "json":
            return _dumps(table_to_json(obj))

        def cell(c, d):
            p = obj.P(c, d)
            return format_poly(p) if p else ""

        if fmt == "csv":
            return _csv(n, cell)
        Q = obj.quotient
        title = f"{obj.kind} table {Q.W.datum.name} theta={[s + 1 for s in sorted(Q.theta)]}"
        return _text(title, n, cell)
    if isinstance(obj, MultiplicityMatrix):
        if quotient is None:
            raise ValueError("exporting a multiplicity matrix needs its quotient")
        if fmt == "json":
            return _dumps(mult_to_json(quotient, obj))
        n = len(obj)
        if fmt == "csv":
            return _csv(n, lambda c, d: str(obj.mu[c][d]))
        title = f"multiplicities mu {quotient.W.datum.name} theta={[s + 1 for s in sorted(quotient.theta)]}"
        return _text(title, n, lambda c, d: str(obj.mu[c][d]))
    raise TypeError(f"cannot export {type(obj).__name__}")


def _quotient_for(cartan: str, theta_1based, W: WeylGroup | None) -> ParabolicQuotient:
    if W is None:
        W = WeylGroup(parse_cartan(cartan))
    elif W.datum.name != cartan.upper():
        raise ValueError(f"table is for {cartan}, group is {W.datum.name}")
    return build_quotient(W, [s - 1 for s in theta_1based])


def parse_table(data: bytes | str | dict, kind: str = WHITTAKER, W: WeylGroup | None = None,
                quotient: ParabolicQuotient | None = None) -> KLTable:
    """Rebuild a KLTable from its JSON form, checking the coset layout."""
    obj = json.loads(data) if isinstance(data, (bytes, str)) else data
    if obj.get("order") != ORDER_TAG:
        raise ValueError(f"unsupported coset order {obj.get('order')!r}")
    Q = quotient or _quotient_for(obj["cartan"], obj["theta"], W)
    if _header(Q)["cosets"] != obj["cosets"]:
        raise ValueError("coset layout in the file does not match the computed quotient")
    phi: list[dict[int, LaurentPoly]] = [{} for _ in range(len(Q))]
    for e in obj["entries"]:
        p = LaurentPoly.from_json(e["poly"])
        if p:
            phi[int(e["c"])][int(e["d"])] = p
    return KLTable(Q, phi, kind)


def parse_table_csv(data: bytes | str, quotient: ParabolicQuotient, kind: str = WHITTAKER) -> KLTable:
    text = data.decode() if isinstance(data, bytes) else data
    rows = list(csv.reader(io.StringIO(text)))
    n = len(rows) - 1
    if n != len(quotient):
        raise ValueError(f"CSV has {n} rows, quotient has {len(quotient)} cosets")
    phi: list[dict[int, LaurentPoly]] = [{} for _ in range(n)]
    for row in rows[1:]:
        c = int(row[0])
        for d, cell in enumerate(row[1:]):
            if cell.strip():
                p = parse_poly(cell)
                if p:
                    phi[c][d] = p
    return KLTable(quotient, phi, kind)


# ---------------------------------------------------------------------------
# cache


def cache_path(cache_dir: str | os.PathLike, key: str) -> Path:
    digest = hashlib.sha256(f"{CACHE_VERSION}\n{key}".encode()).hexdigest()[:32]
    return Path(cache_dir) / f"{digest}.json"


def cache_put(cache_dir: str | os.PathLike, key: str, payload: bytes) -> Path:
    """Store ``payload`` under ``key``; written to a temp file and renamed into place."""
    path = cache_path(cache_dir, key)
    path.parent.mkdir(parents=True, exist_ok=True)
    record = {"version": CACHE_VERSION, "key": key, "payload": payload.decode()}
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(record, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def cache_get(cache_dir: str | os.PathLike, key: str) -> bytes | None:
    path = cache_path(cache_dir, key)
    if not path.exists():
        return None
    try:
        record = json.loads(path.read_text())
        version, stored_key, payload = record["version"], record["key"], record["payload"]
        if not isinstance(payload, str):
            raise TypeError("payload is not a string")
    except (ValueError, KeyError, TypeError, OSError) as exc:
        warnings.warn(f"ignoring corrupt cache entry {path.name}: {exc}", stacklevel=2)
        return None
    if version != CACHE_VERSION or stored_key != key:
        log.debug("cache miss on version/key mismatch for %s", path.name)
        return None
    return payload.encode()
