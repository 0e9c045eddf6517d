"""Reading fields from CSV/JSON and writing canonical JSON."""

from __future__ import annotations

import csv
import io
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import InputFormatError
from .field import JointField, MarginalTable, build_field

_WEIGHT = re.compile(r"^\s*(\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_weight(token: Any) -> Fraction:
    """Read a weight token: a decimal integer or ``p/q`` with ``q > 0``."""
    if isinstance(token, int) and not isinstance(token, bool):
        if token < 0:
            raise InputFormatError(f"negative weight {token}")
        return Fraction(token)
    m = _WEIGHT.match(str(token))
    if not m:
        raise InputFormatError(f"bad weight token {token!r}; expected an integer or p/q")
    p, q = int(m.group(1)), int(m.group(2) or 1)
    if q == 0:
        raise InputFormatError(f"weight {token!r} has a zero denominator")
    return Fraction(p, q)


def format_rational(q: Fraction | int, *, json_mode: bool = True) -> str:
    """``p/q`` in lowest terms; integers lose the ``/1`` outside JSON."""
    q = Fraction(q)
    if q.denominator == 1 and not json_mode:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def read_csv(text: str, *, prune_unreachable: bool = False) -> JointField:
    """Header: site names then ``weight``. Alphabets follow first appearance."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise InputFormatError("empty CSV input")
    header = [h.strip() for h in rows[0]]
    if len(header) < 2 or header[-1] != "weight":
        raise InputFormatError("CSV header must list the sites followed by a 'weight' column")
    names = header[:-1]
    alphabets: list[dict[str, None]] = [{} for _ in names]
    body = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise InputFormatError(f"line {lineno}: expected {len(header)} fields, got {len(row)}")
        labels = tuple(c.strip() for c in row[:-1])
        for alph, lab in zip(alphabets, labels):
            alph.setdefault(lab, None)
        body.append((labels, parse_weight(row[-1])))
    sites = [(name, tuple(alph)) for name, alph in zip(names, alphabets)]
    return build_field(sites, body, prune_unreachable=prune_unreachable)


def field_from_json(obj: Any, *, prune_unreachable: bool = False) -> JointField:
    try:
        sites = [(str(s["name"]), tuple(str(lab) for lab in s["alphabet"])) for s in obj["sites"]]
        rows = [(tuple(str(lab) for lab in r["assignment"]), parse_weight(r["weight"]))
                for r in obj["rows"]]
    except (KeyError, TypeError) as exc:
        raise InputFormatError(f"malformed field JSON: missing or invalid {exc}") from None
    return build_field(sites, rows, prune_unreachable=prune_unreachable)


def read_json(text: str, *, prune_unreachable: bool = False) -> JointField:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid JSON: {exc}") from None
    return field_from_json(obj, prune_unreachable=prune_unreachable)


def load_field(source: str, fmt: str | None = None, *, prune_unreachable: bool = False) -> JointField:
    """Load from a path, or from standard input when ``source`` is ``-``."""
    if source == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputFormatError(f"cannot read {source}: {exc.strerror}") from None
    if fmt is None:
        suffix = Path(source).suffix.lower()
        if suffix in (".csv", ".json"):
            fmt = suffix[1:]
        else:
            fmt = "json" if text.lstrip().startswith("{") else "csv"
    if fmt == "csv":
        return read_csv(text, prune_unreachable=prune_unreachable)
    if fmt == "json":
        return read_json(text, prune_unreachable=prune_unreachable)
    raise InputFormatError(f"unknown format {fmt!r}")


def field_to_json(field: JointField) -> dict:
    """Canonical JSON form: declared alphabets, positive rows with normalized masses."""
    return {
        "sites": [{"name": name, "alphabet": list(alph)}
                  for name, alph in zip(field.site_names, field.alphabets)],
        "rows": [{"assignment": list(key), "weight": format_rational(p)}
                 for key, p in field.mass.items()],
    }


def table_to_json(field: JointField, table: MarginalTable) -> dict:
    return {
        "scope": field.names(table.scope),
        "entries": [{"assignment": list(k), "p": format_rational(p)} for k, p in table.table.items()],
    }


def dumps(obj: Any) -> str:
    """Canonical JSON text, newline-terminated."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def write_csv(field: JointField) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([*field.site_names, "weight"])
    for key, p in field.mass.items():
        w.writerow([*key, format_rational(p)])
    return buf.getvalue()
