"""Built-in example fields.

TABLE1 and TABLE2 keep the row order of their source tables, so the label
order within each alphabet is the order of first appearance ("1" before
"0").
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import UnknownFixture
from .field import Event, JointField, build_field, omega

FIXTURE_NAMES = ("TABLE1", "TABLE2", "UNIFORM8", "COPY", "CHAIN", "COINS")

_BIN = ("0", "1")


def _table1() -> JointField:
    rows = [("1", "1", "1"), ("1", "0", "0"), ("0", "1", "0"), ("0", "0", "0")]
    return build_field({"X": ("1", "0"), "Y": ("1", "0"), "Z": ("1", "0")},
                       [(r, 1) for r in rows])


def _table2() -> JointField:
    rows = [("1", "1"), ("0", "1"), ("0", "0")]
    return build_field({"X": ("1", "0"), "Y": ("1", "0")}, [(r, 1) for r in rows])


def _uniform8() -> JointField:
    return build_field({"W": tuple(str(k) for k in range(1, 9))},
                       [((str(k),), 1) for k in range(1, 9)])


def _copy() -> JointField:
    rows = {
        ("0", "0", "0"): Fraction(3, 8),
        ("0", "0", "1"): Fraction(1, 8),
        ("1", "1", "1"): Fraction(3, 8),
        ("1", "1", "0"): Fraction(1, 8),
    }
    return build_field({"X1": _BIN, "X2": _BIN, "X3": _BIN}, rows.items())


def _chain(flip: Fraction = Fraction(1, 4)) -> JointField:
    link = lambda a, b: flip if a != b else 1 - flip
    rows = [((a, b, c), Fraction(1, 2) * link(a, b) * link(b, c))
            for a, b, c in itertools.product(_BIN, repeat=3)]
    return build_field({"X1": _BIN, "X2": _BIN, "X3": _BIN}, rows)


def _coins(k: int) -> JointField:
    sites = {f"C{j + 1}": _BIN for j in range(k)}
    return build_field(sites, [(r, 1) for r in itertools.product(_BIN, repeat=k)])


def builtin_fixture(name: str, *, k: int = 3) -> JointField:
    """Return the named fixture; ``k`` is the number of sites for COINS."""
    key = name.upper()
    if key == "TABLE1":
        return _table1()
    if key == "TABLE2":
        return _table2()
    if key == "UNIFORM8":
        return _uniform8()
    if key == "COPY":
        return _copy()
    if key == "CHAIN":
        return _chain()
    if key == "COINS":
        if k < 1:
            raise UnknownFixture("COINS needs k >= 1")
        return _coins(k)
    raise UnknownFixture(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")


def uniform8_events(field: JointField | None = None) -> dict[str, Event]:
    """Named events A, B, C1, C2 on the eight-point uniform space."""
    field = field or _uniform8()
    pts = lambda *ks: Event((str(k),) for k in ks)
    return {
        "A": pts(1, 2, 3, 4),
        "B": omega(field),
        "C1": pts(2, 4, 6, 8),
        "C2": pts(1, 3, 5, 8),
    }
