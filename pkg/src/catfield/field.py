"""Exact joint tables over finite categorical sites.

A :class:`JointField` stores its distribution as nonnegative integer counts
over a common denominator, so every marginal is an integer sum and every
conditional comparison reduces to integer cross-multiplication. Public
accessors return :class:`fractions.Fraction` values.

Sites are addressed by 0-based index or by name. Assignments are tuples of
labels in ascending site order; a partial assignment over a site-set uses the
ascending order of that set's members.
"""

from __future__ import annotations

import enum
import itertools
import math
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from operator import itemgetter
from typing import Any, Hashable, Union

from .errors import (
    DuplicateAssignment,
    EmptySpec,
    FieldError,
    InstanceTooLarge,
    InvalidWeight,
    MalformedEvent,
    SiteOutOfRange,
    UnknownLabel,
    ZeroMarginalLabel,
    ZeroTotalWeight,
)

DEFAULT_LATTICE_LIMIT = 14

Label = Hashable
Assignment = tuple
SiteRef = Union[int, str]


class _Undefined(enum.Enum):
    UNDEFINED = "undefined"

    def __repr__(self) -> str:
        return "UNDEFINED"

    def __str__(self) -> str:
        return "undefined"


#: Value of a conditional probability whose conditioning event is null.
UNDEFINED = _Undefined.UNDEFINED


class SiteSet(frozenset):
    """A set of site indices with a canonical (ascending) order."""

    __slots__ = ()

    @classmethod
    def from_mask(cls, mask: int) -> "SiteSet":
        return cls(i for i in range(mask.bit_length()) if mask >> i & 1)

    @property
    def mask(self) -> int:
        m = 0
        for i in self:
            m |= 1 << i
        return m

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(sorted(self))

    def sort_key(self) -> tuple:
        return (len(self), self.members)

    def __repr__(self) -> str:
        return f"SiteSet({list(self.members)})"


def subsets_of(mask: int) -> Iterator[int]:
    """Yield every submask of ``mask`` in ascending numeric order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def mask_members(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def canonical_sets(masks: Iterable[int]) -> list[SiteSet]:
    """Site-sets ordered by size, then lexicographically by members."""
    return sorted((SiteSet.from_mask(m) for m in masks), key=SiteSet.sort_key)


def _project(members: tuple[int, ...]):
    # itemgetter with one index returns a bare item, not a tuple
    if not members:
        return lambda key: ()
    if len(members) == 1:
        i = members[0]
        return lambda key: (key[i],)
    return itemgetter(*members)


class JointField:
    """Immutable joint distribution over ``n`` categorical sites.

    Build instances with :func:`build_field`; the constructor trusts its
    arguments.
    """

    __slots__ = (
        "site_names",
        "alphabets",
        "denominator",
        "_counts",
        "_index",
        "_pos",
        "_marginals",
    )

    def __init__(
        self,
        site_names: tuple[str, ...],
        alphabets: tuple[tuple[Label, ...], ...],
        counts: dict[Assignment, int],
        denominator: int,
    ):
        self.site_names = site_names
        self.alphabets = alphabets
        self.denominator = denominator
        self._index = {name: i for i, name in enumerate(site_names)}
        self._pos = tuple({lab: k for k, lab in enumerate(alph)} for alph in alphabets)
        order = lambda key: tuple(p[lab] for p, lab in zip(self._pos, key))
        self._counts = {k: counts[k] for k in sorted(counts, key=order)}
        self._marginals: dict[int, MarginalTable] = {}

    @property
    def n(self) -> int:
        return len(self.site_names)

    @property
    def counts(self) -> Mapping[Assignment, int]:
        """Positive cells as integer numerators over :attr:`denominator`."""
        return self._counts

    @property
    def mass(self) -> dict[Assignment, Fraction]:
        """Positive-mass assignments in canonical order."""
        d = self.denominator
        return {k: Fraction(c, d) for k, c in self._counts.items()}

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def prob(self, assignment: Assignment) -> Fraction:
        return Fraction(self._counts.get(tuple(assignment), 0), self.denominator)

    def site(self, ref: SiteRef) -> int:
        if isinstance(ref, str):
            try:
                return self._index[ref]
            except KeyError:
                raise SiteOutOfRange(f"no site named {ref!r}") from None
        if isinstance(ref, bool) or not isinstance(ref, int) or not 0 <= ref < self.n:
            raise SiteOutOfRange(f"site index {ref!r} outside 0..{self.n - 1}")
        return ref

    def sites(self, refs: Iterable[SiteRef] | SiteSet) -> SiteSet:
        if isinstance(refs, (str, int)):
            refs = [refs]
        return SiteSet(self.site(r) for r in refs)

    def complement(self, i: SiteRef) -> SiteSet:
        i = self.site(i)
        return SiteSet(j for j in range(self.n) if j != i)

    def names(self, sites: Iterable[int]) -> list[str]:
        return [self.site_names[i] for i in sorted(sites)]

    def label_position(self, site: int, label: Label) -> int:
        try:
            return self._pos[site][label]
        except KeyError:
            raise UnknownLabel(
                f"label {label!r} not in alphabet of site {self.site_names[site]!r}"
            ) from None

    def order_key(self, members: tuple[int, ...], key: Assignment) -> tuple[int, ...]:
        """Mixed-radix sort key of a partial assignment over ``members``."""
        return tuple(self._pos[s][lab] for s, lab in zip(members, key))

    def assignments(self, members: tuple[int, ...] | None = None) -> Iterator[Assignment]:
        """All label combinations over ``members`` (default: every site) in canonical order."""
        if members is None:
            members = tuple(range(self.n))
        return itertools.product(*(self.alphabets[s] for s in members))

    def outcome_count(self) -> int:
        return math.prod(len(a) for a in self.alphabets)

    def projector(self, members: tuple[int, ...]):
        return _project(members)

    def canonical_key(self) -> tuple:
        return (self.site_names, self.alphabets, self.denominator, tuple(self._counts.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, JointField):
            return NotImplemented
        return self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash(self.canonical_key())

    def __repr__(self) -> str:
        return f"JointField(sites={list(self.site_names)}, support={len(self._counts)})"


@dataclass(frozen=True)
class MarginalTable:
    """Marginal over ``scope``; ``counts`` holds the positive cells only."""

    scope: SiteSet
    counts: Mapping[Assignment, int]
    denominator: int

    @property
    def table(self) -> dict[Assignment, Fraction]:
        return {k: Fraction(c, self.denominator) for k, c in self.counts.items()}

    @property
    def support(self) -> frozenset[Assignment]:
        return frozenset(self.counts)

    def prob(self, key: Assignment) -> Fraction:
        return Fraction(self.counts.get(tuple(key), 0), self.denominator)

    __getitem__ = prob


@dataclass(frozen=True)
class ConditionalTable:
    """``P(X_target = x | X_scope = x_S)`` on the domain ``M_target x D_scope``."""

    target: int
    scope: SiteSet
    values: Mapping[tuple[Label, Assignment], Fraction]

    @property
    def domain(self) -> list[tuple[Label, Assignment]]:
        return list(self.values)

    @property
    def conditioning_support(self) -> list[Assignment]:
        return list(dict.fromkeys(xs for _, xs in self.values))

    def value(self, x_target: Label, x_scope: Assignment) -> Fraction:
        try:
            return self.values[(x_target, tuple(x_scope))]
        except KeyError:
            raise FieldError(f"({x_target!r}, {x_scope!r}) lies outside the conditional's domain") from None

    def distribution(self, x_scope: Assignment) -> dict[Label, Fraction]:
        x_scope = tuple(x_scope)
        out = {xi: v for (xi, xs), v in self.values.items() if xs == x_scope}
        if not out:
            raise FieldError(f"{x_scope!r} is not in the conditioning support")
        return out


def _as_rational(weight: Any) -> Fraction:
    if isinstance(weight, bool) or isinstance(weight, float):
        raise InvalidWeight(f"weight {weight!r} must be an int, Fraction or 'p/q' string")
    try:
        q = Fraction(weight)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InvalidWeight(f"cannot read weight {weight!r} as a rational") from None
    if q < 0:
        raise InvalidWeight(f"weight {weight!r} is negative")
    return q


def build_field(
    sites: Mapping[str, Iterable[Label]] | Iterable[tuple[str, Iterable[Label]]],
    rows: Iterable[tuple[Iterable[Label], Any]],
    *,
    prune_unreachable: bool = False,
) -> JointField:
    """Normalize weighted assignments into a :class:`JointField`.

    ``sites`` gives each site's name and ordered alphabet. ``rows`` pairs a
    full assignment with a nonnegative rational weight (int, Fraction or a
    ``"p/q"`` string). Unlisted assignments get weight zero.

    Every label must have positive marginal probability. With
    ``prune_unreachable`` such labels are dropped from the alphabets
    instead of raising :class:`ZeroMarginalLabel`.
    """
    site_items = list(sites.items() if isinstance(sites, Mapping) else sites)
    if not site_items:
        raise EmptySpec("a field needs at least one site")
    names = tuple(str(name) for name, _ in site_items)
    if len(set(names)) != len(names):
        raise EmptySpec(f"duplicate site names in {list(names)}")
    alphabets = []
    for name, alph in site_items:
        alph = tuple(alph)
        if not alph:
            raise EmptySpec(f"site {name!r} has an empty alphabet")
        if len(set(alph)) != len(alph):
            raise EmptySpec(f"site {name!r} repeats a label in {list(alph)}")
        alphabets.append(alph)
    known = [set(a) for a in alphabets]

    weights: dict[Assignment, Fraction] = {}
    for assignment, weight in rows:
        key = tuple(assignment)
        if len(key) != len(names):
            raise UnknownLabel(f"assignment {list(key)} has {len(key)} labels, expected {len(names)}")
        for name, lab, ok in zip(names, key, known):
            if lab not in ok:
                raise UnknownLabel(f"label {lab!r} not in alphabet of site {name!r}")
        if key in weights:
            raise DuplicateAssignment(f"assignment {list(key)} listed twice")
        weights[key] = _as_rational(weight)
    if not weights:
        raise EmptySpec("no weighted assignments given")

    total = sum(weights.values())
    if total == 0:
        raise ZeroTotalWeight("all weights are zero")
    masses = {k: w / total for k, w in weights.items() if w}

    reached = [set() for _ in names]
    for key in masses:
        for s, lab in enumerate(key):
            reached[s].add(lab)
    for s, alph in enumerate(alphabets):
        missing = [lab for lab in alph if lab not in reached[s]]
        if missing:
            if not prune_unreachable:
                raise ZeroMarginalLabel(names[s], missing[0])
            alphabets[s] = tuple(lab for lab in alph if lab in reached[s])

    denom = math.lcm(*(m.denominator for m in masses.values()))
    counts = {k: m.numerator * (denom // m.denominator) for k, m in masses.items()}
    return JointField(names, tuple(alphabets), counts, denom)


def _check_limit(n: int, limit: int | None) -> None:
    limit = DEFAULT_LATTICE_LIMIT if limit is None else limit
    if n > limit:
        raise InstanceTooLarge(n, limit)


def _sorted_table(field: JointField, members: tuple[int, ...], counts: dict) -> dict:
    return {k: counts[k] for k in sorted(counts, key=lambda k: field.order_key(members, k))}


def marginal(field: JointField, S: Iterable[SiteRef] | SiteSet = ()) -> MarginalTable:
    """Marginal table over ``S`` by direct summation of the joint."""
    scope = field.sites(S)
    mask = scope.mask
    cached = field._marginals.get(mask)
    if cached is not None:
        return cached
    members = scope.members
    proj = _project(members)
    acc: dict[Assignment, int] = {}
    for key, c in field.counts.items():
        k = proj(key)
        acc[k] = acc.get(k, 0) + c
    table = MarginalTable(scope, _sorted_table(field, members, acc), field.denominator)
    field._marginals[mask] = table
    return table


def marginal_lattice(field: JointField, *, limit: int | None = None) -> dict[SiteSet, MarginalTable]:
    """Marginals over all ``2**n`` site-sets in one downward sweep.

    Each subset's table is obtained from the table of the superset that adds
    its lowest missing site, by summing that site out.
    """
    n = field.n
    _check_limit(n, limit)
    full = field.full_mask
    raw: dict[int, dict[Assignment, int]] = {full: dict(field.counts)}
    for mask in range(full - 1, -1, -1):
        low = ~mask & full & -(~mask & full)
        pos = (mask & (low - 1)).bit_count()
        acc: dict[Assignment, int] = {}
        for key, c in raw[mask | low].items():
            k = key[:pos] + key[pos + 1:]
            acc[k] = acc.get(k, 0) + c
        raw[mask] = acc
    out = {}
    for mask in range(full + 1):
        scope = SiteSet.from_mask(mask)
        out[scope] = MarginalTable(scope, _sorted_table(field, scope.members, raw[mask]), field.denominator)
    return out


def conditional(field: JointField, i: SiteRef, S: Iterable[SiteRef] | SiteSet = ()) -> ConditionalTable:
    """The table ``P(X_i | X_S)`` on ``M_i x D_S``; ``i`` may belong to ``S``."""
    i = field.site(i)
    scope = field.sites(S)
    base = marginal(field, scope)
    joint = marginal(field, scope | {i})
    jm = tuple(sorted(scope | {i}))
    at = jm.index(i)
    inside = i in scope
    values = {}
    for xi in field.alphabets[i]:
        for xs, den in base.counts.items():
            if inside:
                num = den if xs[scope.members.index(i)] == xi else 0
            else:
                num = joint.counts.get(xs[:at] + (xi,) + xs[at:], 0)
            values[(xi, xs)] = Fraction(num, den)
    return ConditionalTable(i, scope, values)


def is_positive(field: JointField) -> bool:
    """True iff every full assignment has positive mass."""
    return len(field.counts) == field.outcome_count()


@dataclass(frozen=True)
class Event:
    """A set of full assignments."""

    members: frozenset

    def __init__(self, members: Iterable[Assignment] = ()):
        object.__setattr__(self, "members", frozenset(tuple(m) for m in members))

    def __and__(self, other: "Event") -> "Event":
        return Event(self.members & other.members)

    def __or__(self, other: "Event") -> "Event":
        return Event(self.members | other.members)

    def __sub__(self, other: "Event") -> "Event":
        return Event(self.members - other.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, item) -> bool:
        return tuple(item) in self.members

    def isdisjoint(self, other: "Event") -> bool:
        return self.members.isdisjoint(other.members)


def omega(field: JointField) -> Event:
    """The whole outcome space, zero-mass assignments included."""
    return Event(field.assignments())


def cylinder(field: JointField, constraint: Mapping[SiteRef, Any]) -> Event:
    """Event fixing each constrained site to a label, or to a set of labels
    when the value is a list/set/tuple."""
    allowed = [None] * field.n
    for ref, val in constraint.items():
        s = field.site(ref)
        labels = set(val) if isinstance(val, (list, set, frozenset, tuple)) else {val}
        for lab in labels:
            field.label_position(s, lab)
        allowed[s] = labels
    pools = [alph if allowed[s] is None else [l for l in alph if l in allowed[s]]
             for s, alph in enumerate(field.alphabets)]
    return Event(itertools.product(*pools))


def _validate_event(field: JointField, event: Event) -> None:
    n = field.n
    for m in event.members:
        if len(m) != n:
            raise MalformedEvent(f"assignment {list(m)} has {len(m)} labels, expected {n}")
        for s, lab in enumerate(m):
            if lab not in field._pos[s]:
                raise MalformedEvent(
                    f"label {lab!r} not in alphabet of site {field.site_names[s]!r}"
                )


def event_count(field: JointField, event: Event) -> int:
    """Probability of ``event`` as a numerator over ``field.denominator``."""
    _validate_event(field, event)
    counts = field.counts
    return sum(counts.get(m, 0) for m in event.members)


def event_prob(field: JointField, event: Event) -> Fraction:
    return Fraction(event_count(field, event), field.denominator)


def event_conditional(field: JointField, A: Event, B: Event) -> Fraction | _Undefined:
    """``P(A | B)``, or :data:`UNDEFINED` when ``P(B) = 0``."""
    den = event_count(field, B)
    _validate_event(field, A)
    if den == 0:
        return UNDEFINED
    return Fraction(event_count(field, A & B), den)
