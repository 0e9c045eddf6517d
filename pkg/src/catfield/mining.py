"""Field enumeration, theorem checking and counterexample mining.

Each property has a *search* that scans one field and yields JSON-ready
detail payloads, and a *validator* that re-derives the claim from a payload
through the public operations only. Searches run on integer bitmask event
algebra and cached site-set families; validators use :mod:`catfield.infosets`
directly, so a returned witness is checked along a second path.

For MustHold properties a payload is a violation (expected never to
appear). For ExpectViolation properties it is a counterexample to the
refuted conjecture.
"""

from __future__ import annotations

import enum
import hashlib
import itertools
import math
import random
from collections.abc import Iterator
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Callable

from .errors import BoundsTooLarge, FieldError
from .field import (
    UNDEFINED,
    Event,
    JointField,
    _check_limit,
    build_field,
    conditional,
    cylinder,
    is_positive,
    mask_members,
    omega,
    subsets_of,
)
from .infosets import (
    UNStatus,
    _si_masks,
    coarse_conditional,
    dependence_corollary_check,
    es_family,
    is_sufficient,
    is_uninformative,
    mi_family,
    mi_membership,
    partition_constant_check,
    reduction_family,
    si_family,
)
from .io import field_from_json, field_to_json, format_rational
from .report import neighbor_label

HARD_STREAM_CAP = 2_000_000


class Expectation(enum.Enum):
    MUST_HOLD = "MustHold"
    EXPECT_VIOLATION = "ExpectViolation"


class PropertyId(enum.Enum):
    UN_UNION_CLOSURE = "UN_UNION_CLOSURE"
    UN_INTERSECTION_CLOSURE = "UN_INTERSECTION_CLOSURE"
    PARTITION_CONSTANT = "PARTITION_CONSTANT"
    SI_MONOTONE_A = "SI_MONOTONE_A"
    SI_MONOTONE_B = "SI_MONOTONE_B"
    PROPOSITION_COARSE = "PROPOSITION_COARSE"
    COROLLARY_DEPENDENCE = "COROLLARY_DEPENDENCE"
    POSITIVITY_WELLDEF = "POSITIVITY_WELLDEF"
    MI_DOWNWARD_CLOSURE = "MI_DOWNWARD_CLOSURE"
    TWO_AGENTS = "TWO_AGENTS"

    @property
    def expectation(self) -> Expectation:
        if self in _REFUTED:
            return Expectation.EXPECT_VIOLATION
        return Expectation.MUST_HOLD


_REFUTED = frozenset({
    PropertyId.UN_INTERSECTION_CLOSURE,
    PropertyId.MI_DOWNWARD_CLOSURE,
    PropertyId.TWO_AGENTS,
})

MUST_HOLD = tuple(p for p in PropertyId if p.expectation is Expectation.MUST_HOLD)
EXPECT_VIOLATION = tuple(p for p in PropertyId if p.expectation is Expectation.EXPECT_VIOLATION)


@dataclass(frozen=True)
class EnumerationBounds:
    max_sites: int = 2
    max_alphabet: int = 2
    weight_grid: tuple[int, ...] = (0, 1)
    random_count: int = 0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "weight_grid", tuple(sorted(set(self.weight_grid))))
        if self.max_sites < 1 or self.max_alphabet < 1:
            raise FieldError("max_sites and max_alphabet must be at least 1")
        if not self.weight_grid or self.weight_grid[0] < 0 or not any(self.weight_grid):
            raise FieldError("weight_grid needs nonnegative values and at least one nonzero")
        if self.random_count < 0:
            raise FieldError("random_count must be nonnegative")


@dataclass(frozen=True)
class MineConfig:
    witness_cap: int = 16
    per_field_cap: int = 1
    chain_cap: int = 20_000
    coarse_sites: int = 1
    random_event_trials: int = 4
    full_event_points: int = 4
    stream_cap: int = HARD_STREAM_CAP


_TINY = EnumerationBounds(max_sites=2, max_alphabet=2, weight_grid=(0, 1, 2), random_count=20, seed=0)
_TRIPLES = EnumerationBounds(max_sites=3, max_alphabet=2, weight_grid=(0, 1), random_count=0, seed=0)

DEFAULT_BOUNDS: dict[PropertyId, EnumerationBounds] = {p: _TINY for p in MUST_HOLD}
DEFAULT_BOUNDS[PropertyId.UN_INTERSECTION_CLOSURE] = EnumerationBounds(2, 2, (0, 1), 0, 0)
DEFAULT_BOUNDS[PropertyId.MI_DOWNWARD_CLOSURE] = _TRIPLES
DEFAULT_BOUNDS[PropertyId.TWO_AGENTS] = _TRIPLES


# -- field streams -----------------------------------------------------------


def projected_size(bounds: EnumerationBounds, cap: int = HARD_STREAM_CAP) -> int:
    """Upper bound on the stream length; stops counting once past ``cap``."""
    g = len(bounds.weight_grid)
    total = bounds.random_count
    for n in range(1, bounds.max_sites + 1):
        for shape in _shapes(bounds, n):
            cells = math.prod(shape)
            if g > 1 and cells * math.log2(g) > 62:
                return cap + 1
            total += g ** cells
            if total > cap:
                return total
    return total


def _shapes(bounds: EnumerationBounds, n: int) -> Iterator[tuple[int, ...]]:
    # unary sites are constants; they only appear when max_alphabet is 1
    low = min(2, bounds.max_alphabet)
    return itertools.product(range(low, bounds.max_alphabet + 1), repeat=n)


def _names(n: int) -> tuple[str, ...]:
    return tuple(f"X{k + 1}" for k in range(n))


def _covers(shape: tuple[int, ...], cells: list[tuple], weights: tuple[int, ...]) -> bool:
    for s, m in enumerate(shape):
        if len({c[s] for c, w in zip(cells, weights) if w}) != m:
            return False
    return True


def _exhaustive(bounds: EnumerationBounds) -> Iterator[JointField]:
    seen = set()
    for n in range(1, bounds.max_sites + 1):
        names = _names(n)
        for shape in _shapes(bounds, n):
            alphabets = tuple(tuple(str(v) for v in range(m)) for m in shape)
            cells = list(itertools.product(*alphabets))
            for weights in itertools.product(bounds.weight_grid, repeat=len(cells)):
                if not any(weights) or not _covers(shape, cells, weights):
                    continue
                g = math.gcd(*weights)
                key = (shape, tuple(w // g for w in weights))
                if key in seen:
                    continue
                seen.add(key)
                yield build_field(zip(names, alphabets), zip(cells, weights))


def random_field(rng: random.Random, alphabet_sizes: list[int] | tuple[int, ...], *,
                 positive: bool = False, zero_prob: float = 0.3, max_weight: int = 12) -> JointField:
    """Draw integer weights per cell; redraws until every label is reachable."""
    shape = tuple(alphabet_sizes)
    alphabets = tuple(tuple(str(v) for v in range(m)) for m in shape)
    cells = list(itertools.product(*alphabets))
    while True:
        weights = tuple(
            0 if (not positive and rng.random() < zero_prob) else rng.randint(1, max_weight)
            for _ in cells
        )
        if any(weights) and _covers(shape, cells, weights):
            return build_field(zip(_names(len(shape)), alphabets), zip(cells, weights))


def _random_stream(bounds: EnumerationBounds) -> Iterator[JointField]:
    rng = random.Random(bounds.seed)
    low = min(2, bounds.max_alphabet)
    for _ in range(bounds.random_count):
        n = rng.randint(1, bounds.max_sites)
        shape = [rng.randint(low, bounds.max_alphabet) for _ in range(n)]
        yield random_field(rng, shape)


def enumerate_fields(bounds: EnumerationBounds, *, cap: int = HARD_STREAM_CAP) -> Iterator[JointField]:
    """Exhaustive grid fields (deduplicated), then seeded random fields.

    Raises :class:`BoundsTooLarge` up front when the projected stream
    exceeds ``cap``.
    """
    projected = projected_size(bounds, cap)
    if projected > cap:
        raise BoundsTooLarge(projected, cap)
    return itertools.chain(_exhaustive(bounds), _random_stream(bounds))


# -- per-field search context ------------------------------------------------


class _Space:
    """Events of one field as bitmasks over its outcomes (canonical order)."""

    SUBSET_SUM_LIMIT = 16

    def __init__(self, field: JointField):
        self.field = field
        self.points = list(field.assignments())
        self.weights = [field.counts.get(p, 0) for p in self.points]
        self.full = (1 << len(self.points)) - 1
        self._sums = None
        if len(self.points) <= self.SUBSET_SUM_LIMIT:
            sums = [0] * (self.full + 1)
            for mask in range(1, self.full + 1):
                low = mask & -mask
                sums[mask] = sums[mask ^ low] + self.weights[low.bit_length() - 1]
            self._sums = sums

    def p(self, mask: int) -> int:
        if self._sums is not None:
            return self._sums[mask]
        return sum(w for k, w in enumerate(self.weights) if mask >> k & 1)

    def member(self, A: int, B: int, C: int) -> bool:
        bc = self.p(B & C)
        return bc == 0 or self.p(A & B & C) * self.p(B) == self.p(A & B) * bc

    def cyl(self, fixed: dict[int, Any]) -> int:
        mask = 0
        for k, pt in enumerate(self.points):
            if all(pt[s] == lab for s, lab in fixed.items()):
                mask |= 1 << k
        return mask

    def labels(self, mask: int) -> list[list]:
        return [list(self.points[k]) for k in range(len(self.points)) if mask >> k & 1]

    def random_mask(self, rng: random.Random) -> int:
        return rng.getrandbits(len(self.points)) if self.points else 0


class _Ctx:
    def __init__(self, field: JointField, config: MineConfig):
        self.field = field
        self.config = config
        self.checks = 0
        self._space = None
        self._si: dict[tuple[int, int], frozenset[int]] = {}
        digest = hashlib.sha256(repr(field.canonical_key()).encode()).hexdigest()
        self.rng = random.Random(digest)

    @property
    def space(self) -> _Space:
        if self._space is None:
            self._space = _Space(self.field)
        return self._space

    def si(self, i: int, imask: int) -> frozenset[int]:
        key = (i, imask)
        if key not in self._si:
            self._si[key] = frozenset(_si_masks(self.field, i, imask))
        return self._si[key]

    def names(self, mask: int) -> list[str]:
        return [self.field.site_names[s] for s in mask_members(mask)]


def _event(labels: list[list]) -> Event:
    return Event(tuple(a) for a in labels)


def _set(field: JointField, names: list[str]):
    return field.sites(names)


# -- UN event configurations -------------------------------------------------


def _un_configs(ctx: _Ctx) -> Iterator[tuple[int, int, list[int]]]:
    """(A, B, cells): cylinder targets and evidence with single-site partitions,
    then random events with random partitions."""
    field, sp = ctx.field, ctx.space
    n = field.n
    targets = [sp.cyl({a: x}) for a in range(n) for x in field.alphabets[a]]
    evidence = [sp.full]
    for b in range(n):
        evidence += [sp.cyl({b: y}) for y in field.alphabets[b]]
    for b, c in itertools.combinations(range(n), 2):
        evidence += [sp.cyl({b: y, c: z}) for y in field.alphabets[b] for z in field.alphabets[c]]
    evidence = [B for B in dict.fromkeys(evidence) if sp.p(B) > 0]
    partitions = [[sp.cyl({h: v}) for v in field.alphabets[h]] for h in range(n)]
    for A in targets:
        for B in evidence:
            for cells in partitions:
                yield A, B, cells

    rng = ctx.rng
    npts = len(sp.points)
    for _ in range(ctx.config.random_event_trials):
        A = sp.random_mask(rng)
        B = sp.random_mask(rng)
        if sp.p(B) == 0:
            B = sp.full
        k = rng.randint(2, max(2, min(4, npts)))
        cells = [0] * k
        for pt in range(npts):
            cells[rng.randrange(k)] |= 1 << pt
        yield A, B, [c for c in cells if c]


def _search_union(ctx: _Ctx) -> Iterator[dict]:
    sp = ctx.space
    for A, B, cells in _un_configs(ctx):
        members = [C for C in cells if sp.member(A, B, C)]
        for r in range(2, len(members) + 1):
            for combo in itertools.combinations(members, r):
                ctx.checks += 1
                union = 0
                for C in combo:
                    union |= C
                if not sp.member(A, B, union):
                    yield {"A": sp.labels(A), "B": sp.labels(B), "cells": [sp.labels(C) for C in combo]}


def _validate_union(field: JointField, d: dict) -> bool:
    A, B = _event(d["A"]), _event(d["B"])
    cells = [_event(c) for c in d["cells"]]
    if any(not x.isdisjoint(y) for x, y in itertools.combinations(cells, 2)):
        return False
    if not all(is_uninformative(field, A, B, C).is_member for C in cells):
        return False
    union = Event()
    for C in cells:
        union = union | C
    return not is_uninformative(field, A, B, union).is_member


def _search_partition(ctx: _Ctx) -> Iterator[dict]:
    sp = ctx.space
    for A, B, cells in _un_configs(ctx):
        ctx.checks += 1
        pos = [C for C in cells if sp.p(B & C) > 0]
        first = pos[0]
        num0, den0 = sp.p(A & B & first), sp.p(B & first)
        if any(sp.p(A & B & C) * den0 != num0 * sp.p(B & C) for C in pos[1:]):
            continue
        if num0 * sp.p(B) != sp.p(A & B) * den0:
            yield {"A": sp.labels(A), "B": sp.labels(B), "partition": [sp.labels(C) for C in cells],
                   "c": format_rational(Fraction(num0, den0))}


def _validate_partition(field: JointField, d: dict) -> bool:
    res = partition_constant_check(field, _event(d["A"]), _event(d["B"]), [_event(c) for c in d["partition"]])
    return res.holds and res.c != res.prior


def _search_intersection(ctx: _Ctx) -> Iterator[dict]:
    sp = ctx.space
    npts = len(sp.points)
    if npts <= ctx.config.full_event_points:
        events = list(range(sp.full + 1))
    else:
        n = ctx.field.n
        events = [sp.cyl({a: x}) for a in range(n) for x in ctx.field.alphabets[a]]
        events += [sp.random_mask(ctx.rng) for _ in range(8 * ctx.config.random_event_trials)]
        events = list(dict.fromkeys([sp.full, *events]))
    for A in events:
        for B in events:
            if sp.p(B) == 0:
                continue
            members = [C for C in events if sp.member(A, B, C)]
            for C1, C2 in itertools.combinations(members, 2):
                ctx.checks += 1
                if not sp.member(A, B, C1 & C2):
                    yield {"A": sp.labels(A), "B": sp.labels(B), "C1": sp.labels(C1), "C2": sp.labels(C2)}


def _validate_intersection(field: JointField, d: dict) -> bool:
    A, B, C1, C2 = (_event(d[k]) for k in ("A", "B", "C1", "C2"))
    return (is_uninformative(field, A, B, C1).is_member
            and is_uninformative(field, A, B, C2).is_member
            and is_uninformative(field, A, B, C1 & C2).status is UNStatus.INFORMATIVE)


def _search_two_agents(ctx: _Ctx) -> Iterator[dict]:
    field, sp = ctx.field, ctx.space
    n = field.n
    for a in range(n):
        for x in field.alphabets[a]:
            A = sp.cyl({a: x})
            for y in range(n):
                if y == a:
                    continue
                cells = [sp.cyl({y: v}) for v in field.alphabets[y]]
                ctx.checks += 1
                if not all(sp.member(A, sp.full, C) for C in cells):
                    continue
                for z in range(n):
                    if z in (a, y):
                        continue
                    for v in field.alphabets[z]:
                        B = sp.cyl({z: v})
                        if sp.p(B) == 0:
                            continue
                        ctx.checks += 1
                        if not all(sp.member(A, B, C) for C in cells):
                            yield {"target": {field.site_names[a]: x},
                                   "partition_site": field.site_names[y],
                                   "evidence": {field.site_names[z]: v}}


def _validate_two_agents(field: JointField, d: dict) -> bool:
    A = cylinder(field, d["target"])
    y = field.site(d["partition_site"])
    B = cylinder(field, d["evidence"])
    cells = [cylinder(field, {y: v}) for v in field.alphabets[y]]
    everything = omega(field)
    uninformed = all(is_uninformative(field, A, everything, C).is_member for C in cells)
    return uninformed and any(
        is_uninformative(field, A, B, C).status is UNStatus.INFORMATIVE for C in cells)


# -- site-set properties -----------------------------------------------------


def _search_monotone(ctx: _Ctx, part: str) -> Iterator[dict]:
    field = ctx.field
    budget = ctx.config.chain_cap
    for i in range(field.n):
        for imask in subsets_of(field.full_mask):
            fam = ctx.si(i, imask)
            for jmask in sorted(fam):
                for extra in subsets_of(imask & ~jmask):
                    if budget <= 0:
                        return
                    budget -= 1
                    ctx.checks += 1
                    hmask = jmask | extra
                    bad = (jmask not in ctx.si(i, hmask)) if part == "a" else (hmask not in fam)
                    if bad:
                        yield {"site": field.site_names[i], "J": ctx.names(jmask),
                               "H": ctx.names(hmask), "I": ctx.names(imask)}


def _validate_monotone(field: JointField, d: dict, part: str) -> bool:
    i = field.site(d["site"])
    J, H, I = (_set(field, d[k]) for k in ("J", "H", "I"))
    if not (J <= H <= I) or not is_sufficient(field, i, J, I):
        return False
    if part == "a":
        return not is_sufficient(field, i, J, H)
    return not is_sufficient(field, i, H, I)


def _nonempty_subsets(labels: tuple) -> list[tuple]:
    return [c for r in range(1, len(labels) + 1) for c in itertools.combinations(labels, r)]


def _search_proposition(ctx: _Ctx) -> Iterator[dict]:
    field = ctx.field
    for i in range(field.n):
        others = field.full_mask & ~(1 << i)
        for jmask in subsets_of(others):
            J = mask_members(jmask)
            cond = None
            for hmask in subsets_of(others & ~jmask):
                if hmask == 0 or hmask.bit_count() > ctx.config.coarse_sites:
                    continue
                if jmask not in ctx.si(i, jmask | hmask):
                    continue
                if cond is None:
                    cond = conditional(field, i, J)
                    support = cond.conditioning_support
                H = mask_members(hmask)
                choices = list(itertools.product(*(_nonempty_subsets(field.alphabets[h]) for h in H)))
                for xJ in support:
                    reduced = cond.distribution(xJ)
                    for N in choices:
                        ctx.checks += 1
                        got = coarse_conditional(field, i, dict(zip(J, xJ)), dict(zip(H, N)))
                        if got is not UNDEFINED and got != reduced:
                            yield {
                                "site": field.site_names[i],
                                "J": ctx.names(jmask),
                                "j_assign": list(xJ),
                                "constraints": {field.site_names[h]: list(lab) for h, lab in zip(H, N)},
                            }


def _validate_proposition(field: JointField, d: dict) -> bool:
    i = field.site(d["site"])
    J = _set(field, d["J"])
    H = field.sites(d["constraints"])
    if not is_sufficient(field, i, J, J | H):
        return False
    j_assign = dict(zip(J.members, d["j_assign"]))
    got = coarse_conditional(field, i, j_assign, d["constraints"])
    if got is UNDEFINED:
        return False
    return got != conditional(field, i, J).distribution(tuple(d["j_assign"]))


def _search_corollary(ctx: _Ctx) -> Iterator[dict]:
    field = ctx.field
    for i in range(field.n):
        for imask in subsets_of(field.full_mask):
            ctx.checks += 1
            rep = dependence_corollary_check(field, i, mask_members(imask))
            for v in rep.violations:
                yield {"site": field.site_names[i], "kind": "dependence", "I": ctx.names(imask),
                       "J": field.names(v.dependence_set), "target_label": v.target_label,
                       "point": list(v.point)}
        ctx.checks += 1
        red = reduction_family(field, i).reduction_family.as_set()
        si = set(ctx.si(i, field.full_mask & ~(1 << i)))
        if {s.mask for s in red} != si:
            yield {"site": field.site_names[i], "kind": "reduction-vs-si"}


def _validate_corollary(field: JointField, d: dict) -> bool:
    i = field.site(d["site"])
    if d["kind"] == "reduction-vs-si":
        rest = field.complement(i)
        return reduction_family(field, i).reduction_family.as_set() != si_family(field, i, rest).as_set()
    rep = dependence_corollary_check(field, i, _set(field, d["I"]))
    J = _set(field, d["J"])
    return any(v.dependence_set == J for v in rep.violations)


def _search_positivity(ctx: _Ctx) -> Iterator[dict]:
    field = ctx.field
    if not is_positive(field):
        return
    for i in range(field.n):
        ctx.checks += 1
        besag = reduction_family(field, i)
        es = es_family(field, i)
        if not besag.well_defined or es.neighbor != besag.neighbor_set:
            yield {"site": field.site_names[i], "status": besag.status,
                   "minimal_sets": [field.names(s) for s in besag.minimal_sets],
                   "es": [field.names(s) for s in es.family]}


def _validate_positivity(field: JointField, d: dict) -> bool:
    if not is_positive(field):
        return False
    i = field.site(d["site"])
    besag = reduction_family(field, i)
    return not besag.well_defined or es_family(field, i).neighbor != besag.neighbor_set


def _search_mi_downward(ctx: _Ctx) -> Iterator[dict]:
    field = ctx.field
    for i in range(field.n):
        fam = {s.mask for s in mi_family(field, i)}
        for imask in sorted(fam, key=lambda m: (m.bit_count(), m)):
            for jmask in subsets_of(imask):
                if jmask == imask:
                    continue
                ctx.checks += 1
                if jmask not in fam:
                    yield {"site": field.site_names[i], "I": ctx.names(imask), "J": ctx.names(jmask)}


def _validate_mi_downward(field: JointField, d: dict) -> bool:
    i = field.site(d["site"])
    I, J = _set(field, d["I"]), _set(field, d["J"])
    return J < I and mi_membership(field, i, I).minimal and not mi_membership(field, i, J).minimal


_SEARCH: dict[PropertyId, Callable[[_Ctx], Iterator[dict]]] = {
    PropertyId.UN_UNION_CLOSURE: _search_union,
    PropertyId.UN_INTERSECTION_CLOSURE: _search_intersection,
    PropertyId.PARTITION_CONSTANT: _search_partition,
    PropertyId.SI_MONOTONE_A: lambda ctx: _search_monotone(ctx, "a"),
    PropertyId.SI_MONOTONE_B: lambda ctx: _search_monotone(ctx, "b"),
    PropertyId.PROPOSITION_COARSE: _search_proposition,
    PropertyId.COROLLARY_DEPENDENCE: _search_corollary,
    PropertyId.POSITIVITY_WELLDEF: _search_positivity,
    PropertyId.MI_DOWNWARD_CLOSURE: _search_mi_downward,
    PropertyId.TWO_AGENTS: _search_two_agents,
}

_VALIDATE: dict[PropertyId, Callable[[JointField, dict], bool]] = {
    PropertyId.UN_UNION_CLOSURE: _validate_union,
    PropertyId.UN_INTERSECTION_CLOSURE: _validate_intersection,
    PropertyId.PARTITION_CONSTANT: _validate_partition,
    PropertyId.SI_MONOTONE_A: lambda f, d: _validate_monotone(f, d, "a"),
    PropertyId.SI_MONOTONE_B: lambda f, d: _validate_monotone(f, d, "b"),
    PropertyId.PROPOSITION_COARSE: _validate_proposition,
    PropertyId.COROLLARY_DEPENDENCE: _validate_corollary,
    PropertyId.POSITIVITY_WELLDEF: _validate_positivity,
    PropertyId.MI_DOWNWARD_CLOSURE: _validate_mi_downward,
    PropertyId.TWO_AGENTS: _validate_two_agents,
}


# -- public surface ----------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    property: PropertyId
    field: JointField
    detail: dict
    stream_index: int | None = None

    def to_json(self) -> dict:
        return {"property": self.property.value, "field": field_to_json(self.field), "detail": self.detail}

    @classmethod
    def from_json(cls, obj: dict) -> "Witness":
        return cls(PropertyId(obj["property"]), field_from_json(obj["field"]), obj["detail"])


def validate_witness(witness: Witness) -> bool:
    """Re-evaluate a witness in isolation through the public operations."""
    try:
        return _VALIDATE[witness.property](witness.field, witness.detail)
    except (FieldError, KeyError, TypeError):
        return False


@dataclass(frozen=True)
class MineResult:
    property: PropertyId
    witnesses: tuple[Witness, ...]
    fields_scanned: int


def _as_property(prop: PropertyId | str) -> PropertyId:
    if isinstance(prop, PropertyId):
        return prop
    try:
        return PropertyId(str(prop).upper())
    except ValueError:
        raise FieldError(f"unknown property {prop!r}") from None


def mine(prop: PropertyId | str, bounds: EnumerationBounds | None = None,
         config: MineConfig | None = None) -> MineResult:
    """Scan the field stream for instances of ``prop``'s payload.

    Stops after ``config.witness_cap`` witnesses; at most
    ``config.per_field_cap`` come from any one field.
    """
    prop = _as_property(prop)
    bounds = bounds or DEFAULT_BOUNDS[prop]
    config = config or MineConfig()
    search = _SEARCH[prop]
    found: list[Witness] = []
    scanned = 0
    for idx, f in enumerate(enumerate_fields(bounds, cap=config.stream_cap)):
        scanned += 1
        ctx = _Ctx(f, config)
        for detail in itertools.islice(search(ctx), config.per_field_cap):
            found.append(Witness(prop, f, detail, idx))
            if len(found) >= config.witness_cap:
                break
        if len(found) >= config.witness_cap:
            break
    return MineResult(prop, tuple(found), scanned)


@dataclass(frozen=True)
class PropertyOutcome:
    property: PropertyId
    passed: bool
    checks: int
    witnesses: tuple[Witness, ...] = dc_field(default=())


@dataclass(frozen=True)
class TheoremReport:
    field: JointField
    positive: bool
    outcomes: dict[PropertyId, PropertyOutcome]
    neighbors: dict[str, Any]

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes.values())

    def to_json(self) -> dict:
        return {
            "positive": self.positive,
            "passed": self.passed,
            "properties": [
                {"property": p.value, "passed": o.passed, "checks": o.checks,
                 "witnesses": [w.detail for w in o.witnesses]}
                for p, o in self.outcomes.items()
            ],
            "neighbors": self.neighbors,
        }


def _outcome(ctx: _Ctx, prop: PropertyId) -> PropertyOutcome:
    before = ctx.checks
    details = list(itertools.islice(_SEARCH[prop](ctx), ctx.config.witness_cap))
    passed = not details if prop.expectation is Expectation.MUST_HOLD else bool(details)
    witnesses = tuple(Witness(prop, ctx.field, d) for d in details)
    return PropertyOutcome(prop, passed, ctx.checks - before, witnesses)


def check_property(field: JointField, prop: PropertyId | str, config: MineConfig | None = None) -> PropertyOutcome:
    """Run one property's search on a single field.

    ``passed`` means no violation for MustHold properties and at least one
    counterexample for ExpectViolation ones.
    """
    return _outcome(_Ctx(field, config or MineConfig()), _as_property(prop))


def check_theorems(field: JointField, config: MineConfig | None = None, *,
                   limit: int | None = None) -> TheoremReport:
    """Run every MustHold property over the field's own lattice."""
    _check_limit(field.n, limit)
    config = config or MineConfig()
    ctx = _Ctx(field, config)
    outcomes = {p: _outcome(ctx, p) for p in MUST_HOLD}
    neighbors = {field.site_names[i]: neighbor_label(field, es_family(field, i).neighbor)
                 for i in range(field.n)}
    return TheoremReport(field, is_positive(field), outcomes, neighbors)
