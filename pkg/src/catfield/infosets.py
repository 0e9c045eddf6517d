"""Conditional-information structure of a field.

Uninformative events, sufficient / minimal / efficiently sufficient
site-sets, full-conditional reduction sets and conditioning on coarse
(set-valued) evidence. Everything is decided by exact enumeration.

Comparisons between ``P(i|I)`` and ``P(i|J)`` for ``J`` inside ``I`` are made
pointwise on ``M_i x D_I``, with the ``J``-value read at the restriction of
the ``I``-point.
"""

from __future__ import annotations

import enum
from bisect import bisect_left
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional, Union

from .errors import (
    ConditioningEventNull,
    EmptyConstraint,
    NotAPartition,
    NotASubset,
    OverlappingScopes,
    TargetInScope,
)
from .field import (
    UNDEFINED,
    Assignment,
    Event,
    JointField,
    Label,
    SiteRef,
    SiteSet,
    _check_limit,
    _Undefined,
    canonical_sets,
    conditional,
    event_count,
    marginal,
    mask_members,
    omega,
    subsets_of,
)


class Verdict(enum.Enum):
    AMBIGUOUS = "ambiguous"

    def __repr__(self) -> str:
        return f"Verdict.{self.name}"


AMBIGUOUS = Verdict.AMBIGUOUS


class UNStatus(enum.Enum):
    MEMBER_ZERO = "member-zero"
    MEMBER_EQUAL = "member-equal"
    INFORMATIVE = "informative"


@dataclass(frozen=True)
class UNVerdict:
    """Whether ``C`` is uninformative for ``A`` given ``B``.

    ``left_value`` is ``P(A|B,C)`` (undefined when ``P(B,C)=0``) and
    ``right_value`` is ``P(A|B)``.
    """

    status: UNStatus
    left_value: Union[Fraction, _Undefined]
    right_value: Fraction

    @property
    def is_member(self) -> bool:
        return self.status is not UNStatus.INFORMATIVE


@dataclass(frozen=True)
class SiteSetFamily:
    kind: str
    sets: tuple[SiteSet, ...]

    def __iter__(self) -> Iterator[SiteSet]:
        return iter(self.sets)

    def __len__(self) -> int:
        return len(self.sets)

    def __contains__(self, item: Iterable[int]) -> bool:
        return frozenset(item) in self.sets

    def as_set(self) -> set[frozenset]:
        return set(self.sets)

    def minimal(self) -> list[SiteSet]:
        """Inclusion-minimal members."""
        return [s for s in self.sets if not any(t < s for t in self.sets)]


@dataclass(frozen=True)
class PointWitness:
    """A point ``(x_i, x_I)`` where two conditionals disagree."""

    target_label: Label
    point: Assignment
    left: Fraction
    right: Fraction


@dataclass(frozen=True)
class SufficiencyResult:
    sufficient: bool
    witness: Optional[PointWitness] = None

    def __bool__(self) -> bool:
        return self.sufficient


@dataclass(frozen=True)
class MIResult:
    minimal: bool
    reducing_subset: Optional[SiteSet] = None

    def __bool__(self) -> bool:
        return self.minimal


@dataclass(frozen=True)
class ESResult:
    family: SiteSetFamily
    neighbor: Union[SiteSet, Verdict, None]


@dataclass(frozen=True)
class BesagStatus:
    well_defined: bool
    minimal_sets: tuple[SiteSet, ...]
    reduction_family: SiteSetFamily

    @property
    def status(self) -> str:
        return "well-defined" if self.well_defined else "ambiguous"

    @property
    def neighbor_set(self) -> Optional[SiteSet]:
        return self.minimal_sets[0] if self.well_defined else None


@dataclass(frozen=True)
class PartitionCheck:
    holds: bool
    c: Union[Fraction, _Undefined]
    prior: Fraction
    per_cell: tuple[UNVerdict, ...]


@dataclass(frozen=True)
class CorollaryViolation:
    dependence_set: SiteSet
    target_label: Label
    point: Assignment
    full_value: Fraction
    reduced_value: Fraction


@dataclass(frozen=True)
class CorollaryReport:
    target: int
    scope: SiteSet
    dependence_sets: tuple[SiteSet, ...]
    violations: tuple[CorollaryViolation, ...] = dc_field(default=())

    @property
    def passed(self) -> bool:
        return not self.violations


# -- uninformative events ----------------------------------------------------


def is_uninformative(field: JointField, A: Event, B: Event, C: Event) -> UNVerdict:
    b = event_count(field, B)
    if b == 0:
        raise ConditioningEventNull("P(B) = 0, so P(A|B) is undefined")
    ab = event_count(field, A & B)
    right = Fraction(ab, b)
    bc = event_count(field, B & C)
    if bc == 0:
        return UNVerdict(UNStatus.MEMBER_ZERO, UNDEFINED, right)
    left = Fraction(event_count(field, A & B & C), bc)
    status = UNStatus.MEMBER_EQUAL if left == right else UNStatus.INFORMATIVE
    return UNVerdict(status, left, right)


def _check_partition(field: JointField, partition: list[Event]) -> None:
    seen: dict[Assignment, int] = {}
    for k, cell in enumerate(partition):
        for m in cell.members:
            if m in seen:
                raise NotAPartition(f"cells {seen[m]} and {k} overlap at {list(m)}")
            seen[m] = k
    for m in omega(field).members:
        if m not in seen:
            raise NotAPartition(f"no cell contains {list(m)}")
    if len(seen) != field.outcome_count():
        raise NotAPartition("cells contain assignments outside the outcome space")


def partition_constant_check(field: JointField, A: Event, B: Event, partition: Iterable[Event]) -> PartitionCheck:
    """Do all cells ``C`` with ``P(B,C) > 0`` give the same ``P(A|B,C)``?

    When they do, the common value is reported as ``c`` alongside the prior
    ``P(A|B)``; the two should coincide.
    """
    partition = list(partition)
    if event_count(field, B) == 0:
        raise ConditioningEventNull("P(B) = 0, so P(A|B) is undefined")
    _check_partition(field, partition)
    verdicts = tuple(is_uninformative(field, A, B, C) for C in partition)
    values = {v.left_value for v in verdicts if v.status is not UNStatus.MEMBER_ZERO}
    prior = verdicts[0].right_value
    if len(values) == 1:
        return PartitionCheck(True, values.pop(), prior, verdicts)
    return PartitionCheck(False, UNDEFINED, prior, verdicts)


# -- sufficient and minimal information sets ---------------------------------


def _counts(field: JointField, mask: int):
    return marginal(field, SiteSet.from_mask(mask)).counts


def _scope_mask(field: JointField, S) -> int:
    return field.sites(S).mask


def _violations(field: JointField, i: int, jmask: int, imask: int) -> Iterator[PointWitness]:
    """Points of ``M_i x D_I`` where ``P(x_i|x_I) != P(x_i|x_J)``, canonical order."""
    bit = 1 << i
    c_I = _counts(field, imask)
    c_Ii = _counts(field, imask | bit)
    c_J = _counts(field, jmask)
    c_Ji = _counts(field, jmask | bit)
    I_mem = mask_members(imask)
    J_mem = mask_members(jmask)
    proj = field.projector(tuple(I_mem.index(j) for j in J_mem))

    ext_I = _extender(I_mem, i)
    ext_J = _extender(J_mem, i)

    for xi in field.alphabets[i]:
        for xI, den_I in c_I.items():
            xJ = proj(xI)
            den_J = c_J[xJ]
            kI = ext_I(xI, xi)
            kJ = ext_J(xJ, xi)
            num_I = c_Ii.get(kI, 0) if kI is not None else 0
            num_J = c_Ji.get(kJ, 0) if kJ is not None else 0
            if num_I * den_J != num_J * den_I:
                yield PointWitness(xi, xI, Fraction(num_I, den_I), Fraction(num_J, den_J))


def _extender(members: tuple[int, ...], i: int):
    """Key builder for ``members | {i}`` from a point on ``members`` and ``x_i``;
    ``None`` marks a point inconsistent with ``x_i``."""
    if i in members:
        at = members.index(i)
        return lambda x, xi: x if x[at] == xi else None
    at = bisect_left(members, i)
    return lambda x, xi: x[:at] + (xi,) + x[at:]


def _sufficient(field: JointField, i: int, jmask: int, imask: int) -> bool:
    return next(_violations(field, i, jmask, imask), None) is None


def is_sufficient(field: JointField, i: SiteRef, J, I) -> SufficiencyResult:
    """Is ``J`` a sufficient information set for site ``i`` given ``I``?"""
    i = field.site(i)
    jmask, imask = _scope_mask(field, J), _scope_mask(field, I)
    if jmask & ~imask:
        raise NotASubset(f"{field.names(SiteSet.from_mask(jmask))} is not inside "
                         f"{field.names(SiteSet.from_mask(imask))}")
    w = next(_violations(field, i, jmask, imask), None)
    return SufficiencyResult(w is None, w)


def _si_masks(field: JointField, i: int, imask: int) -> list[int]:
    return [j for j in subsets_of(imask) if _sufficient(field, i, j, imask)]


def si_family(field: JointField, i: SiteRef, I, *, limit: int | None = None) -> SiteSetFamily:
    """All ``J`` inside ``I`` with ``P(i|J) = P(i|I)`` on ``M_i x D_I``."""
    i = field.site(i)
    imask = _scope_mask(field, I)
    _check_limit(imask.bit_count(), limit)
    return SiteSetFamily("SI", tuple(canonical_sets(_si_masks(field, i, imask))))


def mi_membership(field: JointField, i: SiteRef, I, *, allow_target: bool = False,
                  limit: int | None = None) -> MIResult:
    """Is ``I`` a minimal information set for ``i``?

    When it is not, the smallest (then lexicographically first) proper
    subset reproducing ``P(i|I)`` is returned.
    """
    i = field.site(i)
    scope = field.sites(I)
    if i in scope and not allow_target:
        raise TargetInScope(f"site {field.site_names[i]!r} is in its own information set")
    _check_limit(len(scope), limit)
    imask = scope.mask
    proper = canonical_sets(j for j in subsets_of(imask) if j != imask)
    for J in proper:
        if _sufficient(field, i, J.mask, imask):
            return MIResult(False, J)
    return MIResult(True, None)


def _is_minimal(field: JointField, i: int, imask: int) -> bool:
    # SI(i,I) is upward closed inside I, so a reducing proper subset exists
    # iff some co-atom I - {k} reduces.
    m = imask
    while m:
        low = m & -m
        if _sufficient(field, i, imask & ~low, imask):
            return False
        m ^= low
    return True


def mi_family(field: JointField, i: SiteRef, *, include_target: bool = False,
              limit: int | None = None) -> SiteSetFamily:
    """All minimal information sets for ``i`` drawn from the other sites
    (or from every site with ``include_target``)."""
    i = field.site(i)
    universe = field.full_mask if include_target else field.full_mask & ~(1 << i)
    _check_limit(universe.bit_count(), limit)
    masks = [m for m in subsets_of(universe) if _is_minimal(field, i, m)]
    return SiteSetFamily("MI", tuple(canonical_sets(masks)))


def es_family(field: JointField, i: SiteRef, *, limit: int | None = None) -> ESResult:
    """Efficiently sufficient sets: ``MI(i)`` intersected with ``SI(i, i^c)``.

    The neighbor verdict is the single member when there is exactly one
    (possibly the empty set), otherwise :data:`AMBIGUOUS`.
    """
    i = field.site(i)
    rest = field.complement(i)
    si = si_family(field, i, rest, limit=limit)
    mi = mi_family(field, i, limit=limit)
    fam = SiteSetFamily("ES", tuple(s for s in mi if s in si))
    if len(fam) == 1:
        neighbor: Union[SiteSet, Verdict, None] = fam.sets[0]
    elif fam.sets:
        neighbor = AMBIGUOUS
    else:
        neighbor = None
    return ESResult(fam, neighbor)


def _minimal_masks(masks: list[int]) -> list[int]:
    return [m for m in masks if not any(o != m and o & m == o for o in masks)]


def reduction_family(field: JointField, i: SiteRef, *, limit: int | None = None) -> BesagStatus:
    """Site-sets through which the full conditional of ``i`` factors.

    ``J`` qualifies when every two points of ``D_{i^c}`` that agree on ``J``
    carry identical conditional distributions of ``X_i``. The functional
    form is well defined iff the family has exactly one inclusion-minimal
    member.
    """
    i = field.site(i)
    rest = field.complement(i)
    _check_limit(len(rest), limit)
    cond = conditional(field, i, rest)
    rest_mem = rest.members
    vectors: dict[Assignment, tuple] = {}
    for (xi, u), v in cond.values.items():
        vectors.setdefault(u, []).append(v)
    vectors = {u: tuple(v) for u, v in vectors.items()}

    masks = []
    for jmask in subsets_of(rest.mask):
        proj = field.projector(tuple(rest_mem.index(j) for j in mask_members(jmask)))
        seen: dict[Assignment, tuple] = {}
        for u, vec in vectors.items():
            if seen.setdefault(proj(u), vec) != vec:
                break
        else:
            masks.append(jmask)
    fam = SiteSetFamily("Reduction", tuple(canonical_sets(masks)))
    minimal = tuple(canonical_sets(_minimal_masks(masks)))
    return BesagStatus(len(minimal) == 1, minimal, fam)


# -- coarse evidence and functional dependence -------------------------------


def coarse_conditional(
    field: JointField,
    i: SiteRef,
    j_assign: Mapping[SiteRef, Label],
    constraints: Mapping[SiteRef, Iterable[Label]] | None = None,
) -> dict[Label, Fraction] | _Undefined:
    """``P(X_i = . | X_J = j_assign, X_h in N_h for h in H)``.

    Returns :data:`UNDEFINED` when the conditioning event is null.
    """
    i = field.site(i)
    fixed = {field.site(s): lab for s, lab in j_assign.items()}
    allowed = {}
    for s, labels in (constraints or {}).items():
        s = field.site(s)
        labels = frozenset(labels)
        if not labels:
            raise EmptyConstraint(f"empty label set for site {field.site_names[s]!r}")
        allowed[s] = labels
    overlap = fixed.keys() & allowed.keys()
    if overlap:
        raise OverlappingScopes(f"sites {field.names(overlap)} are both fixed and constrained")
    for s, lab in fixed.items():
        field.label_position(s, lab)
    for s, labels in allowed.items():
        for lab in labels:
            field.label_position(s, lab)

    fixed_items = list(fixed.items())
    allowed_items = list(allowed.items())
    num = dict.fromkeys(field.alphabets[i], 0)
    den = 0
    for key, c in field.counts.items():
        if all(key[s] == lab for s, lab in fixed_items) and all(key[s] in ok for s, ok in allowed_items):
            den += c
            num[key[i]] += c
    if den == 0:
        return UNDEFINED
    return {lab: Fraction(v, den) for lab, v in num.items()}


def dependence_corollary_check(field: JointField, i: SiteRef, I, *, limit: int | None = None) -> CorollaryReport:
    """Verify that functional dependence of ``P(i|I)`` on ``x_J`` alone
    implies ``P(i|I) = P(i|J)`` wherever ``P(i|I)`` is defined."""
    i = field.site(i)
    scope = field.sites(I)
    _check_limit(len(scope), limit)
    full = conditional(field, i, scope)
    vectors: dict[Assignment, list] = {}
    for (xi, xI), v in full.values.items():
        vectors.setdefault(xI, []).append(v)
    members = scope.members

    dependent, violations = [], []
    for J in canonical_sets(subsets_of(scope.mask)):
        proj = field.projector(tuple(members.index(j) for j in J.members))
        seen: dict[Assignment, list] = {}
        if any(seen.setdefault(proj(xI), vec) != vec for xI, vec in vectors.items()):
            continue
        dependent.append(J)
        reduced = conditional(field, i, J)
        for xi in field.alphabets[i]:
            for xI in vectors:
                lhs = full.values[(xi, xI)]
                rhs = reduced.values[(xi, proj(xI))]
                if lhs != rhs:
                    violations.append(CorollaryViolation(J, xi, xI, lhs, rhs))
    return CorollaryReport(i, scope, tuple(dependent), tuple(violations))


def family_names(field: JointField, family: Iterable[SiteSet]) -> list[list[str]]:
    return [field.names(s) for s in family]


__all__ = [
    "AMBIGUOUS",
    "BesagStatus",
    "CorollaryReport",
    "CorollaryViolation",
    "ESResult",
    "MIResult",
    "PartitionCheck",
    "PointWitness",
    "SiteSetFamily",
    "SufficiencyResult",
    "UNStatus",
    "UNVerdict",
    "Verdict",
    "coarse_conditional",
    "dependence_corollary_check",
    "es_family",
    "family_names",
    "is_sufficient",
    "is_uninformative",
    "mi_family",
    "mi_membership",
    "partition_constant_check",
    "reduction_family",
    "si_family",
]
