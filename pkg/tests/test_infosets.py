import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from catfield import (
    AMBIGUOUS,
    UNDEFINED,
    Event,
    UNStatus,
    build_field,
    builtin_fixture,
    coarse_conditional,
    conditional,
    cylinder,
    dependence_corollary_check,
    es_family,
    is_positive,
    is_sufficient,
    is_uninformative,
    mi_family,
    mi_membership,
    omega,
    partition_constant_check,
    reduction_family,
    si_family,
    uniform8_events,
)
from catfield.errors import (
    ConditioningEventNull,
    EmptyConstraint,
    InstanceTooLarge,
    NotAPartition,
    NotASubset,
    OverlappingScopes,
    TargetInScope,
)

from . import oracles
from .conftest import fields

X1, X2, X3 = 0, 1, 2
X, Y, Z = 0, 1, 2


def S(*sites):
    return frozenset(sites)


class TestUninformative:
    def test_example2_members_and_intersection(self, uniform8):
        ev = uniform8_events(uniform8)
        for c in ("C1", "C2"):
            v = is_uninformative(uniform8, ev["A"], ev["B"], ev[c])
            assert v.status is UNStatus.MEMBER_EQUAL
            assert v.left_value == v.right_value == Fraction(1, 2)
        v = is_uninformative(uniform8, ev["A"], ev["B"], ev["C1"] & ev["C2"])
        assert v.status is UNStatus.INFORMATIVE
        assert (v.left_value, v.right_value) == (0, Fraction(1, 2))

    def test_omega_is_member(self, table1):
        A = cylinder(table1, {"X": "1"})
        B = cylinder(table1, {"Z": "0"})
        assert is_uninformative(table1, A, B, omega(table1)).status is UNStatus.MEMBER_EQUAL

    def test_null_intersection(self, table1):
        A = cylinder(table1, {"X": "1"})
        B = cylinder(table1, {"Z": "1"})
        v = is_uninformative(table1, A, B, cylinder(table1, {"Y": "0"}))
        assert v.status is UNStatus.MEMBER_ZERO and v.left_value is UNDEFINED

    def test_null_conditioning_event(self, table1):
        with pytest.raises(ConditioningEventNull):
            is_uninformative(table1, omega(table1), Event(), omega(table1))

    @given(fields(max_sites=2, max_alphabet=3))
    @settings(max_examples=40)
    def test_disjoint_union_closure(self, f):
        pts = list(omega(f))
        A = Event(pts[::2])
        cells = [Event([p]) for p in pts]
        for B in (omega(f), Event(pts[1:])):
            try:
                members = [C for C in cells if is_uninformative(f, A, B, C).is_member]
            except ConditioningEventNull:
                continue
            union = Event()
            for C in members:
                union = union | C
            assert is_uninformative(f, A, B, union).is_member


class TestPartition:
    def test_example2_half_split(self, uniform8):
        ev = uniform8_events(uniform8)
        res = partition_constant_check(uniform8, ev["A"], ev["B"], [ev["C1"], omega(uniform8) - ev["C1"]])
        assert res.holds and res.c == res.prior == Fraction(1, 2)

    def test_single_cell(self, table1):
        A = cylinder(table1, {"X": "1"})
        res = partition_constant_check(table1, A, omega(table1), [omega(table1)])
        assert res.holds and res.c == res.prior == Fraction(1, 2)

    def test_table1_y_partition(self, table1):
        A = cylinder(table1, {"X": "1"})
        cells = [cylinder(table1, {"Y": v}) for v in ("1", "0")]
        res = partition_constant_check(table1, A, omega(table1), cells)
        assert res.holds and res.c == Fraction(1, 2)
        assert all(v.status is UNStatus.MEMBER_EQUAL for v in res.per_cell)

    def test_informative_partition(self, table1):
        A = cylinder(table1, {"X": "1"})
        cells = [cylinder(table1, {"Y": v}) for v in ("1", "0")]
        res = partition_constant_check(table1, A, cylinder(table1, {"Z": "0"}), cells)
        assert not res.holds and res.c is UNDEFINED

    def test_not_a_partition(self, table1):
        A = cylinder(table1, {"X": "1"})
        with pytest.raises(NotAPartition, match="overlap"):
            partition_constant_check(table1, A, omega(table1), [omega(table1), cylinder(table1, {"Y": "1"})])
        with pytest.raises(NotAPartition, match="no cell"):
            partition_constant_check(table1, A, omega(table1), [cylinder(table1, {"Y": "1"})])

    @given(fields(max_sites=3, max_alphabet=2))
    @settings(max_examples=40)
    def test_common_value_is_prior(self, f):
        for a in range(f.n):
            A = cylinder(f, {a: f.alphabets[a][0]})
            for h in range(f.n):
                cells = [cylinder(f, {h: v}) for v in f.alphabets[h]]
                res = partition_constant_check(f, A, omega(f), cells)
                if res.holds:
                    assert res.c == res.prior


class TestSufficiency:
    def test_table1_witness(self, table1):
        res = is_sufficient(table1, X, [Y], [Y, Z])
        assert not res.sufficient
        w = res.witness
        assert (w.target_label, w.point) == ("1", ("1", "1"))
        assert (w.left, w.right) == (1, Fraction(1, 2))

    def test_reflexive(self, chain):
        assert is_sufficient(chain, 0, [1, 2], [1, 2])

    def test_copy(self, copy_field):
        assert is_sufficient(copy_field, X3, [X1], [X1, X2])

    def test_not_subset(self, table1):
        with pytest.raises(NotASubset):
            is_sufficient(table1, X, [Y], [Z])

    def test_si_families(self, table1, copy_field):
        assert si_family(table1, X, [Y, Z]).as_set() == {S(Y, Z)}
        assert si_family(table1, X, []).as_set() == {S()}
        assert si_family(copy_field, X3, [X1, X2]).as_set() == {S(X1), S(X2), S(X1, X2)}

    def test_target_in_scope(self, chain):
        fam = si_family(chain, 1, [0, 1, 2])
        assert S(1) in fam and S(0, 1, 2) in fam

    def test_canonical_order(self, copy_field):
        assert [s.members for s in si_family(copy_field, X3, [X1, X2])] == [(0,), (1,), (0, 1)]

    def test_guard(self, chain):
        with pytest.raises(InstanceTooLarge):
            si_family(chain, 0, [1, 2], limit=1)

    @given(fields())
    @settings(max_examples=60)
    def test_si_matches_oracle(self, f):
        for i in range(f.n):
            for I in oracles.all_subsets(range(f.n)):
                assert si_family(f, i, I).as_set() == oracles.si(f, i, I)

    @given(fields())
    @settings(max_examples=60)
    def test_monotonicity(self, f):
        for i in range(f.n):
            for I in oracles.all_subsets(range(f.n)):
                fam = si_family(f, i, I)
                for J in fam:
                    for H in oracles.all_subsets(I):
                        if J <= H:
                            assert J in si_family(f, i, H)
                            assert H in fam


class TestMinimal:
    def test_table1(self, table1):
        assert mi_membership(table1, X, [Y, Z]).minimal
        res = mi_membership(table1, X, [Y])
        assert not res.minimal and res.reducing_subset == S()
        assert mi_membership(table1, X, []).minimal

    def test_table1_family_not_downward_closed(self, table1):
        fam = mi_family(table1, X)
        assert S(Y, Z) in fam and S() in fam and S(Y) not in fam

    def test_single_site(self):
        f = build_field({"A": ("0", "1")}, [(("0",), 1), (("1",), 1)])
        assert mi_family(f, 0).as_set() == {S()}

    def test_copy(self, copy_field):
        fam = mi_family(copy_field, X3)
        assert S(X1) in fam and S(X2) in fam

    def test_target_flag(self, table1):
        with pytest.raises(TargetInScope):
            mi_membership(table1, X, [X])
        assert mi_membership(table1, X, [X], allow_target=True).minimal
        assert S(X) in mi_family(table1, X, include_target=True)

    def test_smallest_reducing_subset(self, copy_field):
        res = mi_membership(copy_field, X3, [X1, X2])
        assert res.reducing_subset == S(X1)

    @given(fields())
    @settings(max_examples=60)
    def test_family_matches_membership_and_oracle(self, f):
        for i in range(f.n):
            fam = mi_family(f, i)
            rest = [s for s in range(f.n) if s != i]
            assert fam.as_set() == oracles.mi(f, i, rest)
            for I in oracles.all_subsets(rest):
                assert mi_membership(f, i, I).minimal == (I in fam)


class TestEfficientlySufficient:
    def test_table2(self, table2):
        for i, other in ((X, Y), (Y, X)):
            res = es_family(table2, i)
            assert res.family.as_set() == {S(other)}
            assert res.neighbor == S(other)

    def test_table1(self, table1):
        res = es_family(table1, X)
        assert res.family.as_set() == {S(Y, Z)} and res.neighbor == S(Y, Z)

    def test_copy_ambiguous(self, copy_field):
        res = es_family(copy_field, X3)
        assert res.family.as_set() == {S(X1), S(X2)}
        assert res.neighbor is AMBIGUOUS

    def test_isolated_site(self):
        coins = builtin_fixture("COINS", k=2)
        res = es_family(coins, 0)
        assert res.family.as_set() == {S()} and res.neighbor == S()

    @given(fields())
    @settings(max_examples=60)
    def test_es_is_minimal_si(self, f):
        for i in range(f.n):
            rest = [s for s in range(f.n) if s != i]
            es = es_family(f, i).family.as_set()
            assert es == oracles.minimal(si_family(f, i, rest).as_set())


class TestReduction:
    def test_copy_ambiguous(self, copy_field):
        st = reduction_family(copy_field, X3)
        assert not st.well_defined and st.status == "ambiguous"
        assert set(st.minimal_sets) == {S(X1), S(X2)}

    def test_chain_middle(self, chain):
        st = reduction_family(chain, 1)
        assert st.well_defined and st.neighbor_set == S(0, 2)

    def test_coins(self):
        st = reduction_family(builtin_fixture("COINS", k=3), 0)
        assert st.well_defined and st.neighbor_set == S()

    @given(fields())
    @settings(max_examples=60)
    def test_matches_oracle_and_si(self, f):
        for i in range(f.n):
            fam = reduction_family(f, i).reduction_family.as_set()
            assert fam == oracles.reductions(f, i)
            assert fam == si_family(f, i, [s for s in range(f.n) if s != i]).as_set()

    @given(fields(max_sites=3, max_alphabet=3).filter(is_positive))
    @settings(max_examples=40)
    def test_positivity_gives_unique_reduction(self, f):
        for i in range(f.n):
            st = reduction_family(f, i)
            assert st.well_defined
            assert es_family(f, i).neighbor == st.neighbor_set


class TestCoarse:
    def test_copy(self, copy_field):
        got = coarse_conditional(copy_field, X3, {X1: "1"}, {X2: ["0", "1"]})
        assert got["1"] == Fraction(3, 4)
        assert got == conditional(copy_field, X3, [X1]).distribution(("1",))

    def test_singletons_match_conditional(self, table1):
        got = coarse_conditional(table1, X, {Y: "0"}, {Z: ["0"]})
        assert got == conditional(table1, X, [Y, Z]).distribution(("0", "0"))

    def test_table2(self, table2):
        assert coarse_conditional(table2, X, {}, {Y: ["0"]})["1"] == 0

    def test_undefined(self, table1):
        assert coarse_conditional(table1, X, {Y: "0"}, {Z: ["1"]}) is UNDEFINED

    def test_errors(self, table1):
        with pytest.raises(OverlappingScopes):
            coarse_conditional(table1, X, {Y: "0"}, {Y: ["1"]})
        with pytest.raises(EmptyConstraint):
            coarse_conditional(table1, X, {}, {Y: []})

    @given(fields(max_sites=3, max_alphabet=3))
    @settings(max_examples=40)
    def test_proposition(self, f):
        for i in range(f.n):
            others = [s for s in range(f.n) if s != i]
            for J in oracles.all_subsets(others):
                for H in oracles.all_subsets([s for s in others if s not in J]):
                    if not H or not is_sufficient(f, i, J, J | H):
                        continue
                    cond = conditional(f, i, J)
                    choices = [[c for r in range(1, len(f.alphabets[h]) + 1)
                                for c in itertools.combinations(f.alphabets[h], r)] for h in sorted(H)]
                    for xJ in cond.conditioning_support:
                        for N in itertools.product(*choices):
                            got = coarse_conditional(f, i, dict(zip(sorted(J), xJ)), dict(zip(sorted(H), N)))
                            if got is not UNDEFINED:
                                assert got == cond.distribution(xJ)


class TestCorollary:
    def test_table1(self, table1):
        rep = dependence_corollary_check(table1, X, [Y, Z])
        assert rep.dependence_sets == (S(Y, Z),) and rep.passed

    def test_copy(self, copy_field):
        rep = dependence_corollary_check(copy_field, X3, [X1, X2])
        assert set(rep.dependence_sets) == {S(X1), S(X2), S(X1, X2)} and rep.passed

    @given(fields())
    @settings(max_examples=60)
    def test_no_violations(self, f):
        for i in range(f.n):
            for I in oracles.all_subsets(range(f.n)):
                rep = dependence_corollary_check(f, i, I)
                assert rep.passed
                assert I in rep.dependence_sets
