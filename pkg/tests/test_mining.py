import json
from fractions import Fraction

import pytest

from catfield import builtin_fixture, cylinder, is_positive, marginal, omega, uniform8_events
from catfield.errors import BoundsTooLarge, FieldError, InstanceTooLarge, UnknownFixture
from catfield.fixtures import FIXTURE_NAMES
from catfield.io import field_to_json
from catfield.mining import (
    DEFAULT_BOUNDS,
    EXPECT_VIOLATION,
    MUST_HOLD,
    EnumerationBounds,
    Expectation,
    MineConfig,
    PropertyId,
    Witness,
    check_property,
    check_theorems,
    enumerate_fields,
    mine,
    validate_witness,
)


class TestFixtures:
    def test_table2_not_positive(self):
        assert not is_positive(builtin_fixture("TABLE2"))

    def test_coins(self):
        f = builtin_fixture("COINS", k=2)
        assert is_positive(f) and set(f.mass.values()) == {Fraction(1, 4)}

    def test_copy_masses(self):
        f = builtin_fixture("COPY")
        assert sum(f.mass.values()) == 1 and len(f.mass) == 4

    def test_chain_is_positive_flip_chain(self):
        f = builtin_fixture("CHAIN")
        assert is_positive(f)
        assert f.prob(("0", "0", "0")) == Fraction(1, 2) * Fraction(3, 4) ** 2
        assert f.prob(("0", "1", "0")) == Fraction(1, 2) * Fraction(1, 4) ** 2

    def test_unknown(self):
        with pytest.raises(UnknownFixture):
            builtin_fixture("TABLE9")

    def test_all_names_build(self):
        for name in FIXTURE_NAMES:
            assert sum(builtin_fixture(name).mass.values()) == 1


class TestEnumeration:
    def test_single_fair_coin(self):
        fields = list(enumerate_fields(EnumerationBounds(1, 2, (0, 1), 0, 0)))
        assert len(fields) == 1
        assert fields[0].mass == {("0",): Fraction(1, 2), ("1",): Fraction(1, 2)}

    def test_scale_duplicates_removed(self):
        fields = list(enumerate_fields(EnumerationBounds(1, 2, (0, 1, 2), 0, 0)))
        # weights (1,1),(2,2) coincide; (1,2),(2,1) are distinct
        assert len(fields) == 3

    def test_deterministic(self):
        b = EnumerationBounds(2, 2, (0, 1), 10, 42)
        assert list(enumerate_fields(b)) == list(enumerate_fields(b))

    def test_random_part_follows_seed(self):
        a = list(enumerate_fields(EnumerationBounds(1, 2, (1,), 5, 1)))
        b = list(enumerate_fields(EnumerationBounds(1, 2, (1,), 5, 2)))
        assert len(a) == len(b) == 6 and a != b

    def test_no_zero_marginals(self):
        for f in enumerate_fields(EnumerationBounds(2, 2, (0, 1), 20, 3)):
            for s in range(f.n):
                assert set(marginal(f, [s]).support) == {(lab,) for lab in f.alphabets[s]}

    def test_too_large(self):
        with pytest.raises(BoundsTooLarge):
            enumerate_fields(EnumerationBounds(3, 3, (0, 1, 2), 0, 0))

    @pytest.mark.parametrize("kwargs", [dict(max_sites=0), dict(weight_grid=(0,)), dict(weight_grid=(-1, 1))])
    def test_invalid_bounds(self, kwargs):
        with pytest.raises(FieldError):
            EnumerationBounds(**kwargs)


class TestProperties:
    def test_expectations(self):
        assert set(EXPECT_VIOLATION) == {
            PropertyId.UN_INTERSECTION_CLOSURE, PropertyId.MI_DOWNWARD_CLOSURE, PropertyId.TWO_AGENTS}
        assert len(MUST_HOLD) == 7
        assert all(p.expectation is Expectation.MUST_HOLD for p in MUST_HOLD)

    def test_uniform8_validates_for_intersection(self):
        f = builtin_fixture("UNIFORM8")
        ev = uniform8_events(f)
        detail = {k: [list(a) for a in sorted(ev[k])] for k in ("A", "B", "C1", "C2")}
        assert validate_witness(Witness(PropertyId.UN_INTERSECTION_CLOSURE, f, detail))

    def test_table1_validates_for_mi_downward(self, table1):
        detail = {"site": "X", "I": ["Y", "Z"], "J": ["Y"]}
        assert validate_witness(Witness(PropertyId.MI_DOWNWARD_CLOSURE, table1, detail))

    def test_table1_validates_for_two_agents(self, table1):
        detail = {"target": {"X": "1"}, "partition_site": "Y", "evidence": {"Z": "0"}}
        assert validate_witness(Witness(PropertyId.TWO_AGENTS, table1, detail))

    def test_validation_rejects_non_witness(self, table1):
        detail = {"target": {"X": "1"}, "partition_site": "Y", "evidence": {"Z": "1"}}
        assert not validate_witness(Witness(PropertyId.TWO_AGENTS, table1, detail))
        assert not validate_witness(Witness(PropertyId.MI_DOWNWARD_CLOSURE, table1, {"site": "X"}))

    def test_check_property_on_fixtures(self, table1, uniform8):
        assert check_property(table1, "MI_DOWNWARD_CLOSURE").passed
        assert check_property(table1, PropertyId.TWO_AGENTS).passed
        assert check_property(uniform8, PropertyId.UN_INTERSECTION_CLOSURE).passed


class TestMine:
    @pytest.mark.parametrize("prop", EXPECT_VIOLATION)
    def test_refutations_found_and_revalidate(self, prop):
        res = mine(prop)
        assert res.witnesses
        assert all(validate_witness(w) for w in res.witnesses)

    def test_must_hold_tiny(self):
        res = mine(PropertyId.SI_MONOTONE_A, EnumerationBounds(2, 2, (0, 1), 0, 0))
        assert res.witnesses == () and res.fields_scanned > 0

    def test_deterministic(self):
        a = mine("TWO_AGENTS", config=MineConfig(witness_cap=5))
        b = mine("TWO_AGENTS", config=MineConfig(witness_cap=5))
        assert [w.to_json() for w in a.witnesses] == [w.to_json() for w in b.witnesses]
        assert [w.stream_index for w in a.witnesses] == sorted(w.stream_index for w in a.witnesses)

    def test_caps(self):
        res = mine("MI_DOWNWARD_CLOSURE", config=MineConfig(witness_cap=3))
        assert len(res.witnesses) == 3
        assert len({w.stream_index for w in res.witnesses}) == 3

    def test_witness_json_round_trip(self):
        w = mine("UN_INTERSECTION_CLOSURE").witnesses[0]
        obj = json.loads(json.dumps(w.to_json()))
        assert set(obj) == {"property", "field", "detail"}
        again = Witness.from_json(obj)
        assert again.field == w.field and validate_witness(again)

    def test_unknown_property(self):
        with pytest.raises(FieldError):
            mine("NOPE")

    def test_default_bounds_cover_all(self):
        assert set(DEFAULT_BOUNDS) == set(PropertyId)


class TestCheckTheorems:
    def test_table1(self, table1):
        rep = check_theorems(table1)
        assert rep.passed and set(rep.outcomes) == set(MUST_HOLD)

    def test_coins_neighbors_empty(self):
        rep = check_theorems(builtin_fixture("COINS", k=3))
        assert rep.passed and set(rep.neighbors.values()) == {"empty"}

    def test_chain(self, chain):
        rep = check_theorems(chain)
        assert rep.passed and rep.positive
        assert rep.outcomes[PropertyId.POSITIVITY_WELLDEF].checks == 3
        assert rep.neighbors["X2"] == ["X1", "X3"]

    def test_json(self, copy_field):
        obj = check_theorems(copy_field).to_json()
        assert obj["passed"] and obj["neighbors"]["X3"] == "ambiguous"
        assert [p["property"] for p in obj["properties"]] == [p.value for p in MUST_HOLD]

    def test_guard(self, chain):
        with pytest.raises(InstanceTooLarge):
            check_theorems(chain, limit=2)


class TestSearchesDetectPlantedBugs:
    """A MustHold search that never fires could be vacuous; break the code
    underneath it and make sure it notices."""

    def test_si_monotone_b_flags_dropped_superset(self, monkeypatch, chain):
        import catfield.mining as m

        real = m._si_masks
        monkeypatch.setattr(m, "_si_masks", lambda f, i, imask: [j for j in real(f, i, imask) if j != imask] or [0])
        out = check_property(chain, PropertyId.SI_MONOTONE_B)
        assert not out.passed and out.witnesses

    def test_positivity_flags_ambiguous_reduction(self, monkeypatch, chain):
        import catfield.mining as m
        from catfield.infosets import BesagStatus, SiteSetFamily

        fake = BesagStatus(False, (), SiteSetFamily("Reduction", ()))
        monkeypatch.setattr(m, "reduction_family", lambda f, i: fake)
        out = check_property(chain, PropertyId.POSITIVITY_WELLDEF)
        assert not out.passed
        assert all(validate_witness(w) for w in out.witnesses)

    def test_proposition_flags_wrong_coarse(self, monkeypatch, copy_field):
        import catfield.mining as m

        monkeypatch.setattr(m, "coarse_conditional", lambda *a, **k: {"0": Fraction(1), "1": Fraction(0)})
        assert not check_property(copy_field, PropertyId.PROPOSITION_COARSE).passed
