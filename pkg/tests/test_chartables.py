import copy
import json

import pytest

from conftest import SLUGS, fixture_keys
from pqverify.chartables import (
    TableError,
    eligible_classes,
    is_prime,
    load_fixture,
    load_table,
    load_table_file,
    prime_divisors,
    psl2_generic_table,
    table_from_dict,
    table_to_dict,
    tables_equivalent,
    validate_table,
)
from pqverify.cyclotomic import Cyclotomic


@pytest.mark.parametrize("slug,p", fixture_keys())
def test_every_fixture_validates(slug, p):
    t = load_fixture(slug, p)
    rep = validate_table(t)
    assert rep.ok, rep.failures
    assert t.characteristic == p


@pytest.mark.parametrize("slug", SLUGS)
def test_fixtures_have_all_brauer_tables(slug):
    t = load_fixture(slug)
    for p in prime_divisors(t.group_order):
        b = load_fixture(slug, p)
        assert all(c.element_order % p for c in b.classes)
        assert set(b.class_names) <= set(t.class_names)


def test_classes_in_canonical_order():
    for slug in SLUGS:
        t = load_fixture(slug)
        keys = [(c.element_order, c.size, c.name) for c in t.classes]
        assert keys == sorted(keys)


@pytest.mark.parametrize("p", [q for q in range(5, 38) if is_prime(q)])
def test_generic_psl2_validates(p):
    t = psl2_generic_table(p)
    assert validate_table(t).ok
    assert t.group_order == p * (p * p - 1) // 2


@pytest.mark.parametrize("p,slug", [(5, "A5"), (7, "L2_7"), (17, "L2_17")])
def test_generic_psl2_matches_fixture(p, slug):
    assert tables_equivalent(psl2_generic_table(p), load_fixture(slug))


def test_generic_psl2_rejects_small_or_composite():
    for p in (2, 3, 9, 15):
        with pytest.raises(ValueError):
            psl2_generic_table(p)


def test_tables_equivalent_detects_differences():
    assert not tables_equivalent(load_fixture("A5"), load_fixture("L2_7"))
    assert not tables_equivalent(psl2_generic_table(13), psl2_generic_table(11))


def test_power_maps_and_eligible_classes():
    t = load_fixture("L3_3")
    i8 = t.class_index("8a")
    assert t.classes[t.power_class(i8, 2)].element_order == 4
    assert t.classes[t.power_class(i8, 4)].element_order == 2
    assert t.power_class(i8, 8) == 0
    names = [t.classes[i].name for i in eligible_classes(t, 6)]
    assert names == ["2a", "3a", "3b", "6a"]
    assert eligible_classes(t, 1) == []


def test_round_trip_through_dict():
    t = load_fixture("U3_3")
    again = table_from_dict(json.loads(json.dumps(table_to_dict(t))))
    assert again.classes == t.classes
    assert again.irreducibles == t.irreducibles
    assert again.power_maps == t.power_maps


def test_load_table_file_accepts_fixture_names():
    assert load_table_file("L3_3.mod13").characteristic == 13
    assert load_table_file("A5").name == "A5"
    with pytest.raises(FileNotFoundError):
        load_table_file("NoSuchGroup")


def _a5_dict():
    return copy.deepcopy(table_to_dict(load_fixture("A5")))


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.pop("classes"),
        lambda d: d["power_maps"].pop("5"),
        lambda d: d["power_maps"].__setitem__("2", [0, 0, 0]),
        lambda d: d["irreducibles"][1]["values"].pop(),
        lambda d: d["irreducibles"][1].__setitem__("degree", 4),
        lambda d: d["classes"][0].__setitem__("size", 2),
    ],
)
def test_schema_violations_raise(mutate):
    d = _a5_dict()
    mutate(d)
    with pytest.raises(TableError):
        table_from_dict(d)


def test_load_table_rejects_bad_json():
    with pytest.raises(TableError):
        load_table("{not json")
    with pytest.raises(TableError):
        load_table("[1, 2]")


def test_validation_catches_wrong_value():
    d = _a5_dict()
    d["irreducibles"][1]["values"][2] = 1
    rep = validate_table(table_from_dict(d))
    assert not rep.ok
    assert any("orthogonality" in f for f in rep.failures)


def test_validation_catches_wrong_power_map():
    d = _a5_dict()
    d["power_maps"]["2"] = [0, 0, 2, 3, 4]  # 5a squared is 5b, not 5a
    assert not tables_equivalent(table_from_dict(d), load_fixture("A5"))


def test_values_are_cyclotomic():
    t = load_fixture("L2_7")
    assert all(isinstance(v, Cyclotomic) for x in t.irreducibles for v in x.values)
