import json

import pytest

from oracles import cyclic_table_dict
from pqverify.chartables import load_fixture, table_from_dict
from pqverify.perm import load_group
from pqverify.verify import (
    VerificationInputError,
    VerifyConfig,
    cross_check,
    emit_report,
    expected_landscape,
    external_fact,
    group_config,
    landscape_mismatches,
    verify_fixture,
    verify_pq,
)

FAST = ["A5", "L2_7", "L2_8", "A6", "L2_17", "S5", "L3_3"]


@pytest.mark.parametrize("slug", FAST)
def test_landscape_rows_for_small_groups(slug):
    row = verify_fixture(slug).landscape_row()
    assert landscape_mismatches(row, expected_landscape()[slug]) == []


def test_a5_verified_by_help_alone():
    r = verify_fixture("A5")
    assert r.final == "verified" and r.external_facts_used == []
    assert r.pq_orders() == [6, 10, 15]
    assert all(r.per_order[n].verdict.method == "HeLP" for n in r.pq_orders())


def test_a6_needs_the_external_fact():
    plain = verify_fixture("A6", VerifyConfig(use_external_facts=False))
    assert plain.final == "undecided" and plain.open_pairs == ((2, 3),)
    assert plain.per_order[6].count > 0
    r = verify_fixture("A6")
    assert r.final == "verified-with-external-facts"
    assert [f.unit_order for f in r.external_facts_used] == [6]


def test_external_facts_are_keyed_by_table_name():
    assert external_fact("A6", 6) is not None
    assert external_fact("A6", 10) is None
    assert external_fact("A5", 6) is None


def test_json_report_is_byte_stable():
    a = emit_report(verify_fixture("L2_7"), "json")
    b = emit_report(verify_fixture("L2_7"), "json")
    assert a == b
    data = json.loads(a)
    assert data["final"] == "verified"
    assert "seconds" not in json.dumps(data)
    assert "seconds" in emit_report(verify_fixture("L2_7"), "json", timings=True)


def test_markdown_row_for_psl33():
    text = emit_report(verify_fixture("L3_3"), "markdown")
    row = text.splitlines()[2]
    assert "3(5), 6(31)" in row and "12(4)" in row and "26, 39" in row
    assert row.rstrip(" |").endswith("verified")
    with pytest.raises(ValueError):
        emit_report(verify_fixture("A5"), "yaml")


def test_complete_prime_graph_is_verified_without_work():
    t = table_from_dict(cyclic_table_dict(6))
    r = verify_pq(t, VerifyConfig(element_orders=()))
    assert r.pi.is_complete()
    assert r.per_order == {} and r.final == "verified"


def test_cyclic_group_units_are_trivial():
    # units of Z[C_n] of finite order are group elements up to sign
    r = verify_pq(table_from_dict(cyclic_table_dict(6)))
    assert all(e.trivial_only for e in r.per_order.values())


def test_brauer_table_rejected():
    with pytest.raises(VerificationInputError):
        verify_pq(load_fixture("A5", 2))


def test_config_round_trip_and_errors():
    cfg = group_config("L3_3")
    assert VerifyConfig.from_dict(json.loads(json.dumps(cfg.to_json()))) == cfg
    assert cfg.wagner_for(12) == "all" and cfg.wagner_for(6) == "prime-power"
    with pytest.raises(VerificationInputError):
        VerifyConfig.from_dict({"colour": "blue"})
    with pytest.raises(ValueError):
        VerifyConfig.from_dict({"wagner": "maybe"})
    with pytest.raises(ValueError):
        VerifyConfig.from_dict({"order_wagner": {"12": "maybe"}})


@pytest.mark.parametrize("slug", ["A5", "L2_7", "S6", "M10"])
def test_cross_check_agrees(slug):
    rep = cross_check(load_group(slug), load_fixture(slug))
    assert rep.consistent and rep.discrepancies == []


def test_cross_check_detects_mismatch():
    rep = cross_check(load_group("A6"), load_fixture("S6"))
    assert not rep.consistent
    assert any("group order" in d for d in rep.discrepancies)
    rep = cross_check(load_group("A6"), load_fixture("M10"))
    assert not rep.consistent and any("order 4" in d or "element orders" in d for d in rep.discrepancies)
    assert not cross_check(load_group("A5"), load_fixture("A5", 2)).consistent
