"""Acceptance gate: one test per criterion, exact equality throughout.

Every test prints a single summary line so a full run reads as a checklist.
All comparisons are exact in Q(sqrt(q)); there are no tolerances anywhere.
"""

from time import perf_counter

import pytest

from hallforge.quivers import standard_quiver
from hallforge import suites

FIVE = ("jordan", "two_loop", "a2", "kronecker", "loop_arrow")
SINK_QUIVERS = (("a2", "2"), ("loop_arrow", "2"))


def _assert_clean(rows, label, allow_skip=False):
    fails = [r for r in rows if r["status"] == "fail"]
    skips = [r for r in rows if r["status"] == "skip"]
    assert not fails, f"{label}: {len(fails)} failed, first: {fails[0]}"
    if not allow_skip:
        assert not skips, f"{label}: unexpected skips: {skips[0]}"
    return skips


def _report(num, slug, rows, start, skips=()):
    took = perf_counter() - start
    extra = f", {len(skips)} skipped" if skips else ""
    print(f"ACCEPTANCE {num} {slug}: PASS ({len(rows)} checks in {took:.1f}s{extra})")


def test_criterion_01_cartan_euler_consistency():
    start = perf_counter()
    rows = []
    for name in FIVE:
        for q in (2, 3):
            rows += suites.cartan_euler_suite(standard_quiver(name), q)
    _assert_clean(rows, "cartan-euler")
    _report(1, "cartan-euler-consistency", rows, start)


def test_criterion_02_riedtmann_peng():
    start = perf_counter()
    rows = []
    for name in FIVE:
        rows += suites.riedtmann_peng_suite(standard_quiver(name), 2, max_total=3)
    _assert_clean(rows, "riedtmann-peng")
    total = sum(r["params"]["triples"] for r in rows)
    print(f"  ({total} triples compared)")
    _report(2, "riedtmann-peng", rows, start)


def test_criterion_03_stalk_euler_pairings():
    start = perf_counter()
    rows = []
    for name in FIVE:
        rows += suites.euler_pairings_suite(standard_quiver(name), 2, max_total=2)
    _assert_clean(rows, "euler-pairings")
    _report(3, "stalk-euler-pairings", rows, start)


def test_criterion_04_normal_form_reduction():
    start = perf_counter()
    rows = []
    for name in FIVE:
        rows += suites.reduction_suite(standard_quiver(name), 2, max_total=3)
    _assert_clean(rows, "reduction")
    _report(4, "normal-form-reduction", rows, start)


def test_criterion_05_k_commutation():
    start = perf_counter()
    rows = []
    for name in FIVE:
        rows += suites.k_commutation_suite(standard_quiver(name), 2)
    _assert_clean(rows, "k-commutation")
    _report(5, "acyclic-class-commutation", rows, start)


def test_criterion_06_defining_relations():
    start = perf_counter()
    rows = []
    for name in FIVE:
        for q in (2, 3):
            rows += suites.bb_relations_suite(
                standard_quiver(name), q, max_level=2, max_degree=4
            )
    _assert_clean(rows, "bb-relations")
    assert any(r["check"] == "ef-same" for r in rows)
    assert any(r["check"] == "serre-e" for r in rows)
    _report(6, "defining-relations", rows, start)


def test_criterion_07_q_combinatorics():
    start = perf_counter()
    rows = suites.qcombinatorics_suite()
    _assert_clean(rows, "qcombinatorics")
    _report(7, "q-combinatorics", rows, start)


def test_criterion_08_building_block_closed_form():
    start = perf_counter()
    rows = []
    for name, sink in SINK_QUIVERS:
        rows += suites.building_block_suite(standard_quiver(name), sink, 2, l_max=2)
    _assert_clean(rows, "building-block")
    # both flavors at both levels on both quivers
    assert len(rows) == 8
    _report(8, "building-block-closed-form", rows, start)


def test_criterion_09_commuting_square():
    start = perf_counter()
    rows = []
    for name, sink in SINK_QUIVERS:
        rows += suites.square_suite(standard_quiver(name), sink, 2)
    _assert_clean(rows, "square")
    assert any(r["check"] == "square-source" for r in rows)
    _report(9, "reflection-commuting-square", rows, start)


def test_criterion_10_inverse_pair():
    start = perf_counter()
    rows = []
    for name, sink in SINK_QUIVERS:
        rows += suites.inverse_suite(standard_quiver(name), sink, 2, max_total_dim=2)
    _assert_clean(rows, "inverse")
    assert any(r["check"] == "inverse-roundtrip" for r in rows)
    assert any(r["check"] == "inverse-words" for r in rows)
    _report(10, "reflection-inverse-pair", rows, start)


def test_criterion_11_charged_variant_and_braid():
    start = perf_counter()
    rows = []
    for q in (2, 3):
        rows += suites.qgkm_relations_suite(
            standard_quiver("jordan"), q, multiplicities={"1": 2}, max_degree=4
        )
        rows += suites.qgkm_relations_suite(standard_quiver("a2"), q, max_degree=4)
    braid_rows = suites.braid_suite(standard_quiver("two_points"), 2, family="qgkm")
    braid_rows += suites.braid_suite(standard_quiver("a2"), 2, family="qgkm")
    _assert_clean(rows, "qgkm-relations")
    skips = _assert_clean(braid_rows, "braid", allow_skip=True)
    done = [r for r in braid_rows if r["status"] == "pass"]
    assert any(r["params"]["generator"][0] == "K" for r in done)
    assert any(r["params"]["generator"][0] == "E" for r in done)
    _report(11, "charged-variant-and-braid", rows + braid_rows, start, skips)
