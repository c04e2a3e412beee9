"""Acceptance gate: all eight criteria across the full roster of module specs.

The roster covers A1-A3 (l=5), B2 (l=3, k=1,2), B3 (l=5, k=3), C2 (l=3,
k=1,2), D3/D4 (l=3, k=n and n-1), G2 (l=5, k=1,2), each at the zero weight
and one nonzero weight in the classification range.  Everything is exact;
expect the whole module to take tens of minutes on two cores.
"""

import sys

import pytest

from nilquant import acceptance
from nilquant.analysis import default_threads


@pytest.fixture(scope="module")
def results():
    return acceptance.run_all(threads=default_threads(),
                              echo=lambda msg: print(msg, file=sys.stderr, flush=True))


def _assert_criterion(results, key):
    reports = results[key]
    assert reports, "criterion produced no checks"
    failed = [r for r in reports if not r.passed]
    line = "%-26s %s  (%d checks)" % (key, "FAIL" if failed else "PASS", len(reports))
    print(line)
    assert not failed, [(r.claim, r.witness) for r in failed]


def test_criterion_1_defining_relations(results):
    _assert_criterion(results, "1_defining_relations")
    assert len(results["1_defining_relations"]) == 2 * len(acceptance.CASES)


def test_criterion_2_oracle_equality(results):
    _assert_criterion(results, "2_oracle_equality")
    assert len(results["2_oracle_equality"]) == 2 * len(acceptance.ORACLE_CASES)


def test_criterion_3_primitive_space(results):
    _assert_criterion(results, "3_primitive_space")
    assert len(results["3_primitive_space"]) >= 3 * len(acceptance.CASES)


def test_criterion_4_highest_weight(results):
    _assert_criterion(results, "4_highest_weight")


def test_criterion_5_nilpotency(results):
    _assert_criterion(results, "5_nilpotency")


def test_criterion_6_dimensions(results):
    _assert_criterion(results, "6_dimensions")


def test_criterion_7_irreducibility_sampling(results):
    _assert_criterion(results, "7_irreducibility_sampling")


def test_criterion_8_negative_controls(results):
    _assert_criterion(results, "8_negative_controls")
