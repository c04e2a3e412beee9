"""The closed-form action tables agree with the composed tower, entry for entry."""

import pytest

from nilquant.build import ModuleSpec, build
from nilquant.oracle import (OracleUnavailableError, closed_form_generators,
                             generators_equal)


@pytest.mark.parametrize("fam,n,k,lam,l", [
    ("B", 2, 1, (0, 0), 3),
    ("B", 2, 1, (2, 1), 3),
    ("B", 2, 2, (1,), 3),
    ("B", 3, 3, (2,), 5),
    ("B", 3, 1, (1, 0, 2), 3),
    ("B", 3, 2, (1, 2), 3),
    ("G", 2, 2, (2,), 5),
    ("G", 2, 2, (0,), 5),
    ("G", 2, 1, (1, 2), 5),
])
def test_oracle_equality(fam, n, k, lam, l):
    spec = ModuleSpec(fam, n, k, lam, l)
    assert generators_equal(build(spec), closed_form_generators(spec)) is None


def test_oracle_unavailable_for_other_families():
    with pytest.raises(OracleUnavailableError):
        closed_form_generators(ModuleSpec("A", 2, 1, (0, 0), 5))


def test_oracle_detects_a_perturbation():
    plain = ModuleSpec("B", 2, 1, (2, 1), 3)
    bumped = ModuleSpec("B", 2, 1, (2, 1), 3, a_overrides=(((2, False, 1), 2),))
    w = generators_equal(build(bumped), closed_form_generators(plain))
    assert w is not None and w["generator"].startswith(("e", "f"))
