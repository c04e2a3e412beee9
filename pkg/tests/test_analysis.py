"""Primitive spaces, closures, characters, nilpotency, certification."""

import pytest

from nilquant import analysis
from nilquant.analysis import Subspace
from nilquant.build import ModuleSpec, build


def _one_vec(f, c):
    return {c: (f._one, 1)}


def test_subspace_insert_reduce_contains():
    f = build(ModuleSpec("A", 1, 1, (0,), 3)).field
    S = Subspace(f)
    v1 = {0: (f._one, 1), 1: (f._one, 1)}
    v2 = {1: (f._one, 1)}
    assert S.insert(v1) is not None
    assert S.insert(v1) is None
    assert not S.contains(v2)
    S.insert(v2)
    assert S.rank == 2
    assert S.contains({0: (f._one, 1)})
    assert S.pivots() == [0, 1]


def test_primitive_space_rank1_chain():
    # e v(m) = [-m] v(m-1) kills only v(0)
    g = build(ModuleSpec("A", 1, 1, (1,), 3))
    P = analysis.primitive_space(g)
    assert P.rank == 1 and P.pivots() == [0]
    row = P.rows[0]
    assert set(row) == {0}


@pytest.mark.parametrize("fam,n,k,lam,l", [
    ("B", 2, 1, (1, 1), 3),
    ("G", 2, 1, (1, 2), 5),
    ("G", 2, 2, (1,), 5),
    ("C", 2, 1, (2, 2), 3),
    ("D", 3, 2, (0, 1), 3),
])
def test_primitive_space_is_line_through_v0(fam, n, k, lam, l):
    g = build(ModuleSpec(fam, n, k, lam, l))
    P = analysis.primitive_space(g)
    assert P.rank == 1 and P.pivots() == [0]


def test_primitive_space_order_independent():
    g = build(ModuleSpec("B", 2, 1, (1, 1), 3))
    a = analysis.primitive_space(g, order=[1, 2])
    b = analysis.primitive_space(g, order=[2, 1])
    assert a.pivots() == b.pivots()
    assert all(a.rows[p] == b.rows[p] for p in a.pivots())


def test_closure_dims_rank1():
    for lam, want in [((0,), 1), ((1,), 2), ((2,), 3)]:
        g = build(ModuleSpec("A", 1, 1, lam, 3))
        dim, _ = analysis.submodule_closure(g)
        assert dim == want


def test_closure_steinberg_fills_space():
    for fam, n in (("A", 2), ("B", 2)):
        g = build(ModuleSpec(fam, n, 1, (2, 2), 3))
        dim, _ = analysis.submodule_closure(g)
        assert dim == g.dim


def test_closure_contained_in_stable_subspace():
    # closure from any element of L stays inside L
    g = build(ModuleSpec("B", 2, 1, (2, 1), 3))
    dim, L = analysis.submodule_closure(g)
    f = g.field
    some = dict(list(L.basis())[1])
    _, M = analysis.submodule_closure(g, some)
    assert M.rank <= dim
    for row in M.basis():
        assert L.contains(row)


def test_character_rank1():
    g = build(ModuleSpec("A", 1, 1, (2,), 3))
    _, L = analysis.submodule_closure(g)
    table = analysis.character(g, L)
    # weights lam, lam-2, lam-4 mod l, each once
    assert table == {(2,): 1, (0,): 1, (1,): 1}


def test_character_zero_weight():
    g = build(ModuleSpec("B", 2, 1, (0, 0), 3))
    _, L = analysis.submodule_closure(g)
    assert analysis.character(g, L) == {(0, 0): 1}


def test_character_totals_and_highest_weight_class():
    # multiplicities always sum to dim L; the class of the highest weight is
    # occupied.  Mod-l classes merge weights that differ by l times a lattice
    # vector, so the class count can exceed one at small l (C2 below folds to
    # 2) while a roomy l keeps the classical multiplicity (A2 at l=5).
    g = build(ModuleSpec("C", 2, 1, (1, 1), 3))
    _, L = analysis.submodule_closure(g)
    table = analysis.character(g, L)
    assert sum(table.values()) == L.rank == 16
    assert table[(1, 1)] == 2

    g = build(ModuleSpec("A", 2, 1, (1, 2), 5))
    _, L = analysis.submodule_closure(g)
    table = analysis.character(g, L)
    assert sum(table.values()) == L.rank == 15
    assert table[(1, 2)] == 1


def test_highest_weight_reports():
    g = build(ModuleSpec("B", 2, 2, (1,), 3))
    assert analysis.verify_highest_weight(g).passed
    g = build(ModuleSpec("G", 2, 1, (1, 2), 5))
    assert analysis.verify_highest_weight(g).passed


def test_nilpotency_rank1():
    g = build(ModuleSpec("A", 1, 1, (2,), 3))
    _, L = analysis.submodule_closure(g)
    reports = analysis.verify_nilpotency(g, L, threads=1)
    assert all(r.passed for r in reports)


def test_certify_small_cases():
    g = build(ModuleSpec("G", 2, 2, (1,), 5))
    reports = analysis.certify_irreducible(g, threads=1)
    assert all(r.passed for r in reports)
    final = reports[-1]
    assert final.witness["isomorphic_to"] == "L_nil(0,1)"

    g = build(ModuleSpec("A", 2, 2, (1,), 3))
    reports = analysis.certify_irreducible(g, threads=1)
    assert all(r.passed for r in reports)
    assert reports[-1].witness == {"isomorphic_to": "L_nil(0,1)", "dim": 3}


def test_certify_rejects_weight_outside_range():
    g = build(ModuleSpec("A", 1, 1, (5,), 3))
    with pytest.raises(ValueError):
        analysis.certify_irreducible(g)


def test_regeneration_from_random_vectors():
    g = build(ModuleSpec("B", 2, 1, (2, 1), 3))
    _, L = analysis.submodule_closure(g)
    assert analysis.regenerates_from_random(g, L, seed=0).passed
    assert analysis.regenerates_from_random(g, L, seed=123).passed


def test_weight_classes_partition_basis():
    g = build(ModuleSpec("B", 2, 2, (1,), 3))
    classes = analysis.weight_classes(g)
    assert sum(len(v) for v in classes.values()) == g.dim
