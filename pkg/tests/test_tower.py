"""Symbolic tables: parameters, weight shifts, term counts, ghost closed forms."""

from fractions import Fraction

import pytest

from nilquant import tower
from nilquant.build import Builder, ModuleSpec
from nilquant.tower import (Brace, E, F, S, T, X, Z, cartan_matrix, d_values,
                            default_params, ghost_def, rho_level, weight_shifts)


def test_cartan_conventions():
    a = cartan_matrix("B", 3)
    assert a[1][2] == -2 and a[2][1] == -1
    a = cartan_matrix("C", 3)
    assert a[2][1] == -2 and a[1][2] == -1
    a = cartan_matrix("D", 4)
    assert a[1][2] == 0 and a[1][3] == a[2][3] == -1 and a[3][4] == -1
    a = cartan_matrix("G", 2)
    assert a[1][2] == -3 and a[2][1] == -1
    # symmetrizability: d_i a_ij = d_j a_ji
    for fam, n in (("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G", 2)):
        a = cartan_matrix(fam, n)
        d = d_values(fam, n)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                assert d[i] * a[i][j] == d[j] * a[j][i]


def test_default_params():
    p = default_params("B", 3)
    assert p.b_row(3) == (5, 2, 1)
    # tilde offsets: one above the level of the paired plain space
    assert p.b_row(2, tilde=True) == (3, 4)
    assert default_params("A", 4).b_row(4) == (1, 2, 3, 4)
    g = default_params("G", 2)
    assert tuple(g.b(2, False, i) for i in range(1, 6)) == (1, 4, 3, 5, 2)
    assert default_params("C", 2).b_row(1, tilde=True, size=1) == (3,)
    assert default_params("D", 4).b_row(4) == (3, 3, 2, 1)


def test_weight_shifts_examples():
    assert weight_shifts("G", 2, 1, (0, 0)) == (2, 9)
    assert weight_shifts("A", 1, 1, (2,)) == (-4,)
    lam = (3, 0)
    assert weight_shifts("B", 2, 1, lam)[0] == Fraction(-1) - Fraction(3, 2)
    assert weight_shifts("B", 2, 2, (1,)) == (-4,)
    assert weight_shifts("C", 2, 2, (2,)) == (-6,)
    # the long-root start of the C chain carries a doubled weight slot
    assert weight_shifts("C", 2, 1, (1, 1)) == (-6, -6)
    assert weight_shifts("D", 3, 3, (1,)) == (-5,)
    assert weight_shifts("G", 2, 2, (2,)) == (15,)
    with pytest.raises(ValueError):
        weight_shifts("A", 2, 1, (1,))


def test_rho_term_counts():
    rows = rho_level("A", 3)
    for i in (1, 2):  # i < n
        assert len(rows["e", i]) == 2
    rows = rho_level("B", 3)
    assert len(rows["e", 1]) == 3
    rows = rho_level("G", 2)
    f2 = rows["f", 2]
    assert len(f2) == 3
    for term in f2:
        brace = term.atoms[0]
        assert isinstance(brace, Brace) and brace.d == 3
    assert len(rows["e", 1]) == 6


def test_t_rows_are_diagonal_monomials():
    for fam, n in (("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G", 2)):
        for level in range(n, 0, -1):
            fam_eff = tower.table_family(fam, level)
            if fam_eff == "G" and level != 2:
                continue
            if fam_eff == "D" and level < 2:
                continue
            rows = rho_level(fam_eff, level)
            rank = level if fam_eff != "G" else 2
            for i in range(1, rank + 1):
                (term,) = rows["t", i]
                assert term.pref is None
                for atom in term.atoms:
                    assert isinstance(atom, (Z, S, T))


def test_brace_arguments_are_invertible_monomials():
    for fam, n in (("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G", 2)):
        for level in range(n, 1, -1):
            fam_eff = tower.table_family(fam, level)
            rows = rho_level(fam_eff, level)
            for expr in rows.values():
                for term in expr:
                    for atom in term.atoms:
                        if isinstance(atom, Brace):
                            for a in atom.arg:
                                assert isinstance(a, (Z, S, T))


def _telescope(builder, level, idx):
    """Independent ghost expansion straight from the defining monomials."""
    if level < builder.bottom:
        return builder._boundary_const(level, idx), {}
    fam = tower.table_family(builder.spec.family, level)
    rank = level if fam != "G" else (2 if level == 2 else 1)
    if idx <= rank:
        atoms = builder.table(level)["t", idx][0].atoms
    else:
        atoms = ghost_def(fam, level + 1)
    const = Fraction(0)
    coeffs = {}
    for a in atoms:
        if isinstance(a, Z):
            ci = builder.shape.coord_index(a.level, a.tilde, a.pos)
            if ci is None:
                continue
            coeffs[ci] = coeffs.get(ci, Fraction(0)) + a.exp
            const += a.exp * builder.params.b(a.level, a.tilde, a.pos)
        elif isinstance(a, S):
            const += builder._scalar(a)
        elif isinstance(a, T):
            c2, m2 = _telescope(builder, a.level, a.idx)
            const += a.exp * c2
            for k, v in m2.items():
                coeffs[k] = coeffs.get(k, Fraction(0)) + a.exp * v
    return const, {k: v for k, v in coeffs.items() if v}


@pytest.mark.parametrize("fam,n,k,lam,l", [
    ("A", 3, 1, (1, 0, 2), 5),
    ("A", 2, 1, (1, 2), 5),
    ("B", 3, 1, (1, 0, 2), 3),
    ("B", 2, 1, (2, 1), 3),
    ("C", 3, 1, (1, 0, 2), 5),
    ("C", 2, 1, (1, 1), 3),
    ("D", 4, 1, (1, 0, 1, 1), 3),
    ("D", 3, 1, (1, 0, 2), 5),
    ("D", 4, 3, (1, 1), 3),
    ("G", 2, 1, (1, 2), 5),
])
def test_ghost_closed_forms_match_telescoping(fam, n, k, lam, l):
    """The hard-coded diagonal closed forms equal the raw monomial expansion."""
    b = Builder(ModuleSpec(fam, n, k, lam, l))
    top = 2 if fam == "G" else n
    for level in range(b.bottom, top):
        for idx in range(1, level + 2):
            if fam == "G" and level == 1 and idx > 1:
                break
            assert b.resolve_t(level, idx) == _telescope(b, level, idx), \
                (level, idx)


def test_format_table_smoke():
    text = tower.format_table("B", 2)
    assert "e[1,2]" in text and "ghost" in text
    text = tower.format_table("G", 2)
    assert "{z[1,2]^-3}_(eps^3) x[1,2]" in text
