"""Symbolic tables for the inductive generator-image homomorphisms.

Each induction level j carries a table sending the level-j generators
e_i, f_i, t_i to expressions in shift atoms x, diagonal atoms z, scalar
eps-powers, brace operators, and level-(j-1) generators.  Composing the
tables down to the start index k and evaluating on the tensor basis yields
the module.  Fractional-power t-monomials adjoined at each step ("ghosts")
are never expanded by taking roots of composite operators; their derived
diagonal closed forms are hard-coded here.
"""

from fractions import Fraction
from typing import NamedTuple

HALF = Fraction(1, 2)


class X(NamedTuple):
    level: int
    tilde: bool
    pos: int
    power: int  # +1 or -1


class Z(NamedTuple):
    level: int
    tilde: bool
    pos: int
    exp: Fraction


class T(NamedTuple):
    level: int
    idx: int  # idx == level + 1 addresses the adjoined ghost
    exp: Fraction


class E(NamedTuple):
    level: int
    idx: int


class F(NamedTuple):
    level: int
    idx: int


class S(NamedTuple):
    """Scalar eps^(const + sum coef * param_level)."""
    const: Fraction
    lam: tuple  # ((level, coef), ...)


class Brace(NamedTuple):
    """{M}_(eps^d) = (M - M^-1) / (eps^d - eps^-d); M a diagonal monomial."""
    arg: tuple
    d: Fraction


class Term(NamedTuple):
    pref: object  # None or ("qint", r, d)
    atoms: tuple


def _x(j, i, p=1, t=False):
    return X(j, t, i, p)


def _z(j, i, e=1, t=False):
    return Z(j, t, i, Fraction(e))


def _s(lam_level, coef):
    return S(Fraction(0), ((lam_level, Fraction(coef)),))


def _br(atoms, d=1):
    return Brace(tuple(atoms), Fraction(d))


def _term(*atoms, pref=None):
    return Term(pref, tuple(atoms))


# ---------------------------------------------------------------------------
# Cartan data

def cartan_matrix(family, n):
    a = [[0] * (n + 1) for _ in range(n + 1)]  # 1-based
    for i in range(1, n + 1):
        a[i][i] = 2
    if family in ("A", "B", "C"):
        for i in range(1, n):
            a[i][i + 1] = a[i + 1][i] = -1
        if family == "B" and n >= 2:
            a[1][2] = -2
        if family == "C" and n >= 2:
            a[2][1] = -2
    elif family == "D":
        for i in range(3, n):
            a[i][i + 1] = a[i + 1][i] = -1
        a[1][3] = a[3][1] = -1
        a[2][3] = a[3][2] = -1
    elif family == "G":
        a[1][2] = -3
        a[2][1] = -1
    return a


def d_values(family, n):
    d = {i: Fraction(1) for i in range(1, n + 1)}
    if family == "B":
        d[1] = HALF
    elif family == "C":
        d[1] = Fraction(2)
    elif family == "G":
        d[2] = Fraction(3)
    return d


# ---------------------------------------------------------------------------
# Default parameters: the shift offsets b on every coordinate (a-values are 1)

def b_value(family, level, tilde, pos):
    if family == "G":
        if level == 2:
            return Fraction((1, 4, 3, 5, 2)[pos - 1])
        return Fraction(1)  # the level-1 line uses the chain-A offset
    if tilde:
        if family == "B":
            return Fraction(level + pos)
        return Fraction(level + pos + 1)  # C and D
    if family == "A":
        return Fraction(pos)
    if family == "B":
        return Fraction(2 * level - 1) if pos == 1 else Fraction(level - pos + 1)
    if family == "C":
        return Fraction(level - pos + 1)
    # D
    if pos == 1:
        return Fraction(1) if level == 1 else Fraction(level - 1)
    return Fraction(level - pos + 1)


class ParamTable:
    """Per-level shift offsets a (nonzero) and b, with test-override support."""

    def __init__(self, family, n, b_overrides=None, a_overrides=None):
        self.family = family
        self.n = n
        self.b_overrides = dict(b_overrides or {})
        self.a_overrides = dict(a_overrides or {})

    def b(self, level, tilde, pos):
        key = (level, tilde, pos)
        if key in self.b_overrides:
            return Fraction(self.b_overrides[key])
        return b_value(self.family, level, tilde, pos)

    def a(self, level, tilde, pos):
        return Fraction(self.a_overrides.get((level, tilde, pos), 1))

    def b_row(self, level, tilde=False, size=None):
        if size is None:
            size = level
        return tuple(self.b(level, tilde, i) for i in range(1, size + 1))


def default_params(family, n):
    return ParamTable(family, n)


# ---------------------------------------------------------------------------
# Weight shifts: the per-level parameters fed to the homomorphism tower.
# Pinned by the highest-weight eigenvalue equations; see tests.

def weight_shifts(family, n, k, lam):
    lam = tuple(Fraction(x) for x in lam)
    if len(lam) != n - k + 1:
        raise ValueError("weight vector must have length n-k+1")

    def lv(j):  # lambda_j for j >= k else 0
        return lam[j - k] if j >= k else Fraction(0)

    if family == "A":
        return tuple(-i - 1 - Fraction(sum(j * lv(j) for j in range(k, i + 1)), i)
                     for i in range(k, n + 1))
    if family == "B":
        def c(j):
            return HALF if j == 1 else Fraction(1)
        return tuple(-2 * i + 1 - sum(c(j) * lv(j) for j in range(k, i + 1))
                     for i in range(k, n + 1))
    if family == "C":
        out = []
        for i in range(k, n + 1):
            v = Fraction(-2 * i) - sum(lv(j) for j in range(k, i + 1))
            if i == 1:
                v = Fraction(-4) - 2 * lv(1)  # long-root start carries d_1 = 2
            out.append(v)
        return tuple(out)
    if family == "D":
        h1 = lv(1)
        h2 = lv(2)
        vals = {1: -2 - h1, 2: -3 - h1 / 2 - h2}
        for i in range(3, n + 1):
            vals[i] = (-2 * i + 2 - h1 / 2 - h2 / 2
                       - sum(lv(j) for j in range(max(k, 3), i + 1)))
        return tuple(vals[i] for i in range(k, n + 1))
    if family == "G":
        if k == 1:
            return (lam[0] + 2, Fraction(3, 2) * lam[0] + 3 * lam[1] + 9)
        return (3 * lam[0] + 9,)
    raise ValueError("unknown family %r" % (family,))


def level_params(family, n, k, lam):
    """Binding of each level's parameter slot, including bottom pseudo-slots."""
    nu = weight_shifts(family, n, k, lam)
    out = {}
    if family == "G":
        if k == 1:
            out[2] = nu[1]
            out[1] = -nu[0]  # the level-1 chain-A slot enters with opposite sign
        else:
            out[2] = nu[0]
        return out
    for j, v in zip(range(k, n + 1), nu):
        out[j] = v
    if family == "D" and k > 1:
        # masked bottom slots: levels below k act with their weight set to zero
        full = weight_shifts("D", n, 1, (0,) * (k - 1) + tuple(lam))
        for j in range(1, min(k, 3)):
            out.setdefault(j, full[j - 1])
    return out


# ---------------------------------------------------------------------------
# Generator-image tables, one induction level at a time

def rho_level(family, j, d_variant="standard"):
    """Table {('e'|'f'|'t', i) -> Expr} for the level-j homomorphism.

    Indices may run out of range; evaluation normalizes them (shift atoms
    to 0, diagonal atoms to 1, sub-level generators below the chain to 0).
    """
    rows = {}
    if family == "A":
        for i in range(1, j + 1):
            rows["e", i] = (
                _term(_br([_z(j, i - 1), _z(j, i, -1)]), _x(j, i)),
                _term(_x(j, i - 1, -1), _x(j, i), E(j - 1, i - 1)),
            )
            rows["t", i] = (
                _term(_z(j, i - 1), _z(j, i, -2), _z(j, i + 1), T(j - 1, i, Fraction(1))),
            )
            rows["f", i] = (
                _term(_br([_z(j, i), _z(j, i + 1, -1), T(j - 1, i, Fraction(-1))]), _x(j, i, -1)),
                _term(F(j - 1, i)),
            )
        return rows

    if family in ("B", "C", "D"):
        # tilde copy attached to level j: its own level and position re-indexing
        tl = j - 1 if family in ("B", "C") else j - 2
        sh = 0 if family in ("B", "C") else 1  # D re-indexes x~_i -> x~_{i-1}

        def xt(i, p=1):
            return _x(tl, i - sh, p, t=True)

        def zt(i, e=1):
            return _z(tl, i - sh, e, t=True)

        lo = {"B": 2, "C": 3, "D": 4}[family]
        for i in range(lo, j + 1):
            rows["e", i] = (
                _term(_br([_z(j, i + 1), _z(j, i, -1)]), _x(j, i)),
                _term(_br([zt(i - 1), zt(i, -1)]), _x(j, i + 1, -1), _x(j, i), xt(i)),
                _term(_x(j, i + 1, -1), _x(j, i), xt(i), xt(i - 1, -1), E(j - 1, i)),
            )
            rows["t", i] = (
                _term(_z(j, i + 1), _z(j, i, -2), _z(j, i - 1),
                      zt(i - 2), zt(i - 1, -2), zt(i), T(j - 1, i, Fraction(1))),
            )
            rows["f", i] = (
                _term(_br([_z(j, i), _z(j, i - 1, -1), zt(i - 2, -1), zt(i - 1, 2),
                           zt(i, -1), T(j - 1, i, Fraction(-1))]), _x(j, i, -1)),
                _term(_br([zt(i - 1), zt(i, -1), T(j - 1, i, Fraction(-1))]), xt(i - 1, -1)),
                _term(F(j - 1, i)),
            )

    if family == "B":
        rows["e", 1] = (
            _term(_br([_z(j, 2), _z(j, 1, -HALF)], HALF), _x(j, 1)),
            _term(_br([_z(j - 1, 1, -1, t=True), _z(j, 1, HALF)], HALF),
                  _x(j, 2, -1), _x(j, 1), _x(j - 1, 1, t=True)),
            _term(_x(j, 2, -1), _x(j - 1, 1, t=True), E(j - 1, 1)),
        )
        rows["t", 1] = (
            _term(_z(j, 2), _z(j, 1, -1), _z(j - 1, 1, t=True), T(j - 1, 1, Fraction(1))),
        )
        rows["f", 1] = (
            _term(_br([_z(j, 1, HALF), _z(j - 1, 1, -1, t=True), T(j - 1, 1, Fraction(-1))], HALF),
                  _x(j, 1, -1)),
            _term(F(j - 1, 1)),
        )

    elif family == "C":
        rows["e", 2] = (
            _term(_br([_z(j, 3), _z(j, 2, -1)]), _x(j, 2)),
            _term(_br([_z(j - 1, 1, t=True), _z(j - 1, 2, -1, t=True)]),
                  _x(j, 3, -1), _x(j, 2), _x(j - 1, 2, t=True)),
            _term(_x(j, 3, -1), _x(j, 2), _x(j - 1, 2, t=True), _x(j - 1, 1, -1, t=True),
                  E(j - 1, 2)),
        )
        rows["e", 1] = (
            _term(_br([_z(j, 1, 2), _z(j - 1, 1, -2, t=True)], 2),
                  _x(j, 2, -1), _x(j, 2, -1), _x(j, 1),
                  _x(j - 1, 1, t=True), _x(j - 1, 1, t=True)),
            _term(_br([_z(j, 2), _z(j - 1, 1, -1, t=True)]),
                  _x(j, 2, -1), _x(j, 1), _x(j - 1, 1, t=True)),
            _term(_br([_z(j, 2, 2), _z(j, 1, -2)], 2), _x(j, 1)),
            _term(_x(j, 2, -1), _x(j, 2, -1),
                  _x(j - 1, 1, t=True), _x(j - 1, 1, t=True), E(j - 1, 1)),
        )
        rows["t", 2] = (
            _term(_z(j, 3), _z(j, 2, -2), _z(j, 1, 2),
                  _z(j - 1, 1, -2, t=True), _z(j - 1, 2, t=True), T(j - 1, 2, Fraction(1))),
        )
        rows["t", 1] = (
            _term(_z(j, 2, 2), _z(j, 1, -4), _z(j - 1, 1, 2, t=True), T(j - 1, 1, Fraction(1))),
        )
        rows["f", 2] = (
            _term(_br([_z(j, 2), _z(j, 1, -2), _z(j - 1, 1, 2, t=True),
                       _z(j - 1, 2, -1, t=True), T(j - 1, 2, Fraction(-1))]), _x(j, 2, -1)),
            _term(_br([_z(j - 1, 1, t=True), _z(j - 1, 2, -1, t=True), T(j - 1, 2, Fraction(-1))]),
                  _x(j - 1, 1, -1, t=True)),
            _term(F(j - 1, 2)),
        )
        rows["f", 1] = (
            _term(_br([_z(j, 1, 2), _z(j - 1, 1, -2, t=True), T(j - 1, 1, Fraction(-1))], 2),
                  _x(j, 1, -1)),
            _term(F(j - 1, 1)),
        )

    elif family == "D":
        e1_trail, e2_trail = {
            "standard": (2, 1),   # fork nodes swap down the chain (see tests)
            "printed": (2, 2),    # verbatim rows as printed; fails verification
            "swapped": (1, 1),    # alternative resolution probe; fails verification
        }[d_variant]
        rows["e", 3] = (
            _term(_br([_z(j, 4), _z(j, 3, -1)]), _x(j, 3)),
            _term(_br([_z(j - 2, 1, t=True), _z(j - 2, 2, -1, t=True)]),
                  _x(j, 4, -1), _x(j, 3), _x(j - 2, 2, t=True)),
            _term(_x(j, 4, -1), _x(j, 3), _x(j - 2, 2, t=True), _x(j - 2, 1, -1, t=True),
                  E(j - 1, 3)),
        )
        rows["e", 2] = (
            _term(_br([_z(j, 3), _z(j, 2, -1)]), _x(j, 2)),
            _term(_br([_z(j, 1), _z(j - 2, 1, -1, t=True)]),
                  _x(j - 2, 1, t=True), _x(j, 3, -1), _x(j, 2)),
            _term(_x(j, 3, -1), _x(j, 2), _x(j, 1, -1), _x(j - 2, 1, t=True),
                  E(j - 1, e2_trail)),
        )
        rows["e", 1] = (
            _term(_br([_z(j, 3), _z(j, 1, -1)]), _x(j, 1)),
            _term(_br([_z(j, 2), _z(j - 2, 1, -1, t=True)]),
                  _x(j - 2, 1, t=True), _x(j, 3, -1), _x(j, 1)),
            _term(_x(j, 3, -1), _x(j, 1), _x(j, 2, -1), _x(j - 2, 1, t=True),
                  E(j - 1, e1_trail)),
        )
        rows["t", 3] = (
            _term(_z(j, 4), _z(j, 3, -2), _z(j, 2), _z(j, 1),
                  _z(j - 2, 1, -2, t=True), _z(j - 2, 2, t=True), T(j - 1, 3, Fraction(1))),
        )
        rows["t", 2] = (
            _term(_z(j, 3), _z(j, 2, -2), _z(j - 2, 1, t=True), T(j - 1, 2, Fraction(1))),
        )
        rows["t", 1] = (
            _term(_z(j, 3), _z(j, 1, -2), _z(j - 2, 1, t=True), T(j - 1, 1, Fraction(1))),
        )
        rows["f", 3] = (
            _term(_br([_z(j, 3), _z(j, 2, -1), _z(j, 1, -1), _z(j - 2, 1, 2, t=True),
                       _z(j - 2, 2, -1, t=True), T(j - 1, 3, Fraction(-1))]), _x(j, 3, -1)),
            _term(_br([_z(j - 2, 1, t=True), _z(j - 2, 2, -1, t=True), T(j - 1, 3, Fraction(-1))]),
                  _x(j - 2, 1, -1, t=True)),
            _term(F(j - 1, 3)),
        )
        rows["f", 2] = (
            _term(_br([_z(j, 2), _z(j - 2, 1, -1, t=True), T(j - 1, 2, Fraction(-1))]),
                  _x(j, 2, -1)),
            _term(F(j - 1, 2)),
        )
        rows["f", 1] = (
            _term(_br([_z(j, 1), _z(j - 2, 1, -1, t=True), T(j - 1, 1, Fraction(-1))]),
                  _x(j, 1, -1)),
            _term(F(j - 1, 1)),
        )

    elif family == "G":
        if j != 2:
            raise ValueError("the G table lives at level 2")
        rows["e", 1] = (
            _term(_br([_z(2, 3, 3), _z(2, 4, -2)]), _x(2, 1, -1), _x(2, 2, -1),
                  _x(2, 3), _x(2, 4), _x(2, 4)),
            _term(_br([_z(2, 4), _z(2, 5, -3)]), _x(2, 1, -1), _x(2, 2, -1),
                  _x(2, 4), _x(2, 4), _x(2, 5)),
            _term(_br([_z(2, 2, 2), _z(2, 3, -3)]), _x(2, 1, -1), _x(2, 2), _x(2, 3)),
            _term(_br([_z(2, 2), _z(2, 4, -1)]), _x(2, 1, -1), _x(2, 3), _x(2, 4),
                  pref=("qint", 2, 1)),
            _term(_br([_z(2, 1, 3), _z(2, 2, -1)]), _x(2, 2)),
            _term(_x(2, 1, -1), _x(2, 2, -1), _x(2, 4), _x(2, 5), E(1, 1)),
        )
        rows["e", 2] = (_term(_br([_z(2, 1, -3)], 3), _x(2, 1)),)
        rows["t", 1] = (
            _term(_z(2, 1, 3), _z(2, 3, 3), _z(2, 5, 3), _z(2, 2, -2), _z(2, 4, -2),
                  T(1, 1, Fraction(1))),
        )
        rows["t", 2] = (
            _term(_z(2, 1, -6), _z(2, 3, -6), _z(2, 5, -6), _z(2, 2, 3), _z(2, 4, 3),
                  _s(2, 1), T(1, 1, Fraction(-3, 2))),
        )
        rows["f", 1] = (
            _term(_br([_z(2, 2), _z(2, 3, -3), _z(2, 5, -3), _z(2, 4, 2),
                       T(1, 1, Fraction(-1))]), _x(2, 2, -1)),
            _term(_br([_z(2, 4), _z(2, 5, -3), T(1, 1, Fraction(-1))]), _x(2, 4, -1)),
            _term(F(1, 1)),
        )
        rows["f", 2] = (
            _term(_br([_z(2, 1, 3), _z(2, 3, 6), _z(2, 5, 6), _z(2, 2, -3), _z(2, 4, -3),
                       _s(2, -1), T(1, 1, Fraction(3, 2))], 3), _x(2, 1, -1)),
            _term(_br([_z(2, 3, 3), _z(2, 5, 6), _z(2, 4, -3),
                       _s(2, -1), T(1, 1, Fraction(3, 2))], 3), _x(2, 3, -1)),
            _term(_br([_z(2, 5, 3), _s(2, -1), T(1, 1, Fraction(3, 2))], 3), _x(2, 5, -1)),
        )

    return rows


def ghost_def(family, j):
    """Defining monomial of the level-(j-1) ghost t-power adjoined by level j."""
    if family == "A":
        return (_s(j, -1),) + tuple(T(j - 1, i, Fraction(-i, j)) for i in range(1, j))
    if family == "B":
        return (_s(j, -1),) + tuple(T(j - 1, i, Fraction(-1)) for i in range(1, j))
    if family == "C":
        if j == 1:
            return (_s(1, -1),)
        return (_s(j, -1), T(j - 1, 1, -HALF)) + tuple(
            T(j - 1, i, Fraction(-1)) for i in range(2, j))
    if family == "D":
        if j == 2:
            return (_s(2, -1), T(1, 1, -HALF))
        return (_s(j, -1), T(j - 1, 1, -HALF), T(j - 1, 2, -HALF)) + tuple(
            T(j - 1, i, Fraction(-1)) for i in range(3, j))
    raise ValueError("no ghost monomial for family %r" % (family,))


def ghost_closed(family, j):
    """Hard-coded diagonal closed form of the level-(j-1) image of the ghost.

    Valid whenever level j-1 still carries a table; below that the trivial
    boundary collapses the ghost to a scalar directly.
    """
    if family == "A" and j >= 2:
        return (S(Fraction(0), ((j, Fraction(-1)), (j - 1, Fraction(j - 1, j)))),
                _z(j - 1, j - 1))
    if family == "B" and j >= 2:
        return (S(Fraction(0), ((j, Fraction(-1)), (j - 1, Fraction(1)))),
                _z(j - 1, j - 1), _z(j - 2, j - 2, t=True))
    if family == "C" and j >= 3:
        return (S(Fraction(0), ((j, Fraction(-1)), (j - 1, Fraction(1)))),
                _z(j - 1, j - 1), _z(j - 2, j - 2, t=True))
    if family == "C" and j == 2:
        return (S(Fraction(0), ((2, Fraction(-1)), (1, HALF))), _z(1, 1, 2))
    if family == "D" and j >= 4:
        return (S(Fraction(0), ((j, Fraction(-1)), (j - 1, Fraction(1)))),
                _z(j - 1, j - 1), _z(j - 3, j - 3, t=True))
    if family == "D" and j == 3:
        # residual quarter-power of the bottom scalar survives here
        return (S(Fraction(0), ((3, Fraction(-1)), (2, HALF))),
                _z(2, 1), _z(2, 2), T(1, 1, Fraction(-1, 4)))
    raise ValueError("no closed ghost form for (%s, %d)" % (family, j))


def table_family(family, level):
    """Which family's table acts at a given level of the tower."""
    if family == "G":
        return "A" if level == 1 else "G"
    return family


def bottom_level(family, k):
    """Lowest level carrying a table; below it the trivial boundary applies."""
    if family == "D":
        return max(k, 2)
    if family == "G":
        return k
    return k


def trivial_rep(sym, idx, level):
    """The terminating representation: e, f -> 0 and t -> 1."""
    if sym == "t":
        return 1
    return 0


# ---------------------------------------------------------------------------
# Pretty-printing for the debug CLI

def _fmt_exp(e):
    if e == 1:
        return ""
    return "^%s" % (e,)


def _fmt_atom(a):
    if isinstance(a, X):
        return "x%s[%d,%d]%s" % ("~" if a.tilde else "", a.pos, a.level,
                                 "^-1" if a.power < 0 else "")
    if isinstance(a, Z):
        return "z%s[%d,%d]%s" % ("~" if a.tilde else "", a.pos, a.level, _fmt_exp(a.exp))
    if isinstance(a, T):
        return "t[%d,%d]%s" % (a.idx, a.level, _fmt_exp(a.exp))
    if isinstance(a, E):
        return "e[%d,%d]" % (a.idx, a.level)
    if isinstance(a, F):
        return "f[%d,%d]" % (a.idx, a.level)
    if isinstance(a, S):
        parts = []
        if a.const:
            parts.append(str(a.const))
        for lv, cf in a.lam:
            parts.append("%s*lam_%d" % (cf, lv))
        return "eps^(%s)" % " + ".join(parts or ["0"])
    if isinstance(a, Brace):
        inner = " ".join(_fmt_atom(x) for x in a.arg)
        if a.d == 1:
            return "{%s}" % inner
        return "{%s}_(eps^%s)" % (inner, a.d)
    return repr(a)


def format_expr(expr):
    parts = []
    for term in expr:
        bits = [_fmt_atom(a) for a in term.atoms]
        s = " ".join(bits)
        if term.pref is not None:
            _, r, d = term.pref
            q = "[%s]" % r if d == 1 else "[%s]_(eps^%s)" % (r, d)
            s = q + " " + s
        parts.append(s)
    return " + ".join(parts) if parts else "0"


def format_table(family, level, d_variant="standard"):
    rows = rho_level(table_family(family, level), level, d_variant)
    lines = []
    rank = level if family != "G" else (2 if level == 2 else 1)
    for sym in ("e", "t", "f"):
        for i in range(1, rank + 1):
            if (sym, i) in rows:
                lines.append("%s[%d,%d] -> %s" % (sym, i, level,
                                                  format_expr(rows[sym, i])))
    fam = table_family(family, level)
    if fam != "G":
        lines.append("ghost t[%d,%d] := %s" % (level + 1, level,
                                               " ".join(_fmt_atom(a) for a in ghost_def(fam, level + 1))))
    return "\n".join(lines)
