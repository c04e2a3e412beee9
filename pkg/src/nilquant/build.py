"""Compose the homomorphism tower and evaluate generators as exact sparse matrices.

Every generator image flattens to a short list of closed terms: a basis-index
shift plus a coefficient that is a product of bracket values of affine forms
in the index residues.  Columns are then evaluated independently, so the
matrices are exact and the evaluation is embarrassingly parallel.
"""

from dataclasses import dataclass, field as dfield
from fractions import Fraction
from math import gcd, lcm

from .bases import FactorShape, ShapeError, iter_basis, shape_for
from .cyclotomic import Cyc, Field, UnsupportedDenominatorError, _normalize
from . import tower
from .tower import Brace, E, F, S, T, X, Z


class ConstraintError(ValueError):
    """A root-order or exponent-denominator constraint is violated."""


D_VARIANTS = ("standard", "printed", "swapped")


@dataclass(frozen=True)
class ModuleSpec:
    family: str
    n: int
    k: int
    lam: tuple
    l: int
    d_variant: str = "standard"
    b_overrides: tuple = ()  # ((level, tilde, pos), value) pairs, test hooks
    a_overrides: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(int(x) for x in self.lam))

    def rank_span(self):
        return self.n - self.k + 1

    def describe(self):
        return "%s%d k=%d lam=%s l=%d" % (self.family, self.n, self.k,
                                          list(self.lam), self.l)


def validate_spec(spec):
    """Raise ShapeError (bad combinatorics) or ConstraintError (bad l)."""
    shape = shape_for(spec.family, spec.n, spec.k, spec.l)  # ShapeError on bad (family,n,k)
    if spec.l < 3 or spec.l % 2 == 0:
        raise ConstraintError("l must be an odd integer greater than 2, got %d" % spec.l)
    if spec.family == "G" and spec.l % 3 == 0:
        raise ConstraintError("family G requires l not divisible by 3, got l=%d" % spec.l)
    if len(spec.lam) != spec.rank_span():
        raise ShapeError("weight vector must have length n-k+1 = %d" % spec.rank_span())
    if spec.family == "A":
        denoms = lcm(*range(1, spec.n + 1))
        if gcd(denoms, spec.l) != 1:
            raise ConstraintError(
                "family A rank %d needs gcd(lcm(1..n), l) = 1; shares factor with l=%d"
                % (spec.n, spec.l))
    if spec.d_variant not in D_VARIANTS:
        raise ShapeError("unknown D variant %r" % (spec.d_variant,))
    return shape


def top_rank(spec):
    return 2 if spec.family == "G" else spec.n


def generator_rank(family, level):
    if family == "G":
        return 2 if level == 2 else 1
    return level


class _Partial:
    __slots__ = ("shifts", "scale", "prefs", "bare_const", "bare", "braces")

    def __init__(self):
        self.shifts = {}
        self.scale = Fraction(1)
        self.prefs = []
        self.bare_const = Fraction(0)
        self.bare = {}
        self.braces = []

    def clone(self):
        p = _Partial()
        p.shifts = dict(self.shifts)
        p.scale = self.scale
        p.prefs = list(self.prefs)
        p.bare_const = self.bare_const
        p.bare = dict(self.bare)
        p.braces = list(self.braces)
        return p


class Builder:
    """Flattens the tower for one module spec and evaluates the matrices."""

    def __init__(self, spec):
        self.spec = spec
        self.shape = validate_spec(spec)
        self.field = Field(spec.l)
        self.params = tower.ParamTable(spec.family, spec.n,
                                       dict(spec.b_overrides), dict(spec.a_overrides))
        self.lv = tower.level_params(spec.family, spec.n, spec.k, spec.lam)
        self.bottom = tower.bottom_level(spec.family, spec.k)
        self.top = 2 if spec.family == "G" else spec.n
        self._tables = {}
        self._tmemo = {}

    # -- symbolic layer ----------------------------------------------------

    def table(self, level):
        rows = self._tables.get(level)
        if rows is None:
            fam = tower.table_family(self.spec.family, level)
            rows = tower.rho_level(fam, level, self.spec.d_variant)
            self._tables[level] = rows
        return rows

    def _scalar(self, atom):
        v = atom.const
        for lv, coef in atom.lam:
            v += coef * self.lv[lv]
        return v

    def _boundary_const(self, level, idx):
        if self.spec.family == "D" and level == 1:
            # bottom scalars of the D chain; both level-1 t's are adjoined values
            if idx == 1:
                return -self.lv[1]
            if idx == 2:
                return -self.lv[2] + self.lv[1] / 2
            raise AssertionError("unexpected bottom index %d" % idx)
        if idx == level + 1:
            return -self.lv[level + 1]
        return Fraction(0)

    def resolve_t(self, level, idx):
        """Composed eigen-exponent of t_{idx,level} as (const, {coord: coef})."""
        key = (level, idx)
        hit = self._tmemo.get(key)
        if hit is not None:
            return hit
        const = Fraction(0)
        coeffs = {}
        if level < self.bottom:
            const = self._boundary_const(level, idx)
        else:
            fam = tower.table_family(self.spec.family, level)
            if idx <= generator_rank(self.spec.family, level):
                atoms = self.table(level)["t", idx][0].atoms
            else:
                atoms = tower.ghost_closed(fam, level + 1)
            for a in atoms:
                if isinstance(a, Z):
                    ci = self.shape.coord_index(a.level, a.tilde, a.pos)
                    if ci is None:
                        continue  # out of range -> 1
                    coeffs[ci] = coeffs.get(ci, Fraction(0)) + a.exp
                    const += a.exp * self.params.b(a.level, a.tilde, a.pos)
                elif isinstance(a, S):
                    const += self._scalar(a)
                elif isinstance(a, T):
                    c2, m2 = self.resolve_t(a.level, a.idx)
                    const += a.exp * c2
                    for ci, cf in m2.items():
                        coeffs[ci] = coeffs.get(ci, Fraction(0)) + a.exp * cf
                else:
                    raise AssertionError("non-diagonal atom in t image: %r" % (a,))
        coeffs = {ci: cf for ci, cf in coeffs.items() if cf}
        self._tmemo[key] = (const, coeffs)
        return const, coeffs

    def _brace_form(self, brace, shifts):
        const = Fraction(0)
        coeffs = {}
        for a in brace.arg:
            if isinstance(a, Z):
                ci = self.shape.coord_index(a.level, a.tilde, a.pos)
                if ci is None:
                    continue
                coeffs[ci] = coeffs.get(ci, Fraction(0)) + a.exp
                const += a.exp * self.params.b(a.level, a.tilde, a.pos)
            elif isinstance(a, S):
                const += self._scalar(a)
            elif isinstance(a, T):
                c2, m2 = self.resolve_t(a.level, a.idx)
                const += a.exp * c2
                for ci, cf in m2.items():
                    coeffs[ci] = coeffs.get(ci, Fraction(0)) + a.exp * cf
            else:
                raise AssertionError("brace argument must be diagonal: %r" % (a,))
        # evaluate at the index as shifted so far
        for ci, dd in shifts.items():
            if ci in coeffs:
                const += coeffs[ci] * dd
        return const, coeffs, brace.d

    def flatten(self, sym, idx, level=None):
        """Expand a generator image into closed terms over the basis."""
        if level is None:
            level = self.top
        if level < self.bottom or idx < 1 or idx > generator_rank(self.spec.family, level):
            return []
        out = []
        for term in self.table(level)[sym, idx]:
            partials = [_Partial()]
            if term.pref is not None:
                partials[0].prefs.append(term.pref)
            dead = False
            for atom in reversed(term.atoms):
                if dead:
                    break
                if isinstance(atom, X):
                    ci = self.shape.coord_index(atom.level, atom.tilde, atom.pos)
                    if ci is None:
                        dead = True
                        break
                    av = self.params.a(atom.level, atom.tilde, atom.pos)
                    for p in partials:
                        p.shifts[ci] = p.shifts.get(ci, 0) - atom.power
                        p.scale *= av if atom.power > 0 else 1 / av
                elif isinstance(atom, Z):
                    ci = self.shape.coord_index(atom.level, atom.tilde, atom.pos)
                    if ci is None:
                        continue
                    b = self.params.b(atom.level, atom.tilde, atom.pos)
                    for p in partials:
                        p.bare[ci] = p.bare.get(ci, Fraction(0)) + atom.exp
                        p.bare_const += atom.exp * (b + p.shifts.get(ci, 0))
                elif isinstance(atom, S):
                    v = self._scalar(atom)
                    for p in partials:
                        p.bare_const += v
                elif isinstance(atom, T):
                    c2, m2 = self.resolve_t(atom.level, atom.idx)
                    for p in partials:
                        p.bare_const += atom.exp * (
                            c2 + sum(cf * p.shifts.get(ci, 0) for ci, cf in m2.items()))
                        for ci, cf in m2.items():
                            p.bare[ci] = p.bare.get(ci, Fraction(0)) + atom.exp * cf
                elif isinstance(atom, Brace):
                    for p in partials:
                        p.braces.append(self._brace_form(atom, p.shifts))
                elif isinstance(atom, (E, F)):
                    sub = self.flatten("e" if isinstance(atom, E) else "f",
                                       atom.idx, atom.level)
                    if not sub:
                        dead = True
                        break
                    new = []
                    for p in partials:
                        for q in sub:
                            r = q.clone()
                            # outer shifts land on disjoint coords, but compose
                            # the outer state over the sub term for generality
                            for ci, dd in p.shifts.items():
                                r.shifts[ci] = r.shifts.get(ci, 0) + dd
                            r.scale *= p.scale
                            r.prefs = p.prefs + r.prefs
                            r.bare_const += p.bare_const
                            for ci, cf in p.bare.items():
                                r.bare[ci] = r.bare.get(ci, Fraction(0)) + cf
                            r.braces = list(p.braces) + r.braces
                            new.append(r)
                    partials = new
                else:
                    raise AssertionError("unknown atom %r" % (atom,))
            if not dead:
                out.extend(partials)
        return out

    # -- numeric layer -----------------------------------------------------

    def _compile(self, partials):
        f = self.field
        comp = []
        for p in partials:
            pref = f.one()
            for tag, r, d in p.prefs:
                assert tag == "qint"
                pref = pref * f.qint(r, d)
            if p.scale != 1:
                pref = pref * f.from_coeffs(
                    [p.scale] + [0] * (f.degree - 1))
            if pref.is_zero():
                continue
            bare = None
            if p.bare or p.bare_const:
                bare = (f.res(p.bare_const),
                        tuple((ci, f.res(cf)) for ci, cf in sorted(p.bare.items()) if f.res(cf)))
            braces = tuple((f.res(c0), tuple((ci, f.res(cf)) for ci, cf in sorted(m.items())
                                             if f.res(cf)), f.res(Fraction(d)))
                           for c0, m, d in p.braces)
            shifts = tuple(sorted((ci, dd % self.spec.l) for ci, dd in p.shifts.items()
                                  if dd % self.spec.l))
            comp.append((shifts, pref.num, pref.den, bare, braces))
        return comp

    def eval_columns(self, comp, col_range=None):
        """Evaluate compiled terms over a flat-index range; returns column lists."""
        f = self.field
        shape = self.shape
        l = shape.l
        weights = shape.weights
        bracket = f.bracket_raw
        zeta = f.zeta_pows
        vmul = f.vmul
        lo, hi = (0, shape.dim) if col_range is None else col_range
        cols = []
        for flat, m in iter_basis(shape):
            if flat < lo:
                continue
            if flat >= hi:
                break
            acc = {}
            for shifts, pnum, pden, bare, braces in comp:
                num, den = pnum, pden
                dead = False
                for r0, items, dres in braces:
                    s = r0
                    for ci, rc in items:
                        s += rc * m[ci]
                    bn, bd = bracket(s % l, dres)
                    if bn[0] == 0 and not any(bn):
                        dead = True
                        break
                    num = vmul(num, bn)
                    den *= bd
                if dead:
                    continue
                if bare is not None:
                    r0, items = bare
                    s = r0
                    for ci, rc in items:
                        s += rc * m[ci]
                    num = vmul(num, zeta[s % l])
                target = flat
                for ci, dd in shifts:
                    d0 = m[ci]
                    target += ((d0 + dd) % l - d0) * weights[ci]
                cur = acc.get(target)
                if cur is None:
                    acc[target] = (num, den)
                else:
                    cn, cd = cur
                    if cd == den:
                        acc[target] = (f.vadd(cn, num), cd)
                    else:
                        acc[target] = (
                            tuple(a * den + b * cd for a, b in zip(cn, num)), cd * den)
            col = [(r, v[0], v[1]) for r, v in acc.items() if any(v[0])]
            col.sort()
            cols.append(col)
        return cols

    def t_exponents(self, i):
        """Residue of the diagonal eps-exponent of t_i per basis column."""
        const, coeffs = self.resolve_t(self.top, i)
        f = self.field
        l = self.spec.l
        r0 = f.res(const)
        items = tuple((ci, f.res(cf)) for ci, cf in sorted(coeffs.items()) if f.res(cf))
        out = []
        for _, m in iter_basis(self.shape):
            s = r0
            for ci, rc in items:
                s += rc * m[ci]
            out.append(s % l)
        return out


class SparseOp:
    """Column-sparse exact matrix over Q(zeta_l)."""

    __slots__ = ("field", "dim", "cols")

    def __init__(self, field, dim, cols):
        self.field = field
        self.dim = dim
        self.cols = cols

    @classmethod
    def identity(cls, field, dim):
        one = field._one
        return cls(field, dim, [[(c, one, 1)] for c in range(dim)])

    @classmethod
    def diag_eps(cls, field, exps):
        return cls(field, len(exps), [[(c, field.zeta_pows[e], 1)]
                                      for c, e in enumerate(exps)])

    def apply(self, vec):
        """Image of a sparse vector {row: (num, den)}."""
        f = self.field
        out = {}
        for c, (vn, vd) in vec.items():
            for r, en, ed in self.cols[c]:
                num = f.vmul(en, vn)
                den = ed * vd
                cur = out.get(r)
                if cur is None:
                    out[r] = (num, den)
                else:
                    cn, cd = cur
                    if cd == den:
                        out[r] = (f.vadd(cn, num), cd)
                    else:
                        out[r] = _normalize(
                            tuple(a * den + b * cd for a, b in zip(cn, num)), cd * den)
        return {r: (n, d) if d == 1 else _normalize(n, d)
                for r, (n, d) in out.items() if any(n)}

    def compose(self, other):
        """self after other (matrix product self * other)."""
        assert self.dim == other.dim
        f = self.field
        cols = []
        for c in range(other.dim):
            acc = self.apply({r: (n, d) for r, n, d in other.cols[c]})
            col = [(r, v[0], v[1]) for r, v in acc.items()]
            col.sort()
            cols.append(col)
        return SparseOp(f, self.dim, cols)

    def power(self, m):
        out = SparseOp.identity(self.field, self.dim)
        base = self
        while m:
            if m & 1:
                out = out.compose(base)
            base = base.compose(base) if m > 1 else base
            m >>= 1
        return out

    def column(self, c):
        return {r: (n, d) for r, n, d in self.cols[c]}

    def nnz(self):
        return sum(len(c) for c in self.cols)

    def max_col_nnz(self):
        return max((len(c) for c in self.cols), default=0)

    def __eq__(self, other):
        return self.dim == other.dim and self.cols == other.cols

    def entries(self):
        for c, col in enumerate(self.cols):
            for r, n, d in col:
                yield c, r, n, d


class GeneratorSet:
    """Exact matrices of e_i, f_i, t_i^{+-1} for one built module."""

    def __init__(self, spec, shape, field, e_ops, f_ops, t_exps):
        self.spec = spec
        self.shape = shape
        self.field = field
        self.e = e_ops  # dict i -> SparseOp
        self.f = f_ops
        self.t_exp = t_exps  # dict i -> list of eps-exponent residues
        self.rank = len(e_ops)
        self.cartan = tower.cartan_matrix(spec.family, top_rank(spec))
        self.d = tower.d_values(spec.family, top_rank(spec))
        self.d_res = {i: field.res(self.d[i]) for i in self.d}

    @property
    def dim(self):
        return self.shape.dim

    def t_op(self, i):
        return SparseOp.diag_eps(self.field, self.t_exp[i])

    def t_inv_op(self, i):
        l = self.spec.l
        return SparseOp.diag_eps(self.field, [(-e) % l for e in self.t_exp[i]])

    def gens_in_order(self):
        """(name, op) pairs in the deterministic closure order."""
        out = []
        for i in range(1, self.rank + 1):
            out.append(("e%d" % i, self.e[i]))
        for i in range(1, self.rank + 1):
            out.append(("f%d" % i, self.f[i]))
        for i in range(1, self.rank + 1):
            out.append(("t%d" % i, self.t_op(i)))
        for i in range(1, self.rank + 1):
            out.append(("t%d_inv" % i, self.t_inv_op(i)))
        return out


def build(spec, col_jobs=None):
    """Build the generator matrices for a module spec."""
    b = Builder(spec)
    rank = top_rank(spec)
    e_ops, f_ops, t_exps = {}, {}, {}
    try:
        comps = {}
        for i in range(1, rank + 1):
            comps["e", i] = b._compile(b.flatten("e", i))
            comps["f", i] = b._compile(b.flatten("f", i))
            t_exps[i] = b.t_exponents(i)
    except UnsupportedDenominatorError as exc:
        raise ConstraintError(str(exc)) from exc
    for i in range(1, rank + 1):
        e_ops[i] = SparseOp(b.field, b.shape.dim, b.eval_columns(comps["e", i]))
        f_ops[i] = SparseOp(b.field, b.shape.dim, b.eval_columns(comps["f", i]))
    return GeneratorSet(spec, b.shape, b.field, e_ops, f_ops, t_exps)


# ---------------------------------------------------------------------------
# JSON wire format

def _coeff_strings(field, num, den):
    return ["%d/%d" % (Fraction(c, den).numerator, Fraction(c, den).denominator)
            for c in num]


def to_json_dict(gens):
    spec = gens.spec
    out = {
        "spec": {
            "family": spec.family, "n": spec.n, "k": spec.k,
            "lambda": list(spec.lam), "l": spec.l, "d_variant": spec.d_variant,
        },
        "l": spec.l,
        "shape": gens.shape.labels(),
        "generators": {},
    }
    f = gens.field
    names = {}
    for i in range(1, gens.rank + 1):
        names["e%d" % i] = gens.e[i]
        names["f%d" % i] = gens.f[i]
        names["t%d" % i] = gens.t_op(i)
        names["t%d_inv" % i] = gens.t_inv_op(i)
    for name in sorted(names):
        op = names[name]
        ent = []
        for c, r, num, den in op.entries():
            ent.append([c, r, _coeff_strings(f, num, den)])
        out["generators"][name] = ent
    return out


def from_json_dict(doc):
    s = doc["spec"]
    spec = ModuleSpec(s["family"], s["n"], s["k"], tuple(s["lambda"]), s["l"],
                      s.get("d_variant", "standard"))
    shape = validate_spec(spec)
    f = Field(spec.l)
    dim = shape.dim
    zlog = {f.zeta_pows[s_]: s_ for s_ in range(spec.l)}

    def parse_op(entries):
        cols = [[] for _ in range(dim)]
        for c, r, coeffs in entries:
            fracs = [Fraction(x) for x in coeffs]
            den = 1
            for x in fracs:
                den = den * x.denominator // gcd(den, x.denominator)
            num = tuple(int(x * den) for x in fracs)
            cols[c].append((r, num, den))
        for col in cols:
            col.sort()
        return SparseOp(f, dim, cols)

    rank = 2 if spec.family == "G" else spec.n
    e_ops, f_ops, t_exps = {}, {}, {}
    for i in range(1, rank + 1):
        e_ops[i] = parse_op(doc["generators"]["e%d" % i])
        f_ops[i] = parse_op(doc["generators"]["f%d" % i])
        t_op = parse_op(doc["generators"]["t%d" % i])
        exps = []
        for c in range(dim):
            col = t_op.cols[c]
            if len(col) != 1 or col[0][0] != c or col[0][2] != 1:
                raise ValueError("t%d is not diagonal with unit entries" % i)
            key = col[0][1]
            if key not in zlog:
                raise ValueError("t%d entry is not a root of unity" % i)
            exps.append(zlog[key])
        t_exps[i] = exps
    return GeneratorSet(spec, shape, f, e_ops, f_ops, t_exps)
