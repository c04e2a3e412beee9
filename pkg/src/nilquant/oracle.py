"""Closed-form generator actions for families B and G.

A second, independent construction of the same matrices: coefficients come
straight from the printed per-basis-vector action formulas (bracket values of
integer index combinations plus the mu/nu bookkeeping), never from the
composed symbolic tower.  Exact equality with the built matrices is the
principal anti-bug check.
"""

from fractions import Fraction

from .build import GeneratorSet, SparseOp, validate_spec
from .bases import iter_basis
from .cyclotomic import Field


class OracleUnavailableError(ValueError):
    """Closed forms exist only for families B and G."""


def closed_form_generators(spec):
    if spec.family == "B":
        return _build_b(spec)
    if spec.family == "G":
        return _build_g(spec)
    raise OracleUnavailableError("no closed-form oracle for family %s" % spec.family)


def _collect(shape, f, entry_fn):
    cols = []
    for flat, res in iter_basis(shape):
        acc = {}
        for shifts, num, den in entry_fn(res):
            target = flat
            ok = True
            for (level, tilde, pos), dd in shifts.items():
                ci = shape.coord_index(level, tilde, pos)
                if ci is None:
                    ok = False
                    break
                d0 = res[ci]
                target += ((d0 + dd) % shape.l - d0) * shape.weights[ci]
            if not ok:
                continue
            cur = acc.get(target)
            if cur is None:
                acc[target] = (num, den)
            else:
                cn, cd = cur
                if cd == den:
                    acc[target] = (f.vadd(cn, num), cd)
                else:
                    acc[target] = (tuple(a * den + b * cd for a, b in zip(cn, num)),
                                   cd * den)
        col = [(r, v[0], v[1]) for r, v in acc.items() if any(v[0])]
        col.sort()
        cols.append(col)
    return SparseOp(f, shape.dim, cols)


def _build_b(spec):
    shape = validate_spec(spec)
    f = Field(spec.l)
    n, k = spec.n, spec.k

    def lv(i):
        return spec.lam[i - k] if i >= k else 0

    def xi_ge(i):
        return 1 if i >= k else 0

    def ci(res, level, tilde, pos):
        idx = shape.coord_index(level, tilde, pos)
        return res[idx] if idx is not None else 0

    def br(x, d=1):
        d = Fraction(d)
        return f.bracket_raw(f.res(d * x), f.res(d))

    def nu_ij(res, i, j):
        if i == 1:
            # short-root row carries d_1 = 1/2, so the eps_1-exponent doubles
            return 2 * (ci(res, j, False, 2) - ci(res, j, False, 1)
                        + ci(res, j - 1, True, 1))
        return (ci(res, j, False, i + 1) - 2 * ci(res, j, False, i)
                + ci(res, j, False, i - 1) + ci(res, j - 1, True, i - 2)
                - 2 * ci(res, j - 1, True, i - 1) + ci(res, j - 1, True, i))

    def mu(res, i, j):
        out = 0
        if i > k:
            out = ci(res, i - 1, False, i - 1) + ci(res, i - 2, True, i - 2)
        for r in range(max(k, i), j + 1):
            out += nu_ij(res, i, r)
        return out

    def e_entries_fn(i):
        def entries(res):
            out = []
            pre = {}
            top = max(k, i)
            for j in range(n, top - 1, -1):
                if i == 1:
                    c1 = br(2 * ci(res, j, False, 2) - ci(res, j, False, 1), Fraction(1, 2))
                else:
                    c1 = br(ci(res, j, False, i + 1) - ci(res, j, False, i))
                if any(c1[0]):
                    sh = dict(pre)
                    sh[(j, False, i)] = sh.get((j, False, i), 0) - 1
                    out.append((sh, c1[0], c1[1]))
                if i < j:
                    if i == 1:
                        c2 = br(ci(res, j, False, 1) - 2 * ci(res, j - 1, True, 1),
                                Fraction(1, 2))
                    else:
                        c2 = br(ci(res, j - 1, True, i - 1) - ci(res, j - 1, True, i))
                    if any(c2[0]):
                        sh = dict(pre)
                        sh[(j, False, i)] = sh.get((j, False, i), 0) - 1
                        sh[(j, False, i + 1)] = sh.get((j, False, i + 1), 0) + 1
                        sh[(j - 1, True, i)] = sh.get((j - 1, True, i), 0) - 1
                        out.append((sh, c2[0], c2[1]))
                # trailing prefix towards level j-1
                if j - 1 < max(k, i) or i > j - 1:
                    break
                if i == 1:
                    pre = dict(pre)
                    pre[(j, False, 2)] = pre.get((j, False, 2), 0) + 1
                    pre[(j - 1, True, 1)] = pre.get((j - 1, True, 1), 0) - 1
                else:
                    pre = dict(pre)
                    pre[(j, False, i)] = pre.get((j, False, i), 0) - 1
                    pre[(j, False, i + 1)] = pre.get((j, False, i + 1), 0) + 1
                    pre[(j - 1, True, i)] = pre.get((j - 1, True, i), 0) - 1
                    pre[(j - 1, True, i - 1)] = pre.get((j - 1, True, i - 1), 0) + 1
            return out
        return entries

    def f_entries_fn(i):
        def entries(res):
            out = []
            for j in range(max(k, i), n + 1):
                if i == 1:
                    # the level-j bracket absorbs no nu_{1,j} term of its own
                    c = br(ci(res, j, False, 1) - 2 * ci(res, j - 1, True, 1)
                           - mu(res, 1, j - 1) - xi_ge(1) * lv(1), Fraction(1, 2))
                else:
                    c = br(ci(res, j, False, i + 1) - ci(res, j, False, i)
                           - mu(res, i, j) - xi_ge(i) * lv(i))
                if any(c[0]):
                    out.append(({(j, False, i): +1}, c[0], c[1]))
                if i >= 2:
                    c = br(ci(res, j - 1, True, i - 1) - ci(res, j - 1, True, i)
                           - mu(res, i, j - 1) - xi_ge(i) * lv(i))
                    if any(c[0]):
                        out.append(({(j - 1, True, i - 1): +1}, c[0], c[1]))
            return out
        return entries

    e_ops, f_ops, t_exps = {}, {}, {}
    for i in range(1, n + 1):
        e_ops[i] = _collect(shape, f, e_entries_fn(i))
        f_ops[i] = _collect(shape, f, f_entries_fn(i))
        di = Fraction(1, 2) if i == 1 else Fraction(1)
        exps = []
        for _, res in iter_basis(shape):
            exps.append(f.res(di * (mu(res, i, n) + xi_ge(i) * lv(i))))
        t_exps[i] = exps
    return GeneratorSet(spec, shape, f, e_ops, f_ops, t_exps)


def _build_g(spec):
    shape = validate_spec(spec)
    f = Field(spec.l)
    k = spec.k
    lam1 = spec.lam[0] if k == 1 else 0
    lam2 = spec.lam[1] if k == 1 else spec.lam[0]

    def br(x, d=1):
        d = Fraction(d)
        return f.bracket_raw(f.res(d * Fraction(x)), f.res(d))

    V = lambda i: (2, False, i)
    W = (1, False, 1)

    def reader(res):
        def m(i):
            return res[shape.coord_index(*V(i))]

        def w():
            idx = shape.coord_index(*W)
            return res[idx] if idx is not None else 0
        return m, w

    def e1_entries(res):
        m, wv = reader(res)
        out = []
        terms = [
            (3 * m(3) - 2 * m(4), 1, {V(1): 1, V(2): 1, V(3): -1, V(4): -2}, None),
            (m(4) - 3 * m(5), 1, {V(1): 1, V(2): 1, V(4): -2, V(5): -1}, None),
            (2 * m(2) - 3 * m(3), 1, {V(1): 1, V(2): -1, V(3): -1}, None),
            (m(2) - m(4), 1, {V(1): 1, V(3): -1, V(4): -1}, "two"),
            (3 * m(1) - m(2), 1, {V(2): -1}, None),
        ]
        for x, d, sh, pref in terms:
            num, den = br(x, d)
            if pref == "two":
                q = f.qint(2)
                num, den = f.vmul(num, q.num), den * q.den
            if any(num):
                out.append((dict(sh), num, den))
        if k == 1:
            num, den = br(-wv())
            if any(num):
                out.append(({V(1): 1, V(2): 1, V(4): -1, V(5): -1, W: -1}, num, den))
        return out

    def e2_entries(res):
        m, _ = reader(res)
        num, den = br(-m(1), 3)
        return [({V(1): -1}, num, den)] if any(num) else []

    def y_ops(res):
        m, wv = reader(res)
        ys = {
            1: (m(1) + 2 * m(3) + 2 * m(5) - m(2) - m(4) - wv() - lam2, 3, {V(1): 1}),
            2: (m(2) - 3 * m(3) - 3 * m(5) + 2 * m(4) + 2 * wv() - lam1, 1, {V(2): 1}),
            3: (m(3) + 2 * m(5) - m(4) - wv() - lam2, 3, {V(3): 1}),
            4: (m(4) - 3 * m(5) + 2 * wv() - lam1, 1, {V(4): 1}),
            5: (m(5) - wv() - lam2, 3, {V(5): 1}),
        }
        if k == 1:
            ys["w"] = (wv() - lam1, 1, {W: 1})
        return ys

    def f1_entries(res):
        ys = y_ops(res)
        keys = [2, 4] + (["w"] if k == 1 else [])
        out = []
        for key in keys:
            x, d, sh = ys[key]
            num, den = br(x, d)
            if any(num):
                out.append((dict(sh), num, den))
        return out

    def f2_entries(res):
        ys = y_ops(res)
        out = []
        for key in (1, 3, 5):
            x, d, sh = ys[key]
            num, den = br(x, d)
            if any(num):
                out.append((dict(sh), num, den))
        return out

    e_ops = {1: _collect(shape, f, e1_entries), 2: _collect(shape, f, e2_entries)}
    f_ops = {1: _collect(shape, f, f1_entries), 2: _collect(shape, f, f2_entries)}
    t_exps = {1: [], 2: []}
    for _, res in iter_basis(shape):
        m, wv = reader(res)
        t1 = 3 * m(1) + 3 * m(3) + 3 * m(5) - 2 * m(2) - 2 * m(4)
        t2 = -2 * m(1) - 2 * m(3) - 2 * m(5) + m(2) + m(4) + lam2
        if k == 1:
            t1 += -2 * wv() + lam1
            t2 += wv()
        t_exps[1].append(t1 % spec.l)
        t_exps[2].append((3 * t2) % spec.l)
    return GeneratorSet(spec, shape, f, e_ops, f_ops, t_exps)


def generators_equal(a, b):
    """None if both generator sets coincide entrywise; else a witness dict."""
    if a.dim != b.dim or a.rank != b.rank:
        return {"check": "shape", "a": a.dim, "b": b.dim}
    for i in range(1, a.rank + 1):
        for which, x, y in (("e", a.e[i], b.e[i]), ("f", a.f[i], b.f[i])):
            for c in range(a.dim):
                if x.cols[c] != y.cols[c]:
                    return {"generator": "%s%d" % (which, i), "column": c,
                            "built": x.cols[c][:3], "oracle": y.cols[c][:3]}
        if a.t_exp[i] != b.t_exp[i]:
            c = next(c for c in range(a.dim) if a.t_exp[i][c] != b.t_exp[i][c])
            return {"generator": "t%d" % i, "column": c,
                    "built": a.t_exp[i][c], "oracle": b.t_exp[i][c]}
    return None
