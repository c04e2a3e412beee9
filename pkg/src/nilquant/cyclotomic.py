"""Exact arithmetic in the cyclotomic field Q(zeta_l) for odd l >= 3.

Elements are integer (or rational) coefficient vectors of length phi(l),
reduced modulo the l-th cyclotomic polynomial.  Fractional powers of the
root eps use the modular-inverse convention eps^(p/q) = eps^(p * q^-1 mod l),
which keeps every exponent inside Z/l and every value inside Q(zeta_l).
"""

from fractions import Fraction
from math import gcd


class InvalidOrderError(ValueError):
    """Root order must be an odd integer >= 3."""


class UnsupportedDenominatorError(ValueError):
    """Exponent denominator shares a factor with the root order."""


class DegenerateBracketError(ZeroDivisionError):
    """Bracket denominator eps^d - eps^-d vanishes."""


def _poly_div_exact(num, den):
    # Exact division of integer polynomials, low degree first.
    num = list(num)
    dn = len(den) - 1
    qn = len(num) - 1 - dn
    q = [0] * (qn + 1)
    for i in range(qn, -1, -1):
        c = num[i + dn]
        if c % den[dn]:
            raise ArithmeticError("non-exact polynomial division")
        c //= den[dn]
        q[i] = c
        if c:
            for j in range(dn + 1):
                num[i + j] -= c * den[j]
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return q


def cyclotomic_polynomial(l):
    """Coefficients of Phi_l (low degree first), by exact division of x^l - 1."""
    phis = {}
    for d in range(1, l + 1):
        if l % d:
            continue
        p = [0] * (d + 1)
        p[0], p[d] = -1, 1
        for e in sorted(phis):
            if d % e == 0:
                p = _poly_div_exact(p, phis[e])
        phis[d] = p
    return phis[l]


class Field:
    """The field Q(zeta_l); immutable after construction, safe to share."""

    def __init__(self, l):
        if l < 3 or l % 2 == 0:
            raise InvalidOrderError("order must be odd and >= 3, got %r" % (l,))
        self.l = l
        self.phi_poly = tuple(cyclotomic_polynomial(l))
        self.degree = len(self.phi_poly) - 1
        d = self.degree
        # reduction rows: x^j mod Phi_l for j = d .. 2d-2
        rows = []
        cur = [-c for c in self.phi_poly[:d]]  # x^d
        rows.append(tuple(cur))
        for _ in range(d - 2):
            nxt = [0] + cur[: d - 1]
            top = cur[d - 1]
            if top:
                for t in range(d):
                    nxt[t] += top * rows[0][t]
            rows.append(tuple(nxt))
            cur = nxt
        self._red = tuple(rows)
        # zeta^s for s = 0..l-1 as raw coefficient tuples
        pows = []
        v = (1,) + (0,) * (d - 1)
        for _ in range(l):
            pows.append(v)
            v = self._shift_reduce(v)
        self.zeta_pows = tuple(pows)
        self._zero = (0,) * d
        self._one = pows[0]
        self._inv_mod_l = {q: pow(q, -1, l) for q in range(1, l) if gcd(q, l) == 1}
        self._bracket_cache = {}
        self._inv_cache = {}
        self._qbinom_cache = {}
        self._mul_cache = {}

    def _shift_reduce(self, v):
        d = self.degree
        out = [0] + list(v[: d - 1])
        top = v[d - 1]
        if top:
            row = self._red[0]
            for t in range(d):
                out[t] += top * row[t]
        return tuple(out)

    # -- raw vector arithmetic (den == 1 fast paths live in callers) --

    def vmul(self, a, b):
        d = self.degree
        prod = [0] * (2 * d - 1)
        for i in range(d):
            ai = a[i]
            if ai:
                for j in range(d):
                    bj = b[j]
                    if bj:
                        prod[i + j] += ai * bj
        out = prod[:d]
        red = self._red
        for j in range(d, 2 * d - 1):
            c = prod[j]
            if c:
                row = red[j - d]
                for t in range(d):
                    out[t] += c * row[t]
        return tuple(out)

    def vadd(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def vsub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    # -- exponent residues --

    def res(self, r):
        """Residue mod l of a rational exponent via modular inverse."""
        if isinstance(r, int):
            return r % self.l
        num, den = r.numerator, r.denominator
        if den == 1:
            return num % self.l
        inv = self._inv_mod_l.get(den % self.l)
        if inv is None:
            raise UnsupportedDenominatorError(
                "exponent denominator %d not coprime to l=%d" % (den, self.l))
        return (num * inv) % self.l

    def eps_raw(self, r):
        return self.zeta_pows[self.res(r)]

    # -- public element constructors --

    def zero(self):
        return Cyc(self, self._zero, 1)

    def one(self):
        return Cyc(self, self._one, 1)

    def from_int(self, n):
        return Cyc(self, tuple(n * c for c in self._one), 1)

    def from_coeffs(self, coeffs):
        """Element from phi(l) rational coefficients."""
        fracs = [Fraction(c) for c in coeffs]
        if len(fracs) != self.degree:
            raise ValueError("need %d coefficients" % self.degree)
        den = 1
        for c in fracs:
            den = den * c.denominator // gcd(den, c.denominator)
        num = tuple(int(c * den) for c in fracs)
        return Cyc(self, num, den)

    def eps_pow(self, r):
        """eps^r as a field element; r rational with denominator coprime to l."""
        return Cyc(self, self.eps_raw(r), 1)

    # -- brackets and q-combinatorics --

    def bracket_raw(self, s_res, d_res):
        """(eps^s - eps^-s) / (eps^d - eps^-d) by exponent residues, cached."""
        key = (s_res, d_res)
        hit = self._bracket_cache.get(key)
        if hit is not None:
            return hit
        if (2 * d_res) % self.l == 0:
            raise DegenerateBracketError("eps^(2d) = 1 at d residue %d" % d_res)
        top = self.vsub(self.zeta_pows[s_res], self.zeta_pows[-s_res % self.l])
        bot = self.vsub(self.zeta_pows[d_res], self.zeta_pows[-d_res % self.l])
        val = self._div_raw(top, 1, bot, 1)
        self._bracket_cache[key] = val
        return val

    def qint(self, r, d=1):
        """[r]_{eps^d} = (eps^(dr) - eps^(-dr)) / (eps^d - eps^-d)."""
        r = Fraction(r)
        d = Fraction(d)
        num, den = self.bracket_raw(self.res(d * r), self.res(d))
        return Cyc(self, num, den)

    def qfact(self, m, d=1):
        """[m]_{eps^d}! with [0]! = 1."""
        if m < 0:
            raise ValueError("q-factorial needs m >= 0")
        out = self.one()
        for j in range(2, m + 1):
            out = out * self.qint(j, d)
        return out

    def qbinom(self, m, k, d=1):
        """Symmetric Gaussian binomial at eps^d via the Pascal recurrence.

        Well-defined at the root of unity even when [k]! vanishes.
        """
        if k < 0 or k > m:
            return self.zero()
        if k == 0 or k == m:
            return self.one()
        d = Fraction(d)
        key = (m, k, self.res(d))
        hit = self._qbinom_cache.get(key)
        if hit is None:
            q = self.eps_pow(d)
            qinv = self.eps_pow(-d)
            hit = q ** k * self.qbinom(m - 1, k, d) + qinv ** (m - k) * self.qbinom(m - 1, k - 1, d)
            self._qbinom_cache[key] = hit
        return hit

    # -- inversion (rare path; exact xgcd over Q) --

    def _div_raw(self, anum, aden, bnum, bden):
        inum, iden = self._inv_raw(bnum, bden)
        num = self.vmul(anum, inum)
        den = aden * iden
        return _normalize(num, den)

    def _inv_raw(self, num, den):
        key = num
        hit = self._inv_cache.get(key)
        if hit is None:
            hit = self._xgcd_inverse(num)
            self._inv_cache[key] = hit
        inum, iden = hit
        # (num/den)^-1 = den * inv(num)
        return _normalize(tuple(den * c for c in inum), iden)

    def _xgcd_inverse(self, num):
        if not any(num):
            raise ZeroDivisionError("division by zero in Q(zeta_%d)" % self.l)
        a = [Fraction(c) for c in self.phi_poly]
        b = [Fraction(c) for c in num]
        s_a, s_b = [Fraction(0)], [Fraction(1)]

        def degree(p):
            for i in range(len(p) - 1, -1, -1):
                if p[i]:
                    return i
            return -1

        while True:
            db = degree(b)
            if db <= 0:
                break
            da = degree(a)
            if da < db:
                a, b, s_a, s_b = b, a, s_b, s_a
                continue
            c = a[da] / b[db]
            shift = da - db
            for j in range(db + 1):
                a[j + shift] -= c * b[j]
            ns = [Fraction(0)] * max(len(s_a), len(s_b) + shift)
            for j, v in enumerate(s_a):
                ns[j] += v
            for j, v in enumerate(s_b):
                ns[j + shift] -= c * v
            s_a = ns
        # now b is a nonzero constant: inverse = s_b / b[0]
        if degree(b) != 0:
            raise ZeroDivisionError("element not invertible")
        c0 = b[0]
        inv = [v / c0 for v in s_b]
        inv += [Fraction(0)] * (self.degree - len(inv))
        inv = inv[: self.degree]
        den = 1
        for v in inv:
            den = den * v.denominator // gcd(den, v.denominator)
        return _normalize(tuple(int(v * den) for v in inv), den)

    def __repr__(self):
        return "Field(l=%d, degree=%d)" % (self.l, self.degree)


def _normalize(num, den):
    if den < 0:
        num = tuple(-c for c in num)
        den = -den
    g = den
    for c in num:
        if c:
            g = gcd(g, c)
            if g == 1:
                break
    if g > 1:
        num = tuple(c // g for c in num)
        den //= g
    if not any(num):
        den = 1
    return num, den


class Cyc:
    """A value in Q(zeta_l): rational coefficient vector modulo Phi_l."""

    __slots__ = ("f", "num", "den")

    def __init__(self, f, num, den=1):
        self.f = f
        self.num = num
        self.den = den

    def is_zero(self):
        return not any(self.num)

    def __bool__(self):
        return any(self.num)

    def __add__(self, other):
        f = self.f
        if self.den == other.den:
            return Cyc(f, *_normalize(f.vadd(self.num, other.num), self.den))
        num = tuple(a * other.den + b * self.den for a, b in zip(self.num, other.num))
        return Cyc(f, *_normalize(num, self.den * other.den))

    def __sub__(self, other):
        f = self.f
        if self.den == other.den:
            return Cyc(f, *_normalize(f.vsub(self.num, other.num), self.den))
        num = tuple(a * other.den - b * self.den for a, b in zip(self.num, other.num))
        return Cyc(f, *_normalize(num, self.den * other.den))

    def __neg__(self):
        return Cyc(self.f, tuple(-c for c in self.num), self.den)

    def __mul__(self, other):
        f = self.f
        if isinstance(other, int):
            return Cyc(f, *_normalize(tuple(other * c for c in self.num), self.den))
        num = f.vmul(self.num, other.num)
        den = self.den * other.den
        if den == 1:
            return Cyc(f, num, 1)
        return Cyc(f, *_normalize(num, den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        num, den = self.f._div_raw(self.num, self.den, other.num, other.den)
        return Cyc(self.f, num, den)

    def inv(self):
        num, den = self.f._inv_raw(self.num, self.den)
        return Cyc(self.f, num, den)

    def __pow__(self, m):
        if m < 0:
            return self.inv() ** (-m)
        out = self.f.one()
        base = self
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            return self.den == 1 and self.num == tuple(other * c for c in self.f._one)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def coeffs(self):
        return tuple(Fraction(c, self.den) for c in self.num)

    def __repr__(self):
        return "Cyc(%s / %d)" % (list(self.num), self.den)
