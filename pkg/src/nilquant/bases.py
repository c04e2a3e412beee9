"""Basis bookkeeping for the tensor-product module spaces.

A coordinate is one mod-l residue slot, labelled by (space level, tilde flag,
position).  Factors are ordered outermost induction level first, plain space
before its tilde copy, positions ascending.  Flat encoding is mixed radix
with the first coordinate most significant.
"""

from dataclasses import dataclass

FAMILIES = ("A", "B", "C", "D", "G")


class ShapeError(ValueError):
    """Invalid (family, rank, start index) combination."""


@dataclass(frozen=True)
class Coord:
    level: int
    tilde: bool
    pos: int

    def label(self):
        return "V%s%d:%d" % ("t" if self.tilde else "", self.level, self.pos)


class FactorShape:
    """Coordinate layout of the space carrying the rank-n module started at k."""

    def __init__(self, family, n, k, l):
        if family not in FAMILIES:
            raise ShapeError("unknown family %r" % (family,))
        if not (1 <= k <= n):
            raise ShapeError("need 1 <= k <= n, got k=%d n=%d" % (k, n))
        if family == "G" and n != 2:
            raise ShapeError("family G has rank 2 only")
        if family == "D" and n < 3:
            raise ShapeError("family D needs rank >= 3")
        coords = []
        if family == "A":
            for j in range(n, k - 1, -1):
                coords += [Coord(j, False, i) for i in range(1, j + 1)]
        elif family in ("B", "C"):
            for j in range(n, k - 1, -1):
                coords += [Coord(j, False, i) for i in range(1, j + 1)]
                coords += [Coord(j - 1, True, i) for i in range(1, j)]
        elif family == "D":
            # the chain bottoms out at level 2; no level-1 factor even for k=1
            for j in range(n, max(k, 2) - 1, -1):
                coords += [Coord(j, False, i) for i in range(1, j + 1)]
                coords += [Coord(j - 2, True, i) for i in range(1, j - 1)]
        else:  # G: a 5-index space at level 2, plus a level-1 line for k=1
            coords += [Coord(2, False, i) for i in range(1, 6)]
            if k == 1:
                coords.append(Coord(1, False, 1))
        self.family = family
        self.n = n
        self.k = k
        self.l = l
        self.coords = tuple(coords)
        self.index = {(c.level, c.tilde, c.pos): i for i, c in enumerate(coords)}
        m = len(coords)
        self.weights = tuple(l ** (m - 1 - i) for i in range(m))
        self.dim = l ** m

    def coord_index(self, level, tilde, pos):
        """Index of a coordinate, or None when out of range."""
        return self.index.get((level, tilde, pos))

    def labels(self):
        return [c.label() for c in self.coords]

    def __len__(self):
        return len(self.coords)

    def __repr__(self):
        return "FactorShape(%s, n=%d, k=%d, l=%d, coords=%d)" % (
            self.family, self.n, self.k, self.l, len(self.coords))


def shape_for(family, n, k, l):
    return FactorShape(family, n, k, l)


def encode(shape, residues):
    flat = 0
    for r, w in zip(residues, shape.weights):
        flat += (r % shape.l) * w
    return flat


def decode(shape, flat):
    if not 0 <= flat < shape.dim:
        raise ValueError("flat index %d out of range" % flat)
    out = []
    for w in shape.weights:
        out.append(flat // w)
        flat %= w
    return tuple(out)


def shift(shape, residues, coord, delta):
    """Shift one coordinate mod l, leaving the rest untouched."""
    out = list(residues)
    out[coord] = (out[coord] + delta) % shape.l
    return tuple(out)


def iter_basis(shape):
    """Yield (flat, residues) over the whole basis in flat order."""
    l = shape.l
    m = len(shape.coords)
    res = [0] * m
    for flat in range(shape.dim):
        yield flat, tuple(res)
        # odometer, last coordinate least significant
        for i in range(m - 1, -1, -1):
            res[i] += 1
            if res[i] < l:
                break
            res[i] = 0
