"""Multi-quadratic etale algebras F(sqrt(d1), ..., sqrt(dk)) over F_p or Q.

Elements carry 2^k coordinates indexed by subsets of the adjoined roots
(bitmask order).  These towers back the split embeddings of quaternion
algebras and the exterior-square constructions; they are commutative
rings, possibly with zero divisors when an adjoined class degenerates.
"""

from __future__ import annotations

from typing import List, Sequence

from .errors import FieldMismatch, NonInvertible
from .exactfield import FieldDesc, Scalar, is_square
from .linalg import Mat


class QuadTower:
    """Ring descriptor for F(sqrt(d1), ..., sqrt(dk))."""

    def __init__(self, field: FieldDesc, gens: Sequence):
        self.field = field
        self.gens = [field(d) for d in gens]
        for d in self.gens:
            if d.is_zero():
                raise ValueError("cannot adjoin sqrt(0)")
        self.k = len(self.gens)
        self.dim = 1 << self.k
        # degenerate towers (an adjoined root already present) still work
        # as etale algebras; record which generators are redundant.
        self.degenerate_gens = [i for i, d in enumerate(self.gens) if is_square(d)]

    def __eq__(self, other):
        return (isinstance(other, QuadTower) and self.field == other.field
                and self.gens == other.gens)

    def __hash__(self):
        return hash((self.field, tuple(self.gens)))

    def __repr__(self):
        return "QuadTower(%r, %s)" % (self.field, self.gens)

    def zero(self) -> "TowerElem":
        return TowerElem(self, [self.field.zero()] * self.dim)

    def one(self) -> "TowerElem":
        c = [self.field.zero()] * self.dim
        c[0] = self.field.one()
        return TowerElem(self, c)

    def from_scalar(self, s) -> "TowerElem":
        c = [self.field.zero()] * self.dim
        c[0] = self.field(s)
        return TowerElem(self, c)

    def __call__(self, s) -> "TowerElem":
        if isinstance(s, TowerElem):
            if s.tower != self:
                raise FieldMismatch("element of %r used over %r" % (s.tower, self))
            return s
        return self.from_scalar(s)

    def root(self, i: int) -> "TowerElem":
        """The adjoined square root of gens[i]."""
        c = [self.field.zero()] * self.dim
        c[1 << i] = self.field.one()
        return TowerElem(self, c)

    def conj(self, x: "TowerElem", i: int) -> "TowerElem":
        """Galois conjugation negating the i-th root."""
        return TowerElem(self, [(-v if (mask >> i) & 1 else v)
                                for mask, v in enumerate(x.coords)])


class TowerElem:
    __slots__ = ("tower", "coords")

    def __init__(self, tower: QuadTower, coords: List[Scalar]):
        self.tower = tower
        self.coords = coords

    def _coerce(self, other):
        if isinstance(other, TowerElem):
            if other.tower != self.tower:
                raise FieldMismatch("mixed towers")
            return other
        if isinstance(other, (int, Scalar)):
            return self.tower.from_scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return TowerElem(self.tower, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return TowerElem(self.tower, [a - b for a, b in zip(self.coords, other.coords)])

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return TowerElem(self.tower, [-a for a in self.coords])

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        t = self.tower
        out = [t.field.zero()] * t.dim
        for m1, a in enumerate(self.coords):
            if a.is_zero():
                continue
            for m2, b in enumerate(other.coords):
                if b.is_zero():
                    continue
                # sqrt(d_i)^2 = d_i for each i in the overlap
                coeff = a * b
                for i in range(t.k):
                    if (m1 >> i) & 1 and (m2 >> i) & 1:
                        coeff = coeff * t.gens[i]
                target = m1 ^ m2
                out[target] = out[target] + coeff
        return TowerElem(t, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def inverse(self) -> "TowerElem":
        """Inverse via the regular representation; NonInvertible if singular."""
        t = self.tower
        m = Mat(t.field, self.mult_matrix())
        one = [t.field(1 if i == 0 else 0) for i in range(t.dim)]
        sol = m.solve(one)
        if sol is None:
            raise NonInvertible("tower element is a zero divisor")
        return TowerElem(t, sol)

    def mult_matrix(self):
        """Matrix of left multiplication on the coordinate basis."""
        t = self.tower
        cols = []
        for mask in range(t.dim):
            basis = [t.field.zero()] * t.dim
            basis[mask] = t.field.one()
            cols.append((self * TowerElem(t, basis)).coords)
        return [[cols[j][i] for j in range(t.dim)] for i in range(t.dim)]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def scalar_part(self) -> Scalar:
        return self.coords[0]

    def is_scalar(self) -> bool:
        return all(c.is_zero() for c in self.coords[1:])

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash((self.tower, tuple(self.coords)))

    def __repr__(self):
        t = self.tower
        names = {0: ""}
        for mask in range(1, t.dim):
            parts = ["r%d" % i for i in range(t.k) if (mask >> i) & 1]
            names[mask] = "*".join(parts)
        terms = ["%s%s%s" % (c, "*" if names[m] else "", names[m])
                 for m, c in enumerate(self.coords) if not c.is_zero()]
        return " + ".join(terms) if terms else "0"
