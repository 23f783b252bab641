"""Small dense exact matrices over any of the package's rings.

Entries are duck-typed: anything supporting +, -, *, unary -, is_zero()
and (for field entries) inverse().  Determinants over rings with zero
divisors use the division-free Berkowitz algorithm.
"""

from __future__ import annotations

from .errors import DimensionMismatch, NonInvertible


class Mat:
    """Immutable matrix; `ring` is the descriptor providing zero()/one()."""

    __slots__ = ("ring", "rows", "nrows", "ncols")

    def __init__(self, ring, rows):
        self.ring = ring
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise DimensionMismatch("ragged rows")

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero(), ring.one()
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, ring, nrows, ncols=None):
        z = ring.zero()
        ncols = nrows if ncols is None else ncols
        return cls(ring, [[z] * ncols for _ in range(nrows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other):
        if isinstance(other, Mat):
            if self.ncols != other.nrows:
                raise DimensionMismatch("%dx%d times %dx%d"
                                        % (self.nrows, self.ncols, other.nrows, other.ncols))
            out = []
            for i in range(self.nrows):
                row = []
                for j in range(other.ncols):
                    acc = self.ring.zero()
                    for k in range(self.ncols):
                        acc = acc + self.rows[i][k] * other.rows[k][j]
                    row.append(acc)
                out.append(row)
            return Mat(self.ring, out)
        # scalar
        return Mat(self.ring, [[e * other for e in r] for r in self.rows])

    def __add__(self, other):
        return Mat(self.ring, [[a + b for a, b in zip(r, s)]
                               for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Mat(self.ring, [[a - b for a, b in zip(r, s)]
                               for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return Mat(self.ring, [[-e for e in r] for r in self.rows])

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.nrows == other.nrows and self.ncols == other.ncols and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def transpose(self):
        return Mat(self.ring, [[self.rows[i][j] for i in range(self.nrows)]
                               for j in range(self.ncols)])

    @property
    def T(self):
        return self.transpose()

    def apply(self, vec):
        """Matrix times coordinate list."""
        if len(vec) != self.ncols:
            raise DimensionMismatch("vector length %d vs %d cols" % (len(vec), self.ncols))
        out = []
        for i in range(self.nrows):
            acc = self.ring.zero()
            for k in range(self.ncols):
                acc = acc + self.rows[i][k] * vec[k]
            out.append(acc)
        return out

    def col(self, j):
        return [self.rows[i][j] for i in range(self.nrows)]

    def map(self, f, ring=None):
        return Mat(ring or self.ring, [[f(e) for e in r] for r in self.rows])

    def det(self):
        """Determinant by fraction-free Gaussian elimination with pivoting.

        Requires entry inverses; see berkowitz_det for general rings.
        """
        if self.nrows != self.ncols:
            raise DimensionMismatch("det of non-square matrix")
        n = self.nrows
        a = [row[:] for row in self.rows]
        det = self.ring.one()
        for k in range(n):
            piv = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
            if piv is None:
                return self.ring.zero()
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                det = -det
            det = det * a[k][k]
            inv = a[k][k].inverse()
            for i in range(k + 1, n):
                if a[i][k].is_zero():
                    continue
                f = a[i][k] * inv
                for j in range(k, n):
                    a[i][j] = a[i][j] - f * a[k][j]
        return det

    def inverse(self):
        n = self.nrows
        if n != self.ncols:
            raise DimensionMismatch("inverse of non-square matrix")
        a = [row[:] + Mat.identity(self.ring, n).rows[i] for i, row in enumerate(self.rows)]
        for k in range(n):
            piv = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
            if piv is None:
                raise NonInvertible("singular matrix")
            a[k], a[piv] = a[piv], a[k]
            inv = a[k][k].inverse()
            a[k] = [e * inv for e in a[k]]
            for i in range(n):
                if i != k and not a[i][k].is_zero():
                    f = a[i][k]
                    a[i] = [e - f * g for e, g in zip(a[i], a[k])]
        return Mat(self.ring, [row[n:] for row in a])

    def solve(self, rhs):
        """Solve self * x = rhs (rhs a coordinate list); None if inconsistent."""
        n, m = self.nrows, self.ncols
        a = [self.rows[i][:] + [rhs[i]] for i in range(n)]
        pivots = []
        r = 0
        for c in range(m):
            piv = next((i for i in range(r, n) if not a[i][c].is_zero()), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = a[r][c].inverse()
            a[r] = [e * inv for e in a[r]]
            for i in range(n):
                if i != r and not a[i][c].is_zero():
                    f = a[i][c]
                    a[i] = [e - f * g for e, g in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
            if r == n:
                break
        for i in range(r, n):
            if not a[i][m].is_zero():
                return None
        x = [self.ring.zero()] * m
        for i, c in enumerate(pivots):
            x[c] = a[i][m]
        return x

    def rank(self):
        n, m = self.nrows, self.ncols
        a = [row[:] for row in self.rows]
        r = 0
        for c in range(m):
            piv = next((i for i in range(r, n) if not a[i][c].is_zero()), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = a[r][c].inverse()
            a[r] = [e * inv for e in a[r]]
            for i in range(n):
                if i != r and not a[i][c].is_zero():
                    f = a[i][c]
                    a[i] = [e - f * g for e, g in zip(a[i], a[r])]
            r += 1
            if r == n:
                break
        return r

    def __repr__(self):
        return "Mat(%s)" % self.rows


def berkowitz_det(m: Mat):
    """Division-free determinant (Berkowitz), valid over any commutative ring."""
    n = m.nrows
    if n != m.ncols:
        raise DimensionMismatch("det of non-square matrix")
    ring = m.ring
    zero, one = ring.zero(), ring.one()
    if n == 0:
        return one
    a = m.rows
    # charpoly coefficients, computed by iterated Toeplitz products
    poly = [one, -a[0][0]]
    for k in range(1, n):
        # R = row (a[k][0..k-1]), C = column (a[0..k-1][k]), M = leading k x k block
        R = a[k][:k]
        C = [a[i][k] for i in range(k)]
        M = [row[:k] for row in a[:k]]
        # items[j] = R * M^(j-2) * C for the Toeplitz column
        items = [one, -a[k][k]]
        vec = C[:]
        for _ in range(k):
            dot = zero
            for x, y in zip(R, vec):
                dot = dot + x * y
            items.append(-dot)
            vec = [sum2(ring, (M[i][t] * vec[t] for t in range(k))) for i in range(k)]
        items = items[: k + 2]
        new = [zero] * (k + 2)
        for i in range(k + 2):
            for j in range(min(i + 1, len(poly))):
                new[i] = new[i] + poly[j] * items[i - j]
        poly = new
    detval = poly[n]
    if n % 2 == 1:
        detval = -detval
    return detval


def sum2(ring, it):
    acc = ring.zero()
    for x in it:
        acc = acc + x
    return acc


def kron(ring, a: Mat, b: Mat, mul=None) -> Mat:
    """Kronecker product; `mul` multiplies an entry of a by an entry of b."""
    mul = mul or (lambda x, y: x * y)
    rows = []
    for i in range(a.nrows):
        for k in range(b.nrows):
            rows.append([mul(a.rows[i][j], b.rows[k][l])
                         for j in range(a.ncols) for l in range(b.ncols)])
    return Mat(ring, rows)
